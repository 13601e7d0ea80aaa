import math
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from core.errors import DataValidationError, describe_validation_error

MASS_TOLERANCE = 1e-9


class Lexicon(BaseModel):
    """Ordered set of linguistic labels."""
    model_config = ConfigDict(frozen=True)

    name: str
    terms: Tuple[str, ...]

    @field_validator("terms")
    @classmethod
    def _check_terms(cls, terms: Tuple[str, ...]) -> Tuple[str, ...]:
        if not terms:
            raise ValueError("lexicon must contain at least one term")
        if any(not t for t in terms):
            raise ValueError("lexicon terms must be non-empty labels")
        if len(set(terms)) != len(terms):
            raise ValueError(f"lexicon terms must be unique: {list(terms)}")
        return terms

    @property
    def size(self) -> int:
        return len(self.terms)

    def index(self, term: str) -> int:
        try:
            return self.terms.index(term)
        except ValueError:
            raise DataValidationError(f"term '{term}' is not in lexicon '{self.name}'") from None

    def __contains__(self, term: str) -> bool:
        return term in self.terms


class MassVector(BaseModel):
    """Unit mass distribution over a lexicon (a lexical fuzzy subset)."""
    model_config = ConfigDict(frozen=True)

    lexicon: Lexicon
    masses: Tuple[float, ...]

    @field_validator("masses")
    @classmethod
    def _check_masses(cls, masses: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(not math.isfinite(m) for m in masses):
            raise ValueError("masses must be finite")
        if any(m < 0.0 for m in masses):
            raise ValueError("masses must be nonnegative")
        total = math.fsum(masses)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"masses must sum to 1 (got {total!r})")
        return tuple(m / total for m in masses)

    @model_validator(mode="after")
    def _check_dimension(self):
        if len(self.masses) != self.lexicon.size:
            raise ValueError(
                f"{len(self.masses)} masses for lexicon '{self.lexicon.name}' of size {self.lexicon.size}"
            )
        return self

    @classmethod
    def singleton(cls, lexicon: Lexicon, term: str) -> "MassVector":
        idx = lexicon.index(term)
        return cls(lexicon=lexicon, masses=tuple(1.0 if i == idx else 0.0 for i in range(lexicon.size)))

    def mass(self, term: str) -> float:
        return self.masses[self.lexicon.index(term)]

    def support(self) -> List[str]:
        return [t for t, m in zip(self.lexicon.terms, self.masses) if m > 0.0]

    def is_singleton(self) -> bool:
        return len(self.support()) == 1

    def top(self, k: int = 3) -> List[Tuple[str, float]]:
        """The k heaviest terms, ties kept in lexicon order."""
        ranked = sorted(
            (pair for pair in zip(self.lexicon.terms, self.masses) if pair[1] > 0.0),
            key=lambda pair: -pair[1],
        )
        return ranked[:k]

    def as_dict(self, nonzero_only: bool = False) -> Dict[str, float]:
        return {
            t: m for t, m in zip(self.lexicon.terms, self.masses)
            if not nonzero_only or m > 0.0
        }


class FuzzyPartition(BaseModel):
    """Triangular Ruspini partition of one angle, one modal angle per term."""
    model_config = ConfigDict(frozen=True)

    lexicon: Lexicon
    modal_angles: Tuple[float, ...]
    circular: bool = False

    @model_validator(mode="after")
    def _check_modal_angles(self):
        angles = self.modal_angles
        if len(angles) != self.lexicon.size:
            raise ValueError(
                f"partition '{self.lexicon.name}' needs exactly one modal angle per term "
                f"({self.lexicon.size} terms, {len(angles)} angles)"
            )
        if any(not math.isfinite(a) for a in angles):
            raise ValueError("modal angles must be finite")
        if any(b <= a for a, b in zip(angles, angles[1:])):
            raise ValueError(f"modal angles of '{self.lexicon.name}' must be strictly increasing")
        if self.circular and (angles[0] < -180.0 or angles[-1] >= 180.0):
            raise ValueError("circular modal angles must lie in [-180, 180)")
        return self

    @classmethod
    def from_mapping(cls, name: str, terms: Sequence[str], modal_angles: Mapping[str, float], circular: bool = False):
        """Build from the config document shape: lexicon list plus term -> degrees map."""
        missing = [t for t in terms if t not in modal_angles]
        if missing:
            raise DataValidationError(f"partition '{name}' has no modal angle for {missing}")
        extra = [t for t in modal_angles if t not in terms]
        if extra:
            raise DataValidationError(f"partition '{name}' has modal angles for unknown terms {extra}")
        try:
            angles = tuple(float(modal_angles[t]) for t in terms)
        except (TypeError, ValueError) as e:
            raise DataValidationError(f"partition '{name}' has a non-numeric modal angle: {e}") from e
        try:
            return cls(
                lexicon=Lexicon(name=name, terms=tuple(terms)),
                modal_angles=angles,
                circular=circular,
            )
        except ValidationError as e:
            raise DataValidationError(f"partition '{name}': {describe_validation_error(e)}") from e

    def modal_angle(self, term: str) -> float:
        return self.modal_angles[self.lexicon.index(term)]


def make_mass_vector(lexicon: Lexicon, masses: Iterable[float]) -> MassVector:
    """Normalize nonnegative masses to unit sum over ``lexicon``."""
    values = [float(m) for m in masses]
    if len(values) != lexicon.size:
        raise DataValidationError(
            f"dimension mismatch: {len(values)} masses for lexicon '{lexicon.name}' of size {lexicon.size}"
        )
    if any(not math.isfinite(m) for m in values):
        raise DataValidationError("masses must be finite")
    if any(m < 0.0 for m in values):
        raise DataValidationError(f"negative mass in {values}")
    total = math.fsum(values)
    if total <= 0.0:
        raise DataValidationError("all-zero mass vector cannot be normalized")
    return MassVector(lexicon=lexicon, masses=tuple(m / total for m in values))


def mass_vector_from_mapping(lexicon: Lexicon, masses: Mapping[str, float]) -> MassVector:
    unknown = [t for t in masses if t not in lexicon]
    if unknown:
        raise DataValidationError(f"unknown terms for lexicon '{lexicon.name}': {unknown}")
    return make_mass_vector(lexicon, [masses.get(t, 0.0) for t in lexicon.terms])


def require_same_lexicon(*vectors: MassVector) -> Lexicon:
    lexicon = vectors[0].lexicon
    for vector in vectors[1:]:
        if vector.lexicon != lexicon:
            raise DataValidationError(
                f"lexicon mismatch: '{lexicon.name}' vs '{vector.lexicon.name}'"
            )
    return lexicon
