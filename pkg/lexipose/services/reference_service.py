import logging
from typing import List, Mapping

from pydantic import ValidationError

from core.errors import DataValidationError, describe_validation_error
from db import get_store
from models.lexicon import Lexicon, make_mass_vector, mass_vector_from_mapping
from models.posture import ReferencePosture


def reference_to_document(ref: ReferencePosture) -> dict:
    return {
        "name": ref.name,
        "masses": list(ref.lfs.masses),
        "tolerance": ref.tolerance,
        "action_class": ref.action_class,
        "action_id": ref.action_id,
    }


def reference_from_document(doc: dict, lexicon: Lexicon) -> ReferencePosture:
    """Accepts dense mass lists (lexicon order) or term -> mass objects."""
    if not isinstance(doc, dict):
        raise DataValidationError(f"reference entry must be an object, got {type(doc).__name__}")
    name = doc.get("name", "<unnamed>")
    try:
        masses = doc["masses"]
        if isinstance(masses, Mapping):
            lfs = mass_vector_from_mapping(lexicon, masses)
        else:
            lfs = make_mass_vector(lexicon, masses)
        return ReferencePosture(
            name=doc["name"],
            lfs=lfs,
            tolerance=doc.get("tolerance", 0.0),
            action_class=doc.get("action_class", "classical"),
            action_id=doc.get("action_id") or doc["name"],
        )
    except KeyError as e:
        raise DataValidationError(f"reference '{name}' is missing {e}") from e
    except ValidationError as e:
        raise DataValidationError(f"invalid reference '{name}': {describe_validation_error(e)}") from e
    except DataValidationError as e:
        raise DataValidationError(f"invalid reference '{name}': {e}") from e


class ReferenceService:
    """Loads and updates the reference postures of one store."""

    def __init__(self, store_path: str, lexicon: Lexicon):
        self.store_path = store_path
        self.lexicon = lexicon
        self.store = get_store(store_path)

    def load_references(self) -> List[ReferencePosture]:
        refs = [reference_from_document(doc, self.lexicon) for doc in self.store.load()]
        logging.info(f"Loaded {len(refs)} reference postures from {self.store_path}")
        return refs

    def upsert_reference(self, ref: ReferencePosture) -> bool:
        if ref.lfs.lexicon != self.lexicon:
            raise DataValidationError(
                f"reference '{ref.name}' is on '{ref.lfs.lexicon.name}', store expects '{self.lexicon.name}'"
            )
        replaced = self.store.upsert(reference_to_document(ref))
        if replaced:
            logging.warning(f"Replaced existing reference '{ref.name}' in {self.store_path}")
        else:
            logging.info(f"Added reference '{ref.name}' to {self.store_path}")
        return replaced

    def save_references(self, refs: List[ReferencePosture]):
        self.store.save([reference_to_document(ref) for ref in refs])
