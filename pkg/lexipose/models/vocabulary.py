"""Built-in lexicons for right upper-limb postures."""

from core.errors import DataValidationError
from models.lexicon import Lexicon

A_THETA_TERMS = ("down", "horizon", "up")
A_PSI_TERMS = ("rear", "outside", "front", "inside")
F_THETA_TERMS = ("close", "middle", "open")
F_PSI_TERMS = ("vertical", "horizontal")

ARM_TERMS = ("down", "front", "up", "outside", "rear", "inside")
# Table vocabulary; the five-term {open, vclose, hclose, vmiddle, hmiddle} variant is not used.
FOREARM_TERMS = ("open", "close", "hmiddle", "vmiddle")

FOREARM_SUFFIX = {
    "open": "",
    "close": "folded",
    "hmiddle": "hmiddle",
    "vmiddle": "vmiddle",
}

MODAL_TERMS = tuple(
    f"{arm}{FOREARM_SUFFIX[forearm]}"
    for forearm in FOREARM_TERMS
    for arm in ("front", "outside", "inside", "down", "up", "rear")
)

A_THETA = Lexicon(name="a_theta", terms=A_THETA_TERMS)
A_PSI = Lexicon(name="a_psi", terms=A_PSI_TERMS)
F_THETA = Lexicon(name="f_theta", terms=F_THETA_TERMS)
F_PSI = Lexicon(name="f_psi", terms=F_PSI_TERMS)
ARM = Lexicon(name="arm", terms=ARM_TERMS)
FOREARM = Lexicon(name="forearm", terms=FOREARM_TERMS)
MODAL = Lexicon(name="modal", terms=MODAL_TERMS)


def modal_term(arm: str, forearm: str) -> str:
    return f"{arm}{FOREARM_SUFFIX[forearm]}"


def split_modal_term(term: str) -> tuple:
    """Inverse of modal_term: (arm, forearm) components of a modal term."""
    for forearm, suffix in FOREARM_SUFFIX.items():
        if not suffix:
            continue
        if term.endswith(suffix) and term[: -len(suffix)] in ARM_TERMS:
            return term[: -len(suffix)], forearm
    if term in ARM_TERMS:
        return term, "open"
    raise DataValidationError(f"'{term}' is not a modal posture term")
