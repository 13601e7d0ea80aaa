"""
Seed a reference store with the 24 modal postures as references.

Each reference is the singleton LFS of one modal term, bound to an action of
the same name. Useful when the application recognizes modal postures
directly instead of learned ones.
"""

import argparse
import logging
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from models.lexicon import MassVector
from models.posture import ReferencePosture
from models.vocabulary import MODAL
from services.reference_service import ReferenceService

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


def modal_references(tolerance: float):
    return [
        ReferencePosture(name=term, lfs=MassVector.singleton(MODAL, term), tolerance=tolerance, action_id=term)
        for term in MODAL.terms
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("store", help="store path (.json, or .db for SQLite)")
    parser.add_argument("--tolerance", type=float, default=0.25,
                        help="tolerance radius; below elbow_min/2 keeps volumes disjoint")
    args = parser.parse_args()

    refs = modal_references(args.tolerance)
    ReferenceService(args.store, MODAL).save_references(refs)
    logging.info(f"Wrote {len(refs)} modal references to {args.store}")


if __name__ == "__main__":
    main()
