import argparse
from typing import get_args

from models.decision import StrategyName
from models.posture import ActionClass


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="model configuration JSON (partitions, rule tables, ground, decision)")
    common.add_argument("--store", help="reference store (.json array, or .db/.sqlite for SQLite)")
    common.add_argument("--ground", help="ground distance matrix JSON overriding the generator")
    common.add_argument("--strategy", choices=get_args(StrategyName), help="decision strategy override")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--skip-bad-frames", action="store_true", help="warn and continue on invalid frames")
    common.add_argument("--workers", type=int, help="frame worker threads")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="lexipose",
        description="Upper-limb posture recognition with lexical fuzzy subsets and transportation distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fuzzify = sub.add_parser("fuzzify", parents=[common], help="print the modal-posture LFS of every frame")
    fuzzify.add_argument("input", help="skeleton recording (JSON lines)")

    learn = sub.add_parser("learn", parents=[common], help="learn a reference posture into the store")
    learn.add_argument("input", help="skeleton recording (JSON lines)")
    learn.add_argument("--name", required=True)
    learn.add_argument("--tolerance", type=float, required=True)
    learn.add_argument("--action-class", choices=get_args(ActionClass), default="classical")
    learn.add_argument("--action-id", help="defaults to the reference name")

    decide = sub.add_parser("decide", parents=[common], help="recognize reference postures frame by frame")
    decide.add_argument("input", help="skeleton recording (JSON lines)")
    decide.add_argument("--top-k", type=int, default=3, help="modal terms listed per frame")

    sub.add_parser("distance", parents=[common], help="pairwise distances between stored references")
    sub.add_parser("validate", parents=[common], help="check configuration, ground and tolerance volumes")
    return parser
