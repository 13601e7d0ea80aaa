"""Write the generated modal ground distance matrix to a JSON file."""

import argparse
import logging
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from utils.ground import (
    DEFAULT_ELBOW_MIN,
    DEFAULT_MAX_DIST,
    DEFAULT_SHOULDER_MIN,
    build_modal_ground_distance,
    save_ground,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output")
    parser.add_argument("--max-dist", type=float, default=DEFAULT_MAX_DIST)
    parser.add_argument("--shoulder-min", type=float, default=DEFAULT_SHOULDER_MIN)
    parser.add_argument("--elbow-min", type=float, default=DEFAULT_ELBOW_MIN)
    args = parser.parse_args()

    ground = build_modal_ground_distance(args.max_dist, args.shoulder_min, args.elbow_min)
    save_ground(ground, args.output)
    logging.info(f"Wrote {ground.lexicon.size}x{ground.lexicon.size} ground matrix to {args.output}")


if __name__ == "__main__":
    main()
