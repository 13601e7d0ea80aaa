import logging
import sys

from cli.commands import COMMANDS
from cli.parser import build_parser
from core.config import load_settings
from core.errors import LexiposeError


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    settings = load_settings()

    # Configure logging (standard error; standard output carries results)
    level = (args.log_level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )

    try:
        return COMMANDS[args.command](args, settings, out or sys.stdout)
    except LexiposeError as e:
        logging.debug("Command failed", exc_info=True)
        print(f"lexipose {args.command}: error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
