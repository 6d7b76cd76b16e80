"""wdrd - weakly distance-regular digraphs of valency 3."""
import argparse
import logging
import sys
from typing import Optional, Sequence

from wdrd import __version__
from wdrd.commands import USAGE, build, search, verify
from wdrd.config import settings
from wdrd.errors import WdrdError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdrd",
        description="Construct and verify weakly distance-regular digraphs of valency 3",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", help="Enable detailed debug logging")
    parser.add_argument("--human", action="store_true", help="Print reports as text instead of JSON")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (build, verify, search):
        module.register(subparsers)
    return parser


def configure_logging():
    logging.basicConfig(
        level=logging.DEBUG if settings.debug else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status.

    Returns:
        0 on pass, 1 on a reported failure, 2 on usage or input errors
    """
    args = build_parser().parse_args(argv)
    if args.debug:
        settings.debug = True
    configure_logging()

    if settings.debug:
        logger.info(f"[DEBUG] Catalog directory: {settings.catalog_dir}")
        logger.info(f"[DEBUG] Sporadic cache: {settings.sporadic_cache}")
        logger.info(f"[DEBUG] Workers: {settings.workers}")

    try:
        return args.handler(args)
    except WdrdError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return USAGE
    except OSError as exc:
        logger.error(f"I/O error: {exc}")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
