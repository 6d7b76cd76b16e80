"""Subcommands; each module registers its verbs on the top-level parser."""
from pathlib import Path

from wdrd.digraph import Digraph, load_digraph
from wdrd.errors import FormatError

PASS = 0
FAILED = 1
USAGE = 2


def read_digraph(path: Path) -> Digraph:
    """Load a digraph document from disk.

    Raises:
        FormatError: If the file is missing or does not parse
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FormatError(f"No such file: {path}")
    try:
        return load_digraph(text)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}")
