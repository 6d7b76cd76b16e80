"""Report output: canonical JSON by default, Jinja2 text with ``--human``."""
import sys
from pathlib import Path
from typing import Any, Optional, TextIO

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel

from wdrd.classify import class_counts
from wdrd.config import PACKAGE_DIR
from wdrd.utils.file_utils import canonical_json

templates = Environment(
    loader=FileSystemLoader(str(PACKAGE_DIR / "templates")),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
)


def pair(value) -> str:
    return f"({value[0]},{value[1]})"


templates.filters["pair"] = pair
templates.filters["class_counts"] = class_counts


def to_plain(document: Any) -> Any:
    if isinstance(document, BaseModel):
        return document.model_dump(mode="json")
    if isinstance(document, list):
        return [to_plain(item) for item in document]
    return document


def render(document: Any, template: str, human: bool = False) -> str:
    """Render a report document.

    Args:
        document: Pydantic model or list of models
        template: Template file used for the text rendering
        human: Render through the template instead of JSON

    Returns:
        The rendered text, newline terminated
    """
    if not human:
        return canonical_json(to_plain(document))
    return templates.get_template(template).render(doc=document)


def emit(document: Any, template: str, human: bool = False, out: Optional[Path] = None, stream: Optional[TextIO] = None):
    """Write a rendered report to ``out`` or to stdout."""
    text = render(document, template, human)
    if out is not None:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        (stream or sys.stdout).write(text)
