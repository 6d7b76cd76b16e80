"""Utility functions for checksums and report files."""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Optional

logger = logging.getLogger(__name__)

SIDECAR_SUFFIX = ".sha256"


def calculate_sha256(file_path: Path) -> str:
    """
    Calculate SHA-256 hash of a file.

    Args:
        file_path: Path to the file

    Returns:
        SHA-256 hash as hexadecimal string
    """
    sha = hashlib.sha256()

    with open(file_path, "rb") as f:
        for chunk in iter(lambda: f.read(8192), b""):
            sha.update(chunk)

    return sha.hexdigest()


def calculate_sha256_from_bytes(data: bytes) -> str:
    """
    Calculate SHA-256 hash from byte data.

    Args:
        data: Byte data

    Returns:
        SHA-256 hash as hexadecimal string
    """
    return hashlib.sha256(data).hexdigest()


def sidecar_path(file_path: Path) -> Path:
    return file_path.with_name(file_path.name + SIDECAR_SUFFIX)


def write_with_checksum(file_path: Path, text: str) -> str:
    """
    Write a text file and a ``.sha256`` sidecar holding its checksum.

    Args:
        file_path: Target file
        text: Contents

    Returns:
        The checksum written to the sidecar
    """
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(text, encoding="utf-8")
    digest = calculate_sha256(file_path)
    sidecar_path(file_path).write_text(f"{digest}  {file_path.name}\n", encoding="utf-8")
    return digest


def verify_checksum(file_path: Path) -> Optional[bool]:
    """
    Compare a file with its sidecar checksum.

    Args:
        file_path: File to check

    Returns:
        None when there is no sidecar, otherwise whether the checksum matches
    """
    sidecar = sidecar_path(file_path)
    if not sidecar.exists():
        return None
    expected = sidecar.read_text(encoding="utf-8").split()
    actual = calculate_sha256(file_path)
    if not expected or expected[0] != actual:
        logger.warning(f"Checksum mismatch for {file_path}: sidecar {expected[:1]}, actual {actual}")
        return False
    return True


def canonical_json(document: Any) -> str:
    """Serialize with sorted keys and two-space indent so output is byte-stable."""
    return json.dumps(document, sort_keys=True, indent=2) + "\n"
