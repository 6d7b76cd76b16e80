"""Tests for file utility functions."""
import json

from wdrd.utils.file_utils import (
    calculate_sha256,
    calculate_sha256_from_bytes,
    canonical_json,
    sidecar_path,
    verify_checksum,
    write_with_checksum,
)


def test_calculate_sha256(tmp_path):
    """Test SHA-256 calculation for a file."""
    test_file = tmp_path / "test.txt"
    test_file.write_bytes(b"Hello, this is test content for SHA-256 calculation.")

    digest = calculate_sha256(test_file)

    # Verify it's a valid SHA-256 hash (64 hex characters)
    assert len(digest) == 64
    assert all(c in "0123456789abcdef" for c in digest)
    assert digest == calculate_sha256(test_file)


def test_calculate_sha256_large_file(tmp_path):
    """Test SHA-256 calculation for a large file (chunked reading)."""
    test_file = tmp_path / "large_test.bin"
    content = b"x" * (10 * 1024)  # 10KB
    test_file.write_bytes(content)

    assert calculate_sha256(test_file) == calculate_sha256_from_bytes(content)


def test_calculate_sha256_from_bytes():
    """Test SHA-256 of the empty input."""
    assert calculate_sha256_from_bytes(b"") == (
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    )


def test_write_with_checksum(tmp_path):
    """Test that writing a file also writes a matching sidecar."""
    path = tmp_path / "cache" / "doc.json"
    digest = write_with_checksum(path, '{"n": 1}\n')

    assert path.read_text() == '{"n": 1}\n'
    assert sidecar_path(path).read_text() == f"{digest}  doc.json\n"
    assert verify_checksum(path) is True


def test_verify_checksum_detects_tampering(tmp_path):
    """Test that a modified file no longer matches its sidecar."""
    path = tmp_path / "doc.json"
    write_with_checksum(path, '{"n": 1}\n')
    path.write_text('{"n": 2}\n')

    assert verify_checksum(path) is False


def test_verify_checksum_without_sidecar(tmp_path):
    """Test that a file without a sidecar is reported as unchecked."""
    path = tmp_path / "doc.json"
    path.write_text("{}")

    assert verify_checksum(path) is None


def test_canonical_json():
    """Test that canonical JSON sorts keys and ends with a newline."""
    text = canonical_json({"n": 2, "arcs": [[0, 1]]})

    assert text.endswith("\n")
    assert text.index('"arcs"') < text.index('"n"')
    assert json.loads(text) == {"n": 2, "arcs": [[0, 1]]}
