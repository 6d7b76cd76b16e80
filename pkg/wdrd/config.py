"""Toolkit configuration using Pydantic settings."""
import os
from pathlib import Path
from typing import Optional, Union

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

PACKAGE_DIR = Path(__file__).resolve().parent


def parse_workers(v) -> int:
    """Parse a worker count.

    ``"auto"`` resolves to the CPU count; anything else must be a
    positive integer.
    """
    if isinstance(v, int):
        if v < 1:
            raise ValueError(f"workers must be positive, got {v}")
        return v

    v_str = str(v).strip().lower()
    if v_str == "auto":
        return os.cpu_count() or 1
    if not v_str.isdigit() or int(v_str) < 1:
        raise ValueError(f"Invalid workers value: {v}. Use a positive integer or 'auto'")
    return int(v_str)


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix ``WDRD_``)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        # Environment variables take precedence over .env file
        env_prefix="WDRD_",
        extra="ignore",
    )

    # Data locations
    data_dir: Path = PACKAGE_DIR / "data"
    catalog_dir: Path = PACKAGE_DIR / "data" / "groups"
    sporadic_cache: Optional[Path] = None

    # Enumeration
    workers: Union[str, int] = 1  # positive integer or "auto"
    fast_cayley_check: bool = True
    max_group_order: int = 128

    # Sporadic search
    search_node_limit: int = 5_000_000

    debug: bool = False  # Enable detailed debug logging

    @field_validator("workers", mode="before")
    @classmethod
    def parse_workers(cls, v):
        return parse_workers(v)

    @field_validator("data_dir", "catalog_dir", "sporadic_cache", mode="after")
    @classmethod
    def expand_path(cls, v):
        """Expand user home and make paths absolute."""
        if v is None:
            return v
        return Path(v).expanduser().resolve()

    @field_validator("max_group_order", "search_node_limit")
    @classmethod
    def check_positive(cls, v):
        if v < 1:
            raise ValueError(f"must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def default_cache(self):
        """Place the sporadic cache under ``data_dir`` unless set explicitly."""
        if self.sporadic_cache is None:
            self.sporadic_cache = self.data_dir / "sporadic18.json"
        return self


settings = Settings()
