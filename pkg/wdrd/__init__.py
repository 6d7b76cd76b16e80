"""wdrd - weakly distance-regular digraphs of valency 3."""

__version__ = "0.1.0"
