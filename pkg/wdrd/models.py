"""Document models for digraph files and verification reports."""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Thinness = Literal["thin", "quasi-thin", "neither"]
Pair = Tuple[int, int]


class DigraphDocument(BaseModel):
    """Digraph file: ``{"n": <int>, "arcs": [[u, v], ...]}`` with 0-based vertices."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    arcs: List[Pair] = Field(default_factory=list)

    @field_validator("arcs")
    @classmethod
    def sort_arcs(cls, v):
        return sorted(v)

    @model_validator(mode="after")
    def check_vertices(self):
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"Arc ({u}, {v}) has a vertex outside 0..{self.n - 1}")
        return self


class WdrdWitness(BaseModel):
    """Two ordered pairs with the same label whose counts differ at (i, j)."""

    label: Pair
    first: Pair
    second: Pair
    relations: Tuple[Pair, Pair]
    counts: Pair


class WdrdReport(BaseModel):
    is_wdrd: bool
    witness: Optional[WdrdWitness] = None
    is_commutative: Optional[bool] = None
    thinness: Optional[Thinness] = None
    thinness_all: Optional[Thinness] = None
    conventions_agree: Optional[bool] = None
    pairs_checked: int = 0
    labels: List[Pair] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_consistency(self):
        if self.is_wdrd == (self.witness is not None):
            raise ValueError("witness must be present exactly when is_wdrd is false")
        if self.is_wdrd != (self.is_commutative is not None and self.thinness is not None):
            raise ValueError("is_commutative and thinness must be present exactly when is_wdrd is true")
        return self


class IdentityCheck(BaseModel):
    name: str
    passed: bool
    tuples_checked: int = 0
    witness: Optional[List[int]] = None
    detail: str = ""


class IdentityReport(BaseModel):
    checks: List[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> IdentityCheck:
        return next(c for c in self.checks if c.name == name)


class SchemeDocument(BaseModel):
    labels: List[Pair]
    valencies: List[int]
    tensor: List[List[List[int]]]
    identities: IdentityReport


class Table1Mismatch(BaseModel):
    element: List[int]
    formula: Pair
    bfs: Pair


class Table1Report(BaseModel):
    family: str
    elements_checked: int
    mismatches: List[Table1Mismatch] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


class FamilyReport(BaseModel):
    family: str
    vertices: int
    strongly_connected: bool
    out_degrees: List[int]
    in_degrees: List[int]
    girth: Optional[int] = None
    arc_types: List[Pair] = Field(default_factory=list)
    one_arc_type: bool = False
    wdrd: Optional[WdrdReport] = None
    identities: Optional[IdentityReport] = None
    hypothesis_notes: List[str] = Field(default_factory=list)
    iso_notes: List[str] = Field(default_factory=list)
    passed: bool = False


class CheckDocument(BaseModel):
    """Output of ``wdrd check``: structure of the digraph plus its WDRD report."""

    vertices: int
    strongly_connected: bool
    girth: Optional[int] = None
    arc_types: List[Pair] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    report: Optional[WdrdReport] = None


class ClassEntry(BaseModel):
    certificate: str
    group: str
    connection_set: List[int]
    tag: str
    matched_tags: List[str] = Field(default_factory=list)
    digraph: DigraphDocument


class ClassificationReport(BaseModel):
    order: int
    complete_catalog: bool
    groups: List[str]
    candidates_examined: int
    qualifying_classes: List[ClassEntry] = Field(default_factory=list)
    expected_members: List[str] = Field(default_factory=list)
    missing_members: List[str] = Field(default_factory=list)
    note: str = ""

    @property
    def unmatched(self) -> List[ClassEntry]:
        return [c for c in self.qualifying_classes if c.tag == "UNMATCHED"]

    @property
    def passed(self) -> bool:
        return not self.unmatched and not self.missing_members


class IsoDocument(BaseModel):
    isomorphic: bool
    certificates: Tuple[str, str]
