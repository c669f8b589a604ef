import re
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

BIJECTION_KEY = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")

# A canonical individual is written as its feature list, an extra individual by name
IndividualRef = Union[List[str], str]


class KappaEntry(BaseModel):
    source: List[str]
    image: List[str]


class KappaDocument(BaseModel):
    """κ table of one intra-domain role"""
    mode: Literal["tabular", "additive"] = "tabular"
    tables: List[KappaEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_additive_keys(self):
        if self.mode == "additive":
            for entry in self.tables:
                if len(entry.source) != 1:
                    raise ValueError("additive kappa entries must map a single feature")
        return self


class InterpretationDocument(BaseModel):
    """Interpretation document: the on-disk and over-the-wire form of an interpretation"""
    model_config = ConfigDict(extra="forbid")

    description: Optional[str] = None
    features: List[str]
    domains: List[List[str]]
    forbidden: List[Union[Literal["ALL"], List[str]]] = Field(default_factory=lambda: ["ALL"])
    analogous: List[Tuple[int, int]] = Field(default_factory=list)
    bijections: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    mode: Literal["strong", "weak"] = "strong"
    natural_atoms: Dict[str, List[str]] = Field(default_factory=dict)
    plain_atoms: Dict[str, List[IndividualRef]] = Field(default_factory=dict)
    individuals: Dict[str, List[str]] = Field(default_factory=dict)
    roles: Dict[str, List[Tuple[IndividualRef, IndividualRef]]] = Field(default_factory=dict)
    kappa: Dict[str, KappaDocument] = Field(default_factory=dict)

    @field_validator("features")
    @classmethod
    def features_unique(cls, v):
        """Feature identifiers are unique and non-empty"""
        if len(set(v)) != len(v):
            raise ValueError("duplicate feature identifiers")
        if any(not f.strip() for f in v):
            raise ValueError("empty feature identifier")
        return v

    @field_validator("bijections")
    @classmethod
    def bijection_keys(cls, v):
        for key in v:
            if not BIJECTION_KEY.match(key):
                raise ValueError(f"bijection key '{key}' is not of the form 's->t'")
        return v

    @model_validator(mode="after")
    def check_vocabulary(self):
        """Roles are either ordinary or intra-domain, atoms either natural or plain"""
        both_roles = set(self.roles) & set(self.kappa)
        if both_roles:
            raise ValueError(f"roles declared both ordinary and intra-domain: {sorted(both_roles)}")
        both_atoms = set(self.natural_atoms) & set(self.plain_atoms)
        if both_atoms:
            raise ValueError(f"atoms declared both natural and plain: {sorted(both_atoms)}")
        return self

    def bijection_pairs(self) -> Dict[Tuple[int, int], Dict[str, str]]:
        pairs = {}
        for key, mapping in self.bijections.items():
            s, t = BIJECTION_KEY.match(key).groups()
            pairs[(int(s), int(t))] = mapping
        return pairs


class Violation(BaseModel):
    condition: str
    message: str
    witness: Dict[str, Any] = Field(default_factory=dict)


class ValidityReport(BaseModel):
    """Outcome of checking an interpretation against the domain-constrained conditions"""
    valid: bool
    mode: str
    notes: List[str] = Field(default_factory=list)
    violations: List[Violation] = Field(default_factory=list)


class AxiomVerdict(BaseModel):
    kind: Literal["ci", "ana", "sana", "nonempty", "natural", "intra"]
    axiom: str
    holds: bool
    detail: Optional[str] = None


class TBoxReport(BaseModel):
    holds: bool
    verdicts: List[AxiomVerdict] = Field(default_factory=list)

    @property
    def failures(self) -> List[AxiomVerdict]:
        return [v for v in self.verdicts if not v.holds]


class MuResult(BaseModel):
    source: str
    target: str
    phi_source: List[str]
    phi_target: List[str]
    translations: List[List[Tuple[int, int]]]
    labels: List[str]


class AnaResult(BaseModel):
    assertion: str
    strong: bool
    holds: bool
    left: MuResult
    right: MuResult


class ApResult(BaseModel):
    level: Literal["sets", "extensions", "features", "both"]
    holds: bool
    arguments: List[str]


class SideConditionTrace(BaseModel):
    concept: str
    source: Literal["assumed", "witnessed"]


class DerivationTrace(BaseModel):
    id: int
    conclusion: str
    rule: str
    premises: List[int] = Field(default_factory=list)
    side_conditions: List[SideConditionTrace] = Field(default_factory=list)


class ClosureReport(BaseModel):
    """Derived facts with provenance; the closure is sound but not complete"""
    facts: List[DerivationTrace]
    derived: int
    rounds: int
    bound_reached: bool
    depth_bound: int


class CountermodelResult(BaseModel):
    status: Literal["countermodel", "none-within-bounds"]
    query: str
    mode: str
    bounds: Dict[str, int]
    candidates: int
    interpretation: Optional[InterpretationDocument] = None
    caveat: Optional[str] = None


class Verdict(BaseModel):
    proposition: str
    strength: Literal["standard", "strong"] = "standard"
    premises_hold: bool
    conclusion_holds: bool

    @property
    def fails(self) -> bool:
        return self.premises_hold and not self.conclusion_holds


class CorpusCheck(BaseModel):
    proposition: str
    strength: Literal["standard", "strong"] = "standard"
    bindings: Dict[str, str]
    expect_premises: bool = True
    expect_conclusion: bool = False


class CorpusEntry(BaseModel):
    """One reproduced counterexample: an interpretation plus the checks it must reproduce"""
    id: str
    description: str
    interpretation: InterpretationDocument
    checks: List[CorpusCheck]


class CheckOutcome(BaseModel):
    proposition: str
    strength: str
    premises_hold: bool
    conclusion_holds: bool
    reproduced: bool


class CorpusResult(BaseModel):
    id: str
    valid: bool
    reproduced: bool
    checks: List[CheckOutcome]
    violations: List[Violation] = Field(default_factory=list)


class SweepResult(BaseModel):
    proposition: str
    mode: str
    strength: str
    seeds: int
    instances: int
    premises_held: int
    violations: int
    first_violation_seed: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.violations == 0


class DivergenceCell(BaseModel):
    rule: str
    mode: str
    strength: str
    expected: Literal["HOLDS", "FAILS"]
    observed: Literal["HOLDS", "FAILS"]
    evidence: str

    @property
    def agrees(self) -> bool:
        return self.expected == self.observed


class DivergenceReport(BaseModel):
    mode: str
    seeds: int
    cells: List[DivergenceCell]

    @property
    def agrees(self) -> bool:
        return all(cell.agrees for cell in self.cells)


# Service request bodies. A string names a bundled fixture.
InterpretationRef = Union[str, InterpretationDocument]


class ValidateRequest(BaseModel):
    interpretation: InterpretationRef


class CheckRequest(BaseModel):
    interpretation: InterpretationRef
    tbox: str = Field(..., description="TBox text or a bundled TBox name")


class MuRequest(BaseModel):
    interpretation: InterpretationRef
    source: str
    target: str


class AnaRequest(BaseModel):
    interpretation: InterpretationRef
    assertion: str = Field(..., description="C1 : C2 :: D1 : D2")
    strong: bool = False


class ApRequest(BaseModel):
    arguments: List[str] = Field(..., min_length=4, max_length=4)
    interpretation: Optional[InterpretationRef] = None
    level: Literal["extensions", "features", "both"] = "both"


class InferRequest(BaseModel):
    tbox: str
    witness: Optional[InterpretationRef] = None
    depth: Optional[int] = Field(None, ge=0, le=8)
    mode: Literal["strong", "weak"] = "strong"


class CountermodelRequest(BaseModel):
    tbox: str
    query: str
    max_features: Optional[int] = Field(None, ge=1)
    max_atoms: Optional[int] = Field(None, ge=1)
    mode: Literal["strong", "weak"] = "strong"


class HealthResponse(BaseModel):
    """Health check response"""
    status: str
    fixtures_loaded: int
    version: str
    timestamp: str


class WorkbenchInfo(BaseModel):
    version: str
    fixtures: List[str]
    tboxes: List[str]
    propositions: List[str]
    settings: Dict[str, Any]
