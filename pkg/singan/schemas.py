from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


# Singularity Schemas
class GrowthOut(BaseModel):
    type: str
    rate: Optional[str] = None
    slope: Optional[str] = None
    recurrence: Optional[str] = None


class SingularityOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    value: str
    seed: str
    source: str
    classification: str = Field(alias="class")
    pattern: List[str] = []
    notation: str = ""
    horizon: int
    truncation: int
    forward_valuations: List[int] = []
    backward_valuations: List[int] = []
    forward_components: List[List[int]] = []
    backward_components: List[List[int]] = []
    regular_window: List[str] = []
    growth: Optional[GrowthOut] = None


# Degree Growth Schemas
class RecurrenceOut(BaseModel):
    order: int
    coeffs: List[str]
    valid_from: int
    text: str


class RootOut(BaseModel):
    lo: str
    hi: str
    decimal: str


class VerdictOut(BaseModel):
    kind: str
    reason: str
    bound: Optional[str] = None


# Deautonomisation Schemas
class ConfinementCheckOut(BaseModel):
    value: str
    classification: str
    autonomous: str
    pattern: List[str] = []
    autonomous_pattern: List[str] = []
    matches_autonomous: bool


class DeautoOut(BaseModel):
    param: str
    constraint: str
    char_poly: Optional[str] = None
    factors: List[str] = []
    dominant_root: Optional[RootOut] = None
    predicted_entropy: Optional[str] = None
    loglog_rate: Optional[str] = None
    confinement_verified: bool
    checks: List[ConfinementCheckOut] = []


# Report
class AnalysisReport(BaseModel):
    name: str
    kind: str
    config: Dict[str, int]
    singular_values: List[str] = []
    singularities: List[SingularityOut] = []
    probes: List[SingularityOut] = []
    degrees: List[int] = []
    seeds_used: List[int] = []
    recurrence: Optional[RecurrenceOut] = None
    char_poly: Optional[str] = None
    factors: List[str] = []
    dominant_root: Optional[RootOut] = None
    entropy: str
    entropy_method: str
    growth_type: str
    polynomial_order: Optional[int] = None
    verdict: VerdictOut
    deauto: Optional[DeautoOut] = None
    notes: List[str] = []
    warnings: List[str] = []

    def find(self, value: str) -> Optional[SingularityOut]:
        """The singularity or probe report entered at ``value``."""
        for item in self.singularities + self.probes:
            if item.value == value:
                return item
        return None
