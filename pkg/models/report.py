"""
Lemma report models, serialized to JSON through pydantic.
"""
from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class LemmaId(str, Enum):
    NO_TWO_LINKAGES = "NoTwoLinkages"
    HITTING_ROBUST = "HittingRobust"
    B3_CENTER_BOTTLENECK = "B3CenterBottleneck"
    B3_LAYER_PACKING = "B3LayerPacking"
    NO_B4 = "NoB4"
    NO_B4_OVER_B3 = "NoB4OverB3"
    NO_B5_OVER_B3 = "NoB5OverB3"
    B2_BOTTLENECK = "B2Bottleneck"
    NO_B7 = "NoB7"
    B6_PACKING = "B6Packing"
    B7_PACKING_WITH_CD = "B7PackingWithCD"
    B8_PACKING_WITH_B1 = "B8PackingWithB1"
    B9_PACKING_WITH_B2 = "B9PackingWithB2"
    GSTAR_EXPANSION_LINKAGE = "GStarExpansionLinkage"


class Verdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    BUDGET_EXCEEDED = "budget_exceeded"


class TrialMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class DeletionTrial(BaseModel):
    """Deletion sets a universal "even after deleting k edges" claim was checked on."""

    mode: TrialMode
    size: int
    seed: Optional[int] = None
    count: int = 0
    universe: int = 0

    model_config = ConfigDict(use_enum_values=False)


class LemmaReport(BaseModel):
    lemma_id: LemmaId
    params: Dict[str, Any] = Field(default_factory=dict)
    verdict: Verdict
    vacuous: bool = False
    sampled: bool = False
    trial: Optional[DeletionTrial] = None
    witness: Optional[Dict[str, Any]] = None
    stats: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    wall_clock: float = 0.0

    def deterministic_json(self) -> str:
        return self.model_dump_json(exclude={"wall_clock"})

    def summary_row(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        flags = []
        if self.vacuous:
            flags.append("vacuous")
        if self.sampled:
            flags.append("sampled")
        suffix = f" ({', '.join(flags)})" if flags else ""
        return f"{self.lemma_id.value:<24} {params:<28} {self.verdict.value}{suffix}"


class ReportSummary(BaseModel):
    reports: List[LemmaReport]

    def table(self) -> str:
        lines = [f"{'lemma':<24} {'params':<28} verdict", "-" * 64]
        lines.extend(r.summary_row() for r in self.reports)
        return "\n".join(lines)
