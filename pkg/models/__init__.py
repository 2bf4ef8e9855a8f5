from .graph import Edge, EdgeClass, LabeledGraph, Path, Role, RoleKind, edge_of, path_edges
from .embedding import (
    Embedding,
    Linkage,
    Packing,
    PartConstraint,
    Pattern,
    PatternChain,
    SearchConstraints,
    SearchResult,
    SearchStats,
    SearchStatus,
)
from .specs import BrickCertificate, CondensedWallSpec, GStarSpec, WallSpec
from .report import DeletionTrial, LemmaId, LemmaReport, ReportSummary, TrialMode, Verdict

__all__ = [
    "Edge",
    "EdgeClass",
    "LabeledGraph",
    "Path",
    "Role",
    "RoleKind",
    "edge_of",
    "path_edges",
    "Embedding",
    "Linkage",
    "Packing",
    "PartConstraint",
    "Pattern",
    "PatternChain",
    "SearchConstraints",
    "SearchResult",
    "SearchStats",
    "SearchStatus",
    "BrickCertificate",
    "CondensedWallSpec",
    "GStarSpec",
    "WallSpec",
    "DeletionTrial",
    "LemmaId",
    "LemmaReport",
    "ReportSummary",
    "TrialMode",
    "Verdict",
]
