"""Constructive tree packings for 4-sets in bubble-sort networks."""

from .core import build_case1, build_trees, packing_from_edge_lists
from .plan import CasePlan, check_anchors, classify_case
from .search import FallbackExhausted, search_fallback, steiner_packing_k3
from .support import ScriptFailed

__all__ = [
    "CasePlan",
    "FallbackExhausted",
    "ScriptFailed",
    "build_case1",
    "build_trees",
    "check_anchors",
    "classify_case",
    "packing_from_edge_lists",
    "search_fallback",
    "steiner_packing_k3",
]
