"""Top-level tree-packing construction.

``build_trees`` classifies the terminal set, runs the scripted construction
for its case, verifies the result, and routes any shortfall to the search
fallback with the verifier-clean prefix retained.  The arity-3 base returns
the minimal subtree of the 6-cycle through the four terminals; the all-in-
one-part case recurses into the main part re-labeled as a smaller
bubble-sort graph and adds one tree through everything outside.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence

from ..graph import BubbleGraph, main_part, main_parts, region_minus, whole_region
from ..perms import Perm
from ..trees import Edge, TreeCertificate, TreePacking, mk_edge, path_edges
from ..verify import verify_packing
from .plan import CasePlan, classify_case
from .search import salvage_clean_trees, search_fallback
from .support import ClassEmbedding, ScriptFailed, out, parts_index, spanning_tree_of


def packing_from_edge_lists(
    n: int,
    terminals: Sequence[Perm],
    edge_lists: Sequence[Sequence[Edge]],
    case_path: str,
    flags: Optional[Sequence[bool]] = None,
    provenances: Optional[Sequence[str]] = None,
) -> TreePacking:
    terminals = tuple(sorted(terminals))
    trees = tuple(
        TreeCertificate(
            edges=tuple(dict.fromkeys(edges)),
            terminals=frozenset(terminals),
            provenance=(provenances[i] if provenances else f"case {case_path}"),
        )
        for i, edges in enumerate(edge_lists)
    )
    return TreePacking(
        n=n,
        terminals=terminals,
        trees=trees,
        case_path=case_path,
        fallback_used=tuple(flags) if flags else tuple(False for _ in trees),
    )


# ---------------------------------------------------------------------------
# Base case: the 6-cycle


def _cycle_order(n: int = 3) -> list[Perm]:
    g = BubbleGraph(3)
    start = (1, 2, 3)
    prev, cur = None, start
    order = [start]
    while True:
        nbrs = sorted(v for v in g.neighbors(cur) if v != prev)
        prev, cur = cur, nbrs[0]
        if cur == start:
            break
        order.append(cur)
    return order


def base_cycle_tree(S: Sequence[Perm]) -> tuple[Edge, ...]:
    """Minimal subtree of the 6-cycle spanning the four terminals.

    Drop the interior of the widest terminal-free arc; ties go to the arc
    starting earliest on the canonical traversal from the rank-least vertex.
    """
    order = _cycle_order()
    inS = [v in set(S) for v in order]
    m = len(order)
    gaps = []  # (length, start index) of maximal runs strictly between terminals
    for i in range(m):
        if inS[i]:
            j = (i + 1) % m
            length = 0
            while not inS[j]:
                length += 1
                j = (j + 1) % m
            gaps.append((length, i))
    length, start = max(gaps, key=lambda t: (t[0], -t[1]))
    drop = {((start + 1 + o) % m) for o in range(length)}
    edges = []
    for i in range(m):
        j = (i + 1) % m
        if i in drop or j in drop:
            continue
        edges.append(mk_edge(order[i], order[j]))
    return tuple(edges)


# ---------------------------------------------------------------------------
# Case 1: all four terminals inside one main part


def build_case1(plan: CasePlan) -> TreePacking:
    n = plan.n
    S = tuple(sorted(plan.roles[r] for r in "xyzw"))
    part = main_part(S[0])
    emb = ClassEmbedding(n, (part,))
    inner = build_trees(n - 1, tuple(emb.project(v) for v in S))
    lifted = [
        TreeCertificate(
            edges=emb.lift_edges(t.edges),
            terminals=frozenset(S),
            provenance=t.provenance,
        )
        for t in inner.trees
    ]
    outside = parts_index(n, [i for i in range(1, n + 1) if i != part])
    tree_edges = list(spanning_tree_of(outside))
    for v in S:
        tree_edges.append(mk_edge(v, out(v)))
    lifted.append(
        TreeCertificate(
            edges=tuple(tree_edges), terminals=frozenset(S), provenance="case 1 outer"
        )
    )
    plan.regions.append(main_parts(n, [i for i in range(1, n + 1) if i != part]))
    case_path = "1>" + inner.case_path
    return TreePacking(
        n=n,
        terminals=S,
        trees=tuple(lifted),
        case_path=case_path,
        fallback_used=inner.fallback_used + (False,),
    )


# ---------------------------------------------------------------------------
# Dispatch

_CASE_BUILDERS: dict[str, Callable[[CasePlan], TreePacking]] = {}


def register_case(case_id: str):
    def deco(fn):
        _CASE_BUILDERS[case_id] = fn
        return fn

    return deco


register_case("1")(build_case1)


def build_trees(n: int, S) -> TreePacking:
    """n-2 internally disjoint trees connecting the four terminals."""
    terminals = tuple(sorted(set(S)))
    if len(terminals) != 4:
        raise ValueError("exactly four distinct terminals required")
    if any(len(v) != n for v in terminals):
        raise ValueError("terminal arity mismatch")
    if n < 3:
        raise ValueError("arity must be at least 3")
    if n == 3:
        edges = base_cycle_tree(terminals)
        return packing_from_edge_lists(3, terminals, [edges], "base", provenances=["base 6-cycle"])
    g = BubbleGraph(n)
    plan = classify_case(n, terminals)
    builder = _CASE_BUILDERS.get(plan.case)
    partial: Optional[TreePacking] = None
    if builder is not None:
        try:
            packing = builder(plan)
            if len(packing.trees) == n - 2 and verify_packing(g, terminals, packing).ok:
                return packing
            partial = packing
        except ScriptFailed as exc:
            plan.note(f"script failed: {exc.reason}")
            if exc.partial:
                partial = packing_from_edge_lists(n, terminals, exc.partial, plan.case)
    else:
        plan.note("no scripted construction for this case")
    return search_fallback(whole_region(n), terminals, n - 2, partial, plan)
