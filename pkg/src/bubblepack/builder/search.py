"""Search-based packing: the repair fallback and the 3-terminal packer.

The greedy packer grows one tree at a time with a Steiner heuristic that
penalizes walking through unused neighbors of terminals (each terminal has
exactly one spare neighbor to waste across the whole packing).  Restarts
reshuffle tie-breaking through a deterministically seeded priority map, so
output stays a pure function of the inputs.  Regions small enough for the
exhaustive oracle get rescued exactly instead of failing.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from ..flow import IndexedSubgraph
from ..graph import BubbleGraph, Region, whole_region
from ..oracle import ORACLE_VERTEX_GUARD, max_tree_packing
from ..perms import Perm, rank
from ..trees import Edge, TreeCertificate, TreePacking, mk_edge, tree_vertices
from ..verify import verify_packing
from .support import ClassEmbedding, steiner_tree

MAX_RESTARTS = 48
KEEP_PARTIAL_RESTARTS = 3
TREE_BUDGET = 10_000


class FallbackExhausted(RuntimeError):
    def __init__(self, reason: str, plan=None):
        self.plan = plan
        super().__init__(reason)


def _consume(edges: Sequence[Edge], terminals: frozenset[Perm], blocked: set[Perm], used_s: set[Edge]):
    for e in edges:
        a, b = e
        if a in terminals and b in terminals:
            used_s.add(e)
        if a not in terminals:
            blocked.add(a)
        if b not in terminals:
            blocked.add(b)


def _grow(
    idx: IndexedSubgraph,
    terminals: tuple[Perm, ...],
    k: int,
    base: Sequence[tuple[Edge, ...]],
    priority: Optional[dict[Perm, int]],
    soft: frozenset[Perm],
) -> Optional[list[tuple[Edge, ...]]]:
    tset = frozenset(terminals)
    blocked: set[Perm] = set()
    used_s: set[Edge] = set()
    trees = [tuple(t) for t in base]
    for t in trees:
        _consume(t, tset, blocked, used_s)
    while len(trees) < k:
        edges = steiner_tree(
            idx,
            terminals,
            forbidden=frozenset(blocked),
            banned_edges=frozenset(used_s),
            soft=soft,
            priority=priority,
            budget=TREE_BUDGET,
        )
        if edges is None:
            return None
        trees.append(tuple(edges))
        _consume(edges, tset, blocked, used_s)
    return trees


def _priority_map(idx: IndexedSubgraph, terminals, attempt: int) -> dict[Perm, int]:
    seed = f"{idx.n}:{','.join(str(rank(t)) for t in terminals)}:{attempt}"
    rng = random.Random(seed)
    order = list(range(len(idx.verts)))
    rng.shuffle(order)
    return {idx.verts[i]: order[i] for i in range(len(order))}


def _soft_set(idx: IndexedSubgraph, terminals) -> frozenset[Perm]:
    g = BubbleGraph(idx.n)
    tset = set(terminals)
    soft = set()
    for t in terminals:
        for v in g.neighbors(t):
            if v in idx.index and v not in tset:
                soft.add(v)
    return frozenset(soft)


def _oracle_rescue(region: Region, terminals, k: int) -> Optional[list[tuple[Edge, ...]]]:
    if region.size_upper_bound() > ORACLE_VERTEX_GUARD:
        return None
    res = max_tree_packing(region, terminals)
    if res.value < k:
        return None
    return [t.edges for t in res.witness.trees[:k]]


def search_fallback(
    region: Region,
    terminals,
    k: int,
    partial: Optional[TreePacking] = None,
    plan=None,
) -> TreePacking:
    """Extend or rebuild to k internally disjoint trees by seeded greedy search.

    Verifier-clean trees from ``partial`` are kept for the first few restarts
    and dropped afterwards (a scripted tree can be what blocks completion).
    """
    terminals = tuple(sorted(set(terminals)))
    idx = IndexedSubgraph.from_region(region)
    n = region.n
    g = BubbleGraph(n)
    clean = salvage_clean_trees(g, terminals, partial)
    if len(clean) >= k:
        kept = clean[:k]
        return _packing(n, terminals, kept, partial, plan)
    soft = _soft_set(idx, terminals)
    for attempt in range(MAX_RESTARTS):
        base = [t.edges for t in clean] if attempt < KEEP_PARTIAL_RESTARTS else []
        priority = None if attempt == 0 else _priority_map(idx, terminals, attempt)
        grown = _grow(idx, terminals, k, base, priority, soft)
        if grown is None:
            continue
        kept_certs = clean[: len(base)]
        trees = list(kept_certs) + [
            TreeCertificate(edges=t, terminals=frozenset(terminals), provenance="fallback")
            for t in grown[len(base) :]
        ]
        candidate = _packing(n, terminals, trees, partial, plan)
        if verify_packing(g, terminals, candidate).ok:
            return candidate
    rescued = _oracle_rescue(region, terminals, k)
    if rescued is not None:
        trees = [
            TreeCertificate(edges=t, terminals=frozenset(terminals), provenance="fallback-oracle")
            for t in rescued
        ]
        return _packing(n, terminals, trees, partial, plan)
    raise FallbackExhausted(
        f"fallback budget exhausted at {k} trees for {len(terminals)} terminals", plan
    )


def _packing(n, terminals, trees, partial, plan) -> TreePacking:
    case_path = ""
    if plan is not None:
        case_path = plan.case + "+fallback"
    elif partial is not None:
        case_path = partial.case_path + "+fallback"
    flags = tuple(t.provenance.startswith("fallback") for t in trees)
    return TreePacking(
        n=n,
        terminals=tuple(terminals),
        trees=tuple(trees),
        case_path=case_path or "fallback",
        fallback_used=flags,
    )


def salvage_clean_trees(g: BubbleGraph, terminals, partial: Optional[TreePacking]) -> list[TreeCertificate]:
    """Greedy maximal pairwise-compatible subfamily of individually valid trees."""
    if partial is None:
        return []
    tset = frozenset(terminals)
    kept: list[TreeCertificate] = []
    kept_verts: list[set[Perm]] = []
    kept_edges: set[Edge] = set()
    for tree in partial.trees:
        single = TreePacking(n=partial.n, terminals=tuple(sorted(tset)), trees=(tree,))
        if not verify_packing(g, tset, single).ok:
            continue
        verts = tree_vertices(tree.edges)
        if any((verts & other) - tset for other in kept_verts):
            continue
        if set(tree.edges) & kept_edges:
            continue
        kept.append(tree)
        kept_verts.append(verts)
        kept_edges |= set(tree.edges)
    return kept


def steiner_packing_k3(region: Region, S3, k: int) -> TreePacking:
    """k internally disjoint trees connecting three terminals in a
    bubble-sort-isomorphic suffix class, found by verified search."""
    terminals = tuple(sorted(set(S3)))
    if len(terminals) != 3:
        raise ValueError("exactly three terminals required")
    if region.kind == "suffix" and len(region.tails) == 1:
        emb = ClassEmbedding(region.n, region.tails[0])
        small = tuple(sorted(emb.project(t) for t in terminals))
        inner = _packing_search_3(whole_region(emb.arity), small, k)
        trees = tuple(
            TreeCertificate(
                edges=emb.lift_edges(t.edges),
                terminals=frozenset(terminals),
                provenance=t.provenance,
            )
            for t in inner.trees
        )
        return TreePacking(
            n=region.n,
            terminals=terminals,
            trees=trees,
            case_path=inner.case_path,
            fallback_used=inner.fallback_used,
        )
    if region.kind == "whole":
        return _packing_search_3(region, terminals, k)
    raise ValueError("region must be a single suffix class or a whole graph")


def _packing_search_3(region: Region, terminals, k: int) -> TreePacking:
    idx = IndexedSubgraph.from_region(region)
    g = BubbleGraph(region.n)
    soft = _soft_set(idx, terminals)
    for attempt in range(MAX_RESTARTS):
        priority = None if attempt == 0 else _priority_map(idx, terminals, attempt)
        grown = _grow(idx, terminals, k, [], priority, soft)
        if grown is None:
            continue
        trees = tuple(
            TreeCertificate(edges=t, terminals=frozenset(terminals), provenance="steiner-search")
            for t in grown
        )
        packing = TreePacking(
            n=region.n,
            terminals=tuple(terminals),
            trees=trees,
            case_path="k3-search",
            fallback_used=tuple(False for _ in trees),
        )
        if verify_packing(g, terminals, packing).ok:
            return packing
    rescued = _oracle_rescue(region, terminals, k)
    if rescued is not None:
        trees = tuple(
            TreeCertificate(edges=t, terminals=frozenset(terminals), provenance="steiner-oracle")
            for t in rescued
        )
        return TreePacking(
            n=region.n,
            terminals=tuple(terminals),
            trees=trees,
            case_path="k3-search",
            fallback_used=tuple(False for _ in trees),
        )
    raise FallbackExhausted(f"no {k}-tree packing found for 3 terminals")
