"""Shared machinery for the scripted tree constructions.

The constructions repeatedly follow one pattern: path families inside one or
two main parts, each path carrying an "exit anchor" in a third region, and a
family of pairwise disjoint cross paths whose matching decides which pieces
glue into which tree.  ``stitch`` realizes that composition; the helpers
here build the pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Iterable, Optional, Sequence

from ..flow import IndexedSubgraph, TerminalSet, st_internally_disjoint_paths
from ..graph import Region, main_parts
from ..perms import Perm, swap
from ..trees import Edge, mk_edge, path_edges


class ScriptFailed(RuntimeError):
    """A scripted construction hit an instance its assumptions do not cover."""

    def __init__(self, reason: str, partial: Optional[list[tuple[Edge, ...]]] = None):
        self.reason = reason
        self.partial = partial or []
        super().__init__(reason)


def out(u: Perm) -> Perm:
    """Out-neighbor: last two positions swapped."""
    return swap(u, len(u) - 2)


def special_in(u: Perm) -> Perm:
    """The one in-neighbor whose own out-neighbor leaves the part of out(u)."""
    return swap(u, len(u) - 3)


def out_part(u: Perm) -> int:
    """Main part that out(u) lands in (second-to-last symbol)."""
    return u[-2]


def parts_index(n: int, parts: Iterable[int], excluded: frozenset[Perm] = frozenset()) -> IndexedSubgraph:
    return IndexedSubgraph.from_region(main_parts(n, parts), excluded)


def complement_parts(n: int, parts: Iterable[int]) -> list[int]:
    return [i for i in range(1, n + 1) if i not in set(parts)]


# ---------------------------------------------------------------------------
# Suffix-class embeddings (a class fixed by a tail is a smaller bubble graph)


@dataclass(frozen=True)
class ClassEmbedding:
    n: int
    tail: tuple[int, ...]
    free: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        free = tuple(s for s in range(1, self.n + 1) if s not in set(self.tail))
        object.__setattr__(self, "free", free)

    @property
    def arity(self) -> int:
        return self.n - len(self.tail)

    def project(self, u: Perm) -> Perm:
        pos = {s: i + 1 for i, s in enumerate(self.free)}
        return tuple(pos[s] for s in u[: self.arity])

    def lift(self, v: Perm) -> Perm:
        return tuple(self.free[s - 1] for s in v) + self.tail

    def lift_edges(self, edges: Iterable[Edge]) -> tuple[Edge, ...]:
        return tuple(mk_edge(self.lift(a), self.lift(b)) for a, b in edges)


# ---------------------------------------------------------------------------
# Deterministic Steiner / connector trees

SOFT_PENALTY = 8


def steiner_tree(
    idx: IndexedSubgraph,
    terminals: Sequence[Perm],
    forbidden: frozenset[Perm] = frozenset(),
    banned_edges: frozenset[Edge] = frozenset(),
    soft: frozenset[Perm] = frozenset(),
    priority: Optional[dict[Perm, int]] = None,
    budget: int = 10_000,
) -> Optional[list[Edge]]:
    """Tree spanning the terminals, grown by nearest-component merges.

    Soft vertices cost extra, steering paths away from them without banning
    them.  ``priority`` reorders ties (used by restarts); the default tie
    order is vertex rank.  Returns None when some terminal is unreachable or
    a merge exceeds the expansion budget.
    """
    terms = list(dict.fromkeys(terminals))
    if any(t in forbidden for t in terms):
        return None
    for t in terms:
        if t not in idx.index:
            return None
    prio = priority or {}
    comp: set[Perm] = {terms[0]}
    edges: list[Edge] = []
    missing = set(terms[1:])
    while missing:
        dist: dict[Perm, int] = {u: 0 for u in comp}
        parent: dict[Perm, Optional[Perm]] = {u: None for u in comp}
        heap = [(0, prio.get(u, 0), u) for u in sorted(comp)]
        target = None
        pops = 0
        while heap:
            d, _, u = heappop(heap)
            pops += 1
            if pops > budget:
                return None
            if d > dist.get(u, d):
                continue
            if u in missing:
                target = u
                break
            for w in idx.adj[idx.index[u]]:
                v = idx.verts[w]
                if v in forbidden:
                    continue
                if mk_edge(u, v) in banned_edges:
                    continue
                nd = d + (SOFT_PENALTY if v in soft and v not in missing else 1)
                if v not in dist or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = u
                    heappush(heap, (nd, prio.get(v, 0), v))
        if target is None:
            return None
        node = target
        while parent[node] is not None:
            edges.append(mk_edge(node, parent[node]))
            comp.add(node)
            node = parent[node]
        missing.discard(target)
    return edges


def connector_tree(
    idx: IndexedSubgraph,
    terminals: Sequence[Perm],
    forbidden: frozenset[Perm] = frozenset(),
) -> list[Edge]:
    """Steiner tree or a script failure; for the proofs' "there is a tree
    containing ..." steps."""
    t = steiner_tree(idx, terminals, forbidden=forbidden)
    if t is None:
        raise ScriptFailed(f"no connector tree through {len(list(terminals))} required vertices")
    return t


def spanning_tree_of(idx: IndexedSubgraph) -> list[Edge]:
    root = idx.verts[0]
    seen = {root}
    frontier = [root]
    edges: list[Edge] = []
    while frontier:
        nxt = []
        for u in frontier:
            for w in idx.adj[idx.index[u]]:
                v = idx.verts[w]
                if v not in seen:
                    seen.add(v)
                    edges.append(mk_edge(u, v))
                    nxt.append(v)
        frontier = sorted(nxt)
    if len(seen) != len(idx):
        raise ScriptFailed("spanning-tree region is disconnected")
    return edges


def bfs_path(
    idx: IndexedSubgraph,
    start: Perm,
    goals: set[Perm],
    forbidden: frozenset[Perm] = frozenset(),
) -> Optional[list[Perm]]:
    if start in forbidden or start not in idx.index:
        return None
    parent: dict[Perm, Optional[Perm]] = {start: None}
    frontier = [start]
    found = start if start in goals else None
    while frontier and found is None:
        nxt = []
        for u in frontier:
            for w in idx.adj[idx.index[u]]:
                v = idx.verts[w]
                if v in parent or v in forbidden:
                    continue
                parent[v] = u
                if v in goals:
                    found = v
                    break
                nxt.append(v)
            if found is not None:
                break
        frontier = sorted(nxt)
    if found is None:
        return None
    path = [found]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# Anchored path families and stitching


@dataclass(frozen=True)
class AnchoredPath:
    vertices: tuple[Perm, ...]
    first: Perm  # the left endpoint's neighbor on this path
    last: Perm  # the right endpoint's neighbor on this path

    def edges(self) -> tuple[Edge, ...]:
        return path_edges(self.vertices)


def anchored_st_paths(region, u: Perm, v: Perm, k: int) -> list[AnchoredPath]:
    """Internally disjoint (u,v)-paths with their endpoint neighbors exposed."""
    ps = st_internally_disjoint_paths(region, u, v, k)
    out_paths = []
    for p in ps.paths:
        out_paths.append(AnchoredPath(vertices=p, first=p[1], last=p[-2]))
    return out_paths


@dataclass(frozen=True)
class StitchUnit:
    """A tree piece plus the anchor vertex a cross path must arrive at."""

    anchor: Perm
    edges: tuple[Edge, ...] = ()
    glue: tuple[Edge, ...] = ()  # joins the anchor to the piece (or to a terminal)

    def all_edges(self) -> tuple[Edge, ...]:
        return self.edges + self.glue


def stitch(
    left: Sequence[StitchUnit],
    right: Sequence[StitchUnit],
    cross_paths: Sequence[tuple[Perm, ...]],
) -> dict[Perm, tuple[Edge, ...]]:
    """Join left and right units through the cross paths' endpoint matching.

    Returns the composed edge lists keyed by left anchor.
    """
    by_left = {u.anchor: u for u in left}
    by_right = {u.anchor: u for u in right}
    if len(by_left) != len(left) or len(by_right) != len(right):
        raise ScriptFailed("anchor collision between stitch units")
    trees: dict[Perm, tuple[Edge, ...]] = {}
    for p in cross_paths:
        a, b = p[0], p[-1]
        if a in by_right and b in by_left:
            a, b = b, a
            p = tuple(reversed(p))
        if a not in by_left or b not in by_right:
            raise ScriptFailed("cross path endpoints do not match stitch anchors")
        lu, ru = by_left[a], by_right[b]
        trees[a] = lu.all_edges() + path_edges(p) + ru.all_edges()
    if len(trees) != len(left):
        raise ScriptFailed("cross paths did not cover every left anchor")
    return trees
