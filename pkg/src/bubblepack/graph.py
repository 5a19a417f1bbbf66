"""The bubble-sort network as an implicit graph, plus its suffix-region algebra.

Vertices are the n! permutations of {1..n}; two vertices are adjacent when
they differ by one swap of adjacent positions.  Adjacency is always computed
on demand from the one-line notation; no adjacency structure is ever stored
on the graph itself.

Regions select induced subgraphs.  The proof-style decomposition only ever
needs vertex classes fixed by a suffix of the one-line notation (a main part
fixes the last symbol, a sub-part the last two, and so on), unions of such
classes, and set differences.  That closed algebra is what :class:`Region`
implements, and it is what certificates can serialize.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .perms import Perm, all_perms, factorial, format_perm, parity, swap
from .trees import Edge, TreeCertificate, mk_edge

REGION_ENUMERATION_GUARD = 10**6


class RegionTooLargeError(ValueError):
    def __init__(self, estimate: int):
        self.estimate = estimate
        super().__init__(
            f"region enumeration refused: about {estimate} members exceeds "
            f"the {REGION_ENUMERATION_GUARD} guard"
        )


class DisconnectedRegionError(ValueError):
    def __init__(self, witness_a: Perm, witness_b: Perm):
        self.witness_a = witness_a
        self.witness_b = witness_b
        super().__init__(
            f"region is disconnected: {format_perm(witness_a)} and "
            f"{format_perm(witness_b)} lie in different components"
        )


@dataclass(frozen=True)
class BubbleGraph:
    """The bubble-sort network of a given arity (vertex set implicit)."""

    n: int

    def __post_init__(self) -> None:
        if not 2 <= self.n <= 12:
            raise ValueError(f"arity must be between 2 and 12, got {self.n}")

    @property
    def vertex_count(self) -> int:
        return factorial(self.n)

    def degree(self) -> int:
        return self.n - 1

    def neighbors(self, u: Perm) -> list[Perm]:
        """All n-1 neighbors, in generator order (positions 1-2, 2-3, ...)."""
        if len(u) != self.n:
            raise ValueError(f"arity mismatch: vertex {u!r} in B_{self.n}")
        return [swap(u, i) for i in range(self.n - 1)]

    def out_neighbor(self, u: Perm) -> Perm:
        """The unique neighbor outside u's main part (last two positions swapped)."""
        return swap(u, len(u) - 2)

    def is_edge(self, u: Perm, v: Perm) -> bool:
        if len(u) != len(v) or len(u) != self.n:
            return False
        diff = [k for k in range(self.n) if u[k] != v[k]]
        return (
            len(diff) == 2
            and diff[1] == diff[0] + 1
            and u[diff[0]] == v[diff[1]]
            and u[diff[1]] == v[diff[0]]
        )

    def vertices(self) -> Iterator[Perm]:
        return all_perms(self.n)


def main_part(u: Perm) -> int:
    """Index of the main part containing u: the last symbol."""
    return u[-1]


# ---------------------------------------------------------------------------
# Region algebra


@dataclass(frozen=True)
class Region:
    """A membership predicate over V(B_n), closed under serialization.

    kind "whole": every vertex.
    kind "suffix": vertices whose one-line notation ends with one of the
        fixed tails (all tails share a length).  A single length-1 tail is a
        main part; a length-2 tail (j, i) is the sub-part of permutations
        ending j then i.
    kind "difference": in ``left`` but not in ``right``.
    """

    n: int
    kind: str
    tails: tuple[tuple[int, ...], ...] = ()
    left: Optional["Region"] = None
    right: Optional["Region"] = None

    def contains(self, u: Perm) -> bool:
        if self.kind == "whole":
            return True
        if self.kind == "suffix":
            length = len(self.tails[0])
            return u[-length:] in self._tailset()
        return self.left.contains(u) and not self.right.contains(u)

    def _tailset(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.tails)

    def size_upper_bound(self) -> int:
        if self.kind == "whole":
            return factorial(self.n)
        if self.kind == "suffix":
            return len(self.tails) * factorial(self.n - len(self.tails[0]))
        return self.left.size_upper_bound()

    def members(self) -> Iterator[Perm]:
        """Members in rank order; refuses when the size guard is exceeded."""
        estimate = self.size_upper_bound()
        if estimate > REGION_ENUMERATION_GUARD:
            raise RegionTooLargeError(estimate)
        if self.kind == "whole":
            return all_perms(self.n)
        if self.kind == "suffix":
            streams = [self._tail_stream(tail) for tail in sorted(self.tails)]
            return heapq.merge(*streams)
        right = self.right
        return (u for u in self.left.members() if not right.contains(u))

    def _tail_stream(self, tail: tuple[int, ...]) -> Iterator[Perm]:
        free = sorted(set(range(1, self.n + 1)) - set(tail))
        for prefix in itertools.permutations(free):
            yield prefix + tail

    def describe(self) -> dict:
        if self.kind == "whole":
            return {"kind": "whole", "n": self.n}
        if self.kind == "suffix":
            return {"kind": "suffix", "n": self.n, "tails": [list(t) for t in self.tails]}
        return {
            "kind": "difference",
            "n": self.n,
            "left": self.left.describe(),
            "right": self.right.describe(),
        }


def whole_region(n: int) -> Region:
    return Region(n=n, kind="whole")


def suffix_classes(n: int, tails: Sequence[Sequence[int]]) -> Region:
    tt = tuple(sorted(tuple(t) for t in tails))
    if not tt:
        raise ValueError("need at least one tail")
    length = len(tt[0])
    if any(len(t) != length for t in tt):
        raise ValueError("all tails must share a length")
    for t in tt:
        if len(set(t)) != len(t) or not all(1 <= s <= n for s in t):
            raise ValueError(f"bad tail {t!r} for arity {n}")
    return Region(n=n, kind="suffix", tails=tt)


def suffix_class(n: int, tail: Sequence[int]) -> Region:
    return suffix_classes(n, [tail])


def main_parts(n: int, parts) -> Region:
    return suffix_classes(n, [(i,) for i in sorted(set(parts))])


def region_minus(left: Region, right: Region) -> Region:
    if left.n != right.n:
        raise ValueError("arity mismatch between regions")
    return Region(n=left.n, kind="difference", left=left, right=right)


def region_from_dict(spec: dict) -> Region:
    kind = spec["kind"]
    if kind == "whole":
        return whole_region(spec["n"])
    if kind == "suffix":
        return suffix_classes(spec["n"], [tuple(t) for t in spec["tails"]])
    return region_minus(region_from_dict(spec["left"]), region_from_dict(spec["right"]))


# ---------------------------------------------------------------------------
# Operations on regions


def region_members(r: Region) -> Iterator[Perm]:
    return r.members()


def region_neighbors(r: Region, u: Perm) -> list[Perm]:
    """Neighbors of u inside the induced subgraph on r."""
    if not r.contains(u):
        raise ValueError(f"{format_perm(u)} is not in the region")
    g = BubbleGraph(r.n)
    return [v for v in g.neighbors(u) if r.contains(v)]


def cross_edge_count(g: BubbleGraph, i: int, j: int) -> int:
    """Number of edges with one end in main part i and the other in part j."""
    if i == j:
        raise ValueError("cross edges need two distinct parts")
    count = 0
    for u in main_parts(g.n, {i}).members():
        if main_part(g.out_neighbor(u)) == j:
            count += 1
    return count


def region_spanning_tree(r: Region) -> TreeCertificate:
    """BFS spanning tree rooted at the rank-least member, children in rank order."""
    g = BubbleGraph(r.n)
    members = list(r.members())
    if not members:
        raise ValueError("empty region has no spanning tree")
    inside = set(members)
    root = members[0]
    seen = {root}
    frontier = [root]
    edges: list[Edge] = []
    while frontier:
        nxt: list[Perm] = []
        for u in frontier:
            for v in g.neighbors(u):
                if v in inside and v not in seen:
                    seen.add(v)
                    edges.append(mk_edge(u, v))
                    nxt.append(v)
        frontier = sorted(nxt)
    if len(seen) != len(members):
        outside = next(u for u in members if u not in seen)
        raise DisconnectedRegionError(root, outside)
    return TreeCertificate(edges=tuple(edges), terminals=frozenset(), provenance="bfs-spanning-tree")


# ---------------------------------------------------------------------------
# DOT export

_DOT_COLORS = (
    "crimson",
    "royalblue",
    "forestgreen",
    "darkorange",
    "purple",
    "teal",
    "goldenrod",
    "deeppink",
)


def region_dot(r: Region, overlay: Sequence[TreeCertificate] = ()) -> str:
    """Graphviz DOT text for an enumerable region, trees colored by index."""
    g = BubbleGraph(r.n)
    members = list(r.members())
    inside = set(members)
    color_of: dict[Edge, str] = {}
    for idx, tree in enumerate(overlay):
        color = _DOT_COLORS[idx % len(_DOT_COLORS)]
        for e in tree.edges:
            color_of[e] = color
    lines = ["graph bubblesort {", "  node [shape=ellipse, fontsize=10];"]
    for u in members:
        fill = ' style=filled fillcolor="gray90"' if parity(u) == "even" else ""
        lines.append(f'  "{format_perm(u)}"{fill};')
    for u in members:
        for v in g.neighbors(u):
            if v in inside and u < v:
                e = mk_edge(u, v)
                attr = f' [color={color_of[e]}, penwidth=2.0]' if e in color_of else ""
                lines.append(f'  "{format_perm(u)}" -- "{format_perm(v)}"{attr};')
    lines.append("}")
    return "\n".join(lines)
