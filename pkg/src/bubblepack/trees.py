"""Tree certificates: explicit edge lists checkable without trusting their producer."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .perms import Perm

Edge = tuple[Perm, Perm]


def mk_edge(u: Perm, v: Perm) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


def path_edges(path: Iterable[Perm]) -> tuple[Edge, ...]:
    vs = list(path)
    return tuple(mk_edge(a, b) for a, b in zip(vs, vs[1:]))


def tree_vertices(edges: Iterable[Edge]) -> set[Perm]:
    out: set[Perm] = set()
    for a, b in edges:
        out.add(a)
        out.add(b)
    return out


def edges_form_tree(edges: tuple[Edge, ...]) -> bool:
    """Connected and acyclic; the empty edge set does not count as a tree."""
    if not edges:
        return False
    parent: dict[Perm, Perm] = {}

    def find(v: Perm) -> Perm:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra == rb:
            return False  # cycle
        parent[ra] = rb
    roots = {find(v) for v in parent}
    return len(roots) == 1


@dataclass(frozen=True)
class TreeCertificate:
    """One tree as an explicit edge list, with the terminals it must connect."""

    edges: tuple[Edge, ...]
    terminals: frozenset[Perm]
    provenance: str = ""

    def vertices(self) -> set[Perm]:
        return tree_vertices(self.edges)


@dataclass(frozen=True)
class TreePacking:
    """A family of internally disjoint trees connecting the four terminals.

    The trees must be pairwise edge disjoint with pairwise vertex
    intersection exactly the terminal set; the verifier module checks this
    without consulting the builder.
    """

    n: int
    terminals: tuple[Perm, ...]
    trees: tuple[TreeCertificate, ...]
    case_path: str = ""
    fallback_used: tuple[bool, ...] = field(default=())

    def terminal_set(self) -> frozenset[Perm]:
        return frozenset(self.terminals)
