"""Independent certificate checking against raw adjacency.

Nothing here trusts the builder: edges are re-derived from the one-line
notation, tree shape is re-checked from the edge lists, and every violation
is collected rather than stopping at the first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .flow import PathSet
from .graph import BubbleGraph, Region
from .perms import Perm, format_perm
from .trees import Edge, TreeCertificate, TreePacking, tree_vertices


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple[tuple[str, str], ...]
    stats: dict = field(default_factory=dict, compare=False)

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}


def _is_raw_edge(u: Perm, v: Perm, n: int) -> bool:
    if len(u) != n or len(v) != n:
        return False
    diff = [k for k in range(n) if u[k] != v[k]]
    return (
        len(diff) == 2
        and diff[1] == diff[0] + 1
        and u[diff[0]] == v[diff[1]]
        and u[diff[1]] == v[diff[0]]
    )


def _fmt_edge(e: Edge) -> str:
    return f"{format_perm(e[0])}--{format_perm(e[1])}"


def _check_tree(n: int, S: frozenset[Perm], tree: TreeCertificate, label: str, out: list) -> None:
    for e in tree.edges:
        if not _is_raw_edge(e[0], e[1], n):
            out.append(("not-an-edge", f"{label}: {_fmt_edge(e)}"))
    if len(set(tree.edges)) != len(tree.edges):
        out.append(("not-a-tree", f"{label}: duplicate edges"))
    verts = tree_vertices(tree.edges)
    missing = S - verts
    for t in sorted(missing):
        out.append(("terminal-missing", f"{label}: {format_perm(t)}"))
    # connected and acyclic: |E| = |V| - 1 plus single component
    if not tree.edges:
        out.append(("not-a-tree", f"{label}: empty"))
        return
    if len(tree.edges) != len(verts) - 1:
        out.append(("not-a-tree", f"{label}: {len(tree.edges)} edges over {len(verts)} vertices"))
        return
    adj: dict[Perm, list[Perm]] = {}
    for a, b in tree.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    root = next(iter(sorted(verts)))
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(verts):
        out.append(("not-a-tree", f"{label}: disconnected"))


def verify_packing(g: BubbleGraph, S, packing: TreePacking) -> VerifyReport:
    """Check every tree and every pair; collect all violations."""
    S = frozenset(S)
    violations: list[tuple[str, str]] = []
    trees = packing.trees
    for i, tree in enumerate(trees):
        _check_tree(g.n, S, tree, f"tree[{i}]", violations)
    vertex_sets = [tree_vertices(t.edges) for t in trees]
    edge_sets = [set(t.edges) for t in trees]
    for i, j in itertools.combinations(range(len(trees)), 2):
        for e in sorted(edge_sets[i] & edge_sets[j]):
            violations.append(("edge-overlap", f"tree[{i}]/tree[{j}]: {_fmt_edge(e)}"))
        extra = (vertex_sets[i] & vertex_sets[j]) - S
        for v in sorted(extra):
            violations.append(
                ("vertex-overlap-beyond-S", f"tree[{i}]/tree[{j}]: {format_perm(v)}")
            )
    stats = {
        "tree_sizes": [len(t.edges) for t in trees],
        "vertices_touched": len(set().union(*vertex_sets)) if vertex_sets else 0,
    }
    return VerifyReport(ok=not violations, violations=tuple(violations), stats=stats)


def verify_paths(g: BubbleGraph, r: Region, ps: PathSet) -> VerifyReport:
    """Check simplicity, edge validity within the region, and the contract."""
    violations: list[tuple[str, str]] = []
    for i, p in enumerate(ps.paths):
        label = f"path[{i}]"
        if len(set(p)) != len(p):
            violations.append(("contract-breach", f"{label}: not simple"))
        for u in p:
            if not r.contains(u):
                violations.append(("not-an-edge", f"{label}: {format_perm(u)} outside region"))
        for a, b in zip(p, p[1:]):
            if not _is_raw_edge(a, b, g.n):
                violations.append(("not-an-edge", f"{label}: {_fmt_edge((a, b))}"))
    if ps.contract == "disjoint":
        for i, j in itertools.combinations(range(len(ps.paths)), 2):
            shared = set(ps.paths[i]) & set(ps.paths[j])
            for v in sorted(shared):
                violations.append(("contract-breach", f"path[{i}]/path[{j}]: {format_perm(v)}"))
    elif ps.contract == "internally_disjoint":
        allowed = set(ps.endpoints)
        for i, j in itertools.combinations(range(len(ps.paths)), 2):
            shared = (set(ps.paths[i]) & set(ps.paths[j])) - allowed
            for v in sorted(shared):
                violations.append(("contract-breach", f"path[{i}]/path[{j}]: {format_perm(v)}"))
    elif ps.contract == "fan":
        origin = set(ps.endpoints)
        for i, j in itertools.combinations(range(len(ps.paths)), 2):
            shared = (set(ps.paths[i]) & set(ps.paths[j])) - origin
            for v in sorted(shared):
                violations.append(("contract-breach", f"path[{i}]/path[{j}]: {format_perm(v)}"))
        ends = [p[-1] for p in ps.paths]
        if len(set(ends)) != len(ends):
            violations.append(("contract-breach", "fan endpoints collide"))
    else:
        violations.append(("contract-breach", f"unknown contract {ps.contract!r}"))
    stats = {"path_lengths": [len(p) - 1 for p in ps.paths]}
    return VerifyReport(ok=not violations, violations=tuple(violations), stats=stats)
