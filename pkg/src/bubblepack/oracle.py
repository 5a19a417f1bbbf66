"""Ground-truth tree-packing numbers on tiny regions by exhaustive search.

A quick greedy packer handles the common case (these graphs meet their
degree bound, so a packing of that size exists and is easy to find); the
exhaustive searcher only runs when greed fails, enumerating candidate trees
as minimal connected supersets of the terminal set and backtracking over
interior-vertex and terminal-edge consumption.  Search proceeds downward
from the degree upper bound (minimum degree, minus one when two
minimum-degree vertices are adjacent and at least three terminals are
asked for), so hitting the bound tags the result "degree-lemma" and a
proven shortfall tags it "exhaustion".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .graph import BubbleGraph, Region, whole_region
from .perms import Perm, format_perm
from .trees import Edge, TreeCertificate, TreePacking, mk_edge

ORACLE_VERTEX_GUARD = 30


class OracleCancelled(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: TreePacking
    upper_bound_source: str  # "degree-lemma" or "exhaustion"


def _region_adjacency(region: Region) -> dict[Perm, tuple[Perm, ...]]:
    g = BubbleGraph(region.n)
    members = list(region.members())
    inside = set(members)
    return {u: tuple(v for v in g.neighbors(u) if v in inside) for u in members}


def degree_upper_bound(region: Region, k: int = 4) -> int:
    """Packing-size bound from minimum degree; one less if two minimum-degree
    vertices are adjacent (valid once at least three vertices are connected)."""
    adj = _region_adjacency(region)
    delta = min(len(nb) for nb in adj.values())
    if k >= 3:
        for u in sorted(adj):
            if len(adj[u]) == delta:
                for v in adj[u]:
                    if len(adj[v]) == delta:
                        return delta - 1
    return delta


class _PackingSearcher:
    def __init__(self, adj, terminals, should_stop):
        self.adj = adj
        self.terminals = terminals
        self.tset = frozenset(terminals)
        self.should_stop = should_stop
        self.s_edges_all = frozenset(
            mk_edge(a, b)
            for a, b in itertools.combinations(terminals, 2)
            if b in adj[a]
        )

    def _check_cancel(self):
        if self.should_stop is not None and self.should_stop():
            raise OracleCancelled("oracle search cancelled")

    def _allowed_nbrs(self, u, blocked, banned_s):
        for v in self.adj[u]:
            if v in blocked:
                continue
            if u in self.tset and v in self.tset and mk_edge(u, v) in banned_s:
                continue
            yield v

    def _greedy_tree(self, blocked, used_s, root_pos):
        """Grow a tree from one terminal, repeatedly absorbing the nearest
        missing terminal along shortest allowed paths (rank tie-break)."""
        order = self.terminals[root_pos:] + self.terminals[:root_pos]
        comp = {order[0]}
        edges: list[Edge] = []
        missing = set(order[1:])
        while missing:
            parent = {u: None for u in comp}
            frontier = sorted(comp)
            target = None
            while frontier and target is None:
                nxt = []
                for u in frontier:
                    for v in self._allowed_nbrs(u, blocked, used_s):
                        if v in parent:
                            continue
                        parent[v] = u
                        if v in missing:
                            target = v
                            break
                        nxt.append(v)
                    if target is not None:
                        break
                frontier = sorted(nxt)
            if target is None:
                return None
            node = target
            while parent[node] is not None:
                edges.append(mk_edge(node, parent[node]))
                comp.add(node)
                node = parent[node]
            missing.discard(target)
        return tuple(edges)

    def _consume(self, edges, blocked, used_s):
        verts = set()
        for a, b in edges:
            verts.add(a)
            verts.add(b)
        new_blocked = blocked | frozenset(verts - self.tset)
        new_used = used_s | frozenset(
            e for e in edges if e[0] in self.tset and e[1] in self.tset
        )
        return new_blocked, new_used

    def greedy(self, k):
        for root_pos in range(len(self.terminals)):
            blocked: frozenset = frozenset()
            used_s: frozenset = frozenset()
            out = []
            for _ in range(k):
                edges = self._greedy_tree(blocked, used_s, root_pos)
                if edges is None:
                    break
                out.append(edges)
                blocked, used_s = self._consume(edges, blocked, used_s)
            if len(out) == k:
                return out
        return None

    def _minimal_supersets(self, allowed_s, blocked):
        terminals = self.terminals
        tset = self.tset
        banned_s = self.s_edges_all - allowed_s
        results = []
        seen: set[frozenset] = set()

        def connected_from(U, start):
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self._allowed_nbrs(u, blocked, banned_s):
                    if v in U and v not in comp:
                        comp.add(v)
                        stack.append(v)
            return comp

        def rec(U: frozenset, forbidden: frozenset):
            self._check_cancel()
            if U in seen:
                return
            seen.add(U)
            comp = connected_from(U, terminals[0])
            if tset <= comp:
                results.append(U)
                return
            frontier = sorted(
                {
                    v
                    for u in comp
                    for v in self.adj[u]
                    if v not in U and v not in blocked and v not in forbidden and v not in tset
                }
            )
            banned = set(forbidden)
            for v in frontier:
                rec(U | {v}, frozenset(banned))
                banned.add(v)

        rec(frozenset(tset), frozenset())
        return sorted(results, key=lambda U: (len(U), tuple(sorted(U))))

    def _spanning_tree(self, U, allowed_s, blocked):
        banned_s = self.s_edges_all - allowed_s
        root = min(U)
        seen = {root}
        frontier = [root]
        edges = []
        while frontier:
            nxt = []
            for u in frontier:
                for v in self._allowed_nbrs(u, blocked, banned_s):
                    if v in U and v not in seen:
                        seen.add(v)
                        edges.append(mk_edge(u, v))
                        nxt.append(v)
            frontier = sorted(nxt)
        return tuple(edges)

    def exhaustive(self, k):
        failed: set = set()

        def dfs(slot, blocked, used_s):
            self._check_cancel()
            if slot == k:
                return []
            key = (slot, blocked, used_s)
            if key in failed:
                return None
            remaining = k - slot
            for t in self.terminals:
                free = sum(
                    1
                    for v in self.adj[t]
                    if v not in blocked
                    and (v not in self.tset or mk_edge(t, v) not in used_s)
                )
                if free < remaining:
                    failed.add(key)
                    return None
            available_s = sorted(self.s_edges_all - used_s)
            tried: set = set()
            for r in range(len(available_s) + 1):
                for fs in itertools.combinations(available_s, r):
                    allowed = frozenset(fs)
                    for U in self._minimal_supersets(allowed, blocked):
                        edges = self._spanning_tree(U, allowed, blocked)
                        if edges in tried:
                            continue
                        tried.add(edges)
                        nb, nu = self._consume(edges, blocked, used_s)
                        rest = dfs(slot + 1, nb, nu)
                        if rest is not None:
                            return [edges] + rest
            failed.add(key)
            return None

        return dfs(0, frozenset(), frozenset())

    def find(self, k):
        hit = self.greedy(k)
        if hit is not None:
            return hit
        return self.exhaustive(k)


def max_tree_packing(
    region: Region,
    S: Iterable[Perm],
    should_stop: Optional[Callable[[], bool]] = None,
) -> OracleResult:
    """Exact maximum number of internally disjoint trees connecting S."""
    terminals = tuple(sorted(set(S)))
    adj = _region_adjacency(region)
    if len(adj) > ORACLE_VERTEX_GUARD:
        raise ValueError(f"oracle guard exceeded: {len(adj)} vertices > {ORACLE_VERTEX_GUARD}")
    for t in terminals:
        if t not in adj:
            raise ValueError(f"terminal {format_perm(t)} outside region")
    bound = degree_upper_bound(region, k=len(terminals))
    searcher = _PackingSearcher(adj, terminals, should_stop)
    best: list[tuple[Edge, ...]] = []
    value = 0
    for k in range(bound, 0, -1):
        found = searcher.find(k)
        if found is not None:
            best = found
            value = k
            break
    source = "degree-lemma" if value == bound else "exhaustion"
    trees = tuple(
        TreeCertificate(edges=e, terminals=frozenset(terminals), provenance="oracle") for e in best
    )
    witness = TreePacking(
        n=region.n,
        terminals=terminals,
        trees=trees,
        case_path="oracle",
        fallback_used=tuple(False for _ in trees),
    )
    return OracleResult(value=value, witness=witness, upper_bound_source=source)


def kappa4_exhaustive(n: int, oracle_samples: int = 100, seed: int = 0) -> int:
    """Reproduce the 4-set tree connectivity of the whole graph at n in {3, 4}.

    At n=3 every 4-subset goes through the oracle.  At n=4 the constructive
    builder provides the lower bound on all 10626 subsets, the degree bound
    the upper bound, and the oracle re-checks a seeded sample exhaustively.
    """
    if n not in (3, 4):
        raise ValueError("exhaustive mode supports n=3 and n=4 only")
    from .perms import all_perms
    from .verify import verify_packing

    region = whole_region(n)
    verts = list(all_perms(n))
    bound = degree_upper_bound(region, k=4)
    if n == 3:
        best = min(
            max_tree_packing(region, combo).value for combo in itertools.combinations(verts, 4)
        )
        return min(best, bound)
    from .builder import build_trees

    g = BubbleGraph(4)
    import random

    rng = random.Random(seed)
    combos = list(itertools.combinations(range(len(verts)), 4))
    oracle_picks = set(rng.sample(range(len(combos)), min(oracle_samples, len(combos))))
    lowest = bound
    for ci, combo in enumerate(combos):
        S = tuple(verts[i] for i in combo)
        packing = build_trees(4, S)
        rep = verify_packing(g, S, packing)
        if not rep.ok:
            raise AssertionError(f"builder produced an invalid packing for {S}")
        count = len(packing.trees)
        if ci in oracle_picks:
            count = max_tree_packing(region, S).value
        lowest = min(lowest, count)
    return lowest
