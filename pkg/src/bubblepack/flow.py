"""Disjoint-path engines over induced regions, via unit-vertex-capacity max flow.

Vertex capacities are realized by the standard splitting reduction: every
vertex v becomes an arc v_in -> v_out of capacity one, so a unit of flow is
exactly one vertex-disjoint path.  Augmenting searches are breadth first and
scan arcs in rank order, which makes every returned path family a pure
function of its inputs.

When the requested number of paths does not exist, the engines raise
:class:`CutWitnessError` carrying a vertex cut smaller than the request; by
Menger duality, removing the cut separates the terminals.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import BubbleGraph, Region
from .perms import Perm, format_perm, swap

INF = 1 << 30


@dataclass(frozen=True)
class TerminalSet:
    """A set of terminal vertices with the role it plays in a construction."""

    vertices: frozenset[Perm]
    role: str = ""

    def sorted(self) -> list[Perm]:
        return sorted(self.vertices)


@dataclass(frozen=True)
class PathSet:
    """A family of paths with its declared disjointness contract.

    contract "disjoint": pairwise vertex disjoint, endpoints included.
    contract "internally_disjoint": shared endpoints u, v only.
    contract "fan": shared origin x only; distinct far endpoints.
    """

    paths: tuple[tuple[Perm, ...], ...]
    contract: str
    endpoints: tuple[Perm, ...] = ()


class CutWitnessError(RuntimeError):
    """Fewer paths than requested exist; ``cut`` separates the terminals."""

    def __init__(self, requested: int, achieved: int, cut: list[Perm]):
        self.requested = requested
        self.achieved = achieved
        self.cut = cut
        shown = ", ".join(format_perm(v) for v in cut)
        super().__init__(
            f"only {achieved} of {requested} requested paths exist; "
            f"separating cut of size {len(cut)}: [{shown}]"
        )


class IndexedSubgraph:
    """Transient rank-ordered view of an induced subgraph, for flow runs.

    Built per call and discarded; the bubble-sort graph itself never stores
    adjacency.
    """

    __slots__ = ("n", "verts", "index", "adj")

    def __init__(self, n: int, vertices: Iterable[Perm], excluded: frozenset[Perm] = frozenset()):
        self.n = n
        self.verts: list[Perm] = sorted(set(vertices) - excluded)
        self.index: dict[Perm, int] = {u: i for i, u in enumerate(self.verts)}
        index = self.index
        adj: list[list[int]] = []
        for u in self.verts:
            row = []
            for i in range(n - 1):
                j = index.get(swap(u, i))
                if j is not None:
                    row.append(j)
            row.sort()
            adj.append(row)
        self.adj = adj

    @classmethod
    def from_region(cls, region: Region, excluded: frozenset[Perm] = frozenset()) -> "IndexedSubgraph":
        return cls(region.n, region.members(), excluded)

    def __len__(self) -> int:
        return len(self.verts)

    def degree_of(self, i: int) -> int:
        return len(self.adj[i])

    def require(self, u: Perm) -> int:
        i = self.index.get(u)
        if i is None:
            raise ValueError(f"{format_perm(u)} is not in the region")
        return i


def as_indexed(region) -> IndexedSubgraph:
    if isinstance(region, IndexedSubgraph):
        return region
    return IndexedSubgraph.from_region(region)


class _FlowNet:
    __slots__ = ("nodes", "head", "to", "cap", "orig")

    def __init__(self, nodes: int):
        self.nodes = nodes
        self.head: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, a: int, b: int, c: int) -> None:
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def augment_once(self, source: int, sink: int) -> bool:
        parent_arc = [-1] * self.nodes
        parent_arc[source] = -2
        queue = deque([source])
        while queue:
            a = queue.popleft()
            if a == sink:
                break
            for e in self.head[a]:
                b = self.to[e]
                if self.cap[e] > 0 and parent_arc[b] == -1:
                    parent_arc[b] = e
                    queue.append(b)
        if parent_arc[sink] == -1:
            return False
        b = sink
        while b != source:
            e = parent_arc[b]
            self.cap[e] -= 1
            self.cap[e ^ 1] += 1
            b = self.to[e ^ 1]
        return True

    def max_flow(self, source: int, sink: int, limit: int) -> int:
        sent = 0
        while sent < limit and self.augment_once(source, sink):
            sent += 1
        return sent

    def residual_reachable(self, source: int) -> list[bool]:
        seen = [False] * self.nodes
        seen[source] = True
        queue = deque([source])
        while queue:
            a = queue.popleft()
            for e in self.head[a]:
                b = self.to[e]
                if self.cap[e] > 0 and not seen[b]:
                    seen[b] = True
                    queue.append(b)
        return seen


def _build_net(
    idx: IndexedSubgraph,
    uncapped: set[int],
    unit_edges: frozenset[tuple[int, int]] = frozenset(),
) -> _FlowNet:
    # Edge arcs are uncapacitated so that minimum cuts consist of split arcs
    # only (vertex cuts); an edge between two uncapacitated endpoints must
    # stay at capacity one or it could carry several copies of itself.
    m = len(idx)
    net = _FlowNet(2 * m + 2)
    for v in range(m):
        net.add_arc(2 * v, 2 * v + 1, INF if v in uncapped else 1)
    for v in range(m):
        out = 2 * v + 1
        for w in idx.adj[v]:
            cap = 1 if (v, w) in unit_edges or (w, v) in unit_edges else INF
            net.add_arc(out, 2 * w, cap)
    return net


def _extract_paths(net: _FlowNet, idx: IndexedSubgraph, source: int, flow: int) -> list[list[Perm]]:
    used = [0] * len(net.to)
    for e in range(0, len(net.to), 2):
        used[e] = net.cap[e ^ 1]  # units pushed through the forward arc
    paths: list[list[Perm]] = []
    for _ in range(flow):
        node = source
        verts: list[Perm] = []
        while True:
            nxt = None
            for e in net.head[node]:
                if e % 2 == 0 and used[e] > 0:
                    nxt = e
                    break
            if nxt is None:
                break
            used[nxt] -= 1
            node = net.to[nxt]
            if node < 2 * len(idx):
                u = idx.verts[node // 2]
                if not verts or verts[-1] != u:
                    verts.append(u)
        paths.append(verts)
    return paths


def _vertex_cut(net: _FlowNet, idx: IndexedSubgraph, source: int) -> list[Perm]:
    seen = net.residual_reachable(source)
    cut = []
    for v in range(len(idx)):
        if seen[2 * v] and not seen[2 * v + 1]:
            cut.append(idx.verts[v])
    return cut


# ---------------------------------------------------------------------------
# Public path engines


def disjoint_set_paths(region, X: TerminalSet, Y: TerminalSet, k: int) -> PathSet:
    """k pairwise vertex-disjoint paths, each from X to Y, interiors off X∪Y.

    Members of X∩Y are consumed as zero-length paths before any flow runs.
    """
    idx = as_indexed(region)
    xs = X.sorted()
    ys = Y.sorted()
    for t in xs + ys:
        idx.require(t)
    shared = sorted(X.vertices & Y.vertices)
    paths: list[tuple[Perm, ...]] = [(v,) for v in shared[:k]]
    remaining = k - len(paths)
    if remaining > 0:
        sub = IndexedSubgraph(idx.n, idx.verts, frozenset(shared))
        xs2 = [v for v in xs if v not in X.vertices & Y.vertices]
        ys2 = [v for v in ys if v not in X.vertices & Y.vertices]
        net = _build_net(sub, set())
        m = len(sub)
        source, sink = 2 * m, 2 * m + 1
        for v in xs2:
            net.add_arc(source, 2 * sub.index[v], INF)
        for v in ys2:
            net.add_arc(2 * sub.index[v] + 1, sink, INF)
        flow = net.max_flow(source, sink, remaining)
        if flow < remaining:
            cut = _vertex_cut(net, sub, source)
            raise CutWitnessError(k, flow + len(paths), cut)
        xset, yset = set(xs2), set(ys2)
        for raw in _extract_paths(net, sub, source, flow):
            start = max(i for i, u in enumerate(raw) if u in xset)
            stop = next(i for i in range(start, len(raw)) if raw[i] in yset)
            paths.append(tuple(raw[start : stop + 1]))
    return PathSet(paths=tuple(paths), contract="disjoint")


def fan_paths(region, x: Perm, Y: TerminalSet, k: int) -> PathSet:
    """k paths from x to k distinct members of Y, pairwise disjoint except at x."""
    if x in Y.vertices:
        raise ValueError("fan origin must not belong to the target set")
    idx = as_indexed(region)
    xi = idx.require(x)
    for t in Y.sorted():
        idx.require(t)
    net = _build_net(idx, {xi})
    m = len(idx)
    source, sink = 2 * m, 2 * m + 1
    net.add_arc(source, 2 * xi, INF)
    yset = set(Y.vertices)
    for v in Y.sorted():
        net.add_arc(2 * idx.index[v] + 1, sink, INF)
    flow = net.max_flow(source, sink, k)
    if flow < k:
        cut = _vertex_cut(net, idx, source)
        cut = [v for v in cut if v != x]
        raise CutWitnessError(k, flow, cut)
    paths = []
    for raw in _extract_paths(net, idx, source, flow):
        stop = next(i for i, u in enumerate(raw) if u in yset)
        paths.append(tuple(raw[: stop + 1]))
    return PathSet(paths=tuple(paths), contract="fan", endpoints=(x,))


def st_internally_disjoint_paths(region, u: Perm, v: Perm, k: int) -> PathSet:
    """k internally vertex-disjoint (u,v)-paths, one neighbor of u and of v each."""
    if u == v:
        raise ValueError("endpoints must differ")
    idx = as_indexed(region)
    ui, vi = idx.require(u), idx.require(v)
    direct = frozenset({(ui, vi)}) if vi in idx.adj[ui] else frozenset()
    net = _build_net(idx, {ui, vi}, direct)
    m = len(idx)
    source, sink = 2 * m, 2 * m + 1
    net.add_arc(source, 2 * ui, INF)
    net.add_arc(2 * vi + 1, sink, INF)
    flow = net.max_flow(source, sink, k)
    if flow < k:
        cut = _vertex_cut(net, idx, source)
        cut = [w for w in cut if w not in (u, v)]
        raise CutWitnessError(k, flow, cut)
    g = BubbleGraph(idx.n)
    nu = set(g.neighbors(u))
    nv = set(g.neighbors(v))
    paths = []
    for raw in _extract_paths(net, idx, source, flow):
        # shortcut interior re-entries into N(u) / N(v) so that each path
        # meets each neighborhood in exactly one interior vertex
        p = list(raw)
        if len(p) > 2:
            anchor = max(i for i in range(1, len(p) - 1) if p[i] in nu)
            p = [u] + p[anchor:]
        if len(p) > 2:
            stop = min(i for i in range(1, len(p) - 1) if p[i] in nv)
            p = p[: stop + 1] + [v]
        paths.append(tuple(p))
    return PathSet(paths=tuple(paths), contract="internally_disjoint", endpoints=(u, v))


def _pair_flow(idx: IndexedSubgraph, ui: int, vi: int) -> int:
    direct = frozenset({(ui, vi)}) if vi in idx.adj[ui] else frozenset()
    net = _build_net(idx, {ui, vi}, direct)
    m = len(idx)
    source, sink = 2 * m, 2 * m + 1
    net.add_arc(source, 2 * ui, INF)
    net.add_arc(2 * vi + 1, sink, INF)
    return net.max_flow(source, sink, len(idx))


EXACT_CONNECTIVITY_GUARD = 10_000


def region_connectivity(region, *, sample_pairs: Optional[int] = None, seed: int = 0) -> int:
    """Exact vertex connectivity of the induced region.

    Exact mode uses the standard reduction: fix a minimum-degree vertex v0,
    take the minimum of max-flow values over all vertices non-adjacent to v0
    and over all non-adjacent pairs of neighbors of v0.  With
    ``sample_pairs`` set, returns the minimum pair flow over that many
    sampled non-adjacent pairs instead (an upper-bound witness usable on
    regions too large for exact mode).
    """
    idx = as_indexed(region)
    m = len(idx)
    if m < 2:
        raise ValueError("connectivity needs at least two vertices")
    if sample_pairs is not None:
        import random

        rng = random.Random(seed)
        best = m - 1
        found = 0
        while found < sample_pairs:
            a, b = rng.randrange(m), rng.randrange(m)
            if a == b or b in idx.adj[a]:
                continue
            best = min(best, _pair_flow(idx, a, b))
            found += 1
        return best
    if m > EXACT_CONNECTIVITY_GUARD:
        raise ValueError(f"exact connectivity guard exceeded: {m} vertices")
    degrees = [idx.degree_of(i) for i in range(m)]
    if all(d == m - 1 for d in degrees):
        return m - 1
    v0 = min(range(m), key=lambda i: (degrees[i], i))
    best = m - 1
    nbrs = set(idx.adj[v0])
    for u in range(m):
        if u != v0 and u not in nbrs:
            best = min(best, _pair_flow(idx, v0, u))
    nl = sorted(nbrs)
    for a_pos in range(len(nl)):
        for b_pos in range(a_pos + 1, len(nl)):
            a, b = nl[a_pos], nl[b_pos]
            if b not in idx.adj[a]:
                best = min(best, _pair_flow(idx, a, b))
    return best
