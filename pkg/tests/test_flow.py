import itertools

import pytest

from bubblepack.flow import (
    CutWitnessError,
    IndexedSubgraph,
    PathSet,
    TerminalSet,
    disjoint_set_paths,
    fan_paths,
    region_connectivity,
    st_internally_disjoint_paths,
)
from bubblepack.graph import BubbleGraph, main_parts, region_members, suffix_class, whole_region
from bubblepack.perms import all_perms, unrank


def region_adj(region):
    g = BubbleGraph(region.n)
    members = list(region_members(region))
    inside = set(members)
    return {u: [v for v in g.neighbors(u) if v in inside] for u in members}


def all_simple_paths(adj, u, v):
    out = []

    def dfs(node, visited, path):
        if node == v:
            out.append(tuple(path))
            return
        for w in adj[node]:
            if w not in visited:
                visited.add(w)
                path.append(w)
                dfs(w, visited, path)
                path.pop()
                visited.remove(w)

    dfs(u, {u}, [u])
    return out


def brute_max_internally_disjoint(adj, u, v):
    paths = all_simple_paths(adj, u, v)
    best = 0

    def bt(i, count, interiors):
        nonlocal best
        best = max(best, count)
        if i == len(paths) or count + (len(paths) - i) <= best:
            return
        inter = set(paths[i][1:-1])
        if not (inter & interiors):
            bt(i + 1, count + 1, interiors | inter)
        bt(i + 1, count, interiors)

    bt(0, 0, set())
    return best


def check_internally_disjoint(ps: PathSet, region, u, v):
    g = BubbleGraph(region.n)
    interiors = []
    for p in ps.paths:
        assert p[0] == u and p[-1] == v
        assert len(set(p)) == len(p)
        for a, b in zip(p, p[1:]):
            assert g.is_edge(a, b)
            assert region.contains(a) and region.contains(b)
        interiors.append(set(p[1:-1]))
    for s1, s2 in itertools.combinations(interiors, 2):
        assert not (s1 & s2)


def test_st_paths_b4_any_pair_k3():
    r = whole_region(4)
    ps = st_internally_disjoint_paths(r, (1, 2, 3, 4), (4, 3, 2, 1), 3)
    assert len(ps.paths) == 3
    check_internally_disjoint(ps, r, (1, 2, 3, 4), (4, 3, 2, 1))


def test_st_paths_b3_two_arcs():
    r = whole_region(3)
    ps = st_internally_disjoint_paths(r, (1, 2, 3), (3, 2, 1), 2)
    assert len(ps.paths) == 2
    # the six-cycle splits into exactly its two arcs
    assert sorted(len(p) for p in ps.paths) == [4, 4]
    check_internally_disjoint(ps, r, (1, 2, 3), (3, 2, 1))


def test_st_paths_adjacent_single_edge():
    r = whole_region(4)
    ps = st_internally_disjoint_paths(r, (1, 2, 3, 4), (2, 1, 3, 4), 1)
    assert ps.paths == (((1, 2, 3, 4), (2, 1, 3, 4)),)


def test_st_paths_exactly_one_neighbor_each_side():
    g = BubbleGraph(4)
    r = whole_region(4)
    u, v = (1, 2, 3, 4), (3, 4, 1, 2)
    ps = st_internally_disjoint_paths(r, u, v, 3)
    nu, nv = set(g.neighbors(u)), set(g.neighbors(v))
    for p in ps.paths:
        assert sum(1 for w in p[1:-1] if w in nu) == 1
        assert sum(1 for w in p[1:-1] if w in nv) == 1


def test_st_paths_match_bruteforce_on_small_regions():
    for region in (whole_region(3), main_parts(4, {1, 3})):
        adj = region_adj(region)
        verts = sorted(adj)
        for u, v in itertools.combinations(verts, 2):
            expected = brute_max_internally_disjoint(adj, u, v)
            got = 0
            for k in range(1, 5):
                try:
                    st_internally_disjoint_paths(region, u, v, k)
                    got = k
                except CutWitnessError:
                    break
            assert got == expected, (u, v)


def test_set_paths_two_plus_two():
    r = main_parts(4, {1, 3})
    X = TerminalSet(frozenset({(2, 3, 4, 1), (3, 2, 4, 1)}), "X")
    Y = TerminalSet(frozenset({(2, 1, 4, 3), (1, 2, 4, 3)}), "Y")
    ps = disjoint_set_paths(r, X, Y, 2)
    assert len(ps.paths) == 2
    seen = set()
    for p in ps.paths:
        assert p[0] in X.vertices and p[-1] in Y.vertices
        for w in p[1:-1]:
            assert w not in X.vertices | Y.vertices
        for a, b in zip(p, p[1:]):
            assert BubbleGraph(4).is_edge(a, b)
        assert not (set(p) & seen)
        seen |= set(p)


def test_set_paths_shared_terminals_zero_length():
    r = whole_region(3)
    X = TerminalSet(frozenset({(1, 2, 3), (2, 1, 3)}), "X")
    ps = disjoint_set_paths(r, X, X, 2)
    assert sorted(ps.paths) == [((1, 2, 3),), ((2, 1, 3),)]


def test_set_paths_cut_witness_separates():
    # inside one main part of B_4 (a 6-cycle), 3 disjoint paths cannot exist
    r = main_parts(4, {2})
    members = sorted(region_members(r))
    X = TerminalSet(frozenset(members[:3]), "X")
    Y = TerminalSet(frozenset(members[3:]), "Y")
    with pytest.raises(CutWitnessError) as exc:
        disjoint_set_paths(r, X, Y, 3)
    cut = set(exc.value.cut)
    assert len(cut) < 3
    # removing the cut separates X from Y
    adj = region_adj(r)
    live = {u: [v for v in nb if v not in cut] for u, nb in adj.items() if u not in cut}
    frontier = [u for u in X.vertices if u not in cut]
    seen = set(frontier)
    while frontier:
        nxt = []
        for u in frontier:
            for v in live[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    assert not (seen & (Y.vertices - cut))


def test_fan_b3_two_arms():
    r = whole_region(3)
    x = (1, 2, 3)
    Y = TerminalSet(frozenset({(2, 3, 1), (3, 2, 1)}), "Y")
    ps = fan_paths(r, x, Y, 2)
    assert len(ps.paths) == 2
    ends = {p[-1] for p in ps.paths}
    assert ends == Y.vertices
    shared = set(ps.paths[0]) & set(ps.paths[1])
    assert shared == {x}


def test_fan_single_path():
    r = whole_region(4)
    Y = TerminalSet(frozenset({(4, 3, 2, 1)}), "Y")
    ps = fan_paths(r, (1, 2, 3, 4), Y, 1)
    assert ps.paths[0][0] == (1, 2, 3, 4)
    assert ps.paths[0][-1] == (4, 3, 2, 1)


def test_fan_infeasible_errors_with_cut():
    # a 6-cycle has connectivity 2, so a 3-fan must fail
    r = main_parts(4, {2})
    members = sorted(region_members(r))
    x = members[0]
    Y = TerminalSet(frozenset(members[2:5]), "Y")
    with pytest.raises(CutWitnessError) as exc:
        fan_paths(r, x, Y, 3)
    assert exc.value.achieved == 2
    assert len(exc.value.cut) == 2


def test_region_connectivity_values():
    assert region_connectivity(whole_region(3)) == 2
    assert region_connectivity(whole_region(4)) == 3
    assert region_connectivity(main_parts(4, {1, 2})) == 2
    assert region_connectivity(suffix_class(5, (2, 1))) == 2  # a B_3 copy


def test_region_connectivity_sampled_mode():
    assert region_connectivity(whole_region(5), sample_pairs=20, seed=1) >= 4


def test_determinism():
    r = whole_region(4)
    a = st_internally_disjoint_paths(r, (1, 2, 3, 4), (4, 3, 2, 1), 3)
    b = st_internally_disjoint_paths(r, (1, 2, 3, 4), (4, 3, 2, 1), 3)
    assert a == b


def test_indexed_subgraph_reusable():
    idx = IndexedSubgraph.from_region(whole_region(4))
    ps = st_internally_disjoint_paths(idx, (1, 2, 3, 4), (4, 3, 2, 1), 3)
    assert len(ps.paths) == 3
