import itertools
import random

import pytest

from bubblepack.graph import (
    BubbleGraph,
    DisconnectedRegionError,
    RegionTooLargeError,
    cross_edge_count,
    main_part,
    main_parts,
    region_dot,
    region_from_dict,
    region_members,
    region_minus,
    region_neighbors,
    region_spanning_tree,
    suffix_class,
    whole_region,
)
from bubblepack.perms import all_perms, factorial, parity, rank, unrank
from bubblepack.trees import edges_form_tree, tree_vertices


def test_neighbors_b3():
    g = BubbleGraph(3)
    assert set(g.neighbors((1, 2, 3))) == {(2, 1, 3), (1, 3, 2)}


def test_neighbors_b2():
    g = BubbleGraph(2)
    assert g.neighbors((1, 2)) == [(2, 1)]


def test_degree_regular_n7_sampled():
    g = BubbleGraph(7)
    rng = random.Random(1)
    for _ in range(1000):
        u = unrank(rng.randrange(factorial(7)), 7)
        nbrs = g.neighbors(u)
        assert len(nbrs) == 6
        assert len(set(nbrs)) == 6


def test_out_neighbor_crosses_parts():
    g = BubbleGraph(3)
    assert g.out_neighbor((2, 1, 3)) == (2, 3, 1)
    assert main_part((2, 1, 3)) != main_part((2, 3, 1))


def test_out_neighbor_involution_exhaustive_n4():
    g = BubbleGraph(4)
    for u in all_perms(4):
        assert g.out_neighbor(g.out_neighbor(u)) == u


def test_out_neighbor_injective_b7():
    g = BubbleGraph(7)
    outs = {g.out_neighbor(u) for u in all_perms(7)}
    assert len(outs) == factorial(7)


def test_main_part_reads_last_symbol():
    assert main_part((3, 1, 2)) == 2
    assert main_part((2, 3, 1)) == 1


def test_main_part_class_sizes_n5():
    counts = {i: 0 for i in range(1, 6)}
    for u in all_perms(5):
        counts[main_part(u)] += 1
    assert all(c == factorial(4) for c in counts.values())


def test_region_members_counts():
    assert len(list(region_members(whole_region(3)))) == 6
    assert len(list(region_members(main_parts(4, {1, 2})))) == 12
    assert len(list(region_members(suffix_class(5, (2, 1))))) == 6


def test_region_members_rank_order():
    ms = list(region_members(main_parts(4, {1, 2})))
    assert ms == sorted(ms)
    assert [rank(u) for u in ms] == sorted(rank(u) for u in ms)


def test_region_guard():
    with pytest.raises(RegionTooLargeError):
        list(region_members(whole_region(10)))


def test_region_difference_and_roundtrip():
    r = region_minus(main_parts(4, {1}), suffix_class(4, (2, 1)))
    ms = list(region_members(r))
    assert len(ms) == 6 - 2
    assert all(u[-1] == 1 and u[-2] != 2 for u in ms)
    again = region_from_dict(r.describe())
    assert list(region_members(again)) == ms


def test_region_neighbors_whole_matches_graph():
    g = BubbleGraph(3)
    r = whole_region(3)
    for u in all_perms(3):
        assert region_neighbors(r, u) == g.neighbors(u)


def test_region_neighbors_inside_main_part():
    r = main_parts(4, {1})
    for u in region_members(r):
        assert len(region_neighbors(r, u)) == 2  # out-neighbor filtered away


def test_region_neighbors_part_union_degrees():
    r = main_parts(4, {1, 2})
    degs = {len(region_neighbors(r, u)) for u in region_members(r)}
    assert degs == {2, 3}


def test_region_neighbors_rejects_outsider():
    with pytest.raises(ValueError):
        region_neighbors(main_parts(3, {1}), (1, 2, 3))


def test_cross_edge_counts():
    assert cross_edge_count(BubbleGraph(4), 1, 2) == 2
    assert cross_edge_count(BubbleGraph(5), 3, 4) == 6
    g5 = BubbleGraph(5)
    for i, j in itertools.permutations(range(1, 6), 2):
        assert cross_edge_count(g5, i, j) == factorial(3)
        assert cross_edge_count(g5, i, j) == cross_edge_count(g5, j, i)
    with pytest.raises(ValueError):
        cross_edge_count(g5, 2, 2)


def test_spanning_tree_whole_b3():
    cert = region_spanning_tree(whole_region(3))
    assert len(cert.edges) == 5
    assert len(tree_vertices(cert.edges)) == 6
    assert edges_form_tree(cert.edges)


def test_spanning_tree_three_parts_b4():
    cert = region_spanning_tree(main_parts(4, {2, 3, 4}))
    assert len(cert.edges) == 17
    assert len(tree_vertices(cert.edges)) == 18
    assert edges_form_tree(cert.edges)


def test_spanning_tree_deterministic():
    a = region_spanning_tree(main_parts(4, {2, 3, 4}))
    b = region_spanning_tree(main_parts(4, {2, 3, 4}))
    assert a.edges == b.edges


def test_spanning_tree_disconnected_region_errors():
    # two sub-parts of B_4 ending in different symbols with nothing between
    r = region_minus(main_parts(4, {1}), suffix_class(4, (2, 1)))
    # V_1 minus V_2^1 leaves the 6-cycle of part 1 minus 2 adjacent vertices: a path, connected.
    region_spanning_tree(r)  # should not raise
    # the 6-cycle minus two antipodal vertices falls into two components
    from bubblepack.graph import suffix_classes

    antipodal = suffix_classes(3, [(2, 3), (2, 1)])  # {(1,2,3), (3,2,1)}
    r2 = region_minus(whole_region(3), antipodal)
    with pytest.raises(DisconnectedRegionError):
        region_spanning_tree(r2)


def test_bipartite_and_edge_count_small():
    for n in (2, 3, 4, 5):
        g = BubbleGraph(n)
        edge_count = 0
        for u in all_perms(n):
            for v in g.neighbors(u):
                assert parity(u) != parity(v)
                if u < v:
                    edge_count += 1
        assert edge_count == factorial(n) * (n - 1) // 2


def test_part_unions_connected_n_up_to_5():
    for n in (3, 4, 5):
        parts = list(range(1, n + 1))
        for size in range(2, n):
            for combo in itertools.combinations(parts, size):
                region_spanning_tree(main_parts(n, combo))  # raises if disconnected


def test_is_edge_raw_rule():
    g = BubbleGraph(4)
    assert g.is_edge((1, 2, 3, 4), (2, 1, 3, 4))
    assert not g.is_edge((1, 2, 3, 4), (2, 3, 1, 4))
    assert not g.is_edge((1, 2, 3, 4), (1, 2, 3, 4))
    assert not g.is_edge((1, 2, 3, 4), (4, 2, 3, 1))  # non-adjacent positions


def test_dot_export_b3():
    dot = region_dot(whole_region(3))
    assert dot.count(" -- ") == 6
    assert '"(1,2,3)"' in dot
