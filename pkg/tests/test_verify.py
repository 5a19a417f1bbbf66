import pytest

from bubblepack.flow import PathSet, TerminalSet, st_internally_disjoint_paths
from bubblepack.graph import BubbleGraph, whole_region
from bubblepack.trees import TreeCertificate, TreePacking, mk_edge
from bubblepack.verify import verify_packing, verify_paths


def tiny_packing():
    # two internally disjoint trees connecting four vertices of B_3 (one tree
    # only, since kappa is 1 there, so craft a B_4 example by hand instead)
    g = BubbleGraph(3)
    S = ((1, 2, 3), (2, 1, 3), (2, 3, 1), (3, 2, 1))
    # the 6-cycle: 123 - 213 - 231 - 321 - 312 - 132 - 123
    edges = (
        mk_edge((1, 2, 3), (2, 1, 3)),
        mk_edge((2, 1, 3), (2, 3, 1)),
        mk_edge((2, 3, 1), (3, 2, 1)),
    )
    tree = TreeCertificate(edges=edges, terminals=frozenset(S))
    return g, S, TreePacking(n=3, terminals=S, trees=(tree,), fallback_used=(False,))


def test_clean_packing_verifies():
    g, S, packing = tiny_packing()
    rep = verify_packing(g, S, packing)
    assert rep.ok
    assert rep.stats["tree_sizes"] == [3]


def test_missing_edge_detected():
    g, S, packing = tiny_packing()
    tree = packing.trees[0]
    broken = TreeCertificate(edges=tree.edges[:-1], terminals=tree.terminals)
    rep = verify_packing(g, S, TreePacking(n=3, terminals=S, trees=(broken,)))
    assert not rep.ok
    assert "terminal-missing" in rep.kinds()


def test_non_edge_detected():
    g, S, packing = tiny_packing()
    bad = packing.trees[0].edges + (mk_edge((1, 2, 3), (3, 2, 1)),)
    rep = verify_packing(g, S, TreePacking(n=3, terminals=S, trees=(TreeCertificate(bad, frozenset(S)),)))
    assert not rep.ok
    assert "not-an-edge" in rep.kinds()


def test_cycle_detected():
    g = BubbleGraph(3)
    cyc = [(1, 2, 3), (2, 1, 3), (2, 3, 1), (3, 2, 1), (3, 1, 2), (1, 3, 2)]
    edges = tuple(mk_edge(cyc[i], cyc[(i + 1) % 6]) for i in range(6))
    S = tuple(cyc[:4])
    rep = verify_packing(g, S, TreePacking(n=3, terminals=S, trees=(TreeCertificate(edges, frozenset(S)),)))
    assert not rep.ok
    assert "not-a-tree" in rep.kinds()


def test_vertex_overlap_detected():
    g = BubbleGraph(4)
    S = ((1, 2, 3, 4), (2, 1, 3, 4), (1, 2, 4, 3), (2, 1, 4, 3))
    shared = (1, 3, 2, 4)  # non-terminal used by both trees
    t1 = TreeCertificate(
        (
            mk_edge((1, 2, 3, 4), (2, 1, 3, 4)),
            mk_edge((1, 2, 3, 4), (1, 2, 4, 3)),
            mk_edge((1, 2, 4, 3), (2, 1, 4, 3)),
            mk_edge((1, 2, 3, 4), shared),
        ),
        frozenset(S),
    )
    t2 = TreeCertificate(
        (
            mk_edge((2, 1, 3, 4), (2, 1, 4, 3)),
            mk_edge((2, 1, 3, 4), (1, 2, 3, 4)),
            mk_edge((2, 1, 4, 3), (1, 2, 4, 3)),
            mk_edge(shared, (1, 3, 4, 2)),
        ),
        frozenset(S),
    )
    rep = verify_packing(g, S, TreePacking(n=4, terminals=S, trees=(t1, t2)))
    assert not rep.ok
    assert "vertex-overlap-beyond-S" in rep.kinds()
    # t2's shared vertex hangs disconnected, which is also reported
    assert "not-a-tree" in rep.kinds() or "edge-overlap" in rep.kinds()


def test_edge_overlap_detected():
    g, S, packing = tiny_packing()
    rep = verify_packing(g, S, TreePacking(n=3, terminals=S, trees=(packing.trees[0], packing.trees[0])))
    assert not rep.ok
    assert "edge-overlap" in rep.kinds()


def test_violations_collected_exhaustively():
    g, S, packing = tiny_packing()
    bad_edges = packing.trees[0].edges[:1] + (mk_edge((1, 2, 3), (3, 2, 1)),)
    rep = verify_packing(g, S, TreePacking(n=3, terminals=S, trees=(TreeCertificate(bad_edges, frozenset(S)),)))
    assert len(rep.violations) >= 2


def test_verify_paths_clean():
    r = whole_region(4)
    ps = st_internally_disjoint_paths(r, (1, 2, 3, 4), (4, 3, 2, 1), 3)
    rep = verify_paths(BubbleGraph(4), r, ps)
    assert rep.ok


def test_verify_paths_contract_breach():
    r = whole_region(3)
    p1 = ((1, 2, 3), (2, 1, 3), (2, 3, 1))
    p2 = ((1, 3, 2), (3, 1, 2), (2, 3, 1))  # wrong second edge on purpose? no: 312-231 not an edge
    ps = PathSet(paths=(p1, p2), contract="disjoint")
    rep = verify_paths(BubbleGraph(3), r, ps)
    assert not rep.ok
    assert "contract-breach" in rep.kinds() or "not-an-edge" in rep.kinds()


def test_verify_paths_shared_internal_under_disjoint_contract():
    r = whole_region(3)
    p1 = ((1, 2, 3), (2, 1, 3), (2, 3, 1))
    p2 = ((1, 3, 2), (1, 2, 3), (2, 1, 3))
    ps = PathSet(paths=(p1, p2), contract="disjoint")
    rep = verify_paths(BubbleGraph(3), r, ps)
    assert not rep.ok
    assert "contract-breach" in rep.kinds()


def test_zero_length_path_ok_under_disjoint_contract():
    r = whole_region(3)
    ps = PathSet(paths=(((1, 2, 3),),), contract="disjoint")
    rep = verify_paths(BubbleGraph(3), r, ps)
    assert rep.ok
