import itertools

import pytest

from witchmoduli import trees
from witchmoduli.errors import (
    CycleDetected,
    MultipleRoots,
    RootIsLeaf,
    UnorderedInList,
    VertexNotFound,
)

from oracles import bfs_path, brute_rrt_maps, brute_subtree_through, schroeder_faces


def corolla(r):
    return trees.rrt_from_paren("(" + "." * r + ")")


def test_validate_one_leaf_tree():
    t = trees.validate_rrt({"r": ["a"]}, "r")
    assert t.n_leaves == 1
    assert t.is_stable
    assert t.paren == "(.)"


def test_validate_corolla_three_leaves():
    t = trees.validate_rrt({0: [1, 2, 3]}, 0)
    assert t.is_stable
    assert t.paren == "(...)"
    assert t.leaves == (1, 2, 3)


def test_validate_unstable_chain():
    # root with one interior child that has one leaf child
    t = trees.validate_rrt({0: [1], 1: [2]}, 0)
    assert not t.is_stable


def test_validate_rejects_bad_input():
    with pytest.raises(RootIsLeaf):
        trees.validate_rrt({0: []}, 0)
    with pytest.raises(CycleDetected):
        trees.validate_rrt({0: [1], 2: [3], 3: [2]}, 0)
    with pytest.raises(MultipleRoots):
        trees.validate_rrt({0: [1], 2: [3]}, 0)
    with pytest.raises(UnorderedInList):
        trees.validate_rrt({0: [1, 1]}, 0)
    with pytest.raises(UnorderedInList):
        trees.validate_rrt({0: [2], 1: [2]}, 0)


def test_paren_roundtrip():
    for r in range(1, 6):
        for t in trees.enumerate_stable_rrts(r):
            assert trees.rrt_from_paren(t.paren).paren == t.paren


def test_path_adjacent():
    t = corolla(3)
    lam2 = t.leaves[1]
    assert trees.path(t, 0, lam2) == (0, lam2)


def test_path_four_leaf_tree_matches_bfs_oracle():
    # 4-leaf tree with an interior vertex above leaves 3 and 4
    t = trees.rrt_from_paren("(..(..))")
    lam1, lam4 = t.leaves[0], t.leaves[3]
    assert trees.path(t, lam1, lam4) == bfs_path(t.in_lists, lam1, lam4)
    v = [x for x in t.interior if x != 0][0]
    assert trees.path(t, lam1, lam4) == (lam1, 0, v, lam4)


def test_path_same_vertex_rejected():
    t = corolla(2)
    with pytest.raises(VertexNotFound):
        trees.path(t, 1, 1)


def test_path_reversal():
    for t in trees.enumerate_stable_rrts(5):
        for a, b in itertools.combinations(range(t.n_vertices), 2):
            assert trees.path(t, a, b) == tuple(reversed(trees.path(t, b, a)))


def test_subtree_through_corolla():
    t = corolla(3)
    assert trees.subtree_through(t, 0, t.leaves[0]) == frozenset({t.leaves[0]})


def test_subtree_through_matches_brute_force():
    for t in trees.enumerate_stable_rrts(4):
        for a, b in itertools.permutations(range(t.n_vertices), 2):
            assert trees.subtree_through(t, a, b) == brute_subtree_through(
                t.in_lists, a, b
            )


def test_subtree_through_root_from_leaf():
    t = trees.rrt_from_paren("(..(..))")
    lam1 = t.leaves[0]
    expected = frozenset(range(t.n_vertices)) - {lam1}
    assert trees.subtree_through(t, lam1, 0) == expected


def test_enumeration_counts():
    assert len(trees.enumerate_stable_rrts(2)) == 1
    assert len(trees.enumerate_stable_rrts(3)) == 3
    assert len(trees.enumerate_stable_rrts(4)) == 11


def test_enumeration_matches_face_count_oracle():
    for r in range(1, 7):
        got = len(trees.enumerate_stable_rrts(r))
        assert got == schroeder_faces(r)
        assert got == trees.associahedron_face_count(r)


def test_enumeration_stability_and_uniqueness():
    for r in range(2, 7):
        ts = trees.enumerate_stable_rrts(r)
        assert len({t.paren for t in ts}) == len(ts)
        for t in ts:
            assert t.is_stable
            for v in t.interior:
                assert len(t.in_lists[v]) >= 2


def test_surjections_identity():
    c = corolla(2)
    maps = trees.rrt_surjections(c, c)
    assert len(maps) == 1
    assert maps[0].vertex_map == tuple(range(c.n_vertices))


def test_surjections_binary_to_corolla():
    binary = trees.rrt_from_paren("((..).)")
    maps = trees.rrt_surjections(binary, corolla(3))
    assert len(maps) == 1


def test_surjections_cannot_create_vertices():
    binary = trees.rrt_from_paren("((..).)")
    assert trees.rrt_surjections(corolla(3), binary) == []


def test_surjections_match_structural_oracle():
    for src in trees.enumerate_stable_rrts(4):
        for tgt in trees.enumerate_stable_rrts(4):
            got = sorted(m.vertex_map for m in trees.rrt_surjections(src, tgt))
            assert got == sorted(brute_rrt_maps(src, tgt))


def test_surjection_composition_closure():
    ts = trees.enumerate_stable_rrts(4)
    for a in ts:
        for b in ts:
            for f in trees.rrt_surjections(a, b):
                for c in ts:
                    for g in trees.rrt_surjections(b, c):
                        h = f.compose(g)
                        all_maps = [m.vertex_map for m in trees.rrt_surjections(a, c)]
                        assert h.vertex_map in all_maps


def test_contract_edges_map():
    t = trees.rrt_from_paren("((..).)")
    v = [x for x in t.interior if x != 0][0]
    q, vm = trees.contract_edges(t, [v])
    assert q.paren == "(...)"
    assert vm[v] == 0
    # leaves keep their order
    assert [vm[l] for l in t.leaves] == list(q.leaves)
