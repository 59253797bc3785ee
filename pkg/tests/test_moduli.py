import random
from fractions import Fraction as Q

import pytest

from witchmoduli import moduli as md
from witchmoduli import strata, treepair as tp, trees
from witchmoduli.errors import ModuliError, ProjectionMismatch
from witchmoduli.moduli import (
    INF,
    LAMBDA_INFINITY,
    MU_INFINITY,
    DiskTree,
    Reparam1,
    Reparam2,
    WitchCurve,
    finite,
)
from witchmoduli.treepair import MARK


def bubble_curve_type2():
    """Type (3) pair with one bubble holding two marks: two components."""
    seam = trees.rrt_from_paren("(.)")
    bubble = ((MARK, MARK),)
    pair = tp.validate_tree_pair(seam, ((bubble, MARK),), (3,))
    return pair


def test_reparam_groups():
    g = Reparam1(2, 3)
    assert g(Q(1)) == 5
    assert g.inverse().after(g)(Q(7)) == 7
    h = Reparam2(2, (1, 1))
    assert h((1, 1)) == (3, 3)
    assert h(INF) is INF
    assert md.p(h)(Q(1)) == 3
    with pytest.raises(ModuliError):
        Reparam1(0, 1)


def test_disk_tree_validation():
    t = trees.rrt_from_paren("(...)")
    d = DiskTree(t, {0: (0, 1, 2)})
    assert d.x[0] == (Q(0), Q(1), Q(2))
    with pytest.raises(ModuliError):
        DiskTree(t, {0: (1, 0, 2)})


def test_derived_x_disk():
    t = trees.rrt_from_paren("(...)")
    d = DiskTree(t, {0: (0, 1, 2)})
    for i, leaf in enumerate(t.leaves):
        assert md.derived_x_disk(d, 0, leaf) == finite(i)
    assert md.derived_x_disk(d, 0, LAMBDA_INFINITY) is INF


def test_smooth_witch_curve_and_derived_points():
    w = md.smooth_witch_curve((1, 1), (0, 1), ((0,), (5,)))
    root = w.pair.root
    mu11 = w.pair.mark_bid(1, 1)
    mu21 = w.pair.mark_bid(2, 1)
    assert md.derived_point_z(w, root, mu11) == finite(0, 0)
    assert md.derived_point_z(w, root, mu21) == finite(1, 5)
    assert md.derived_point_z(w, root, MU_INFINITY) is INF


def test_two_component_derived_points():
    pair = bubble_curve_type2()
    root = pair.root
    bubble = [c for c in pair.components if c != root][0]
    w = WitchCurve(
        pair,
        {0: (Q(0),)},
        {root: (Q(0),), bubble: (Q(0),)},
        {root: ((Q(0), Q(1)),), bubble: ((Q(0), Q(1)),)},
    )
    # bubble attached at the first item of the root line
    assert md.derived_point_z(w, root, bubble) == finite(0, 0)
    assert md.derived_point_z(w, bubble, root) is INF


def test_special_sets():
    w = md.smooth_witch_curve((2,), (0,), ((0, 1),))
    nodal, spec = md.special_sets(w, w.pair.root)
    assert nodal == frozenset()
    assert spec == frozenset({finite(0, 0), finite(0, 1), INF})

    pair = bubble_curve_type2()
    root = pair.root
    bubble = [c for c in pair.components if c != root][0]
    w2 = WitchCurve(
        pair,
        {0: (Q(0),)},
        {root: (Q(0),), bubble: (Q(0),)},
        {root: ((Q(0), Q(4)),), bubble: ((Q(0), Q(1)),)},
    )
    nodal, spec = md.special_sets(w2, root)
    assert nodal == frozenset({finite(0, 0)})
    assert len(spec) >= 2


def test_special_points_at_least_two_everywhere():
    # stability forces >= 2 special points on every screen
    for n in [(3,), (1, 1), (2, 1)]:
        for pair in strata.enumerate_w(n).elements:
            w = random_curve_on(pair, random.Random(7))
            for alpha in pair.components:
                _, spec = md.special_sets(w, alpha)
                assert len(spec) >= 2


def random_curve_on(pair, rng):
    """Random exact-rational coordinates satisfying all constraints."""
    x = {}
    for v in pair.seam.interior:
        k = len(pair.seam.in_lists[v])
        vals = sorted(rng.sample(range(-20, 21), k))
        while len(set(vals)) < k:
            vals = sorted(rng.sample(range(-20, 21), k))
        x[v] = tuple(Q(c) for c in vals)
    cx, cy = {}, {}
    for alpha in pair.components:
        lines = pair.bubble_in[alpha]
        if alpha in pair.vc2:
            cx[alpha] = x[pair.pi[alpha]]
        else:
            cx[alpha] = (Q(rng.randint(-10, 10)),)
        ys = []
        for lb in lines:
            k = len(pair.bubble_in[lb])
            vals = sorted(rng.sample(range(-30, 31), k)) if k else []
            ys.append(tuple(Q(c) for c in vals))
        cy[alpha] = tuple(ys)
    return WitchCurve(pair, x, cx, cy)


def test_apply_reparam_identity_and_composition():
    rng = random.Random(1)
    w = md.smooth_witch_curve((2, 1), (0, 1), ((0, 3), (7,)))
    tpair = w.pair
    ident_phi = {v: Reparam1.identity() for v in tpair.seam.interior}
    ident_psi = {a: Reparam2.identity() for a in tpair.components}
    assert md.apply_reparam(w, ident_phi, ident_psi).key() == w.key()

    g = Reparam2(2, (1, 1))
    phi = {v: md.p(g) for v in tpair.seam.interior}
    psi = {a: g for a in tpair.components}
    w2 = md.apply_reparam(w, phi, psi)
    assert w2.cx[tpair.root] == (Q(1), Q(3))
    ok, _ = md.is_isomorphic(w, w2)
    assert ok

    h = Reparam2(3, (0, -2))
    phi2 = {v: md.p(h) for v in tpair.seam.interior}
    psi2 = {a: h for a in tpair.components}
    lhs = md.apply_reparam(md.apply_reparam(w, phi, psi), phi2, psi2)
    comp_phi = {v: phi2[v].after(phi[v]) for v in phi}
    comp_psi = {a: psi2[a].after(psi[a]) for a in psi}
    rhs = md.apply_reparam(w, comp_phi, comp_psi)
    assert lhs.key() == rhs.key()


def test_apply_reparam_projection_mismatch():
    w = md.smooth_witch_curve((1, 1), (0, 1), ((0,), (0,)))
    tpair = w.pair
    phi = {v: Reparam1.identity() for v in tpair.seam.interior}
    psi = {a: Reparam2(2, (0, 0)) for a in tpair.components}
    with pytest.raises(ProjectionMismatch):
        md.apply_reparam(w, phi, psi)


def test_canonical_form_type2_is_point():
    # any type-(2) smooth curve normalizes to x = 0, marks (0,0) and (0,1)
    for xs, ys in [((5,), ((2, 9),)), ((-3,), ((0, 1),)), ((0,), ((-7, 13),))]:
        w = md.smooth_witch_curve((2,), xs, ys)
        c = md.canonical_form(w)
        assert c.cx[c.pair.root] == (Q(0),)
        assert c.cy[c.pair.root] == ((Q(0), Q(1)),)


def test_canonical_form_idempotent():
    rng = random.Random(3)
    for n in [(3,), (1, 1), (2, 1)]:
        for pair in strata.enumerate_w(n).elements:
            w = random_curve_on(pair, rng)
            c = md.canonical_form(w)
            assert md.canonical_form(c).key() == c.key()


def test_random_orbit_pairs_have_equal_canonical_forms():
    rng = random.Random(11)
    for n in [(3,), (1, 1), (2, 1)]:
        for pair in strata.enumerate_w(n).elements:
            w = random_curve_on(pair, rng)
            phi = {}
            for v in pair.seam.interior:
                phi[v] = Reparam1(Q(rng.randint(1, 5)), Q(rng.randint(-4, 4)))
            psi = {}
            for alpha in pair.components:
                if alpha in pair.vc2:
                    h = phi[pair.pi[alpha]]
                    psi[alpha] = Reparam2(h.a, (h.b, Q(rng.randint(-4, 4))))
                else:
                    psi[alpha] = Reparam2(
                        Q(rng.randint(1, 5)),
                        (Q(rng.randint(-4, 4)), Q(rng.randint(-4, 4))),
                    )
            w2 = md.apply_reparam(w, phi, psi)
            assert md.canonical_form(w).key() == md.canonical_form(w2).key()
            ok, wit = md.is_isomorphic(w, w2)
            assert ok
            wphi, wpsi = wit
            assert md.apply_reparam(w, wphi, wpsi).key() == w2.key()


def test_not_isomorphic_different_y_gaps():
    w1 = md.smooth_witch_curve((3,), (0,), ((0, 1, 3),))
    w2 = md.smooth_witch_curve((3,), (0,), ((0, 1, 2),))
    ok, _ = md.is_isomorphic(w1, w2)
    assert not ok


def test_not_isomorphic_different_pairs():
    w1 = md.smooth_witch_curve((3,), (0,), ((0, 1, 2),))
    pair = bubble_curve_type2()
    root = pair.root
    bubble = [c for c in pair.components if c != root][0]
    w2 = WitchCurve(
        pair,
        {0: (Q(0),)},
        {root: (Q(0),), bubble: (Q(0),)},
        {root: ((Q(0), Q(1)),), bubble: ((Q(0), Q(1)),)},
    )
    ok, _ = md.is_isomorphic(w1, w2)
    assert not ok


def test_derived_point_orientation_invariant():
    # for contiguous components with beta above alpha: z_{beta alpha} = inf
    rng = random.Random(5)
    for n in [(3,), (2, 1)]:
        for pair in strata.enumerate_w(n).elements:
            w = random_curve_on(pair, rng)
            for alpha in pair.components:
                for beta in pair.components:
                    if alpha == beta or not tp.contiguous(pair, alpha, beta):
                        continue
                    za = md.derived_point_z(w, alpha, beta)
                    zb = md.derived_point_z(w, beta, alpha)
                    gp = pair.bubble_parent[beta]
                    if gp is not None and pair.bubble_parent[gp] == alpha:
                        assert zb is INF and not za.is_infinity


def test_vc1_extended_x_rule():
    # component over a single seam: other seams sit at infinity
    seam = trees.rrt_from_paren("(..)")
    pair = tp.validate_tree_pair(seam, ((((MARK, MARK),),), (MARK,)), (2, 1))
    bubble = sorted(pair.vc1)[0]
    w = WitchCurve(
        pair,
        {0: (Q(0), Q(1))},
        {pair.root: (Q(0), Q(1)), bubble: (Q(0),)},
        {pair.root: ((Q(0),), (Q(2),)), bubble: ((Q(0), Q(1)),)},
    )
    lam1, lam2 = pair.seam.leaves
    assert md.derived_point_x(w, bubble, lam1) == finite(0)
    assert md.derived_point_x(w, bubble, lam2) is INF
    assert md.derived_point_x(w, bubble, LAMBDA_INFINITY) is INF
