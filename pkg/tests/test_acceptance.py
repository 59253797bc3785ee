"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per
criterion lines.  The randomized corpus is seeded, so every run checks
the same 500 families.
"""

import random
import time
from fractions import Fraction as Q
from functools import lru_cache

import pytest

from witchmoduli import limits as lm
from witchmoduli import metric as mt
from witchmoduli import moduli as md
from witchmoduli import strata
from witchmoduli import treepair as tpm
from witchmoduli import trees
from witchmoduli.errors import CoincidentPoint
from witchmoduli.laurent import Laurent, t_power

from famgen import random_family, random_new_point
from oracles import schroeder_faces

C = Laurent.of
T = t_power(1)

CORPUS_SEED = 20240809
CORPUS_SIZE = 500


@lru_cache(maxsize=1)
def corpus():
    rng = random.Random(CORPUS_SEED)
    families = []
    while len(families) < CORPUS_SIZE:
        families.append(random_family(rng, max_r=3, max_marks=4))
    return families


@lru_cache(maxsize=1)
def corpus_limits():
    return [lm.gromov_limit(f, check=False) for f in corpus()]


def _report(line):
    print(line)


def test_criterion_1_associahedron_counts():
    t0 = time.monotonic()
    expected = [1, 1, 3, 11, 45]
    got = [len(trees.enumerate_stable_rrts(r)) for r in range(1, 6)]
    oracle = [schroeder_faces(r) for r in range(1, 6)]
    elapsed = time.monotonic() - t0
    assert got == expected == oracle
    assert elapsed < 10.0
    _report(f"PASS criterion 1: stable RRT counts {got} match the face-count "
            f"oracle ({elapsed:.2f}s)")


def test_criterion_2_w_vs_k_reductions():
    t0 = time.monotonic()
    for n1 in range(1, 5):
        w = strata.enumerate_w((n1,))
        k = strata.enumerate_k(n1)
        assert strata.posets_isomorphic(w, k), f"W({n1}) != K_{n1}"
    for r in range(2, 6):
        for i0 in range(1, r + 1):
            n = tuple(1 if i == i0 else 0 for i in range(1, r + 1))
            w = strata.enumerate_w(n)
            k = strata.enumerate_k(r)
            assert strata.poset_isomorphic_via(
                k, w, lambda t, i0=i0: tpm.from_disk_tree(t, i0)
            ), f"W(e_{i0}) != K_{r} via the chain map"
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    _report(f"PASS criterion 2: W_(n) = K_n for n <= 4 and W_(e_i0) = K_r for "
            f"r <= 5, exact poset isomorphisms ({elapsed:.2f}s)")


def test_criterion_3_classification_exactly_one_case():
    rng = random.Random(CORPUS_SEED + 1)
    counts = {"C1": 0, "C2a": 0, "C2b": 0, "C3": 0}
    skipped = 0
    for fam, limit in zip(corpus(), corpus_limits()):
        try:
            zeta = random_new_point(rng, fam)
            cls = lm.classify_new_point(limit, zeta)  # raises if not unique
        except CoincidentPoint:
            skipped += 1
            continue
        counts[cls.case] += 1
    total = sum(counts.values())
    assert total >= 450
    assert all(v > 0 for v in counts.values()), counts
    _report(f"PASS criterion 3: exactly-one-case classification on {total} "
            f"randomized insertions, distribution {counts}")


def test_criterion_4_limit_correctness():
    t0 = time.monotonic()
    for fam, limit in zip(corpus(), corpus_limits()):
        rep = lm.check_gromov_convergence(limit, fam)
        assert rep.all_pass, (fam.n, rep.failures)
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0
    _report(f"PASS criterion 4: all {len(corpus())} corpus limits pass every "
            f"convergence axiom and derived check ({elapsed:.1f}s)")


def _permuting_tie_break(rng):
    def tb(candidates):
        default = lm._default_tie_break(candidates)
        y_best = dict(candidates)[default]
        order = None if y_best.is_zero else y_best.order()
        group = [
            i
            for i, y in candidates
            if (y.is_zero and order is None)
            or (not y.is_zero and order is not None and y.order() == order)
        ]
        return rng.choice(group) if group else default

    return tb


def test_criterion_5_limit_uniqueness():
    rng = random.Random(CORPUS_SEED + 2)
    gauge_checked = 0
    tie_checked = 0
    for fam, limit in zip(corpus(), corpus_limits()):
        g = lm.ReparamFamily2(
            t_power(rng.randint(0, 2), rng.randint(1, 4)),
            (C(rng.randint(-4, 4)) + T, C(rng.randint(-4, 4))),
        )
        limit_g = lm.gromov_limit(lm.apply_gauge(fam, g), check=False)
        ok, _ = md.is_isomorphic(limit.curve, limit_g.curve)
        assert ok, f"gauge changed the limit for type {fam.n}"
        gauge_checked += 1
        limit_t = lm.gromov_limit(
            fam, tie_break=_permuting_tie_break(rng), check=False
        )
        ok, _ = md.is_isomorphic(limit.curve, limit_t.curve)
        assert ok, f"tie permutation changed the limit for type {fam.n}"
        tie_checked += 1
    _report(f"PASS criterion 5: limits invariant under {gauge_checked} random "
            f"gauges and {tie_checked} permuted tie-breakings")


def test_criterion_6_forgetful_compatibility():
    for fam, limit in zip(corpus(), corpus_limits()):
        d, _ = lm.limit_disk_tree(fam.x)
        ok, _ = md.is_isomorphic_disk(limit.curve.seam_part(), d)
        assert ok, f"forgetful mismatch for type {fam.n}"
    checked_types = 0
    for r in range(1, 7):
        for n in _type_vectors(r, 7 - r):
            w = strata.enumerate_w(n)
            m = len(w.elements)
            for i in range(m):
                for j in range(m):
                    if w.leq_idx(i, j):
                        assert strata.poset_leq(
                            strata.forgetful(w.elements[i]),
                            strata.forgetful(w.elements[j]),
                        ), (n, i, j)
            checked_types += 1
    _report(f"PASS criterion 6: forgetful map matches the disk-tree limit on "
            f"the corpus and is order-preserving on {checked_types} poset types")


def _type_vectors(r, max_total):
    if max_total < 1:
        return
    def rec(prefix, remaining):
        if len(prefix) == r:
            if sum(prefix) >= 1:
                yield tuple(prefix)
            return
        for v in range(remaining + 1):
            yield from rec(prefix + [v], remaining - v)
    yield from rec([], max_total)


def test_criterion_7_coda_family_reproduction():
    fam = lm.smooth_family(
        (1, 0, 0, 1, 0),
        [C(0), t_power(3), t_power(2), T, C(1)],
        [[C(0)], [], [], [C(1)], []],
    )
    limit = lm.gromov_limit(fam)
    pair = limit.curve.pair
    assert len(pair.seam.interior) == 4
    assert len(pair.components) == 5
    _report("PASS criterion 7: nested-collision family of type (1,0,0,1,0) "
            "limits to 4 seam-tree interior vertices and 5 components")


def test_criterion_8_mu_convergence():
    picked = []
    for fam, limit in zip(corpus(), corpus_limits()):
        if not limit.curve.pair.is_smooth():
            picked.append((fam, limit))
        if len(picked) == 10:
            break
    assert len(picked) == 10
    for fam, limit in picked:
        surj = mt.surjection_to_smooth(limit.curve.pair)
        for eps in (Q(1, 4), Q(1, 10)):
            vals = []
            for k in range(5, 21):
                tk = Q(1, 2**k)
                phis, psis = limit.witness_at(tk)
                wit = mt.MuWitness(surj, phis, psis)
                vals.append(mt.mu_eps_with_data(limit.curve, fam.at(tk), wit, eps))
            assert vals[-1] < 1e-3, (fam.n, eps, vals[-1])
            # strictly decreasing after some k0
            k0 = None
            for start in range(len(vals) - 1):
                if all(vals[i + 1] < vals[i] for i in range(start, len(vals) - 1)):
                    k0 = start
                    break
            assert k0 is not None and k0 <= len(vals) - 3, (fam.n, eps, vals)
    w = md.smooth_witch_curve((2,), (0,), ((0, 1),))
    ident_val, _ = mt.mu_eps(w, w, Q(1, 4))
    assert ident_val <= 1e-9
    _report("PASS criterion 8: mu_eps witness values decrease below 1e-3 by "
            "k=20 for 10 families at eps in {1/4, 1/10}; identity bound "
            f"{ident_val:.2e} <= 1e-9")


def test_criterion_9_metric_sanity():
    assert mt.chordal_d(0.0, None) == 2.0
    rng = random.Random(CORPUS_SEED + 3)

    def pt():
        if rng.random() < 0.05:
            return None
        return (rng.uniform(-30, 30), rng.uniform(-30, 30))

    pts = [pt() for _ in range(10_000)]
    for idx in range(0, 10_000, 3):
        z, w, u = pts[idx], pts[(idx + 1) % 10_000], pts[(idx + 2) % 10_000]
        assert mt.chordal_d(z, z) == 0.0
        assert abs(mt.chordal_d(z, w) - mt.chordal_d(w, z)) <= 1e-12
        assert mt.chordal_d(z, u) <= mt.chordal_d(z, w) + mt.chordal_d(w, u) + 1e-12
    _report("PASS criterion 9: chordal metric symmetry, identity, and triangle "
            "inequality on 10^4 random extended points; d(0, inf) = 2 exactly")
