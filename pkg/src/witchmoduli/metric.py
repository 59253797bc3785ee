"""Chordal metrics and the distance functionals mu_eps and rho_eps.

Points of R cup {inf} and R^2 cup {inf} are identified with round unit
spheres by stereographic projection, giving the chordal metric of
diameter 2.  The sup terms of the functionals are taken over the
complement of a chordal ball; for an affine map against a constant
target the supremum is attained either at the preimage of the target's
antipode or on the boundary circle of the excluded ball, where it has a
closed form, so every sup is evaluated to floating-point accuracy with
no optimization loop.

This is the only module that computes in floating point; all inputs
arrive exact and are converted at the boundary.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import ProjectionMismatch, SurjectionMismatch
from .moduli import (
    DiskTree,
    ExtendedPoint,
    Reparam1,
    Reparam2,
    WitchCurve,
    derived_point_z,
    derived_x_disk,
    p as p_proj,
)
from .treepair import TreePair, TreePairSurjection, smooth_tree_pair
from .trees import RRTSurjection


# ---------------------------------------------------------------------------
# the chordal metric
# ---------------------------------------------------------------------------


def _as_xy(z) -> tuple[float, float] | None:
    """Normalize a point of R^k cup {inf} to float (x, y) or None for inf."""
    if z is None:
        return None
    if isinstance(z, ExtendedPoint):
        if z.is_infinity:
            return None
        c = z.coords
        return (float(c[0]), float(c[1]) if len(c) > 1 else 0.0)
    if isinstance(z, (int, float, Fraction)):
        return (float(z), 0.0)
    if len(z) == 1:
        return (float(z[0]), 0.0)
    return (float(z[0]), float(z[1]))


def chordal_d(z, w) -> float:
    """Distance on the round sphere of diameter 2; d(z, inf) = 2/sqrt(1+|z|^2)."""
    zz, ww = _as_xy(z), _as_xy(w)
    if zz is None and ww is None:
        return 0.0
    if zz is None or ww is None:
        finite = ww if zz is None else zz
        return 2.0 / math.sqrt(1.0 + finite[0] ** 2 + finite[1] ** 2)
    dx, dy = zz[0] - ww[0], zz[1] - ww[1]
    nz = 1.0 + zz[0] ** 2 + zz[1] ** 2
    nw = 1.0 + ww[0] ** 2 + ww[1] ** 2
    return 2.0 * math.hypot(dx, dy) / math.sqrt(nz * nw)


def _lift(z) -> np.ndarray:
    """Stereographic lift onto the unit sphere in R^3; inf goes to the pole."""
    xy = _as_xy(z)
    if xy is None:
        return np.array([0.0, 0.0, 1.0])
    x, y = xy
    n = x * x + y * y
    return np.array([2.0 * x, 2.0 * y, n - 1.0]) / (n + 1.0)


def _unlift(P) -> tuple[float, float] | None:
    if P[2] >= 1.0 - 1e-15:
        return None
    return (P[0] / (1.0 - P[2]), P[1] / (1.0 - P[2]))


# ---------------------------------------------------------------------------
# closed-form suprema of d(tau(z), c) over sphere-minus-ball domains
# ---------------------------------------------------------------------------


def _apply_affine(a, b, z):
    if z is None:
        return None
    return (a * z[0] + b[0], a * z[1] + b[1])


def _inv_affine(a, b, z):
    if z is None:
        return None
    return ((z[0] - b[0]) / a, (z[1] - b[1]) / a)


def sup_affine_distance(a, b, c, center, eps, dim) -> float:
    """sup of d(a*z + b, c) over (R^dim cup inf) minus the eps-ball at center.

    ``c`` and ``center`` are float tuples, scalars, or None (infinity);
    ``b`` is a float pair (second component 0 in dimension one).
    """
    if not (0.0 < eps < 2.0):
        raise ValueError("eps must lie strictly between 0 and the diameter 2")
    c_xy = _as_xy(c)
    center_xy = _as_xy(center)
    # interior candidate: the preimage of the antipode of c; in dimension
    # one the target sits on the great circle, so its antipode does too
    q = -_lift(c_xy)
    far_point = _unlift(q)
    far_z = _inv_affine(a, b, far_point) if far_point is not None else None
    if chordal_d(far_z, center_xy) >= eps - 1e-15:
        return 2.0
    # otherwise the sup sits on the boundary circle of the excluded ball
    n_hat = _lift(center_xy)
    h = 1.0 - eps * eps / 2.0
    r0 = eps * math.sqrt(max(1.0 - eps * eps / 4.0, 0.0))
    m0 = h * n_hat
    if dim == 1:
        # boundary = two intersection points with the great circle y = 0
        best = 0.0
        psi = math.atan2(n_hat[2], n_hat[0])
        for s in (+1.0, -1.0):
            phi = psi + s * math.acos(max(-1.0, min(1.0, h)))
            P = np.array([math.cos(phi), 0.0, math.sin(phi)])
            best = max(best, chordal_d(_apply_affine(a, b, _unlift(P)), c_xy))
        return best
    # dimension two: lift three boundary points, find the image circle in
    # R^3, and use the closed-form farthest distance from a point to a circle
    u = np.array([1.0, 0.0, 0.0])
    if abs(np.dot(u, n_hat)) > 0.9:
        u = np.array([0.0, 1.0, 0.0])
    e1 = np.cross(n_hat, u)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n_hat, e1)
    pts = []
    for theta in (0.1, 2.2, 4.3):
        P = m0 + r0 * (math.cos(theta) * e1 + math.sin(theta) * e2)
        z = _unlift(P / np.linalg.norm(P))
        pts.append(_lift(_apply_affine(a, b, z)))
    p1, p2, p3 = pts
    v1, v2 = p2 - p1, p3 - p1
    c12 = np.cross(v1, v2)
    denom = 2.0 * float(np.dot(c12, c12))
    if denom < 1e-28:
        return _sampled_boundary_max(a, b, c_xy, m0, r0, e1, e2)
    m = p1 + (
        float(np.dot(v2, v2)) * np.cross(c12, v1)
        + float(np.dot(v1, v1)) * np.cross(v2, c12)
    ) / denom
    r = float(np.linalg.norm(p1 - m))
    normal = c12 / math.sqrt(denom / 2.0)
    v = _lift(c_xy) - m
    v_plane = v - float(np.dot(v, normal)) * normal
    val = math.sqrt(
        max(float(np.dot(v, v)) + r * r + 2.0 * r * float(np.linalg.norm(v_plane)), 0.0)
    )
    return min(val, 2.0)


def _sampled_boundary_max(a, b, c_xy, m0, r0, e1, e2, n=4096) -> float:
    best = 0.0
    for k in range(n):
        theta = 2.0 * math.pi * k / n
        P = m0 + r0 * (math.cos(theta) * e1 + math.sin(theta) * e2)
        z = _unlift(P / np.linalg.norm(P))
        best = max(best, chordal_d(_apply_affine(a, b, z), c_xy))
    return best


# ---------------------------------------------------------------------------
# the functionals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuWitness:
    """Witness data for one evaluation of mu_eps: a structure map plus
    reparametrization tuples satisfying the restriction constraint."""

    surjection: TreePairSurjection
    phi: Mapping[int, Reparam1]
    psi: Mapping[int, Reparam2]


def surjection_to_smooth(tp: TreePair) -> TreePairSurjection:
    """The structure map from any stratum onto the unique smooth stratum."""
    smooth = smooth_tree_pair(tp.type_vector)
    seam_map = []
    for v in range(tp.seam.n_vertices):
        if tp.seam.in_lists[v]:
            seam_map.append(smooth.seam.root)
        else:
            i = tp.seam.leaf_index(v)
            seam_map.append(smooth.seam.leaves[i - 1])
    bubble_map = {}
    for c in tp.components:
        bubble_map[c] = smooth.root
    for mb in tp.marks:
        bubble_map[mb] = smooth.mark_bid(*tp.mark_label[mb])
    return TreePairSurjection(tp, smooth, tuple(seam_map), bubble_map)


def _check_witness(w: WitchCurve, w_tilde: WitchCurve, witness: MuWitness) -> None:
    surj = witness.surjection
    if surj.source.canon != w.pair.canon or surj.target.canon != w_tilde.pair.canon:
        raise SurjectionMismatch("witness surjection does not match the curves")
    for alpha in w.pair.vc2:
        want = witness.phi[w.pair.pi[alpha]]
        have = p_proj(witness.psi[alpha])
        if (Fraction(have.a) != Fraction(want.a)) or (
            Fraction(have.b) != Fraction(want.b)
        ):
            raise ProjectionMismatch(f"p(psi_{alpha}) != phi_{w.pair.pi[alpha]}")


def _ext_xy(pt: ExtendedPoint):
    return None if pt.is_infinity else _as_xy(pt)


def _relative1(g: Reparam1, h: Reparam1):
    """Float (a, b) of h^{-1} o g, with the cancellation done exactly."""
    a = Fraction(g.a) / Fraction(h.a)
    b = (Fraction(g.b) - Fraction(h.b)) / Fraction(h.a)
    return float(a), (float(b), 0.0)


def _relative2(g: Reparam2, h: Reparam2):
    a = Fraction(g.a) / Fraction(h.a)
    b0 = (Fraction(g.b[0]) - Fraction(h.b[0])) / Fraction(h.a)
    b1 = (Fraction(g.b[1]) - Fraction(h.b[1])) / Fraction(h.a)
    return float(a), (float(b0), float(b1))


def _pull1(g: Reparam1, pt: ExtendedPoint):
    """Float g^{-1}(pt), with the cancellation done exactly."""
    if pt.is_infinity:
        return None
    return (float((Fraction(pt.coords[0]) - Fraction(g.b)) / Fraction(g.a)), 0.0)


def _pull2(g: Reparam2, pt: ExtendedPoint):
    if pt.is_infinity:
        return None
    return (
        float((Fraction(pt.coords[0]) - Fraction(g.b[0])) / Fraction(g.a)),
        float((Fraction(pt.coords[1]) - Fraction(g.b[1])) / Fraction(g.a)),
    )


def mu_eps_with_data(
    w: WitchCurve, w_tilde: WitchCurve, witness: MuWitness, eps
) -> float:
    """Exact evaluation of the four-sum expression at the given witness."""
    _check_witness(w, w_tilde, witness)
    eps = float(eps)
    surj = witness.surjection
    tp = w.pair
    seam = tp.seam
    disk = w.seam_part()
    total = 0.0

    # seam pairs with equal image: sup over the line-sphere
    for rho in seam.interior:
        for sigma in seam.interior:
            if rho == sigma or surj.f_s(rho) != surj.f_s(sigma):
                continue
            a, b = _relative1(witness.phi[rho], witness.phi[sigma])
            x_rs = _ext_xy(derived_x_disk(disk, rho, sigma))
            x_sr = _ext_xy(derived_x_disk(disk, sigma, rho))
            total += sup_affine_distance(a, b, x_sr, x_rs, eps, dim=1)

    # component pairs with equal image: sup over the plane-sphere
    for alpha in tp.components:
        for beta in tp.components:
            if alpha == beta or surj.f_b(alpha) != surj.f_b(beta):
                continue
            a, b = _relative2(witness.psi[alpha], witness.psi[beta])
            z_ab = _ext_xy(derived_point_z(w, alpha, beta))
            z_ba = _ext_xy(derived_point_z(w, beta, alpha))
            total += sup_affine_distance(a, b, z_ba, z_ab, eps, dim=2)

    # seam pairs with distinct images: plain distances
    tdisk = w_tilde.seam_part()
    for rho in seam.interior:
        for sigma in range(seam.n_vertices):
            if sigma == rho or surj.f_s(rho) == surj.f_s(sigma):
                continue
            target = derived_x_disk(tdisk, surj.f_s(rho), surj.f_s(sigma))
            pulled = _pull1(witness.phi[rho], target)
            mine = _ext_xy(derived_x_disk(disk, rho, sigma))
            total += chordal_d(pulled, mine)

    # component/mark pairs with distinct images
    others = list(tp.components) + list(tp.marks)
    for alpha in tp.components:
        for beta in others:
            if beta == alpha or surj.f_b(alpha) == surj.f_b(beta):
                continue
            target = derived_point_z(w_tilde, surj.f_b(alpha), surj.f_b(beta))
            pulled = _pull2(witness.psi[alpha], target)
            mine = _ext_xy(derived_point_z(w, alpha, beta))
            total += chordal_d(pulled, mine)
    return total


def rho_eps_with_data(
    d: DiskTree, d_tilde: DiskTree, f: RRTSurjection, phi: Mapping[int, Reparam1], eps
) -> float:
    """The disk-tree analogue of mu_eps_with_data (two sums)."""
    if f.source.paren != d.tree.paren or f.target.paren != d_tilde.tree.paren:
        raise SurjectionMismatch("surjection does not match the disk trees")
    eps = float(eps)
    seam = d.tree
    total = 0.0
    for rho in seam.interior:
        for sigma in seam.interior:
            if rho == sigma or f(rho) != f(sigma):
                continue
            a, b = _relative1(phi[rho], phi[sigma])
            x_rs = _ext_xy(derived_x_disk(d, rho, sigma))
            x_sr = _ext_xy(derived_x_disk(d, sigma, rho))
            total += sup_affine_distance(a, b, x_sr, x_rs, eps, dim=1)
    for rho in seam.interior:
        for sigma in range(seam.n_vertices):
            if sigma == rho or f(rho) == f(sigma):
                continue
            target = derived_x_disk(d_tilde, f(rho), f(sigma))
            pulled = _pull1(phi[rho], target)
            mine = _ext_xy(derived_x_disk(d, rho, sigma))
            total += chordal_d(pulled, mine)
    return total


# ---------------------------------------------------------------------------
# the infimum: multi-start derivative-free optimization
# ---------------------------------------------------------------------------


def _witness_from_vector(tp: TreePair, surj, vec) -> MuWitness:
    phi = {}
    psi = {}
    k = 0
    for rho in tp.seam.interior:
        phi[rho] = Reparam1(Fraction(math.exp(vec[k])), Fraction(float(vec[k + 1])))
        k += 2
    for alpha in sorted(tp.components):
        if alpha in tp.vc2:
            h = phi[tp.pi[alpha]]
            psi[alpha] = Reparam2(h.a, (h.b, Fraction(float(vec[k]))))
            k += 1
        else:
            psi[alpha] = Reparam2(
                Fraction(math.exp(vec[k])),
                (Fraction(float(vec[k + 1])), Fraction(float(vec[k + 2]))),
            )
            k += 3
    return MuWitness(surj, phi, psi)


def _vector_length(tp: TreePair) -> int:
    n = 2 * len(tp.seam.interior)
    for alpha in tp.components:
        n += 1 if alpha in tp.vc2 else 3
    return n


def mu_eps(
    w: WitchCurve,
    w_tilde: WitchCurve,
    eps,
    seed: int = 0,
    restarts: int = 6,
    maxiter: int = 400,
):
    """Upper bound on mu_eps(w, w_tilde) with the best witness found.

    Minimum over the (finite) set of structure maps; per map, multi-start
    Nelder-Mead over (log scale, translation) coordinates.  Returns
    (float('inf'), None) when no structure map exists.  The reported
    value is an upper bound on the true infimum; the optimizer tolerance
    is around 1e-9 for the identity-like instances exercised in tests.
    """
    from scipy.optimize import minimize

    from .treepair import tree_pair_surjections

    if w.pair.type_vector != w_tilde.pair.type_vector:
        return float("inf"), None
    surjections = tree_pair_surjections(w.pair, w_tilde.pair)
    if not surjections:
        return float("inf"), None
    eps = float(eps)
    rng = random.Random(seed)
    best = (float("inf"), None)
    for surj in surjections:
        nvar = _vector_length(w.pair)

        def objective(vec, surj=surj):
            try:
                witness = _witness_from_vector(w.pair, surj, vec)
                return mu_eps_with_data(w, w_tilde, witness, eps)
            except (OverflowError, ValueError):
                return 4.0 * (len(w.pair.components) + w.pair.seam.n_vertices) ** 2

        starts = [np.zeros(nvar)]
        for _ in range(restarts - 1):
            starts.append(np.array([rng.uniform(-1.5, 1.5) for _ in range(nvar)]))
        for x0 in starts:
            res = minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={"maxiter": maxiter, "xatol": 1e-12, "fatol": 1e-13},
            )
            val = float(res.fun)
            if val < best[0]:
                best = (val, _witness_from_vector(w.pair, surj, res.x))
    return best
