"""Points of the moduli spaces: coordinate data on trees and tree-pairs.

Everything here is exact: coordinates are rationals, so isomorphism and
the strict-inequality invariants are decided with zero tolerance.
Floating point appears only in the metric module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import ModuliError, ProjectionMismatch, VertexNotFound
from .trees import RRT
from .treepair import KIND_COMPONENT, KIND_MARK, TreePair

Q = Fraction


# ---------------------------------------------------------------------------
# extended points: R^k together with the point at infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedPoint:
    """A point of R cup {inf} or R^2 cup {inf}; ``coords=None`` encodes inf."""

    coords: tuple[Fraction, ...] | None

    @property
    def is_infinity(self) -> bool:
        return self.coords is None

    def __repr__(self):
        if self.coords is None:
            return "inf"
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


INF = ExtendedPoint(None)

# formal symbols standing for the output marked point at the roots; they
# are accepted as second arguments of the derived-point operations
MU_INFINITY = "mu_infinity"
LAMBDA_INFINITY = "lambda_infinity"


def finite(*coords) -> ExtendedPoint:
    return ExtendedPoint(tuple(Fraction(c) for c in coords))


# ---------------------------------------------------------------------------
# reparametrization groups G1 = R x R_{>0} and G2 = R^2 x R_{>0}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Reparam1:
    """x -> a*x + b with a > 0."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a <= 0:
            raise ModuliError("dilation factor must be positive")

    def __call__(self, x: Fraction) -> Fraction:
        return self.a * Fraction(x) + self.b

    def inverse(self) -> "Reparam1":
        return Reparam1(1 / self.a, -self.b / self.a)

    def after(self, other: "Reparam1") -> "Reparam1":
        """self o other."""
        return Reparam1(self.a * other.a, self.a * other.b + self.b)

    @staticmethod
    def identity() -> "Reparam1":
        return Reparam1(1, 0)


@dataclass(frozen=True)
class Reparam2:
    """z -> a*z + b on R^2, extended by fixing infinity."""

    a: Fraction
    b: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", (Fraction(self.b[0]), Fraction(self.b[1])))
        if self.a <= 0:
            raise ModuliError("dilation factor must be positive")

    def __call__(self, z):
        if isinstance(z, ExtendedPoint):
            if z.is_infinity:
                return INF
            z = z.coords
        return (self.a * Fraction(z[0]) + self.b[0], self.a * Fraction(z[1]) + self.b[1])

    def inverse(self) -> "Reparam2":
        return Reparam2(1 / self.a, (-self.b[0] / self.a, -self.b[1] / self.a))

    def after(self, other: "Reparam2") -> "Reparam2":
        return Reparam2(
            self.a * other.a,
            (self.a * other.b[0] + self.b[0], self.a * other.b[1] + self.b[1]),
        )

    @staticmethod
    def identity() -> "Reparam2":
        return Reparam2(1, (0, 0))


def p(psi: Reparam2) -> Reparam1:
    """The projection G2 -> G1 restricting to the horizontal action."""
    return Reparam1(psi.a, psi.b[0])


def p_point(z) -> Fraction:
    if isinstance(z, ExtendedPoint):
        if z.is_infinity:
            raise ModuliError("cannot project infinity")
        z = z.coords
    return Fraction(z[0])


# ---------------------------------------------------------------------------
# disk trees: points of the moduli of stable disk trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiskTree:
    """A stable RRT with a strictly increasing rational tuple per interior vertex."""

    tree: RRT
    x: Mapping[int, tuple[Fraction, ...]]

    def __post_init__(self):
        x = {v: tuple(Fraction(c) for c in self.x[v]) for v in self.x}
        object.__setattr__(self, "x", x)
        if not self.tree.is_stable:
            raise ModuliError("underlying RRT is not stable")
        for v in self.tree.interior:
            if v not in x:
                raise ModuliError(f"missing coordinates at interior vertex {v}")
            tup = x[v]
            if len(tup) != len(self.tree.in_lists[v]):
                raise ModuliError(f"coordinate arity mismatch at vertex {v}")
            if any(tup[i] >= tup[i + 1] for i in range(len(tup) - 1)):
                raise ModuliError(f"coordinates at vertex {v} are not increasing")

    def key(self):
        return (self.tree.paren, tuple(sorted(self.x.items())))


def derived_x_disk(d: DiskTree, rho: int, sigma) -> ExtendedPoint:
    """The derived coordinate of sigma seen from interior vertex rho."""
    t = d.tree
    if sigma == LAMBDA_INFINITY:
        return INF
    t._check(rho)
    t._check(sigma)
    if rho == sigma or rho not in t.interior:
        raise VertexNotFound("need a distinct interior first vertex")
    from .trees import path

    pth = path(t, rho, sigma)
    nxt = pth[1]
    if nxt == t.parent[rho]:
        return INF
    i = t.in_lists[rho].index(nxt)
    return ExtendedPoint((d.x[rho][i],))


def apply_reparam_disk(d: DiskTree, phi: Mapping[int, Reparam1]) -> DiskTree:
    x = {v: tuple(phi[v](c) for c in d.x[v]) for v in d.x}
    return DiskTree(d.tree, x)


def canonical_form_disk(d: DiskTree) -> DiskTree:
    return _canonicalize_disk(d)[0]


def _canonicalize_disk(d: DiskTree) -> tuple[DiskTree, dict[int, Reparam1]]:
    phi = {}
    for v in d.tree.interior:
        tup = d.x[v]
        if len(tup) >= 2:
            a = 1 / (tup[-1] - tup[0])
            phi[v] = Reparam1(a, -tup[0] * a)
        else:
            phi[v] = Reparam1(1, -tup[0])
    return apply_reparam_disk(d, phi), phi


def is_isomorphic_disk(d1: DiskTree, d2: DiskTree):
    """Isomorphism test; returns (bool, phi witness or None)."""
    if d1.tree.paren != d2.tree.paren:
        return False, None
    c1, f1 = _canonicalize_disk(d1)
    c2, f2 = _canonicalize_disk(d2)
    if c1.key() != c2.key():
        return False, None
    wit = {v: f2[v].inverse().after(f1[v]) for v in f1}
    return True, wit


# ---------------------------------------------------------------------------
# witch curves: points of the compactified witch-curve moduli
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitchCurve:
    """Coordinates on a stable tree-pair.

    ``x[rho]`` is the seam-tree tuple at the interior vertex rho;
    ``cx[alpha]`` the line abscissas of component alpha, and
    ``cy[alpha][i]`` the tuple of ordinates of the items of line i.
    For a component displaying an interior seam vertex, ``cx`` must
    equal the seam-tree tuple exactly.
    """

    pair: TreePair
    x: Mapping[int, tuple[Fraction, ...]]
    cx: Mapping[int, tuple[Fraction, ...]]
    cy: Mapping[int, tuple[tuple[Fraction, ...], ...]]

    def __post_init__(self):
        x = {v: tuple(Fraction(c) for c in self.x[v]) for v in self.x}
        cx = {v: tuple(Fraction(c) for c in self.cx[v]) for v in self.cx}
        cy = {
            v: tuple(tuple(Fraction(c) for c in line) for line in self.cy[v])
            for v in self.cy
        }
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "cx", cx)
        object.__setattr__(self, "cy", cy)
        DiskTree(self.pair.seam, x)  # validates the seam side
        tp = self.pair
        for alpha in tp.components:
            lines = tp.bubble_in[alpha]
            if alpha not in cx or alpha not in cy:
                raise ModuliError(f"missing coordinates at component {alpha}")
            if len(cx[alpha]) != len(lines) or len(cy[alpha]) != len(lines):
                raise ModuliError(f"coordinate arity mismatch at component {alpha}")
            tup = cx[alpha]
            if any(tup[i] >= tup[i + 1] for i in range(len(tup) - 1)):
                raise ModuliError(f"abscissas at component {alpha} not increasing")
            if alpha in tp.vc2 and tup != x[tp.pi[alpha]]:
                raise ModuliError(
                    f"component {alpha} must share abscissas with seam vertex {tp.pi[alpha]}"
                )
            for line_bid, ys in zip(lines, cy[alpha]):
                if len(ys) != len(tp.bubble_in[line_bid]):
                    raise ModuliError(f"ordinate arity mismatch on line {line_bid}")
                if any(ys[i] >= ys[i + 1] for i in range(len(ys) - 1)):
                    raise ModuliError(f"ordinates on line {line_bid} not increasing")

    def seam_part(self) -> DiskTree:
        return DiskTree(self.pair.seam, self.x)

    def point(self, alpha: int, i: int, j: int) -> ExtendedPoint:
        """The special point z_{alpha,ij} (0-based i and j)."""
        return ExtendedPoint((self.cx[alpha][i], self.cy[alpha][i][j]))

    def key(self):
        return (
            self.pair.canon,
            tuple(sorted(self.x.items())),
            tuple(sorted(self.cx.items())),
            tuple(sorted(self.cy.items())),
        )


def smooth_witch_curve(n, xs, ys) -> WitchCurve:
    """Convenience constructor for a smooth witch curve of type n."""
    from .treepair import smooth_tree_pair

    pair = smooth_tree_pair(tuple(n))
    root = pair.root
    xs = tuple(Fraction(v) for v in xs)
    if pair.r == 1:
        return WitchCurve(
            pair,
            {pair.seam.root: xs},
            {root: xs},
            {root: (tuple(Fraction(v) for v in ys[0]),)},
        )
    return WitchCurve(
        pair,
        {pair.seam.root: xs},
        {root: xs},
        {root: tuple(tuple(Fraction(v) for v in line) for line in ys)},
    )


def derived_point_z(w: WitchCurve, alpha: int, beta) -> ExtendedPoint:
    """z_{alpha beta}: where beta appears on the screen of alpha."""
    tp = w.pair
    if beta == MU_INFINITY:
        return INF
    if alpha == beta:
        raise VertexNotFound("derived point needs distinct vertices")
    for v, want in ((alpha, (KIND_COMPONENT,)), (beta, (KIND_COMPONENT, KIND_MARK))):
        if not (0 <= v < len(tp.kinds)) or tp.kinds[v] not in want:
            raise VertexNotFound(f"vertex {v} has the wrong kind")
    # walk from beta toward the root until hitting alpha or passing it
    anc = []
    cur = beta
    while cur is not None:
        anc.append(cur)
        cur = tp.bubble_parent[cur]
    if alpha not in anc:
        return INF  # the path from alpha first steps toward the root
    pos = anc.index(alpha)
    line_bid = anc[pos - 1]
    gamma3 = anc[pos - 2]
    i = tp.bubble_in[alpha].index(line_bid)
    j = tp.bubble_in[line_bid].index(gamma3)
    return w.point(alpha, i, j)


def derived_point_x(w: WitchCurve, a: int, sigma) -> ExtendedPoint:
    """x_{a sigma} for ``a`` a seam-tree interior vertex or a component."""
    tp = w.pair
    if isinstance(a, int) and 0 <= a < len(tp.kinds) and tp.kinds[a] == KIND_COMPONENT:
        if sigma == LAMBDA_INFINITY:
            return INF
        tp.seam._check(sigma)
        if a in tp.vc2:
            if sigma == tp.pi[a]:
                raise VertexNotFound("x_{alpha rho} needs rho != pi(alpha)")
            return derived_x_disk(w.seam_part(), tp.pi[a], sigma)
        # single-line component: finite exactly on the cluster it displays
        pa = tp.pi[a]
        if pa in w.pair.seam.ancestors(sigma):
            return ExtendedPoint((w.cx[a][0],))
        return INF
    # seam-tree flavor
    return derived_x_disk(w.seam_part(), a, sigma)


def special_sets(w: WitchCurve, alpha: int):
    """(nodal points, special points) of the screen of component alpha."""
    tp = w.pair
    nodal = set()
    for beta in tp.components:
        if beta != alpha:
            nodal.add(derived_point_z(w, alpha, beta))
    spec = set(nodal)
    for mb in tp.marks:
        spec.add(derived_point_z(w, alpha, mb))
    spec.add(INF)
    return frozenset(nodal), frozenset(spec)


def apply_reparam(
    w: WitchCurve, phi: Mapping[int, Reparam1], psi: Mapping[int, Reparam2]
) -> WitchCurve:
    """Transform all coordinates; requires p(psi_alpha) = phi_{pi(alpha)} on V_C^{>=2}."""
    tp = w.pair
    for alpha in tp.vc2:
        want = phi[tp.pi[alpha]]
        have = p(psi[alpha])
        if (have.a, have.b) != (want.a, want.b):
            raise ProjectionMismatch(
                f"p(psi_{alpha}) != phi_{tp.pi[alpha]}"
            )
    x = {v: tuple(phi[v](c) for c in w.x[v]) for v in w.x}
    cx = {}
    cy = {}
    for alpha in tp.components:
        g = psi[alpha]
        cx[alpha] = tuple(g.a * c + g.b[0] for c in w.cx[alpha])
        cy[alpha] = tuple(
            tuple(g.a * c + g.b[1] for c in line) for line in w.cy[alpha]
        )
    return WitchCurve(tp, x, cx, cy)


def canonical_form(w: WitchCurve) -> WitchCurve:
    """The canonical representative of the isomorphism class of ``w``."""
    return _canonicalize(w)[0]


def _canonicalize(w: WitchCurve):
    """Returns (canonical curve, phi, psi) with curve = apply_reparam(w, phi, psi)."""
    tp = w.pair
    _, phi = _canonicalize_disk(w.seam_part())
    psi: dict[int, Reparam2] = {}
    for alpha in tp.components:
        if alpha in tp.vc2:
            horiz = phi[tp.pi[alpha]]
            # remaining freedom: vertical translation to zero the least item
            for i, line in enumerate(tp.bubble_in[alpha]):
                if tp.bubble_in[line]:
                    y0 = w.cy[alpha][i][0]
                    break
            psi[alpha] = Reparam2(horiz.a, (horiz.b, -horiz.a * y0))
        else:
            x0 = w.cx[alpha][0]
            ys = w.cy[alpha][0]
            if len(ys) >= 2:
                a = 1 / (ys[1] - ys[0])
            else:
                a = Q(1)  # the single-mark convention curve has no second point
            psi[alpha] = Reparam2(a, (-a * x0, -a * ys[0]))
    return apply_reparam(w, phi, psi), phi, psi


def is_isomorphic(w1: WitchCurve, w2: WitchCurve):
    """Exact isomorphism test; returns (bool, witness or None).

    The witness is a pair (phi, psi) of reparametrization tuples with
    apply_reparam(w1, phi, psi) equal to w2 on the nose (tree-pairs are
    canonically labeled, so the tree-pair isomorphism is the identity).
    """
    if w1.pair.canon != w2.pair.canon:
        return False, None
    c1, phi1, psi1 = _canonicalize(w1)
    c2, phi2, psi2 = _canonicalize(w2)
    if c1.key() != c2.key():
        return False, None
    phi = {v: phi2[v].inverse().after(phi1[v]) for v in phi1}
    psi = {a: psi2[a].inverse().after(psi1[a]) for a in psi1}
    return True, (phi, psi)
