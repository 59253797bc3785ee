"""One-parameter families of smooth witch curves and their limits.

A degenerating sequence is modeled as a family with Laurent-polynomial
coordinates in a parameter t -> 0+, so every limit in the convergence
axioms is exactly computable and no subsequence extraction is ever
needed.  The limit algorithm is inductive: peel off the marked point
with maximal height, take the limit of the smaller family, classify how
the removed point behaves relative to that limit (four mutually
exclusive cases), and splice it back in, building the new screens and
their rescaling families explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    ClassificationMismatch,
    CoincidentPoint,
    DegenerateFamily,
    SurjectionNotFound,
)
from .laurent import Laurent, ratio_limit_pair, ratio_limit_scalar
from .moduli import (
    INF,
    DiskTree,
    ExtendedPoint,
    Reparam1,
    Reparam2,
    WitchCurve,
    _canonicalize,
    derived_point_z,
    special_sets,
)
from .treepair import KIND_MARK, MARK, TreePair
from .trees import RRT, rrt_from_shape

Q = Fraction


# ---------------------------------------------------------------------------
# reparametrization families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReparamFamily1:
    """A G1-valued function of t: x -> a(t) x + b(t), a eventually positive."""

    a: Laurent
    b: Laurent

    def __post_init__(self):
        object.__setattr__(self, "a", Laurent.of(self.a))
        object.__setattr__(self, "b", Laurent.of(self.b))
        if not self.a.eventually_positive():
            raise DegenerateFamily("scale family must be eventually positive")

    def at(self, t: Fraction) -> Reparam1:
        return Reparam1(self.a(t), self.b(t))

    def after_const(self, g: Reparam1) -> "ReparamFamily1":
        """self o g with g constant in t."""
        return ReparamFamily1(self.a * g.a, self.a * g.b + self.b)

    def inv_limit(self, f: Laurent) -> ExtendedPoint:
        """lim (f(t) - b(t)) / a(t)."""
        return ratio_limit_scalar(Laurent.of(f) - self.b, self.a)


@dataclass(frozen=True)
class ReparamFamily2:
    """A G2-valued function of t: z -> a(t) z + b(t)."""

    a: Laurent
    b: tuple[Laurent, Laurent]

    def __post_init__(self):
        object.__setattr__(self, "a", Laurent.of(self.a))
        object.__setattr__(
            self, "b", (Laurent.of(self.b[0]), Laurent.of(self.b[1]))
        )
        if not self.a.eventually_positive():
            raise DegenerateFamily("scale family must be eventually positive")

    def at(self, t: Fraction) -> Reparam2:
        return Reparam2(self.a(t), (self.b[0](t), self.b[1](t)))

    def after_const(self, g: Reparam2) -> "ReparamFamily2":
        return ReparamFamily2(
            self.a * g.a,
            (self.a * g.b[0] + self.b[0], self.a * g.b[1] + self.b[1]),
        )

    def inv_limit(self, point) -> ExtendedPoint:
        """lim (psi(t))^{-1}(point(t)) for a Laurent pair."""
        px, py = Laurent.of(point[0]), Laurent.of(point[1])
        return ratio_limit_pair((px - self.b[0], py - self.b[1]), self.a)

    def p(self) -> ReparamFamily1:
        return ReparamFamily1(self.a, self.b[0])


# ---------------------------------------------------------------------------
# smooth families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothFamily:
    """A family of smooth witch curves of type n with Laurent coordinates."""

    n: tuple[int, ...]
    x: tuple[Laurent, ...]
    z: tuple[tuple[tuple[Laurent, Laurent], ...], ...]  # z[i-1][j-1]

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        x = tuple(Laurent.of(v) for v in self.x)
        z = tuple(
            tuple((Laurent.of(zx), Laurent.of(zy)) for zx, zy in seam)
            for seam in self.z
        )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        r = len(n)
        if r < 1 or any(v < 0 for v in n) or not any(n):
            raise DegenerateFamily(f"invalid type vector {n}")
        if len(x) != r or len(z) != r or any(len(z[i]) != n[i] for i in range(r)):
            raise DegenerateFamily("family data does not match the type vector")
        for i in range(r - 1):
            diff = x[i + 1] - x[i]
            if diff.is_zero:
                raise DegenerateFamily(f"abscissas {i+1} and {i+2} identically equal")
            if not diff.eventually_positive():
                raise DegenerateFamily(f"abscissas {i+1}, {i+2} in the wrong order")
        for i in range(r):
            for zx, zy in z[i]:
                if not (zx - x[i]).is_zero:
                    raise DegenerateFamily(
                        f"marked point on seam {i+1} does not ride its seam"
                    )
            for j in range(n[i] - 1):
                diff = z[i][j + 1][1] - z[i][j][1]
                if diff.is_zero:
                    raise DegenerateFamily(
                        f"marked points ({i+1},{j+1}) and ({i+1},{j+2}) collide identically"
                    )
                if not diff.eventually_positive():
                    raise DegenerateFamily(
                        f"marked points on seam {i+1} in the wrong vertical order"
                    )

    @property
    def r(self) -> int:
        return len(self.n)

    def y(self, i: int, j: int) -> Laurent:
        return self.z[i - 1][j - 1][1]

    def mark(self, i: int, j: int) -> tuple[Laurent, Laurent]:
        return self.z[i - 1][j - 1]

    def marks(self):
        for i in range(1, self.r + 1):
            for j in range(1, self.n[i - 1] + 1):
                yield (i, j)

    def restrict(self, counts: Sequence[int]) -> "SmoothFamily":
        """Keep only the lowest ``counts[i]`` marks of each seam."""
        if any(c < 0 or c > self.n[i] for i, c in enumerate(counts)) or not any(counts):
            raise DegenerateFamily("invalid restriction counts")
        return SmoothFamily(
            tuple(counts),
            self.x,
            tuple(self.z[i][: counts[i]] for i in range(self.r)),
        )

    def with_mark(self, i0: int, zeta) -> "SmoothFamily":
        z = list(self.z)
        z[i0 - 1] = z[i0 - 1] + ((Laurent.of(zeta[0]), Laurent.of(zeta[1])),)
        n = list(self.n)
        n[i0 - 1] += 1
        return SmoothFamily(tuple(n), self.x, tuple(z))

    def at(self, t: Fraction) -> WitchCurve:
        """The smooth witch curve at parameter value t (must be small enough)."""
        from .moduli import smooth_witch_curve

        t = Fraction(t)
        xs = tuple(f(t) for f in self.x)
        ys = tuple(tuple(zy(t) for _, zy in seam) for seam in self.z)
        return smooth_witch_curve(self.n, xs, ys)


def smooth_family(n, x, y) -> SmoothFamily:
    """Build a family from abscissa functions and per-seam ordinate functions."""
    n = tuple(n)
    x = tuple(Laurent.of(v) for v in x)
    z = tuple(
        tuple((x[i], Laurent.of(v)) for v in y[i]) for i in range(len(n))
    )
    return SmoothFamily(n, x, z)


def apply_gauge(f: SmoothFamily, g: ReparamFamily2) -> SmoothFamily:
    """Transform every curve of the family by the t-dependent reparametrization."""
    x = tuple(g.a * xi + g.b[0] for xi in f.x)
    z = tuple(
        tuple((g.a * zx + g.b[0], g.a * zy + g.b[1]) for zx, zy in seam)
        for seam in f.z
    )
    return SmoothFamily(f.n, x, z)


# ---------------------------------------------------------------------------
# disk-tree limits by soft rescaling
# ---------------------------------------------------------------------------


def limit_disk_tree(xs: Sequence) -> tuple[DiskTree, dict[int, ReparamFamily1]]:
    """Gromov limit of a family of r distinct points on the line.

    Clusters the abscissas by collision order, rescales each cluster by
    its own diameter scale, and recurses; returns the limiting stable
    disk tree together with the G1 family used at each interior vertex.
    """
    xs = [Laurent.of(v) for v in xs]
    r = len(xs)
    if r == 0:
        raise DegenerateFamily("empty abscissa family")
    if r == 1:
        tree = rrt_from_shape((None,))
        return (
            DiskTree(tree, {0: (Q(0),)}),
            {0: ReparamFamily1(Laurent.of(1), xs[0])},
        )
    for i in range(r):
        for j in range(i + 1, r):
            if (xs[i] - xs[j]).is_zero:
                raise DegenerateFamily(f"abscissas {i+1} and {j+1} identically equal")

    def cluster(idxs):
        """Nested (shape, coords, phi, children) over the index group."""
        scale = min(
            (xs[i] - xs[j]).order() for i, j in itertools.combinations(idxs, 2)
        )
        base = xs[idxs[0]]
        a = Laurent.of([(scale, 1)])
        groups: list[list[int]] = []
        for i in idxs:
            placed = False
            for g in groups:
                if (xs[i] - xs[g[0]]).is_zero or (xs[i] - xs[g[0]]).order() > scale:
                    g.append(i)
                    placed = True
                    break
            if not placed:
                groups.append([i])
        coords = []
        for g in groups:
            diff = xs[g[0]] - base
            coords.append(diff.leading() if (not diff.is_zero and diff.order() == scale) else Q(0))
        order = sorted(range(len(groups)), key=lambda k: coords[k])
        groups = [groups[k] for k in order]
        coords = [coords[k] for k in order]
        kids = []
        for g in groups:
            if len(g) == 1:
                kids.append(None)
            else:
                kids.append(cluster(g))
        return (
            tuple(k[0] if k is not None else None for k in kids),
            tuple(coords),
            ReparamFamily1(a, base),
            kids,
        )

    top = cluster(list(range(r)))
    tree = rrt_from_shape(top[0])

    coords: dict[int, tuple] = {}
    phis: dict[int, ReparamFamily1] = {}
    counter = itertools.count()

    def walk(info):
        sid = next(counter)
        coords[sid] = info[1]
        phis[sid] = info[2]
        for kid in info[3]:
            if kid is None:
                next(counter)  # leaf takes the next preorder id
            else:
                walk(kid)

    walk(top)
    return DiskTree(tree, coords), phis


def check_disk_convergence(
    d: DiskTree, phi: Mapping[int, ReparamFamily1], xs: Sequence
) -> list[str]:
    """Disk-tree convergence axioms; returns a list of failure strings."""
    xs = [Laurent.of(v) for v in xs]
    failures = []
    t = d.tree
    from .moduli import derived_x_disk

    for rho in t.interior:
        for sigma in t.interior:
            if rho == sigma:
                continue
            w = derived_x_disk(d, rho, sigma)
            w_back = derived_x_disk(d, sigma, rho)
            if not _affine_degenerates_1d(phi[rho], phi[sigma], w, w_back):
                failures.append(f"disk rescaling fails at pair ({rho},{sigma})")
    for rho in t.interior:
        for leaf in t.leaves:
            want = derived_x_disk(d, rho, leaf)
            got = phi[rho].inv_limit(xs[t.leaf_index(leaf) - 1])
            if got != want:
                failures.append(
                    f"disk marked-point limit fails at ({rho},leaf {leaf}): "
                    f"{got} != {want}"
                )
    return failures


# ---------------------------------------------------------------------------
# Gromov limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GromovLimit:
    """A limiting stable witch curve with its witnessing rescaling families."""

    family: SmoothFamily
    curve: WitchCurve
    phi: Mapping[int, ReparamFamily1]  # per seam-tree interior vertex
    psi: Mapping[int, ReparamFamily2]  # per component vertex

    def witness_at(self, t: Fraction):
        """Concrete (phi, psi) reparametrizations at parameter value t."""
        return (
            {v: f.at(t) for v, f in self.phi.items()},
            {a: f.at(t) for a, f in self.psi.items()},
        )


@dataclass(frozen=True)
class NewPointClassification:
    """Outcome of the four-case analysis for an added point family."""

    case: str  # "C1" | "C2a" | "C2b" | "C3"
    witness: object  # component bid | (bid, mark bid) | None | (bid, bid)
    zeta_limits: Mapping[int, ExtendedPoint]


# -- mutable builder used by the insertion machinery -------------------------


class _BMark:
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label  # (i, j) in the current family


class _BNode:
    __slots__ = ("pi", "lines", "psi", "tag", "_coords")

    def __init__(self, pi, lines, psi, tag=None):
        self.pi = pi  # seam-tree vertex displayed by this screen
        self.lines = lines  # list of (slot_sid, list of items)
        self.psi = psi
        self.tag = tag
        self._coords = None


def _builder_from(limit: GromovLimit) -> _BNode:
    pair = limit.curve.pair

    def mk(bid):
        lines = []
        for lb in pair.bubble_in[bid]:
            items = []
            for item in pair.bubble_in[lb]:
                if pair.kinds[item] == KIND_MARK:
                    items.append(_BMark(pair.mark_label[item]))
                else:
                    items.append(mk(item))
            lines.append((pair.slot[lb], items))
        return _BNode(pair.pi[bid], lines, limit.psi[bid], tag=bid)

    return mk(pair.root)


def _anchor(item, family: SmoothFamily):
    """The Laurent pair tracked by an item (mark function or screen center)."""
    if isinstance(item, _BMark):
        return family.mark(*item.label)
    return item.psi.b


def _freeze(
    root: _BNode,
    disk: DiskTree,
    phi: Mapping[int, ReparamFamily1],
    family: SmoothFamily,
) -> GromovLimit:
    """Turn a builder into a validated GromovLimit, computing all coordinates.

    Item positions are limits of the item anchors in the parent frame;
    items are sorted by height, and the strict separations required of a
    stable witch curve are asserted here, so any inconsistent insertion
    fails immediately.
    """
    seam = disk.tree
    cx: dict = {}
    cy: dict = {}
    psi: dict = {}

    def settle(node: _BNode):
        positions = []
        for slot, items in node.lines:
            line_pos = []
            for item in items:
                pos = node.psi.inv_limit(_anchor(item, family))
                if pos.is_infinity:
                    raise DegenerateFamily("item escapes its screen")
                line_pos.append((pos.coords, item))
            line_pos.sort(key=lambda pc: pc[0][1])
            positions.append(line_pos)
        # line abscissas
        if len(node.lines) >= 2:
            line_x = disk.x[node.pi]
        else:
            seen = [pc[0][0] for pc in positions[0]]
            if not seen:
                raise DegenerateFamily("single-line screen with no items")
            if any(v != seen[0] for v in seen):
                raise DegenerateFamily("items of a single-line screen spread out")
            line_x = (seen[0],)
        for k, line_pos in enumerate(positions):
            ys = [pc[0][1] for pc in line_pos]
            if any(ys[a] == ys[a + 1] for a in range(len(ys) - 1)):
                raise DegenerateFamily("coincident item heights on a line")
            for pos, _ in line_pos:
                if pos[0] != line_x[k]:
                    raise DegenerateFamily(
                        f"item abscissa {pos[0]} does not match its line {line_x[k]}"
                    )
        node.lines = [
            (slot, [pc[1] for pc in line_pos])
            for (slot, _), line_pos in zip(node.lines, positions)
        ]
        node._coords = (tuple(line_x), tuple(
            tuple(pc[0][1] for pc in line_pos) for line_pos in positions
        ))
        for _, items in node.lines:
            for item in items:
                if isinstance(item, _BNode):
                    settle(item)

    settle(root)

    def to_shape(node):
        return tuple(
            tuple(
                MARK if isinstance(item, _BMark) else to_shape(item)
                for item in items
            )
            for _, items in node.lines
        )

    pair = TreePair(seam, to_shape(root), family.n)

    # parallel preorder walk to map builder nodes onto fresh bubble ids
    labels_seen: dict = {}

    def assign(node, bid):
        cx[bid], cy[bid] = node._coords
        psi[bid] = node.psi
        for (slot, items), lb in zip(node.lines, pair.bubble_in[bid]):
            if slot != pair.slot[lb]:
                raise DegenerateFamily("slot mismatch after freezing")
            for item, ib in zip(items, pair.bubble_in[lb]):
                if isinstance(item, _BMark):
                    labels_seen[ib] = item.label
                else:
                    assign(item, ib)

    assign(root, pair.root)
    for ib, label in labels_seen.items():
        if pair.mark_label[ib] != label:
            raise DegenerateFamily(
                f"marked point {label} froze into slot {pair.mark_label[ib]}"
            )
    curve = WitchCurve(pair, disk.x, cx, cy)
    return GromovLimit(family, curve, dict(phi), psi)


def _resolving_tower(seam: RRT, phi, sigma_sid: int, i0: int, j0: int, zeta_y):
    """Item realizing a new point at leaf i0 under the cluster of sigma.

    Either the bare marked point (when sigma already resolves to seam i0)
    or the chain of screens displaying every interior vertex on the path
    from sigma down to the leaf, with the mark at the bottom.
    """
    leaf = seam.leaves[i0 - 1]
    if seam.leaf_set(sigma_sid) == frozenset({leaf}):
        return _BMark((i0, j0))
    if sigma_sid not in seam.ancestors(leaf):
        raise ClassificationMismatch(
            f"seam {i0} does not lie under the target cluster"
        )
    spine = list(seam.ancestors(leaf)[1:][::-1])  # root .. parent(leaf)
    spine = spine[spine.index(sigma_sid) :]

    def build(idx):
        v = spine[idx]
        nxt = spine[idx + 1] if idx + 1 < len(spine) else leaf
        lines = []
        for c in seam.in_lists[v]:
            if c == nxt:
                inner = _BMark((i0, j0)) if c == leaf else build(idx + 1)
                lines.append((c, [inner]))
            else:
                lines.append((c, []))
        psi = ReparamFamily2(phi[v].a, (phi[v].b, Laurent.of(zeta_y)))
        return _BNode(v, lines, psi)

    return build(0)


def classify_new_point(limit: GromovLimit, zeta) -> NewPointClassification:
    """Decide which of the four insertion cases applies to the point family."""
    zeta = (Laurent.of(zeta[0]), Laurent.of(zeta[1]))
    fam = limit.family
    for i, j in fam.marks():
        zx, zy = fam.mark(i, j)
        if (zeta[0] - zx).is_zero and (zeta[1] - zy).is_zero:
            raise CoincidentPoint(f"point family coincides with mark ({i},{j})")
    curve = limit.curve
    pair = curve.pair
    zl = {alpha: limit.psi[alpha].inv_limit(zeta) for alpha in pair.components}

    c1 = []
    for alpha in pair.components:
        za = zl[alpha]
        if not za.is_infinity and za not in special_sets(curve, alpha)[1]:
            c1.append(alpha)
    c2a = []
    for mb in pair.marks:
        lb = pair.bubble_parent[mb]
        alpha = pair.bubble_parent[lb]
        i = pair.bubble_in[alpha].index(lb)
        j = pair.bubble_in[lb].index(mb)
        if zl[alpha] == curve.point(alpha, i, j):
            c2a.append((alpha, mb))
    c2b = zl[pair.root].is_infinity
    c3 = []
    for alpha, beta in itertools.combinations(pair.components, 2):
        from .treepair import contiguous

        if not contiguous(pair, alpha, beta):
            continue
        zab = derived_point_z(curve, alpha, beta)
        zba = derived_point_z(curve, beta, alpha)
        if zab.is_infinity and zba.is_infinity:
            continue  # siblings share a line but no nodal point joins them
        if zl[alpha] == zab and zl[beta] == zba:
            c3.append((alpha, beta))

    cases = []
    if c1:
        cases.append(("C1", c1))
    if c2a:
        cases.append(("C2a", c2a))
    if c2b:
        cases.append(("C2b", [None]))
    if c3:
        cases.append(("C3", c3))
    if len(cases) != 1 or len(cases[0][1]) != 1:
        raise ClassificationMismatch(
            f"classification not unique: {[(c, w) for c, w in cases]}"
        )
    case, witnesses = cases[0]
    return NewPointClassification(case, witnesses[0], zl)


def _signed_scale(diff: Laurent) -> tuple[Laurent, int]:
    s = diff.eventual_sign()
    if s == 0:
        raise DegenerateFamily("degenerate rescaling: zero separation")
    return (diff if s > 0 else -diff), s


def insert_point(
    limit: GromovLimit,
    zeta,
    cls: NewPointClassification,
    slot: tuple[int, int],
    anchor_2b: Callable | None = None,
) -> GromovLimit:
    """Splice the classified point family into the limit.

    ``slot = (i0, j0)`` is the label the new marked point takes; with the
    maximal-height processing order it is the next index on seam i0.
    """
    zeta = (Laurent.of(zeta[0]), Laurent.of(zeta[1]))
    fam = limit.family
    i0, j0 = slot
    if not (1 <= i0 <= fam.r) or j0 != fam.n[i0 - 1] + 1:
        raise ClassificationMismatch(f"slot {slot} is not the next index on its seam")
    check = classify_new_point(limit, zeta)
    if check.case != cls.case or check.witness != cls.witness:
        raise ClassificationMismatch(
            f"classification {cls.case}/{cls.witness} does not match "
            f"{check.case}/{check.witness}"
        )
    pair = limit.curve.pair
    seam = pair.seam
    disk = limit.curve.seam_part()
    root = _builder_from(limit)

    def locate(node, bid):
        if node.tag == bid:
            return node
        for _, items in node.lines:
            for item in items:
                if isinstance(item, _BNode):
                    found = locate(item, bid)
                    if found is not None:
                        return found
        return None

    def locate_parent_of(node, target_bid):
        for _, items in node.lines:
            for item in items:
                if isinstance(item, _BNode):
                    if item.tag == target_bid:
                        return node
                    found = locate_parent_of(item, target_bid)
                    if found is not None:
                        return found
        return None

    if cls.case == "C1":
        alpha = cls.witness
        X, Y = cls.zeta_limits[alpha].coords
        node = locate(root, alpha)
        matches = [k for k, v in enumerate(limit.curve.cx[alpha]) if v == X]
        if len(matches) != 1:
            raise ClassificationMismatch(
                f"new point abscissa {X} does not land on a unique line"
            )
        k = matches[0]
        sigma = node.lines[k][0]
        tower = _resolving_tower(seam, limit.phi, sigma, i0, j0, zeta[1])
        node.lines[k][1].append(tower)

    elif cls.case == "C2a":
        alpha, mb = cls.witness
        i_old, j_old = pair.mark_label[mb]
        if i_old != i0:
            raise ClassificationMismatch(
                f"collided with a mark on seam {i_old}, expected {i0}"
            )
        node = locate(root, alpha)
        zx_old, zy_old = fam.mark(i_old, j_old)
        a, _sign = _signed_scale(zeta[1] - zy_old)
        beta_psi = ReparamFamily2(a, (zx_old, zy_old))
        placed = False
        for slot_sid, items in node.lines:
            for idx, item in enumerate(items):
                if isinstance(item, _BMark) and item.label == (i_old, j_old):
                    beta = _BNode(
                        slot_sid,
                        [(slot_sid, [item, _BMark((i0, j0))])],
                        beta_psi,
                    )
                    items[idx] = beta
                    placed = True
        if not placed:
            raise ClassificationMismatch("collided mark not found on its screen")

    elif cls.case == "C2b":
        candidates = [
            (i, j)
            for i, j in fam.marks()
            if not (zeta[1] - fam.y(i, j)).is_zero
        ]
        if not candidates:
            raise DegenerateFamily("no valid anchor for a new root screen")
        choice = anchor_2b(candidates) if anchor_2b else candidates[0]
        if choice not in candidates:
            raise ClassificationMismatch(f"anchor {choice} is not valid")
        zx1, zy1 = fam.mark(*choice)
        a, _sign = _signed_scale(zeta[1] - zy1)
        tower = _resolving_tower(seam, limit.phi, seam.root, i0, j0, zeta[1])
        new_root = _BNode(
            seam.root,
            [(seam.root, [root, tower])],
            ReparamFamily2(a, (zx1, zy1)),
        )
        root = new_root

    else:  # C3
        alpha, beta = cls.witness
        if not derived_point_z(limit.curve, beta, alpha).is_infinity:
            alpha, beta = beta, alpha
        if not derived_point_z(limit.curve, beta, alpha).is_infinity:
            raise ClassificationMismatch("no orientation with the deeper component")
        host = locate_parent_of(root, beta)
        if host is None:
            raise ClassificationMismatch("deeper component has no host screen")
        beta_node = locate(root, beta)
        a, _sign = _signed_scale(zeta[1] - beta_node.psi.b[1])
        for slot_sid, items in host.lines:
            for idx, item in enumerate(items):
                if item is beta_node:
                    tower = _resolving_tower(
                        seam, limit.phi, slot_sid, i0, j0, zeta[1]
                    )
                    gamma = _BNode(
                        slot_sid,
                        [(slot_sid, [beta_node, tower])],
                        ReparamFamily2(a, beta_node.psi.b),
                    )
                    items[idx] = gamma

    new_family = fam.with_mark(i0, zeta)
    return _freeze(root, disk, limit.phi, new_family)


# ---------------------------------------------------------------------------
# the full limit algorithm
# ---------------------------------------------------------------------------


def _default_tie_break(candidates):
    """Pick the eventually largest top mark; lexicographic on exact ties."""
    best = candidates[0]
    for cand in candidates[1:]:
        if best[1].eventually_less(cand[1]):
            best = cand
    return best[0]


def _base_limit(fam: SmoothFamily) -> GromovLimit:
    r = fam.r
    disk, phi = limit_disk_tree(fam.x)
    seam = disk.tree
    if r >= 2:
        (i0,) = [i + 1 for i in range(r) if fam.n[i] == 1]
        tower = _resolving_tower(seam, phi, seam.root, i0, 1, fam.y(i0, 1))
        if isinstance(tower, _BMark):
            raise DegenerateFamily("resolving tower collapsed at the base case")
        return _freeze(tower, disk, phi, fam)
    if fam.n == (1,):
        node = _BNode(
            seam.root,
            [(seam.root, [_BMark((1, 1))])],
            ReparamFamily2(Laurent.of(1), fam.mark(1, 1)),
        )
        return _freeze(node, disk, phi, fam)
    # r = 1, two marks: all such curves are isomorphic
    a, _ = _signed_scale(fam.y(1, 2) - fam.y(1, 1))
    node = _BNode(
        seam.root,
        [(seam.root, [_BMark((1, 1)), _BMark((1, 2))])],
        ReparamFamily2(a, fam.mark(1, 1)),
    )
    return _freeze(node, disk, phi, fam)


def gromov_limit(
    f: SmoothFamily,
    tie_break: Callable | None = None,
    anchor_2b: Callable | None = None,
    check: bool = True,
) -> GromovLimit:
    """The limit of the family as t -> 0+, in canonical form.

    Marked points are peeled off in decreasing height order (``tie_break``
    resolves contests between points of equal leading order) and spliced
    back one at a time; the result is verified against the convergence
    axioms unless ``check`` is disabled.
    """
    tie_break = tie_break or _default_tie_break
    counts = list(f.n)
    base_total = 1 if f.r >= 2 else min(2, sum(f.n))
    removals: list[tuple[int, int]] = []
    while sum(counts) > base_total:
        candidates = [
            (i + 1, f.y(i + 1, counts[i])) for i in range(f.r) if counts[i] > 0
        ]
        i0 = tie_break(candidates)
        removals.append((i0, counts[i0 - 1]))
        counts[i0 - 1] -= 1
    limit = _base_limit(f.restrict(counts))
    for i0, j0 in reversed(removals):
        zeta = f.mark(i0, j0)
        cls = classify_new_point(limit, zeta)
        limit = insert_point(limit, zeta, cls, (i0, j0), anchor_2b=anchor_2b)
    limit = _canonicalize_limit(limit)
    if check:
        report = check_gromov_convergence(limit, f)
        if not report.all_pass:
            raise DegenerateFamily(
                "limit fails its own convergence check: " + "; ".join(report.failures)
            )
    return limit


def _canonicalize_limit(limit: GromovLimit) -> GromovLimit:
    curve, phi_g, psi_g = _canonicalize(limit.curve)
    phi = {
        v: fam.after_const(phi_g[v].inverse()) for v, fam in limit.phi.items()
    }
    psi = {
        a: fam.after_const(psi_g[a].inverse()) for a, fam in limit.psi.items()
    }
    return GromovLimit(limit.family, curve, phi, psi)


# ---------------------------------------------------------------------------
# the convergence checker
# ---------------------------------------------------------------------------


@dataclass
class ConvergenceReport:
    """Per-axiom outcome of checking a candidate limit against its family."""

    restriction: bool = True
    rescaling: bool = True
    special_point: bool = True
    rescaling_prime: bool = True
    special_point_prime: bool = True
    x_limits: bool = True
    disk: bool = True
    failures: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        names = [
            ("restriction", self.restriction),
            ("rescaling", self.rescaling),
            ("special point", self.special_point),
            ("rescaling'", self.rescaling_prime),
            ("special point'", self.special_point_prime),
            ("x-limits", self.x_limits),
            ("disk", self.disk),
        ]
        return "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in names)


def _affine_degenerates(a_num, a_den, b_num, b_den, w, w_prime) -> bool:
    """Does z -> (a_num/a_den) z + (b_num/b_den) converge to w u.c.s. away from w'?

    ``b_num`` is a Laurent pair.  For affine maps this is decided exactly
    from the orders: convergence to a finite constant needs the scale to
    vanish and the offset to converge; convergence to infinity away from
    a finite point is read off the inverse map; convergence to infinity
    away from infinity needs a diverging offset dominating the scale.
    """
    if not w.is_infinity and w_prime.is_infinity:
        if ratio_limit_scalar(a_num, a_den) != ExtendedPoint((Q(0),)):
            return False
        return ratio_limit_pair(b_num, b_den) == w
    if w.is_infinity and not w_prime.is_infinity:
        if ratio_limit_scalar(a_den, a_num) != ExtendedPoint((Q(0),)):
            return False
        pole = ratio_limit_pair(
            (-b_num[0] * a_den, -b_num[1] * a_den), b_den * a_num
        )
        return pole == w_prime
    if w.is_infinity and w_prime.is_infinity:
        if ratio_limit_pair(b_num, b_den) != INF:
            return False  # the offset must diverge
        orders = [
            Laurent.of(c).order() - Laurent.of(b_den).order()
            for c in b_num
            if not Laurent.of(c).is_zero
        ]
        if not orders:
            return False
        scale_order = (
            None
            if Laurent.of(a_num).is_zero
            else Laurent.of(a_num).order() - Laurent.of(a_den).order()
        )
        return scale_order is None or scale_order > min(orders)
    return False  # affine maps cannot degenerate to finite away from finite


def _affine_degenerates_1d(
    phi_a: ReparamFamily1, phi_b: ReparamFamily1, w, w_prime
) -> bool:
    """1-d version for the map phi_a^{-1} o phi_b."""
    a_num, a_den = phi_b.a, phi_a.a
    b_num = (phi_b.b - phi_a.b, Laurent.of(0))
    b_den = phi_a.a
    if not w.is_infinity:
        w = ExtendedPoint((w.coords[0], Q(0)))
    if not w_prime.is_infinity:
        w_prime = ExtendedPoint((w_prime.coords[0], Q(0)))
    return _affine_degenerates(a_num, a_den, b_num, b_den, w, w_prime)


def check_gromov_convergence(limit: GromovLimit, fam: SmoothFamily) -> ConvergenceReport:
    """Verify the convergence axioms of a candidate limit for a family.

    The (unique) structure map onto the smooth stratum collapses every
    component, so the rescaling checks run on all component pairs and
    the marked-point checks on all component/mark pairs; the derived
    single-seam x-limits and the disk-tree axioms are included.
    """
    if fam.n != limit.family.n:
        raise SurjectionNotFound("family type does not match the limit's")
    rep = ConvergenceReport()
    curve = limit.curve
    pair = curve.pair
    from .treepair import contiguous

    for alpha in sorted(pair.vc2):
        ph = limit.phi[pair.pi[alpha]]
        ps = limit.psi[alpha]
        if ps.a != ph.a or ps.b[0] != ph.b:
            rep.restriction = False
            rep.failures.append(f"restriction fails at component {alpha}")

    for alpha in pair.components:
        for beta in pair.components:
            if alpha == beta:
                continue
            w = derived_point_z(curve, alpha, beta)
            w_back = derived_point_z(curve, beta, alpha)
            pa, pb = limit.psi[alpha], limit.psi[beta]
            ok = _affine_degenerates(
                pb.a,
                pa.a,
                (pb.b[0] - pa.b[0], pb.b[1] - pa.b[1]),
                pa.a,
                w,
                w_back,
            )
            if not ok:
                rep.rescaling_prime = False
                rep.failures.append(f"rescaling' fails at pair ({alpha},{beta})")
                if contiguous(pair, alpha, beta):
                    rep.rescaling = False
                    rep.failures.append(f"rescaling fails at pair ({alpha},{beta})")

    for alpha in pair.components:
        for mb in pair.marks:
            i, j = pair.mark_label[mb]
            want = derived_point_z(curve, alpha, mb)
            got = limit.psi[alpha].inv_limit(fam.mark(i, j))
            if got != want:
                rep.special_point_prime = False
                rep.failures.append(
                    f"special point' fails at ({alpha},mark {i},{j}): {got} != {want}"
                )
                if contiguous(pair, alpha, mb):
                    rep.special_point = False
                    rep.failures.append(
                        f"special point fails at ({alpha},mark {i},{j})"
                    )

    for alpha in sorted(pair.vc1):
        pa_sid = pair.pi[alpha]
        for leaf in pair.seam.leaves:
            i = pair.seam.leaf_index(leaf)
            want = (
                ExtendedPoint((curve.cx[alpha][0],))
                if pa_sid in pair.seam.ancestors(leaf)
                else INF
            )
            got = limit.psi[alpha].p().inv_limit(fam.x[i - 1])
            if got != want:
                rep.x_limits = False
                rep.failures.append(
                    f"x-limit fails at component {alpha}, seam {i}: {got} != {want}"
                )

    disk_failures = check_disk_convergence(curve.seam_part(), limit.phi, fam.x)
    if disk_failures:
        rep.disk = False
        rep.failures.extend(disk_failures)
    return rep
