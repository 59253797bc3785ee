"""The stratification posets W_n and K_r.

Elements of W_n are stable tree-pairs of type n, elements of K_r are
stable RRTs with r leaves.  In both cases the order is generated by
contraction: a <= b exactly when b is obtained from a by contraction
moves, so degenerate strata are smaller and the smooth stratum is the
unique maximum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .errors import ScaleLimitExceeded, TypeVectorMismatch, VertexNotFound
from . import treepair as tpmod
from .treepair import TreePair, UpMove, enumerate_tree_pairs, up_moves
from .trees import RRT, contract_edges, enumerate_stable_rrts, rrt_surjections

SCALE_LIMIT = 9  # |n| + r cap for W enumeration; K_r capped at r = 8


@dataclass
class StratumPoset:
    """A finite graded-looking poset with explicit covering relation.

    ``elements`` are canonical representatives sorted by (dimension,
    canonical key); ``covers[i]`` lists indices covering element i (one
    contraction move above), and ``dimension[i]`` is the length of a
    longest chain below the top, normalized so the smooth stratum has
    the top dimension.
    """

    elements: list
    covers: list[list[int]]
    dimension: list[int]
    key_of: Callable[[object], str]
    moves: dict = field(default_factory=dict)  # (src_idx, dst_idx) -> UpMove list

    _index: dict = field(default_factory=dict, init=False, repr=False)
    _above: list = field(default_factory=list, init=False, repr=False)

    def __post_init__(self):
        self._index = {self.key_of(e): i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        above = [set() for _ in range(n)]
        for i in sorted(range(n), key=lambda i: self.dimension[i], reverse=True):
            for j in self.covers[i]:
                above[i].add(j)
                above[i] |= above[j]
        self._above = above

    def index_of(self, element) -> int:
        key = self.key_of(element)
        if key not in self._index:
            raise VertexNotFound("element not in poset")
        return self._index[key]

    def leq(self, a, b) -> bool:
        ia, ib = self.index_of(a), self.index_of(b)
        return ia == ib or ib in self._above[ia]

    def leq_idx(self, ia: int, ib: int) -> bool:
        return ia == ib or ib in self._above[ia]

    def maximal_elements(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self.covers[i]]

    def f_vector(self) -> list[int]:
        top = max(self.dimension) if self.dimension else 0
        out = [0] * (top + 1)
        for d in self.dimension:
            out[d] += 1
        return out

    def cover_moves_into(self, idx: int):
        """Pairs (src_idx, move) for covers src -> idx."""
        out = []
        for (s, d), mvs in self.moves.items():
            if d == idx:
                for mv in mvs:
                    out.append((s, mv))
        return out

    def check_graded(self) -> tuple[bool, str]:
        """Report whether all maximal chains between fixed endpoints agree.

        Equivalent formulation used here: along every cover the dimension
        (longest-chain rank) increases by exactly one.
        """
        for i in range(len(self.elements)):
            for j in self.covers[i]:
                if self.dimension[j] != self.dimension[i] + 1:
                    return False, (
                        f"cover {i} -> {j} jumps rank "
                        f"{self.dimension[i]} -> {self.dimension[j]}"
                    )
        return True, "graded"

    def to_dot(self, label: Callable[[object], str] | None = None) -> str:
        label = label or (lambda e: self.key_of(e))
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{label(e)}" shape=box fontsize=9];')
        for i, ups in enumerate(self.covers):
            for j in ups:
                lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


def enumerate_k(r: int) -> StratumPoset:
    """The associahedron K_r as the poset of stable RRTs with r leaves."""
    if not (1 <= r <= 8):
        raise ScaleLimitExceeded(f"leaf count {r} outside 1..8")
    elems = enumerate_stable_rrts(r)
    # covers: single interior-edge contraction
    index = {t.paren: i for i, t in enumerate(elems)}
    covers = [[] for _ in elems]
    for i, t in enumerate(elems):
        seen = set()
        for v in t.interior:
            if v == t.root:
                continue
            q, _ = contract_edges(t, [v])
            j = index[q.paren]
            if j not in seen:
                seen.add(j)
                covers[i].append(j)
    top = r - 2 if r >= 2 else 0
    dims = _chain_dimensions(elems, covers, top)
    elems_sorted, covers_s, dims_s, perm = _sort_poset(elems, covers, dims, lambda t: t.paren)
    return StratumPoset(elems_sorted, covers_s, dims_s, key_of=lambda t: t.paren)


@lru_cache(maxsize=None)
def _enumerate_w_cached(n: tuple[int, ...]) -> StratumPoset:
    r = len(n)
    elems: list[TreePair] = []
    for seam in enumerate_stable_rrts(r):
        elems.extend(enumerate_tree_pairs(seam, n))
    index = {tp.canon: i for i, tp in enumerate(elems)}
    covers = [[] for _ in elems]
    moves: dict = {}
    for i, tp in enumerate(elems):
        for mv in up_moves(tp):
            key = mv.surjection.target.canon
            if key not in index:
                raise AssertionError(
                    "contraction left the enumerated stratum set: " + key
                )
            j = index[key]
            moves.setdefault((i, j), []).append(mv)
            if j not in covers[i]:
                covers[i].append(j)
    if r == 1:
        top = max(n[0] - 2, 0)
    else:
        top = max(sum(n) + r - 3, 0)
    dims = _chain_dimensions(elems, covers, top)
    elems_s, covers_s, dims_s, perm = _sort_poset(elems, covers, dims, lambda t: t.canon)
    moves_s = {(perm[s], perm[d]): mvs for (s, d), mvs in moves.items()}
    poset = StratumPoset(elems_s, covers_s, dims_s, key_of=lambda t: t.canon, moves=moves_s)
    return poset


def enumerate_w(n: Sequence[int]) -> StratumPoset:
    """The 2-associahedron W_n as the poset of stable tree-pairs of type n."""
    n = tuple(n)
    r = len(n)
    if r < 1 or any(x < 0 for x in n) or not any(n):
        raise TypeVectorMismatch(f"invalid type vector {n}")
    if sum(n) + r > SCALE_LIMIT:
        raise ScaleLimitExceeded(
            f"|n| + r = {sum(n) + r} exceeds the desk-scale limit {SCALE_LIMIT}"
        )
    return _enumerate_w_cached(n)


def _chain_dimensions(elems, covers, top_dim):
    n = len(elems)
    # longest chain from element up to a maximal element
    memo = [None] * n

    def up(i):
        if memo[i] is not None:
            return memo[i]
        memo[i] = 0
        if covers[i]:
            memo[i] = 1 + max(up(j) for j in covers[i])
        return memo[i]

    return [top_dim - up(i) for i in range(n)]


def _sort_poset(elems, covers, dims, key):
    order = sorted(range(len(elems)), key=lambda i: (dims[i], key(elems[i])))
    perm = {old: new for new, old in enumerate(order)}
    new_elems = [elems[i] for i in order]
    new_covers = [[perm[j] for j in covers[i]] for i in order]
    new_dims = [dims[i] for i in order]
    return new_elems, new_covers, new_dims, perm


def forgetful(tp: TreePair) -> RRT:
    """The seam tree underlying a tree-pair (the poset map W_n -> K_r)."""
    return tp.seam


def poset_leq(a, b) -> bool:
    """Order test for two strata of the same kind (tree-pairs or RRTs)."""
    if isinstance(a, TreePair) and isinstance(b, TreePair):
        return tpmod.poset_leq(a, b)
    if isinstance(a, RRT) and isinstance(b, RRT):
        if a.n_leaves != b.n_leaves:
            raise TypeVectorMismatch("trees with different leaf counts")
        return bool(rrt_surjections(a, b)) or a.paren == b.paren
    raise TypeVectorMismatch("cannot compare strata of different kinds")


def posets_isomorphic(p: StratumPoset, q: StratumPoset) -> bool:
    """Brute-force poset isomorphism (desk scale)."""
    if len(p.elements) != len(q.elements):
        return False
    if sorted(p.f_vector()) != sorted(q.f_vector()):
        return False
    na = len(p.elements)

    def prof(poset):
        out = []
        for i in range(len(poset.elements)):
            down = sum(poset.leq_idx(j, i) for j in range(len(poset.elements)))
            up = sum(poset.leq_idx(i, j) for j in range(len(poset.elements)))
            out.append((down, up, poset.dimension[i]))
        return out

    pa, pb = prof(p), prof(q)
    if sorted(pa) != sorted(pb):
        return False
    cands = [[j for j in range(na) if pb[j] == pa[i]] for i in range(na)]
    order = sorted(range(na), key=lambda i: len(cands[i]))
    assign: dict[int, int] = {}
    used = set()

    def rec(k):
        if k == na:
            return True
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            ok = all(
                p.leq_idx(i, i2) == q.leq_idx(j, j2)
                and p.leq_idx(i2, i) == q.leq_idx(j2, j)
                for i2, j2 in assign.items()
            )
            if ok:
                assign[i] = j
                used.add(j)
                if rec(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    return rec(0)


def poset_isomorphic_via(p: StratumPoset, q: StratumPoset, image) -> bool:
    """Check that ``image`` (element-of-p -> element-of-q) is a poset isomorphism."""
    n = len(p.elements)
    if n != len(q.elements):
        return False
    mapped = [q.index_of(image(e)) for e in p.elements]
    if len(set(mapped)) != n:
        return False
    for i in range(n):
        for j in range(n):
            if p.leq_idx(i, j) != q.leq_idx(mapped[i], mapped[j]):
                return False
    return True
