"""Rooted ribbon trees (RRTs).

An RRT is a rooted tree oriented toward the root in which every vertex
carries a total order on its incoming neighbors.  The order induces a
left-to-right order on the leaves.  An RRT is *stable* when every
interior (non-leaf) vertex has at least two incoming neighbors; the
one-leaf tree (root with a single leaf child) is stable by convention.

Vertices of a validated tree are small integers assigned in preorder
(root = 0, children visited in list order), so that isomorphism of
ribbon trees is literal equality of the parenthesis encoding: a leaf is
rendered ``.`` and an interior vertex as ``( ... )`` wrapping its
children.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    MultipleRoots,
    RootIsLeaf,
    UnorderedInList,
    VertexNotFound,
)

LEAF = None  # shape marker used by the enumerator


@dataclass(frozen=True)
class RRT:
    """A validated rooted ribbon tree with preorder-canonical vertex ids.

    ``in_lists[v]`` is the ordered tuple of incoming neighbors of vertex
    ``v``; the root is vertex 0.  Use :func:`validate_rrt` to build one
    from raw data.
    """

    in_lists: tuple[tuple[int, ...], ...]
    parent: tuple[int | None, ...] = field(init=False, repr=False, compare=False)
    leaves: tuple[int, ...] = field(init=False, repr=False, compare=False)
    interior: tuple[int, ...] = field(init=False, repr=False, compare=False)
    is_stable: bool = field(init=False, repr=False, compare=False)
    paren: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.in_lists)
        parent: list[int | None] = [None] * n
        for v, kids in enumerate(self.in_lists):
            for k in kids:
                parent[k] = v
        # preorder leaf order = left-to-right order induced by the ribbon
        leaves = []
        order = []
        stack = [0]
        while stack:
            v = stack.pop()
            order.append(v)
            if not self.in_lists[v]:
                leaves.append(v)
            stack.extend(reversed(self.in_lists[v]))
        interior = tuple(v for v in range(n) if self.in_lists[v])
        stable = all(len(self.in_lists[v]) >= 2 for v in interior if v != 0)
        if len(self.in_lists[0]) == 1:
            # root with a single child is stable only in the 1-leaf tree
            stable = stable and len(leaves) == 1
        elif len(self.in_lists[0]) == 0:
            stable = False
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "leaves", tuple(leaves))
        object.__setattr__(self, "interior", interior)
        object.__setattr__(self, "is_stable", stable)
        object.__setattr__(self, "paren", _render_paren(self.in_lists, 0))

    # -- basic accessors ---------------------------------------------------

    @property
    def root(self) -> int:
        return 0

    @property
    def n_vertices(self) -> int:
        return len(self.in_lists)

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def is_leaf(self, v: int) -> bool:
        self._check(v)
        return not self.in_lists[v]

    def leaf_index(self, v: int) -> int:
        """1-based position of leaf ``v`` in the left-to-right order."""
        self._check(v)
        return self.leaves.index(v) + 1

    def descendants(self, v: int) -> tuple[int, ...]:
        """All vertices of the subtree hanging from ``v``, including ``v``."""
        self._check(v)
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.in_lists[u]))
        return tuple(out)

    def leaf_set(self, v: int) -> frozenset[int]:
        """Leaves lying in the subtree below (and including) ``v``."""
        return frozenset(u for u in self.descendants(v) if not self.in_lists[u])

    def ancestors(self, v: int) -> tuple[int, ...]:
        """Path from ``v`` to the root, endpoints included."""
        self._check(v)
        out = [v]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return tuple(out)

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < len(self.in_lists)):
            raise VertexNotFound(f"vertex {v!r} not in tree")


def _render_paren(in_lists, v) -> str:
    if not in_lists[v]:
        return "."
    return "(" + "".join(_render_paren(in_lists, k) for k in in_lists[v]) + ")"


def validate_rrt(in_lists: Mapping[object, Sequence[object]], root: object) -> RRT:
    """Validate raw tree data and return a canonically relabeled :class:`RRT`.

    ``in_lists`` maps each vertex to the ordered sequence of its incoming
    neighbors; vertices missing from the mapping are treated as leaves.
    """
    vertices = set(in_lists)
    for kids in in_lists.values():
        vertices.update(kids)
    if root not in vertices:
        raise VertexNotFound(f"root {root!r} not among vertices")
    kids_of = {v: list(in_lists.get(v, ())) for v in vertices}
    seen_child = {}
    for v, kids in kids_of.items():
        if len(set(kids)) != len(kids):
            raise UnorderedInList(f"duplicate entries in in({v!r})")
        for k in kids:
            if k in seen_child:
                raise UnorderedInList(f"{k!r} appears in two in-lists")
            seen_child[k] = v
    if root in seen_child:
        raise CycleDetected(f"root {root!r} has an outgoing edge")
    orphans = [v for v in vertices if v not in seen_child and v != root]
    if orphans:
        raise MultipleRoots(f"vertices with no outgoing edge besides root: {orphans!r}")
    # reachability from the root: anything unreachable sits on a cycle
    reached = set()
    stack = [root]
    while stack:
        v = stack.pop()
        if v in reached:
            raise CycleDetected(f"vertex {v!r} visited twice")
        reached.add(v)
        stack.extend(kids_of[v])
    if reached != vertices:
        raise CycleDetected("unreachable vertices form a cycle")
    if not kids_of[root]:
        raise RootIsLeaf("the root must not be a leaf")
    # preorder relabel
    ids: dict[object, int] = {}
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        ids[v] = len(ids)
        order.append(v)
        stack.extend(reversed(kids_of[v]))
    table = tuple(tuple(ids[k] for k in kids_of[v]) for v in order)
    return RRT(table)


def rrt_from_paren(s: str) -> RRT:
    """Parse the canonical parenthesis encoding (leaf ``.``)."""
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(s):
            raise UnorderedInList("truncated encoding")
        ch = s[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch != "(":
            raise UnorderedInList(f"unexpected character {ch!r} at {pos}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != ")":
            kids.append(parse())
        if pos >= len(s):
            raise UnorderedInList("unbalanced parentheses")
        pos += 1
        return tuple(kids)

    shape = parse()
    if pos != len(s):
        raise UnorderedInList("trailing characters after encoding")
    if shape is LEAF:
        raise RootIsLeaf("the root must not be a leaf")
    return rrt_from_shape(shape)


def rrt_from_shape(shape) -> RRT:
    """Build an RRT from a nested-tuple shape (leaf = ``None``)."""
    table: list = []

    def build(node) -> int:
        my = len(table)
        table.append(None)  # reserve the preorder slot
        table[my] = () if node is LEAF else tuple(build(k) for k in node)
        return my

    build(shape)
    return RRT(tuple(table))


def path(t: RRT, a: int, b: int) -> tuple[int, ...]:
    """The unique simple path from ``a`` to ``b`` (endpoints included)."""
    t._check(a)
    t._check(b)
    if a == b:
        raise VertexNotFound("path endpoints must be distinct")
    up_a = t.ancestors(a)
    up_b = t.ancestors(b)
    in_b = set(up_b)
    meet = next(v for v in up_a if v in in_b)
    first = up_a[: up_a.index(meet) + 1]
    second = up_b[: up_b.index(meet)]
    return first + tuple(reversed(second))


def subtree_through(t: RRT, a: int, b: int) -> frozenset[int]:
    """Vertices ``v`` such that the path from ``a`` to ``v`` passes through ``b``."""
    t._check(a)
    t._check(b)
    if a == b:
        raise VertexNotFound("subtree endpoints must be distinct")
    toward_a = path(t, a, b)[-2]  # neighbor of b on the way back to a
    if toward_a == t.parent[b]:
        # a sits on the parent side, so the answer is the subtree below b
        return frozenset(t.descendants(b))
    # a sits below the child toward_a; everything else qualifies
    side_of_a = set(t.descendants(toward_a))
    return frozenset(v for v in range(t.n_vertices) if v not in side_of_a)


def enumerate_stable_rrts(r: int) -> list[RRT]:
    """All stable RRTs with ``r`` leaves up to isomorphism.

    Ordered by interior-vertex count, then lexicographically on the
    parenthesis encoding.
    """
    if r < 1:
        raise VertexNotFound("leaf count must be >= 1")
    if r == 1:
        return [rrt_from_shape((LEAF,))]
    shapes = _stable_shapes(r)
    trees = [rrt_from_shape(s) for s in shapes]
    trees.sort(key=lambda t: (len(t.interior), t.paren))
    return trees


@lru_cache(maxsize=None)
def _stable_shapes(m: int) -> tuple:
    """Shapes of stable subtrees with ``m`` leaves (leaf shape for m=1)."""
    if m == 1:
        return (LEAF,)
    out = []
    for k in range(2, m + 1):
        for comp in _compositions(m, k):
            for kids in itertools.product(*(_stable_shapes(p) for p in comp)):
                out.append(tuple(kids))
    return tuple(out)


def _compositions(total: int, parts: int):
    """Ordered compositions of ``total`` into ``parts`` positive parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def associahedron_face_count(r: int) -> int:
    """Independent face-count oracle for K_r via the composition recursion."""
    @lru_cache(maxsize=None)
    def s(m: int) -> int:
        if m == 1:
            return 1
        total = 0
        for k in range(2, m + 1):
            for comp in _compositions(m, k):
                prod = 1
                for p in comp:
                    prod *= s(p)
                total += prod
        return total

    return s(r) if r >= 2 else 1


@dataclass(frozen=True)
class RRTSurjection:
    """A map source -> target realizable by contracting interior edges."""

    source: RRT
    target: RRT
    vertex_map: tuple[int, ...]  # indexed by source vertex id

    def __call__(self, v: int) -> int:
        self.source._check(v)
        return self.vertex_map[v]

    def compose(self, then: "RRTSurjection") -> "RRTSurjection":
        """Return ``then`` after ``self`` (self: A->B, then: B->C)."""
        if self.target.paren != then.source.paren:
            raise VertexNotFound("surjections not composable")
        vm = tuple(then.vertex_map[x] for x in self.vertex_map)
        return RRTSurjection(self.source, then.target, vm)


def identity_surjection(t: RRT) -> RRTSurjection:
    return RRTSurjection(t, t, tuple(range(t.n_vertices)))


def contract_edges(t: RRT, drop: Iterable[int]) -> tuple[RRT, tuple[int, ...]]:
    """Contract the edges (v, parent(v)) for every interior non-root v in ``drop``.

    Returns the quotient tree and the vertex map from ``t`` onto it.
    Children of a contracted vertex are spliced into the parent's in-list
    at the contracted vertex's position, preserving the ribbon order.
    """
    drop = set(drop)
    for v in drop:
        t._check(v)
        if not t.in_lists[v] or v == 0:
            raise VertexNotFound(f"vertex {v} is not an interior non-root vertex")

    def splice(v) -> list[int]:
        out = []
        for k in t.in_lists[v]:
            if k in drop:
                out.extend(splice(k))
            else:
                out.append(k)
        return out

    kept = [v for v in range(t.n_vertices) if v not in drop]
    raw = {v: splice(v) for v in kept}
    quotient = validate_rrt(raw, 0)
    # recover the relabeling used by validate_rrt (preorder over kept ids)
    ids: dict[int, int] = {}
    stack = [0]
    while stack:
        v = stack.pop()
        ids[v] = len(ids)
        stack.extend(reversed(raw[v]))
    vm = [0] * t.n_vertices
    for v in range(t.n_vertices):
        u = v
        while u in drop:
            u = t.parent[u]
        vm[v] = ids[u]
    return quotient, tuple(vm)


def rrt_surjections(source: RRT, target: RRT) -> list[RRTSurjection]:
    """All surjections ``source -> target`` (compositions of contractions)."""
    if source.n_leaves != target.n_leaves:
        return []
    contractible = [v for v in source.interior if v != 0]
    out = []
    seen = set()
    for k in range(len(contractible) + 1):
        for drop in itertools.combinations(contractible, k):
            q, vm = contract_edges(source, drop)
            if q.paren == target.paren and vm not in seen:
                seen.add(vm)
                out.append(RRTSurjection(source, target, vm))
    return out
