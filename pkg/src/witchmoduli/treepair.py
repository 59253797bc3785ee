"""Stable tree-pairs: the stratum labels of the 2-associahedra W_n.

A tree-pair couples a stable seam tree (an RRT whose leaves are the r
seams) with a bubble tree whose vertices alternate between *component*
vertices (2-dimensional screens), *seam* vertices (the vertical lines
visible on a screen), and *marked* vertices (marked points, always
leaves).  A coherence map pi sends each component to the seam-tree
vertex whose cluster of seams the screen displays.

The machine representation is a nested shape: a component is a tuple of
lines, a line is a tuple of items, and an item is either another
component or the marked-point token ``"*"``.  The coherence map is
derived data: the root component displays the seam-tree root, a
component with k >= 2 lines resolves its slot vertex (which must then
have exactly k children, giving each line a child slot), and a
component with a single line re-displays its slot.  Marked points may
only sit on lines whose slot resolves to a single seam.  These rules
pin pi completely, so isomorphism of tree-pairs is literal equality of
the canonical encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    AlternationViolated,
    BubbleStabilityViolated,
    CoherenceViolated,
    PairKindUnsupported,
    SeamTreeUnstable,
    TypeVectorMismatch,
    VertexNotFound,
)
from .trees import RRT, RRTSurjection, contract_edges, rrt_from_shape

MARK = "*"

KIND_COMPONENT = "component"
KIND_SEAM = "seam"
KIND_MARK = "mark"


def _is_comp(item) -> bool:
    return isinstance(item, tuple)


def _render_bubble(comp) -> str:
    out = ["("]
    for line in comp:
        out.append("[")
        for item in line:
            out.append(_render_bubble(item) if _is_comp(item) else MARK)
        out.append("]")
    out.append(")")
    return "".join(out)


@dataclass(frozen=True)
class TreePair:
    """A validated stable tree-pair; use :func:`validate_tree_pair` to build."""

    seam: RRT
    shape: tuple
    type_vector: tuple[int, ...]
    # derived tables, indexed by preorder bubble-vertex ids
    kinds: tuple[str, ...] = field(init=False, repr=False, compare=False)
    bubble_in: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    bubble_parent: tuple[int | None, ...] = field(init=False, repr=False, compare=False)
    pi: dict = field(init=False, repr=False, compare=False)
    slot: dict = field(init=False, repr=False, compare=False)
    mark_label: dict = field(init=False, repr=False, compare=False)
    components: tuple[int, ...] = field(init=False, repr=False, compare=False)
    marks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    vc1: frozenset = field(init=False, repr=False, compare=False)
    vc2: frozenset = field(init=False, repr=False, compare=False)
    canon: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tables = _derive_tables(self.seam, self.shape, self.type_vector)
        for name, value in tables.items():
            object.__setattr__(self, name, value)
        object.__setattr__(
            self, "canon", self.seam.paren + "|" + _render_bubble(self.shape)
        )

    # -- accessors -----------------------------------------------------------

    @property
    def r(self) -> int:
        return self.seam.n_leaves

    @property
    def root(self) -> int:
        return 0

    def lines_of(self, comp: int) -> tuple[int, ...]:
        if self.kinds[comp] != KIND_COMPONENT:
            raise VertexNotFound(f"{comp} is not a component vertex")
        return self.bubble_in[comp]

    def items_of(self, line: int) -> tuple[int, ...]:
        if self.kinds[line] != KIND_SEAM:
            raise VertexNotFound(f"{line} is not a seam vertex")
        return self.bubble_in[line]

    def is_smooth(self) -> bool:
        return len(self.components) == 1 and len(self.seam.interior) == 1

    def mark_bid(self, i: int, j: int) -> int:
        for bid, lab in self.mark_label.items():
            if lab == (i, j):
                return bid
        raise VertexNotFound(f"no marked vertex ({i},{j})")

    def dimension_formula(self) -> int:
        """Dimension of the stratum (configuration dofs minus reparams)."""
        dim = 0
        if self.r >= 2:
            dim += sum(len(self.seam.in_lists[v]) - 2 for v in self.seam.interior)
        for c in self.components:
            items = sum(len(self.bubble_in[l]) for l in self.bubble_in[c])
            dim += items - (1 if c in self.vc2 else 2)
        return max(dim, 0)

    def __hash__(self):
        return hash(self.canon)


def _derive_tables(seam: RRT, shape, type_vector) -> dict:
    r = seam.n_leaves
    if len(type_vector) != r:
        raise TypeVectorMismatch(
            f"type vector has length {len(type_vector)}, seam tree has {r} leaves"
        )
    if any(x < 0 for x in type_vector) or not any(type_vector):
        raise TypeVectorMismatch("type vector must be nonnegative and nonzero")
    if not seam.is_stable:
        raise SeamTreeUnstable(seam.paren)

    # leaf clusters of every seam-tree vertex, as 1-based seam indices
    res = {
        v: frozenset(seam.leaf_index(l) for l in seam.leaf_set(v))
        for v in range(seam.n_vertices)
    }

    kinds: list[str] = []
    bubble_in: list[tuple[int, ...]] = []
    parent: list[int | None] = []
    pi: dict[int, int] = {}
    slot: dict[int, int] = {}
    mark_seam: dict[int, int] = {}
    components: list[int] = []
    marks: list[int] = []

    fiat = r == 1 and tuple(type_vector) == (1,) and shape == ((MARK,),)

    def visit_comp(comp, par: int | None, my_pi: int) -> int:
        if not (isinstance(comp, tuple) and len(comp) >= 1):
            raise AlternationViolated("component vertex without incoming seam vertex")
        bid = len(kinds)
        kinds.append(KIND_COMPONENT)
        bubble_in.append(())
        parent.append(par)
        components.append(bid)
        pi[bid] = my_pi
        k = len(comp)
        if k >= 2:
            if not seam.in_lists[my_pi] or len(seam.in_lists[my_pi]) != k:
                raise CoherenceViolated(
                    f"component with {k} lines cannot display seam vertex {my_pi}"
                )
            line_slots = seam.in_lists[my_pi]
        else:
            line_slots = (my_pi,)
        n_items = 0
        line_bids = []
        for line, line_slot in zip(comp, line_slots):
            if not isinstance(line, tuple):
                raise AlternationViolated("line of a component must be a seam vertex")
            lb = len(kinds)
            kinds.append(KIND_SEAM)
            bubble_in.append(())
            parent.append(bid)
            slot[lb] = line_slot
            line_bids.append(lb)
            item_bids = []
            for item in line:
                n_items += 1
                if item == MARK:
                    mb = len(kinds)
                    kinds.append(KIND_MARK)
                    bubble_in.append(())
                    parent.append(lb)
                    marks.append(mb)
                    cluster = res[line_slot]
                    if len(cluster) != 1:
                        raise CoherenceViolated(
                            "marked point on a line whose seam cluster "
                            f"{sorted(cluster)} is not a single seam"
                        )
                    mark_seam[mb] = next(iter(cluster))
                    item_bids.append(mb)
                elif _is_comp(item):
                    item_bids.append(visit_comp(item, lb, line_slot))
                else:
                    raise AlternationViolated(f"unrecognized item {item!r}")
            bubble_in[lb] = tuple(item_bids)
        bubble_in[bid] = tuple(line_bids)
        if k >= 2:
            if n_items < 1:
                raise BubbleStabilityViolated(
                    "component with >= 2 lines needs at least one item"
                )
        else:
            if n_items < 2 and not fiat:
                raise BubbleStabilityViolated(
                    "component with a single line needs at least two items"
                )
        return bid

    visit_comp(shape, None, seam.root)

    # marked-point labels: j counts occurrences per seam in preorder, which
    # coincides with the bottom-to-top flattening along each seam
    counts = [0] * (r + 1)
    mark_label: dict[int, tuple[int, int]] = {}
    for mb in marks:
        i = mark_seam[mb]
        counts[i] += 1
        mark_label[mb] = (i, counts[i])
    if tuple(counts[1:]) != tuple(type_vector):
        raise TypeVectorMismatch(
            f"marked points per seam {tuple(counts[1:])} != type vector {tuple(type_vector)}"
        )

    vc1 = frozenset(c for c in components if len(bubble_in[c]) == 1)
    return {
        "kinds": tuple(kinds),
        "bubble_in": tuple(bubble_in),
        "bubble_parent": tuple(parent),
        "pi": pi,
        "slot": slot,
        "mark_label": mark_label,
        "components": tuple(components),
        "marks": tuple(marks),
        "vc1": vc1,
        "vc2": frozenset(components) - vc1,
    }


def validate_tree_pair(seam: RRT, shape, type_vector: Sequence[int]) -> TreePair:
    """Validate a candidate tree-pair and return it with derived data."""
    return TreePair(seam, _freeze_shape(shape), tuple(type_vector))


def _freeze_shape(shape):
    if shape == MARK:
        return MARK
    return tuple(
        tuple(_freeze_shape(item) for item in line) for line in shape
    )


def tree_pair_from_vertices(
    seam: RRT,
    kinds: Sequence[str],
    in_lists: Sequence[Sequence[int]],
    root: int,
    type_vector: Sequence[int],
) -> TreePair:
    """Build a tree-pair from explicit bubble-vertex data (the JSON layout).

    Checks the solid/dashed alternation explicitly before handing off to
    the shape validator.
    """
    n = len(kinds)
    if not (0 <= root < n) or kinds[root] != KIND_COMPONENT:
        raise AlternationViolated("bubble-tree root must be a component vertex")
    for v in range(n):
        for k in in_lists[v]:
            if kinds[v] == KIND_COMPONENT and kinds[k] != KIND_SEAM:
                raise AlternationViolated(
                    "incoming neighbors of a component must be seam vertices"
                )
            if kinds[v] == KIND_SEAM and kinds[k] == KIND_SEAM:
                raise AlternationViolated(
                    "incoming neighbors of a seam vertex must be components or marks"
                )
        if kinds[v] == KIND_MARK and in_lists[v]:
            raise AlternationViolated("marked vertices must be leaves")

    def build(v):
        if kinds[v] == KIND_MARK:
            return MARK
        if kinds[v] == KIND_COMPONENT:
            return tuple(build(k) for k in in_lists[v])
        return tuple(build(k) for k in in_lists[v])  # seam line

    shape = build(root)
    return TreePair(seam, shape, tuple(type_vector))


def smooth_tree_pair(type_vector: Sequence[int]) -> TreePair:
    """The unique maximal stratum of W_n."""
    n = tuple(type_vector)
    r = len(n)
    if r >= 2:
        seam = rrt_from_shape(tuple(None for _ in range(r)))
    else:
        seam = rrt_from_shape((None,))
    shape = tuple((MARK,) * ni for ni in n)
    if r == 1:
        shape = ((MARK,) * n[0],)
    return TreePair(seam, shape, n)


def from_disk_tree(t: RRT, i0: int) -> TreePair:
    """The tree-pair of type e_{i0} associated to a stable RRT with r >= 2 leaves.

    The bubble tree is the full resolving chain along the path from the
    root to leaf i0, ending in the single marked point.
    """
    r = t.n_leaves
    if r < 2:
        raise VertexNotFound("disk-tree correspondence needs r >= 2 leaves")
    if not (1 <= i0 <= r):
        raise VertexNotFound(f"leaf index {i0} out of range")
    if not t.is_stable:
        raise SeamTreeUnstable(t.paren)
    leaf = t.leaves[i0 - 1]
    spine = [v for v in t.ancestors(leaf)[1:]][::-1]  # root .. parent(leaf)

    def build(idx: int):
        v = spine[idx]
        nxt = spine[idx + 1] if idx + 1 < len(spine) else leaf
        lines = []
        for c in t.in_lists[v]:
            if c == nxt:
                lines.append((MARK,) if c == leaf else (build(idx + 1),))
            else:
                lines.append(())
        return tuple(lines)

    n = tuple(1 if i == i0 else 0 for i in range(1, r + 1))
    return TreePair(t, build(0), n)


def contiguous(tp: TreePair, a: int, b: int) -> bool:
    """Whether the bubble-tree path from a to b crosses exactly one seam vertex."""
    for v in (a, b):
        if not (0 <= v < len(tp.kinds)):
            raise VertexNotFound(f"vertex {v} not in bubble tree")
        if tp.kinds[v] == KIND_SEAM:
            raise VertexNotFound(f"vertex {v} is a seam vertex")
    if a == b:
        raise VertexNotFound("contiguity needs distinct vertices")
    if tp.kinds[a] == KIND_MARK and tp.kinds[b] == KIND_MARK:
        raise PairKindUnsupported(
            "contiguity is defined only for pairs containing a component vertex"
        )
    par = tp.bubble_parent
    if par[a] is not None and par[a] == par[b]:
        return True  # items of the same line
    for x, y in ((a, b), (b, a)):
        p = par[x]
        if p is not None and par[p] == y:
            return True
    return False


# ---------------------------------------------------------------------------
# enumeration of all stable tree-pairs over a fixed seam tree
# ---------------------------------------------------------------------------


def enumerate_tree_pairs(seam: RRT, type_vector: Sequence[int]) -> list[TreePair]:
    """All stable tree-pairs with the given seam tree and type vector."""
    n = tuple(type_vector)
    r = seam.n_leaves
    if len(n) != r:
        raise TypeVectorMismatch("type vector length != leaf count")
    if r == 1 and n == (1,):
        return [TreePair(seam, ((MARK,),), n)]

    res = {
        v: frozenset(seam.leaf_index(l) for l in seam.leaf_set(v))
        for v in range(seam.n_vertices)
    }
    zero = (0,) * r

    def sub(m, m1):
        return tuple(a - b for a, b in zip(m, m1))

    def subvectors(m, support):
        ranges = [range(0, m[i] + 1) if (i + 1) in support else (0,) for i in range(r)]
        for v in itertools.product(*ranges):
            if any(v):
                yield v

    split_memo: dict = {}

    def splits(m, mark_i, min_items):
        """Ordered item skeletons: each item is MARK or a nonzero vector."""
        key = (m, mark_i, min(min_items, 2) if min_items > 0 else 0)
        if key in split_memo:
            return split_memo[key]
        out = []
        if m == zero:
            out = [()] if min_items <= 0 else []
        else:
            if mark_i is not None and m[mark_i - 1] >= 1:
                m2 = sub(m, tuple(1 if i == mark_i - 1 else 0 for i in range(r)))
                for rest in splits(m2, mark_i, min_items - 1):
                    out.append((MARK,) + rest)
            support = frozenset(i + 1 for i in range(r) if m[i])
            for m1 in subvectors(m, support):
                for rest in splits(sub(m, m1), mark_i, min_items - 1):
                    out.append((m1,) + rest)
        split_memo[key] = out
        return out

    comp_memo: dict = {}

    def comp_structs(sid, m):
        """Component shapes with pi = sid carrying exactly the marks m."""
        key = (sid, m)
        if key in comp_memo:
            return comp_memo[key]
        out = []
        kids = seam.in_lists[sid]
        if len(kids) >= 2:
            per_line = [
                tuple(m[i] if (i + 1) in res[c] else 0 for i in range(r))
                for c in kids
            ]
            for lines in itertools.product(
                *(line_options(c, mc, 0) for c, mc in zip(kids, per_line))
            ):
                if sum(len(l) for l in lines) >= 1:
                    out.append(tuple(lines))
        for line in line_options(sid, m, 2):
            out.append((line,))
        comp_memo[key] = out
        return out

    def line_options(sid, m, min_items):
        """Concrete filled lines with slot sid carrying marks m."""
        mark_i = next(iter(res[sid])) if len(res[sid]) == 1 else None
        out = []
        for skel in splits(m, mark_i, min_items):
            pools = []
            for item in skel:
                if item == MARK:
                    pools.append((MARK,))
                else:
                    pools.append(tuple(comp_structs(sid, item)))
            for combo in itertools.product(*pools):
                out.append(tuple(combo))
        return out

    shapes = comp_structs(seam.root, n)
    return [TreePair(seam, s, n) for s in shapes]


# ---------------------------------------------------------------------------
# contraction moves (toward the smooth stratum) and tree-pair surjections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreePairSurjection:
    """A structure map source -> target realizable by contraction moves.

    ``seam_map`` covers every seam-tree vertex; ``bubble_map`` covers the
    component and marked vertices of the source bubble tree.
    """

    source: TreePair
    target: TreePair
    seam_map: tuple[int, ...]
    bubble_map: Mapping[int, int]

    def seam_surjection(self) -> RRTSurjection:
        return RRTSurjection(self.source.seam, self.target.seam, self.seam_map)

    def f_s(self, v: int) -> int:
        return self.seam_map[v]

    def f_b(self, v: int) -> int:
        return self.bubble_map[v]

    def compose(self, then: "TreePairSurjection") -> "TreePairSurjection":
        if self.target.canon != then.source.canon:
            raise VertexNotFound("surjections not composable")
        sm = tuple(then.seam_map[x] for x in self.seam_map)
        bm = {k: then.bubble_map[v] for k, v in self.bubble_map.items()}
        return TreePairSurjection(self.source, then.target, sm, bm)

    def map_key(self):
        return (self.seam_map, tuple(sorted(self.bubble_map.items())))


def identity_tree_pair_surjection(tp: TreePair) -> TreePairSurjection:
    bm = {v: v for v in tp.components + tp.marks}
    return TreePairSurjection(tp, tp, tuple(range(tp.seam.n_vertices)), bm)


class _MComp:
    __slots__ = ("lines", "tag")

    def __init__(self, lines, tag):
        self.lines = lines  # list[list[_MComp | _MMark]]
        self.tag = tag


class _MMark:
    __slots__ = ("tag",)

    def __init__(self, tag):
        self.tag = tag


def _mirror(tp: TreePair, bid: int = 0):
    lines = []
    for lb in tp.bubble_in[bid]:
        line = []
        for item in tp.bubble_in[lb]:
            if tp.kinds[item] == KIND_MARK:
                line.append(_MMark(item))
            else:
                line.append(_mirror(tp, item))
        lines.append(line)
    return _MComp(lines, bid)


def _freeze(root: _MComp, seam: RRT, n, absorbed: Mapping[int, int]):
    """Build the TreePair for a mirror plus the bubble map old-bid -> new-bid."""
    tag_order: list[int | None] = []

    def to_shape(node):
        if isinstance(node, _MMark):
            tag_order.append(node.tag)
            return MARK
        tag_order.append(node.tag)
        out = []
        for line in node.lines:
            tag_order.append(None)  # line vertex placeholder
            out.append(tuple(to_shape(item) for item in line))
        return tuple(out)

    shape = to_shape(root)
    new = TreePair(seam, shape, tuple(n))
    tag_to_new = {
        tag: bid for bid, tag in enumerate(tag_order) if tag is not None
    }
    bubble_map = {}
    for v in tag_to_new:
        bubble_map[v] = tag_to_new[v]
    for old, into in absorbed.items():
        probe = into
        while probe in absorbed:
            probe = absorbed[probe]
        bubble_map[old] = tag_to_new[probe]
    return new, bubble_map


@dataclass(frozen=True)
class UpMove:
    """One contraction move, coarsening a tree-pair by one step."""

    descriptor: str
    surjection: TreePairSurjection  # source = the finer pair, target = result


def up_moves(tp: TreePair) -> list[UpMove]:
    """All single contraction moves applicable to ``tp``.

    Three families: splicing a single-line component into its parent
    line, merging a single-line component whose items all resolve the
    same seam vertex, and contracting a seam-tree edge whose resolver
    screens merge into their hosts.
    """
    out = []
    ident_seam = tuple(range(tp.seam.n_vertices))

    # find a node and its parent line inside a fresh mirror by tag
    def locate(root, tag):
        stack = [root]
        while stack:
            node = stack.pop()
            for line in node.lines:
                for idx, item in enumerate(line):
                    if isinstance(item, _MComp):
                        if item.tag == tag:
                            return line, idx
                        stack.append(item)
        raise VertexNotFound(f"component {tag} not found")

    for delta in sorted(tp.vc1):
        if delta == tp.root:
            continue
        mirror = _mirror(tp)
        line, idx = locate(mirror, delta)
        node = line[idx]
        line[idx : idx + 1] = node.lines[0]
        parent_comp = tp.bubble_parent[tp.bubble_parent[delta]]
        new, bm = _freeze(mirror, tp.seam, tp.type_vector, {delta: parent_comp})
        out.append(
            UpMove(
                f"splice component {delta}",
                TreePairSurjection(tp, new, ident_seam, bm),
            )
        )

    for alpha in sorted(tp.vc1):
        sigma = tp.pi[alpha]
        kids = tp.seam.in_lists[sigma]
        if len(kids) < 2:
            continue
        item_bids = tp.bubble_in[tp.bubble_in[alpha][0]]
        if not all(
            tp.kinds[b] == KIND_COMPONENT and len(tp.bubble_in[b]) == len(kids)
            for b in item_bids
        ):
            continue
        mirror = _mirror(tp)
        if alpha == tp.root:
            node = mirror
        else:
            line, idx = locate(mirror, alpha)
            node = line[idx]
        parts = node.lines[0]
        merged = _MComp(
            [list(itertools.chain(*(p.lines[j] for p in parts))) for j in range(len(kids))],
            alpha,
        )
        absorbed = {p.tag: alpha for p in parts}
        if alpha == tp.root:
            mirror = merged
        else:
            line[idx] = merged
        new, bm = _freeze(mirror, tp.seam, tp.type_vector, absorbed)
        out.append(
            UpMove(
                f"merge resolved component {alpha}",
                TreePairSurjection(tp, new, ident_seam, bm),
            )
        )

    for w in tp.seam.interior:
        if w == tp.seam.root:
            continue
        resolvers = [c for c in tp.components if tp.pi[c] == w]
        if any(len(tp.bubble_in[c]) < 2 for c in resolvers):
            continue
        new_seam, seam_map = contract_edges(tp.seam, [w])
        mirror = _mirror(tp)
        absorbed = {}

        def rewrite(node, node_bid):
            # recurse first so nested w-lines are rewritten before merging
            line_bids = tp.bubble_in[node_bid]
            new_lines = []
            for line, lb in zip(node.lines, line_bids):
                for item, ib in zip(line, tp.bubble_in[lb]):
                    if isinstance(item, _MComp):
                        rewrite(item, ib)
                if tp.slot[lb] == w:
                    k_w = len(tp.seam.in_lists[w])
                    for j in range(k_w):
                        merged_line = []
                        for item in line:
                            merged_line.extend(item.lines[j])
                            absorbed[item.tag] = node_bid
                        new_lines.append(merged_line)
                else:
                    new_lines.append(line)
            node.lines = new_lines

        rewrite(mirror, tp.root)
        new, bm = _freeze(mirror, new_seam, tp.type_vector, absorbed)
        out.append(
            UpMove(
                f"contract seam edge at {w}",
                TreePairSurjection(tp, new, seam_map, bm),
            )
        )
    return out


def tree_pair_surjections(source: TreePair, target: TreePair) -> list[TreePairSurjection]:
    """All composites of contraction moves from ``source`` onto ``target``."""
    if source.type_vector != target.type_vector:
        raise TypeVectorMismatch("surjections require equal type vectors")
    results: dict = {}
    if source.canon == target.canon:
        ident = identity_tree_pair_surjection(source)
        results[ident.map_key()] = ident
    frontier = [identity_tree_pair_surjection(source)]
    seen_states = set()
    while frontier:
        nxt = []
        for surj in frontier:
            cur = surj.target
            if len(cur.components) < len(target.components):
                continue
            for mv in up_moves(cur):
                comp = surj.compose(mv.surjection)
                state = (comp.target.canon, comp.map_key())
                if state in seen_states:
                    continue
                seen_states.add(state)
                if comp.target.canon == target.canon:
                    # retarget onto the caller's TreePair object
                    comp = TreePairSurjection(
                        source, target, comp.seam_map, comp.bubble_map
                    )
                    results[comp.map_key()] = comp
                nxt.append(comp)
        frontier = nxt
    return list(results.values())


def poset_leq(a: TreePair, b: TreePair) -> bool:
    """Whether ``a`` is a degeneration of ``b`` (a <= b in W_n)."""
    if a.type_vector != b.type_vector:
        raise TypeVectorMismatch("strata of different types are incomparable")
    if a.canon == b.canon:
        return True
    seen = {a.canon}
    frontier = [a]
    while frontier:
        nxt = []
        for cur in frontier:
            for mv in up_moves(cur):
                t = mv.surjection.target
                if t.canon == b.canon:
                    return True
                if t.canon not in seen and len(t.components) >= len(b.components):
                    seen.add(t.canon)
                    nxt.append(t)
        frontier = nxt
    return False


def enumerate_moves(tp: TreePair):
    """All one-step degenerations of ``tp``: pairs covered by it in W_n.

    Returns a list of (descriptor, finer pair, surjection finer -> tp).
    """
    from . import strata  # local import to avoid a cycle

    poset = strata.enumerate_w(tp.type_vector)
    idx = poset.index_of(tp)
    out = []
    for src_idx, mv in poset.cover_moves_into(idx):
        out.append((mv.descriptor, poset.elements[src_idx], mv.surjection))
    return out
