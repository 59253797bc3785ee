"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the code paths they are checking: paths are
found by BFS on the undirected graph, face counts by the composition
recursion, poset isomorphism by backtracking search.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache


def bfs_path(in_lists, a, b):
    """Shortest path a..b in the undirected tree given by in_lists."""
    adj = {v: list(kids) for v, kids in enumerate(in_lists)}
    for v, kids in enumerate(in_lists):
        for k in kids:
            adj[k].append(v)
    prev = {a: None}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            break
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                q.append(w)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def brute_subtree_through(in_lists, a, b):
    n = len(in_lists)
    return frozenset(v for v in range(n) if v != a and b in bfs_path(in_lists, a, v))


@lru_cache(maxsize=None)
def schroeder_faces(r: int) -> int:
    """Number of faces of the associahedron K_r (stable r-leaf RRT count)."""
    if r == 1:
        return 1

    @lru_cache(maxsize=None)
    def s(m):
        if m == 1:
            return 1
        total = 0
        for k in range(2, m + 1):
            for comp in compositions(m, k):
                prod = 1
                for p in comp:
                    prod *= s(p)
                total += prod
        return total

    return s(r)


def compositions(total, parts):
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def posets_isomorphic(elems_a, leq_a, elems_b, leq_b) -> bool:
    """Backtracking poset-isomorphism test on explicit element lists."""
    if len(elems_a) != len(elems_b):
        return False

    def profile(elems, leq):
        prof = []
        for x in elems:
            down = sum(1 for y in elems if leq(y, x))
            up = sum(1 for y in elems if leq(x, y))
            prof.append((down, up))
        return prof

    pa, pb = profile(elems_a, leq_a), profile(elems_b, leq_b)
    if sorted(pa) != sorted(pb):
        return False
    nb = len(elems_b)
    candidates = [
        [j for j in range(nb) if pb[j] == pa[i]] for i in range(len(elems_a))
    ]
    order = sorted(range(len(elems_a)), key=lambda i: len(candidates[i]))
    assign: dict[int, int] = {}
    used = set()

    def rec(k):
        if k == len(order):
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for i2, j2 in assign.items():
                xi, yi = elems_a[i], elems_a[i2]
                xj, yj = elems_b[j], elems_b[j2]
                if leq_a(xi, yi) != leq_b(xj, yj) or leq_a(yi, xi) != leq_b(yj, xj):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used.add(j)
                if rec(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    return rec(0)


def brute_rrt_maps(source, target):
    """All structure maps source->target characterized directly.

    A map f qualifies if it sends root to root, the i-th leaf to the
    i-th leaf, every fiber is connected and contains exactly one lowest
    vertex, and the induced ordered tree equals the target.  Used as a
    second implementation path for rrt_surjections.
    """
    ns, nt = source.n_vertices, target.n_vertices
    fixed = {0: 0}
    for ls, lt in zip(source.leaves, target.leaves):
        fixed[ls] = lt
    free = [v for v in range(ns) if v not in fixed]
    out = []
    for values in itertools.product(range(nt), repeat=len(free)):
        f = dict(fixed)
        f.update(zip(free, values))
        if _is_contraction_map(source, target, f):
            out.append(tuple(f[v] for v in range(ns)))
    return out


def _is_contraction_map(s, t, f):
    # every target vertex hit; edges map to edges or collapse
    if set(f.values()) != set(range(t.n_vertices)):
        return False
    for v in range(s.n_vertices):
        p = s.parent[v]
        if p is None:
            continue
        fv, fp = f[v], f[p]
        if fv != fp and t.parent[fv] != fp:
            return False
        if fv == fp and not s.in_lists[v]:
            return False  # leaves are never contracted
    # induced in-list order must match the target exactly
    for w in range(t.n_vertices):
        induced = []
        fiber = [v for v in range(s.n_vertices) if f[v] == w]
        # lowest vertex of the fiber
        lows = [v for v in fiber if s.parent[v] is None or f[s.parent[v]] != w]
        if len(lows) != 1:
            return False

        def collect(v):
            for k in s.in_lists[v]:
                if f[k] == w:
                    collect(k)
                else:
                    induced.append(f[k])

        collect(lows[0])
        if tuple(induced) != t.in_lists[w]:
            return False
    return True
