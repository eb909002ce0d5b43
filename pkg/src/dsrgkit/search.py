"""Search for good partitions.

:func:`find_good_partitions` is a pruned backtracking search over cell
assignments.  :func:`brute_force_partitions` enumerates every homogeneous
partition and is kept as an independent oracle for small graphs.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from math import factorial

from .digraph import Digraph
from .pijoin import JoinSolution, Partition, is_good_partition

BRUTE_FORCE_GUARD = 10**6


class SearchTimeout(RuntimeError):
    pass


def _assignment_order(g: Digraph) -> list[int]:
    """Vertex 0 first, then greedily the vertex most connected to those placed.

    Ties go to the smaller index.  Placing well-connected vertices early
    lets cells close with many in-counts already fixed.
    """
    n = g.n
    link = [g.out_masks[v] | g.in_masks[v] for v in range(n)]
    order = [0]
    placed = 1
    score = [(link[v] & placed).bit_count() for v in range(n)]
    remaining = set(range(1, n))
    while remaining:
        v = max(remaining, key=lambda w: (score[w], -w))
        remaining.discard(v)
        order.append(v)
        for w in remaining:
            if link[w] >> v & 1:
                score[w] += 1
    return order


class _Search:
    """Depth-first assignment of vertices to cells under quotient constraints.

    ``cnt[w][i]`` is the number of in-neighbours of ``w`` already placed in
    cell ``i``.  After each placement the vertex and its out-neighbours are
    checked: an assigned vertex needs ``cnt <= target <= cnt + room`` for
    every cell, an unassigned one needs every count to stay reachable for at
    least one of the two possible targets, and once a cell is full each
    count into it is final.
    """

    def __init__(self, g: Digraph, sol: JoinSolution, deadline: float | None = None):
        self.g = g
        self.n = g.n
        self.a = sol.a
        self.b = sol.b
        self.diag = sol.diag
        self.off = sol.offdiag
        self.hi = max(self.diag, self.off)
        self.lo = min(self.diag, self.off)
        self.inm = g.in_masks
        self.outs = [[w for w in range(self.n) if g.out_masks[v] >> w & 1] for v in range(self.n)]
        self.order = _assignment_order(g)
        self.deadline = deadline
        self.nodes = 0

    def fresh_state(self):
        return {
            "assign": [-1] * self.n,
            "cells": [0] * self.a,
            "sizes": [0] * self.a,
            "cnt": [[0] * self.a for _ in range(self.n)],
            "free": (1 << self.n) - 1,
            "used": 0,
        }

    def _ok(self, st, w) -> bool:
        assign = st["assign"]
        cnt_w = st["cnt"][w]
        free_in = (self.inm[w] & st["free"]).bit_count()
        sizes = st["sizes"]
        cw = assign[w]
        for i in range(self.a):
            c = cnt_w[i]
            room = min(free_in, self.b - sizes[i])
            if cw >= 0:
                tgt = self.diag if i == cw else self.off
                if c > tgt or c + room < tgt:
                    return False
            else:
                if sizes[i] == self.b:
                    if c != self.off:
                        return False
                elif c > self.hi or c + room < self.lo:
                    return False
        return True

    def _place(self, st, v, i):
        st["assign"][v] = i
        st["cells"][i] |= 1 << v
        st["sizes"][i] += 1
        st["free"] &= ~(1 << v)
        if i == st["used"]:
            st["used"] += 1
        cnt = st["cnt"]
        for w in self.outs[v]:
            cnt[w][i] += 1

    def _unplace(self, st, v, i, opened):
        st["assign"][v] = -1
        st["cells"][i] &= ~(1 << v)
        st["sizes"][i] -= 1
        st["free"] |= 1 << v
        if opened:
            st["used"] -= 1
        cnt = st["cnt"]
        for w in self.outs[v]:
            cnt[w][i] -= 1

    def _consistent(self, st, v, i) -> bool:
        if not self._ok(st, v):
            return False
        for w in self.outs[v]:
            if not self._ok(st, w):
                return False
        if st["sizes"][i] == self.b:
            # every count into a closed cell is final
            for w in range(self.n):
                if st["assign"][w] < 0 and st["cnt"][w][i] != self.off:
                    return False
                if st["assign"][w] >= 0 and not self._ok(st, w):
                    return False
        return True

    def run(self, st, depth):
        """Yield complete assignments (as tuples) below the given state."""
        self.nodes += 1
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout("partition search exceeded its time limit")
        if depth == self.n:
            yield tuple(st["assign"])
            return
        v = self.order[depth]
        used = st["used"]
        for i in range(min(used + 1, self.a)):
            if st["sizes"][i] == self.b:
                continue
            opened = i == used
            self._place(st, v, i)
            if self._consistent(st, v, i):
                yield from self.run(st, depth + 1)
            self._unplace(st, v, i, opened)

    def prefixes(self, depth):
        """Consistent partial states at ``depth`` assigned vertices, as placement lists."""
        out = []

        def rec(st, d, placed):
            if d == depth:
                out.append(list(placed))
                return
            v = self.order[d]
            used = st["used"]
            for i in range(min(used + 1, self.a)):
                if st["sizes"][i] == self.b:
                    continue
                opened = i == used
                self._place(st, v, i)
                if self._consistent(st, v, i):
                    placed.append((v, i))
                    rec(st, d + 1, placed)
                    placed.pop()
                self._unplace(st, v, i, opened)

        rec(self.fresh_state(), 0, [])
        return out


def _check_shape(g: Digraph, sol: JoinSolution):
    if sol.a * sol.b != g.n:
        raise ValueError(f"shape ({sol.a},{sol.b}) does not cover {g.n} vertices")


def iter_good_partitions(g: Digraph, sol: JoinSolution, deadline: float | None = None):
    """Yield good partitions in search order (not sorted); no duplicates."""
    _check_shape(g, sol)
    s = _Search(g, sol, deadline)
    for assign in s.run(s.fresh_state(), 0):
        yield Partition(assign)


def _run_subtree(g: Digraph, sol: JoinSolution, placed, deadline):
    s = _Search(g, sol, deadline)
    st = s.fresh_state()
    for v, i in placed:
        s._place(st, v, i)
    return [Partition(a).assign for a in s.run(st, len(placed))]


def find_good_partitions(g: Digraph, sol: JoinSolution, limit: int | None = None,
                         jobs: int = 1, timeout: float | None = None) -> list[Partition]:
    """Good partitions of shape ``(sol.a, sol.b)``, lexicographically smallest first.

    The search is exhaustive and the result is sorted by assignment vector
    before truncating to ``limit``, so output does not depend on ``jobs``.
    An empty list means no good partition of that shape exists.
    """
    _check_shape(g, sol)
    deadline = None if timeout is None else time.monotonic() + timeout
    if jobs > 1:
        s = _Search(g, sol, deadline)
        tasks = s.prefixes(min(3, g.n))
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_run_subtree, [g] * len(tasks), [sol] * len(tasks), tasks,
                           [deadline] * len(tasks))
            found = sorted({a for chunk in parts for a in chunk})
    else:
        found = sorted({p.assign for p in iter_good_partitions(g, sol, deadline)})
    if limit is not None:
        found = found[:limit]
    return [Partition(a) for a in found]


def count_homogeneous_partitions(n: int, a: int) -> int:
    b = n // a
    return factorial(n) // (factorial(b) ** a * factorial(a))


def _homogeneous_partitions(n: int, b: int):
    """Every partition of ``range(n)`` into cells of size ``b``, as bitmask tuples."""
    from itertools import combinations

    def rec(free, cells):
        if not free:
            yield tuple(cells)
            return
        low = free & -free
        rest = [v for v in range(n) if free >> v & 1 and (1 << v) != low]
        for combo in combinations(rest, b - 1):
            cell = low
            for v in combo:
                cell |= 1 << v
            cells.append(cell)
            yield from rec(free & ~cell, cells)
            cells.pop()

    yield from rec((1 << n) - 1, [])


def brute_force_partitions(g: Digraph, sol: JoinSolution,
                           max_partitions: int = BRUTE_FORCE_GUARD) -> list[Partition]:
    """Enumerate all homogeneous ``(a, b)`` partitions and keep the good ones.

    The filter tests each cell separately: every member must receive
    ``sol.diag`` arcs from the cell and every non-member ``sol.offdiag``,
    which is the good-partition condition split by cell.  Cell verdicts are
    memoised; survivors are re-checked with :func:`is_good_partition`.
    """
    _check_shape(g, sol)
    total = count_homogeneous_partitions(g.n, sol.a)
    if total > max_partitions:
        raise ValueError(f"{total} homogeneous partitions exceed the guard of {max_partitions}")
    inm = g.in_masks
    n = g.n
    memo: dict[int, bool] = {}

    def cell_ok(cell):
        ok = memo.get(cell)
        if ok is None:
            ok = all((inm[v] & cell).bit_count() == (sol.diag if cell >> v & 1 else sol.offdiag)
                     for v in range(n))
            memo[cell] = ok
        return ok

    out = []
    for cells in _homogeneous_partitions(n, sol.b):
        if all(cell_ok(c) for c in cells):
            assign = [0] * n
            for i, c in enumerate(cells):
                for v in range(n):
                    if c >> v & 1:
                        assign[v] = i
            p = Partition(tuple(assign))
            if not is_good_partition(g, p):
                raise AssertionError(f"cell filter and is_good_partition disagree on {p}")
            out.append(p)
    return sorted(out, key=lambda p: p.assign)
