"""Finite groups as explicit multiplication tables, and Cayley digraphs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

import numpy as np

from .digraph import Digraph


@dataclass(frozen=True)
class GroupTable:
    """``mul[x][y]`` is the index of ``x*y``; validated on construction."""

    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        m = np.asarray(self.mul)
        n = len(self.labels)
        if m.shape != (n, n):
            raise ValueError(f"table shape {m.shape} does not match {n} labels")
        for row in m:
            if sorted(row.tolist()) != list(range(n)):
                raise ValueError("multiplication table rows must be permutations")
        # (x*y)*z == x*(y*z) for all triples, vectorised over z
        if not (m[m] == m[:, m]).all():
            raise ValueError("multiplication is not associative")
        if self.identity is None:
            raise ValueError("no identity element")

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def identity(self) -> int | None:
        for e in range(self.order):
            if all(self.mul[e][x] == x == self.mul[x][e] for x in range(self.order)):
                return e
        return None

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(self.mul[x].index(e) for x in range(self.order))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def product(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.mul[out][x]
        return out


def _from_elements(elements, op, label) -> GroupTable:
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    mul = tuple(tuple(pos[op(x, y)] for y in elements) for x in elements)
    return GroupTable(mul, tuple(label(x) for x in elements))


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return _from_elements(range(n), lambda x, y: (x + y) % n, str)


def elementary_abelian_2(m: int) -> GroupTable:
    """``Z_2^m`` on bit vectors, labelled as ``m``-character 0/1 strings."""
    return _from_elements(range(2**m), lambda x, y: x ^ y, lambda x: format(x, f"0{m}b"))


def dihedral(n: int) -> GroupTable:
    """``D_n`` of order ``2n``: element ``(e, i)`` is ``s^e r^i``, with ``r s = s r^-1``."""

    def op(x, y):
        (e1, i1), (e2, i2) = x, y
        return ((e1 + e2) % 2, ((-i1 if e2 else i1) + i2) % n)

    def label(x):
        e, i = x
        rot = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        if e:
            return "s" + rot
        return rot or "1"

    return _from_elements(product((0, 1), range(n)), op, label)


def _cycle_label(img: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(img)):
        if start in seen or img[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        v = img[start]
        while v != start:
            cyc.append(v)
            seen.add(v)
            v = img[v]
        cycles.append("(" + ",".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) or "()"


def symmetric(m: int) -> GroupTable:
    """``S_m`` with permutations acting on the right.

    Element ``p`` maps point ``i`` to ``p[i]``; the product ``p*q`` applies
    ``p`` first, so ``i^(p*q) = (i^p)^q``.  Labels are disjoint-cycle strings
    such as ``(1,2,3)(4,5)``; the identity is ``()``.
    """
    return _from_elements(permutations(range(m)),
                          lambda p, q: tuple(q[p[i]] for i in range(m)),
                          _cycle_label)


def parse_cycles(text: str, m: int) -> tuple[int, ...]:
    """Image tuple of a permutation written as 1-based disjoint cycles."""
    img = list(range(m))
    text = text.replace(" ", "")
    if text in ("", "()", "id"):
        return tuple(img)
    for chunk in text.strip("()").split(")("):
        pts = [int(x) - 1 for x in chunk.split(",")]
        for x, y in zip(pts, pts[1:] + pts[:1]):
            img[x] = y
    return tuple(img)


def metacyclic_21() -> GroupTable:
    """``<x, y | x^3 = y^7 = 1, x y^2 = y x>`` in normal form ``x^i y^j``.

    The relation gives ``y^j x^k = x^k y^(j * 2^k)``, hence
    ``(x^i y^j)(x^k y^l) = x^(i+k) y^(j * 2^k + l)``.
    """

    def op(g, h):
        (i, j), (k, l) = g, h
        return ((i + k) % 3, (j * pow(2, k, 7) + l) % 7)

    def label(g):
        i, j = g
        xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        ys = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
        return (xs + ys) or "1"

    return _from_elements(product(range(3), range(7)), op, label)


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    pairs = list(product(range(g.order), range(h.order)))
    return _from_elements(pairs,
                          lambda x, y: (g.mul[x[0]][y[0]], h.mul[x[1]][y[1]]),
                          lambda x: f"({g.labels[x[0]]},{h.labels[x[1]]})")


def group_table(kind: str, *args: int) -> GroupTable:
    builders = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "symmetric": symmetric,
        "metacyclic_21": metacyclic_21,
        "elementary_abelian_2": elementary_abelian_2,
    }
    if kind not in builders:
        raise ValueError(f"unsupported group kind {kind!r}")
    return builders[kind](*args)


def cayley_digraph(group: GroupTable, connection) -> Digraph:
    """Arc ``x -> y`` iff ``y * x^-1`` lies in the connection set (element indices)."""
    X = set(connection)
    if group.identity in X:
        raise ValueError("connection set contains the identity")
    n = group.order
    inv = group.inverse
    adj = np.zeros((n, n), dtype=np.uint8)
    for x in range(n):
        for y in range(n):
            if group.mul[y][inv[x]] in X:
                adj[x, y] = 1
    return Digraph(adj)
