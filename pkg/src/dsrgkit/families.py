"""Generators for the (D)SRG families used as pi-join inputs, with their good partitions.

Every family is addressed by a :class:`FamilySpec` such as
``FamilySpec("jorgensen", (3, 1))``.  :func:`make_graph` builds the digraph,
:func:`expected_params` states the parameter set it must classify to, and
:func:`known_partitions` returns documented good partitions for a cell shape.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations

import numpy as np

from .digraph import Digraph, complement, complete_digraph, read_matrix
from .groups import (cayley_digraph, cyclic, dihedral, direct_product, elementary_abelian_2,
                     metacyclic_21, parse_cycles, symmetric)
from .params import ParameterSet
from .pijoin import JoinSolution, Partition, is_good_partition


@dataclass(frozen=True)
class FamilySpec:
    family: str
    args: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``name`` or ``name(1,2)``."""
        m = re.fullmatch(r"\s*([A-Za-z_0-9-]+)\s*(?:\(([^)]*)\))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse family spec {text!r}")
        args = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
        return cls(m.group(1), args)

    def __str__(self):
        if not self.args:
            return self.family
        return f"{self.family}({','.join(map(str, self.args))})"


# -- parameter domains ------------------------------------------------------


def _arity(spec: FamilySpec, k: int):
    if len(spec.args) != k:
        raise ValueError(f"{spec.family} takes {k} integer parameter(s), got {len(spec.args)}")


def _check(spec: FamilySpec) -> None:
    f, args = spec.family, spec.args
    if f not in _FAMILIES:
        raise ValueError(f"unknown family {f!r}; choose from {', '.join(sorted(_FAMILIES))}")
    _arity(spec, _FAMILIES[f])
    if f == "complete" and args[0] < 2:
        raise ValueError("complete(n) needs n >= 2")
    if f == "duval" and args[0] < 2:
        raise ValueError("duval(k) needs k >= 2")
    if f == "jorgensen":
        k, mu = args
        if k < 3 or mu < 1 or (k - 1) % mu:
            raise ValueError("jorgensen(k, mu) needs k >= 3 and mu dividing k - 1")
        if mu == k - 1:
            raise ValueError(f"jorgensen({k},{mu}) is the complete graph on {k + 1} vertices")
    if f in ("triangular", "triangular_complement") and args[0] < 5:
        raise ValueError(f"{f}(n) needs n >= 5")
    if f == "lattice" and args[0] < 2:
        raise ValueError("lattice(n) needs n >= 2")
    if f == "dihedral" and (args[0] < 3 or args[0] % 2 == 0):
        raise ValueError("dihedral(n) needs odd n >= 3")
    if f == "s4" and args[0] not in (1, 2, 3):
        raise ValueError("s4(i) needs i in {1, 2, 3}")


_FAMILIES = {
    "complete": 1, "duval": 1, "jorgensen": 2, "triangular": 1, "triangular_complement": 1,
    "lattice": 1, "dihedral": 1, "cycle4": 0, "petersen": 0, "clebsch": 0, "shrikhande": 0,
    "hoffman_singleton": 0, "metacyclic21": 0, "s4": 1,
    "A_15_5": 0, "A_18_7": 0, "A_16": 0,
}

EMBEDDED = ("A_15_5", "A_18_7", "A_16")


def family_names() -> list[str]:
    return list(_FAMILIES)


# -- the graphs -------------------------------------------------------------


def load_embedded(name: str) -> Digraph:
    if name not in EMBEDDED:
        raise ValueError(f"no embedded matrix named {name!r}")
    text = resources.files("dsrgkit").joinpath("data").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    return read_matrix(text)


def duval_vertices(k: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(k + 1) for y in range(k + 1) if x != y]


def duval(k: int) -> Digraph:
    """Line digraph of the complete digraph on ``k + 1`` points: ``(x,y) -> (y,v)``."""
    verts = duval_vertices(k)
    pos = {v: i for i, v in enumerate(verts)}
    return Digraph.from_arcs(len(verts), [(pos[(x, y)], pos[(y, v)])
                                          for x, y in verts for v in range(k + 1) if v != y])


def jorgensen(k: int, mu: int) -> Digraph:
    """Vertices ``Z_n``, ``n = (k^2 - 1)/mu``; arc ``x -> y`` iff ``x + k*y`` is in ``1..k``."""
    n = (k * k - 1) // mu
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    s = (x + k * y) % n
    return Digraph(((s >= 1) & (s <= k)).astype(np.uint8))


def pair_vertices(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def triangular(n: int) -> Digraph:
    """Line graph of ``K_n`` on the 2-subsets of ``Z_n`` in lexicographic order."""
    verts = pair_vertices(n)
    m = len(verts)
    adj = np.zeros((m, m), dtype=np.uint8)
    for i, p in enumerate(verts):
        for j, q in enumerate(verts):
            if i != j and set(p) & set(q):
                adj[i, j] = 1
    return Digraph(adj)


def lattice(n: int) -> Digraph:
    """``L_2(n)``: cells of an ``n x n`` grid (row-major), adjacent iff sharing exactly one coordinate."""
    x, y = np.divmod(np.arange(n * n), n)
    same = (x[:, None] == x[None, :]).astype(int) + (y[:, None] == y[None, :])
    return Digraph((same == 1).astype(np.uint8))


def dihedral_digraph(n: int) -> Digraph:
    """Cayley digraph of ``D_n`` with ``X = {r^i, s r^i : 1 <= i <= (n-1)/2}``."""
    G = dihedral(n)
    half = range(1, (n - 1) // 2 + 1)
    X = [G.index("r" if i == 1 else f"r^{i}") for i in half]
    X += [G.index("sr" if i == 1 else f"sr^{i}") for i in half]
    return cayley_digraph(G, X)


def cycle4() -> Digraph:
    return Digraph.from_arcs(4, [(v, (v + d) % 4) for v in range(4) for d in (1, 3)])


def clebsch() -> Digraph:
    """Cayley graph of ``Z_2^4`` on the unit vectors and ``1111``: Hamming distance 1 or 4."""
    G = elementary_abelian_2(4)
    return cayley_digraph(G, [G.index(s) for s in ("0001", "0010", "0100", "1000", "1111")])


def shrikhande() -> Digraph:
    G = direct_product(cyclic(4), cyclic(4))
    X = ["(1,0)", "(3,0)", "(0,1)", "(0,3)", "(1,1)", "(3,3)"]
    return cayley_digraph(G, [G.index(s) for s in X])


def hoffman_singleton() -> Digraph:
    """Pentagons ``P_h`` (vertex ``10h + i``) and pentagrams ``Q_h`` (vertex ``10h + 5 + i``).

    ``P_h(i) ~ P_h(i±1)``, ``Q_h(i) ~ Q_h(i±2)`` and ``P_h(i) ~ Q_j(h*j + i)``.
    """
    P = lambda h, i: 10 * h + i % 5
    Q = lambda h, i: 10 * h + 5 + i % 5
    adj = np.zeros((50, 50), dtype=np.uint8)
    for h in range(5):
        for i in range(5):
            for u, v in ((P(h, i), P(h, i + 1)), (Q(h, i), Q(h, i + 2))):
                adj[u, v] = adj[v, u] = 1
            for j in range(5):
                u, v = P(h, i), Q(j, h * j + i)
                adj[u, v] = adj[v, u] = 1
    return Digraph(adj)


_METACYCLIC_S = ("y", "y^3", "x", "xy^2", "x^2", "x^2y^5")


def metacyclic21() -> Digraph:
    G = metacyclic_21()
    return cayley_digraph(G, [G.index(s) for s in _METACYCLIC_S])


_S4_CONNECTION = {
    1: ["(3,4)", "(2,3)", "(2,3,4)", "(1,2)(3,4)", "(1,2,3,4)", "(1,3,2)", "(1,3,4,2)", "(1,3,4)"],
    2: ["(3,4)", "(2,3)", "(1,2,3)", "(1,2,4,3)", "(1,3,2)", "(1,3,4)", "(1,3)(2,4)", "(1,4,3)",
        "(1,4,2,3)"],
    3: ["(3,4)", "(2,3)", "(2,3,4)", "(2,4,3)", "(1,2)", "(1,2,3)", "(1,2,3,4)", "(1,4,3,2)",
        "(1,4,3)", "(1,4)"],
}


@lru_cache(maxsize=None)
def _s4():
    return symmetric(4), list(permutations(range(4)))


def _s4_index(cycles: str) -> int:
    _, elems = _s4()
    return elems.index(parse_cycles(cycles, 4))


def s4_graph(i: int) -> Digraph:
    G, _ = _s4()
    return cayley_digraph(G, [_s4_index(c) for c in _S4_CONNECTION[i]])


def make_graph(spec: FamilySpec) -> Digraph:
    _check(spec)
    f, args = spec.family, spec.args
    if f == "complete":
        return complete_digraph(args[0])
    if f == "duval":
        return duval(args[0])
    if f == "jorgensen":
        return jorgensen(*args)
    if f == "triangular":
        return triangular(args[0])
    if f == "triangular_complement":
        return complement(triangular(args[0]))
    if f == "lattice":
        return lattice(args[0])
    if f == "dihedral":
        return dihedral_digraph(args[0])
    if f == "cycle4":
        return cycle4()
    if f == "petersen":
        return complement(triangular(5))
    if f == "clebsch":
        return clebsch()
    if f == "shrikhande":
        return shrikhande()
    if f == "hoffman_singleton":
        return hoffman_singleton()
    if f == "metacyclic21":
        return metacyclic21()
    if f == "s4":
        return s4_graph(args[0])
    return load_embedded(f)


def expected_params(spec: FamilySpec) -> ParameterSet:
    """The parameter set the family is known to realise."""
    _check(spec)
    f, args = spec.family, spec.args
    if f == "complete":
        return ParameterSet.complete(args[0])
    if f == "duval":
        k = args[0]
        return ParameterSet(k * k + k, k, 1, 0, 1)
    if f == "jorgensen":
        k, mu = args
        return ParameterSet((k * k - 1) // mu, k, mu + 1, mu, mu)
    if f == "triangular":
        n = args[0]
        return ParameterSet.srg(n * (n - 1) // 2, 2 * (n - 2), n - 2, 4)
    if f == "triangular_complement":
        n = args[0]
        c2 = lambda m: m * (m - 1) // 2
        return ParameterSet.srg(c2(n), c2(n - 2), c2(n - 4), c2(n - 3))
    if f == "lattice":
        n = args[0]
        return ParameterSet.srg(n * n, 2 * n - 2, n - 2, 2)
    if f == "dihedral":
        n = args[0]
        return ParameterSet(2 * n, n - 1, (n - 1) // 2, (n - 3) // 2, (n - 1) // 2)
    fixed = {
        "cycle4": ParameterSet.srg(4, 2, 0, 2),
        "petersen": ParameterSet.srg(10, 3, 0, 1),
        "clebsch": ParameterSet.srg(16, 5, 0, 2),
        "shrikhande": ParameterSet.srg(16, 6, 2, 2),
        "hoffman_singleton": ParameterSet.srg(50, 7, 0, 1),
        "metacyclic21": ParameterSet(21, 6, 2, 1, 2),
        "A_15_5": ParameterSet(15, 5, 2, 1, 2),
        "A_18_7": ParameterSet(18, 7, 5, 2, 3),
        "A_16": ParameterSet(16, 7, 5, 4, 2),
    }
    if f == "s4":
        return [ParameterSet(24, 8, 3, 2, 3), ParameterSet(24, 9, 7, 2, 4),
                ParameterSet(24, 10, 8, 4, 4)][args[0] - 1]
    return fixed[f]


# -- documented partitions ----------------------------------------------------

# 1-based cell lists for the embedded matrices
_EMBEDDED_CELLS = {
    ("A_15_5", 3, 5): [[1, 2, 7, 8, 10], [3, 4, 9, 11, 15], [5, 6, 12, 13, 14]],
    ("A_18_7", 2, 9): [list(range(1, 10)), list(range(10, 19))],
    ("A_18_7", 3, 6): [[1, 4, 7, 10, 13, 16], [2, 5, 8, 11, 14, 17], [3, 6, 9, 12, 15, 18]],
    ("A_16", 2, 8): [[1, 2, 5, 6, 9, 10, 13, 14], [3, 4, 7, 8, 11, 12, 15, 16]],
    ("A_16", 4, 4): [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]],
}

# Found once by find_good_partitions (lexicographically first) and pinned; no
# vertex labeling is fixed for these graphs, and for s4(1) the known cell list
# does not verify under any multiplication convention.
_PINNED = {
    ("clebsch", 2, 8): "1 1 1 1 1 1 1 1 2 2 2 2 2 2 2 2",
    ("shrikhande", 2, 8): "1 1 1 1 1 1 1 1 2 2 2 2 2 2 2 2",
    ("shrikhande", 4, 4): "1 2 1 2 3 4 3 4 1 2 1 2 3 4 3 4",
    ("s4", 3, 8): "1 1 2 1 2 2 1 1 3 1 3 2 2 1 3 1 3 3 2 2 3 2 3 3",
}


def _label_partition(text: str) -> Partition:
    return Partition(tuple(int(x) for x in text.split()))


def _s4_partitions(i: int, a: int, b: int) -> list[Partition]:
    _, elems = _s4()
    G, _ = _s4()
    if i == 1 and (a, b) == (3, 8):
        return [_label_partition(_PINNED[("s4", 3, 8)])]
    if i == 2 and (a, b) == (2, 12):
        parity = [sum(p[x] > p[y] for x in range(4) for y in range(x + 1, 4)) % 2 for p in elems]
        return [Partition(tuple(parity))]
    if (i, a, b) in ((2, 3, 8), (3, 3, 8)):
        gens, reps = {2: (["(1,2)(3,4)", "(1,2,3,4)"], ["()", "(2,3)", "(3,4)"]),
                      3: (["(1,2,3,4)", "(1,3)"], ["()", "(1,2)", "(1,4)"])}[i]
        H = {G.identity}
        gen_idx = [_s4_index(g) for g in gens]
        while True:
            grown = H | {G.mul[h][x] for h in H for x in gen_idx}
            if grown == H:
                break
            H = grown
        cells = [[G.mul[h][_s4_index(r)] for h in sorted(H)] for r in reps]
        return [Partition.from_cells(cells)]
    if i == 3 and (a, b) == (2, 12):
        return [Partition(tuple(0 if p[0] in (0, 1) else 1 for p in elems))]
    return []


def _candidates(spec: FamilySpec, a: int, b: int) -> list[Partition]:
    f, args = spec.family, spec.args
    n = a * b
    if f == "complete":
        return [Partition(tuple(v // b for v in range(n)))]
    if f == "cycle4" and (a, b) == (2, 2):
        return [Partition((0, 1, 0, 1))]
    if f == "duval":
        k = args[0]
        verts = duval_vertices(k)
        if (a, b) == (k + 1, k):
            return [Partition(tuple(x for x, _ in verts))]
        if (a, b) == (k, k + 1):
            return [Partition(tuple((y - x) % (k + 1) for x, y in verts))]
    if f == "jorgensen":
        k, mu = args
        n = (k * k - 1) // mu
        if (a, b) == ((k - 1) // mu, k + 1):
            assign = [-1] * n
            for i in range(a):
                for v in [i * b] + [k * (s - i * b) % n for s in range(1, k + 1)]:
                    assign[v] = i
            return [Partition(tuple(assign))]
        if mu in (1, 2) and (a, b) == ((k + 1) // mu, k - 1) and (k + 1) % mu == 0:
            return [Partition(tuple(v % a for v in range(n)))]
    if f in ("triangular", "petersen", "triangular_complement"):
        m = 5 if f == "petersen" else args[0]
        if m % 2 == 1 and (a, b) == ((m - 1) // 2, m):
            diff = [min(q - p, m - (q - p)) for p, q in pair_vertices(m)]
            return [Partition(tuple(diff))]
    if f == "lattice":
        m = args[0]
        cells = [(x, y) for x in range(m) for y in range(m)]
        if (a, b) == (m, m):
            return [Partition(tuple((y - x) % m for x, y in cells))]
        if m % 2 == 0 and (a, b) == (m // 2, 2 * m):
            return [Partition(tuple(y // 2 for x, y in cells))]
    if f == "dihedral" and (a, b) == (2, args[0]):
        return [Partition(tuple(e for e in (0, 1) for _ in range(args[0])))]
    if f == "hoffman_singleton" and (a, b) == (5, 10):
        return [Partition(tuple(v // 10 for v in range(50)))]
    if f == "metacyclic21" and (a, b) == (3, 7):
        return [Partition(tuple(v // 7 for v in range(21)))]
    if f == "s4":
        return _s4_partitions(args[0], a, b)
    if (f, a, b) in _EMBEDDED_CELLS:
        cells = [[v - 1 for v in c] for c in _EMBEDDED_CELLS[(f, a, b)]]
        return [Partition.from_cells(cells)]
    if (f, a, b) in _PINNED:
        return [_label_partition(_PINNED[(f, a, b)])]
    return []


def known_partitions(spec: FamilySpec, sol: JoinSolution | tuple[int, int]) -> list[Partition]:
    """Documented good partitions of ``make_graph(spec)`` with ``sol``'s shape.

    Each candidate is re-verified with :func:`is_good_partition`; an empty
    list means nothing is documented and the caller should search.
    """
    a, b = (sol.a, sol.b) if isinstance(sol, JoinSolution) else sol
    _check(spec)
    g = make_graph(spec)
    if a * b != g.n:
        return []
    params = expected_params(spec)
    return [p for p in _candidates(spec, a, b) if is_good_partition(g, p, params)]


def shipped_specs() -> list[FamilySpec]:
    """The family members exercised by the test corpus and the catalog."""
    out = [FamilySpec("complete", (n,)) for n in (2, 4, 6, 8, 9)]
    out += [FamilySpec("duval", (k,)) for k in range(2, 7)]
    out += [FamilySpec("jorgensen", (k, mu)) for k in range(3, 10) for mu in range(1, k - 1)
            if (k - 1) % mu == 0]
    out += [FamilySpec("triangular", (n,)) for n in (5, 7, 9, 11)]
    out += [FamilySpec("triangular_complement", (n,)) for n in (5, 6, 8)]
    out += [FamilySpec("lattice", (n,)) for n in range(3, 9)]
    out += [FamilySpec("dihedral", (n,)) for n in (3, 5, 7, 9, 11, 13)]
    out += [FamilySpec(name) for name in ("cycle4", "petersen", "clebsch", "shrikhande",
                                          "hoffman_singleton", "metacyclic21")]
    out += [FamilySpec("s4", (i,)) for i in (1, 2, 3)]
    out += [FamilySpec(name) for name in EMBEDDED]
    return out
