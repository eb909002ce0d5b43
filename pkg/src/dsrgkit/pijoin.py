"""Homogeneous partitions, quotient matrices and the pi-join construction.

A homogeneous partition splits the ``n`` vertices into ``a`` cells of size
``b``.  It is *good* for a (D)SRG when every vertex of cell ``l`` receives
exactly ``lam + b - k`` arcs from its own cell and ``mu`` arcs from each other
cell.  Joining ``j*a + 1`` copies of the graph along a good partition gives a
larger DSRG whose adjacency matrix is the block circulant built by
:func:`pi_join_matrix`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .digraph import Digraph, FormatError
from .params import ParameterSet, pi_join_params
from .verify import Kind, classify


@dataclass(frozen=True)
class Partition:
    """Cell assignment vector in first-occurrence canonical form.

    ``assign[v]`` is the cell of vertex ``v``; vertex 0 is in cell 0, and
    each new cell number appears in increasing order.  Construction rejects
    partitions whose cells do not all have the same size.
    """

    assign: tuple[int, ...]

    def __post_init__(self):
        relabel: dict = {}
        canon = tuple(relabel.setdefault(c, len(relabel)) for c in self.assign)
        if not canon:
            raise ValueError("partition of an empty vertex set")
        sizes = np.bincount(canon)
        if (sizes != sizes[0]).any():
            raise ValueError(f"non-homogeneous partition: cell sizes {sorted(set(sizes.tolist()))}")
        object.__setattr__(self, "assign", canon)

    @classmethod
    def from_cells(cls, cells, n: int | None = None) -> "Partition":
        """Build from an iterable of 0-based vertex collections."""
        cells = [list(c) for c in cells]
        total = sum(len(c) for c in cells)
        n = total if n is None else n
        assign = [-1] * n
        for i, cell in enumerate(cells):
            for v in cell:
                if not 0 <= v < n or assign[v] != -1:
                    raise ValueError(f"vertex {v} is out of range or in two cells")
                assign[v] = i
        if -1 in assign:
            raise ValueError(f"vertex {assign.index(-1)} is in no cell")
        return cls(tuple(assign))

    @property
    def n(self) -> int:
        return len(self.assign)

    @cached_property
    def a(self) -> int:
        return max(self.assign) + 1

    @property
    def b(self) -> int:
        return self.n // self.a

    @cached_property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.a)]
        for v, c in enumerate(self.assign):
            out[c].append(v)
        return tuple(tuple(c) for c in out)

    def characteristic(self) -> np.ndarray:
        """The ``n x a`` 0/1 matrix whose columns are the cell indicators."""
        H = np.zeros((self.n, self.a), dtype=np.int64)
        H[np.arange(self.n), self.assign] = 1
        return H

    def respecting_order(self) -> list[int]:
        """Vertices sorted stably by cell: position ``i`` holds original vertex ``order[i]``."""
        return sorted(range(self.n), key=lambda v: (self.assign[v], v))

    def to_text(self) -> str:
        return " ".join(str(c + 1) for c in self.assign)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(str(v + 1) for v in c) + "}" for c in self.cells) + "}"


def read_partition(text: str) -> Partition:
    parts = read_partitions(text)
    if len(parts) != 1:
        raise FormatError(f"expected one partition line, found {len(parts)}")
    return parts[0]


def read_partitions(text: str) -> list[Partition]:
    """Parse lines of whitespace-separated 1-based cell labels, skipping '#' comments."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            labels = [int(x) for x in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: cell labels must be integers") from None
        if min(labels) < 1:
            raise FormatError(f"line {lineno}: cell labels are 1-based")
        try:
            out.append(Partition(tuple(labels)))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    return out


def _coerce(pi) -> Partition:
    if isinstance(pi, Partition):
        return pi
    return Partition.from_cells(pi)


# -- admissible cell shapes ---------------------------------------------------


@dataclass(frozen=True)
class JoinSolution:
    """Cell shape ``(a, b)`` with the required quotient entries."""

    a: int
    b: int
    diag: int
    offdiag: int

    def __str__(self):
        return f"({self.a},{self.b})"


def eq1_raw(p: ParameterSet) -> list[tuple[int, int]]:
    """All divisor pairs ``a*b = n`` with ``2k + mu - lam == a*mu + b``, no filtering."""
    mu = p.mu
    lhs = 2 * p.k + mu - p.lam
    return [(a, p.n // a) for a in range(1, p.n + 1)
            if p.n % a == 0 and lhs == a * mu + p.n // a]


def solve_eq1(p: ParameterSet) -> list[JoinSolution]:
    """Admissible ``(a, b)`` for a pi-join over ``p``, sorted by ``a``.

    Keeps solutions with ``a, b >= 2`` and ``lam + b - k >= 0``.  Complete
    graphs admit every homogeneous shape with ``a >= 2``.
    """
    if p.mu is None:
        return [JoinSolution(a, p.n // a, p.n // a - 1, p.n // a)
                for a in range(2, p.n + 1) if p.n % a == 0]
    out = []
    for a, b in eq1_raw(p):
        diag = p.lam + b - p.k
        if a >= 2 and b >= 2 and diag >= 0:
            out.append(JoinSolution(a, b, diag, p.mu))
    return out


def target_quotient(p: ParameterSet, s: JoinSolution) -> np.ndarray:
    """The ``a x a`` matrix ``diag*I + offdiag*(J - I)``."""
    Q = np.full((s.a, s.a), s.offdiag, dtype=np.int64)
    np.fill_diagonal(Q, s.diag)
    return Q


def in_counts(g: Digraph, pi: Partition) -> np.ndarray:
    """``counts[v, i]`` = number of arcs from cell ``i`` into vertex ``v``."""
    return g.adj.T.astype(np.int64) @ pi.characteristic()


def quotient_violation(g: Digraph, pi) -> tuple[int, int] | None:
    """First ``(v, i)`` whose in-count from cell ``i`` differs within ``v``'s cell."""
    pi = _coerce(pi)
    counts = in_counts(g, pi)
    for cell in pi.cells:
        ref = counts[cell[0]]
        for v in cell[1:]:
            diff = np.flatnonzero(counts[v] != ref)
            if diff.size:
                return v, int(diff[0])
    return None


def measure_quotient(g: Digraph, pi) -> np.ndarray | None:
    """Quotient matrix ``q[i, l]`` of a column-equitable partition, else None.

    ``q[i, l]`` is the number of arcs from cell ``i`` into any vertex of cell
    ``l``; equivalently ``A^T H = H Q`` for the characteristic matrix ``H``.
    """
    pi = _coerce(pi)
    if pi.n != g.n:
        raise ValueError(f"partition covers {pi.n} vertices, graph has {g.n}")
    if quotient_violation(g, pi) is not None:
        return None
    counts = in_counts(g, pi)
    return np.stack([counts[cell[0]] for cell in pi.cells], axis=1)


def is_good_partition(g: Digraph, pi, params: ParameterSet | None = None) -> bool:
    pi = _coerce(pi)
    if pi.n != g.n:
        return False
    if params is None:
        res = classify(g)
        if res.kind not in (Kind.DSRG, Kind.SRG, Kind.COMPLETE):
            return False
        params = res.params
    if params.mu is None:
        return pi.a >= 2
    sol = next((s for s in solve_eq1(params) if (s.a, s.b) == (pi.a, pi.b)), None)
    if sol is None:
        return False
    Q = measure_quotient(g, pi)
    return Q is not None and bool((Q == target_quotient(params, sol)).all())


# -- the construction ---------------------------------------------------------


def u_matrix(i: int, a: int, b: int, n: int) -> np.ndarray:
    """``n x n`` 0/1 matrix with ones exactly in the columns of cell ``i`` (1-based)."""
    if a * b != n:
        raise ValueError(f"a*b = {a * b} does not equal n = {n}")
    if not 1 <= i <= a:
        raise ValueError(f"cell index {i} outside 1..{a}")
    U = np.zeros((n, n), dtype=np.uint8)
    U[:, (i - 1) * b:i * b] = 1
    return U


def pi_join_matrix(A, a: int, b: int, j: int) -> np.ndarray:
    """Block circulant whose first block row is ``A, U_1 x j, ..., U_a x j``.

    ``A`` must already respect the partition (cells are consecutive index
    ranges of length ``b``).  Block ``(r, c)`` is ``A`` when ``c == r`` and
    otherwise ``U_i`` with ``i = ceil(((c - r) mod (j*a + 1)) / j)``.
    """
    A = np.asarray(A, dtype=np.uint8)
    n = A.shape[0]
    if a * b != n:
        raise ValueError(f"a*b = {a * b} does not equal n = {n}")
    if j < 1:
        raise ValueError(f"power j must be positive, got {j}")
    copies = j * a + 1
    M = np.zeros((copies * n, copies * n), dtype=np.uint8)
    for r in range(copies):
        rows = slice(r * n, (r + 1) * n)
        M[rows, r * n:(r + 1) * n] = A
        for d in range(1, copies):
            cell = (d - 1) // j
            c = (r + d) % copies
            M[rows, c * n + cell * b:c * n + (cell + 1) * b] = 1
    return M


def build_pi_join(g: Digraph, pi, j: int) -> Digraph:
    """The pi-join of ``g`` in power ``j``.

    Vertices are first reordered by :meth:`Partition.respecting_order`, so
    vertex ``r*n + i`` of the result is copy ``r`` of original vertex
    ``pi.respecting_order()[i]``.
    """
    pi = _coerce(pi)
    if pi.n != g.n:
        raise ValueError(f"partition covers {pi.n} vertices, graph has {g.n}")
    order = pi.respecting_order()
    A = g.adj[np.ix_(order, order)]
    return Digraph(pi_join_matrix(A, pi.a, pi.b, j))


def expected_join_params(p: ParameterSet, pi: Partition, j: int) -> ParameterSet:
    return pi_join_params(p, pi.a, pi.b, j)
