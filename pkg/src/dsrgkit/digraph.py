"""Dense 0/1 matrices, digraphs and exact integer matrix products.

Binary matrices are plain ``numpy`` arrays of dtype ``uint8``; integer matrices
are ``int64`` arrays.  A :class:`Digraph` owns a read-only adjacency matrix and
lazily caches its rows and columns as Python-int bitsets, which is what the
search code uses for AND/popcount counting.

Vertex indices are 0-based everywhere in the API and 1-based in files.
"""
from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

INT64_MAX = np.iinfo(np.int64).max
# float64 represents every integer below 2**53 exactly, so BLAS products of
# 0/1 matrices with inner dimension below that bound are exact.
_EXACT_FLOAT_LIMIT = 2**53


class FormatError(ValueError):
    """Malformed matrix or partition text."""


def as_binary(m) -> np.ndarray:
    """Return ``m`` as a 2-d uint8 array, checking every entry is 0 or 1."""
    if isinstance(m, Digraph):
        return m.adj
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("binary matrix has entries other than 0/1")
        arr = arr.astype(np.uint8)
    elif arr.max(initial=0) > 1:
        raise ValueError("binary matrix has entries other than 0/1")
    return arr


def _mask(bits) -> int:
    out = 0
    for i in np.flatnonzero(bits):
        out |= 1 << int(i)
    return out


class Digraph:
    """Simple digraph on vertices ``0..n-1`` given by a square 0/1 matrix.

    Instances are immutable: the adjacency array is copied and flagged
    read-only on construction.
    """

    __slots__ = ("_adj", "_out", "_in")

    def __init__(self, adj):
        arr = np.array(as_binary(adj), dtype=np.uint8, copy=True)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {arr.shape}")
        if np.diagonal(arr).any():
            v = int(np.flatnonzero(np.diagonal(arr))[0])
            raise ValueError(f"loop at vertex {v + 1}: diagonal must be zero")
        arr.flags.writeable = False
        self._adj = arr
        self._out = None
        self._in = None

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "Digraph":
        adj = np.zeros((n, n), dtype=np.uint8)
        for u, v in arcs:
            adj[u, v] = 1
        return cls(adj)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    @property
    def out_masks(self) -> tuple[int, ...]:
        """Row ``v`` as a bitset: bit ``w`` set iff ``v -> w``."""
        if self._out is None:
            self._out = tuple(_mask(row) for row in self._adj)
        return self._out

    @property
    def in_masks(self) -> tuple[int, ...]:
        """Column ``v`` as a bitset: bit ``u`` set iff ``u -> v``."""
        if self._in is None:
            self._in = tuple(_mask(col) for col in self._adj.T)
        return self._in

    def out_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def in_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=0, dtype=np.int64)

    def arcs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(self._adj))]

    def relabel(self, perm) -> "Digraph":
        """Digraph whose vertex ``perm[v]`` plays the role of ``v``."""
        perm = np.asarray(perm, dtype=np.intp)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of 0..n-1")
        out = np.zeros_like(self._adj)
        out[np.ix_(perm, perm)] = self._adj
        return Digraph(out)

    def induced(self, vertices) -> "Digraph":
        idx = np.asarray(list(vertices), dtype=np.intp)
        return Digraph(self._adj[np.ix_(idx, idx)])

    def digest(self) -> str:
        return hashlib.sha256(write_matrix(self).encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._adj.shape == other._adj.shape and bool((self._adj == other._adj).all())

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={int(self._adj.sum())})"


def _check_int_product(X: np.ndarray, Y: np.ndarray) -> None:
    bound = int(np.abs(X).max(initial=0)) * int(np.abs(Y).max(initial=0)) * X.shape[1]
    if bound > INT64_MAX:
        raise OverflowError(f"integer product may exceed int64 (bound {bound})")


def int_matmul(X, Y) -> np.ndarray:
    """Exact product of integer matrices; raises OverflowError instead of wrapping."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[0]:
        raise ValueError(f"dimension mismatch: {X.shape} x {Y.shape}")
    _check_int_product(X, Y)
    return X @ Y


def matmul(A, B) -> np.ndarray:
    """Exact integer product of two binary matrices (or digraphs).

    For adjacency matrices, entry ``(i, j)`` of ``matmul(A, A)`` counts the
    walks ``i -> . -> j``.
    """
    A = as_binary(A)
    B = as_binary(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape} x {B.shape}")
    if A.shape[1] < _EXACT_FLOAT_LIMIT:
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return prod.astype(np.int64)
    return int_matmul(A, B)


def transpose(x):
    """Reverse of a digraph, or transpose of a binary matrix."""
    if isinstance(x, Digraph):
        return Digraph(x.adj.T)
    return np.ascontiguousarray(as_binary(x).T)


def complement(g: Digraph) -> Digraph:
    """Complement digraph with adjacency ``J - I - A``."""
    n = g.n
    comp = np.ones((n, n), dtype=np.uint8) - g.adj
    np.fill_diagonal(comp, 0)
    return Digraph(comp)


def complete_digraph(n: int) -> Digraph:
    adj = np.ones((n, n), dtype=np.uint8)
    np.fill_diagonal(adj, 0)
    return Digraph(adj)


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        lines.append((lineno, line))
    while lines and not lines[-1][1]:
        lines.pop()
    return lines


def read_matrix(text: str) -> Digraph:
    """Parse the matrix file format: ``n`` then ``n`` rows of ``n`` 0/1 characters."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise FormatError(f"line {lineno}: expected vertex count, got {head!r}") from None
    if n < 1:
        raise FormatError(f"line {lineno}: vertex count must be positive")
    rows = lines[1:]
    if len(rows) < n:
        raise FormatError(f"expected {n} matrix rows, found {len(rows)}")
    if len(rows) > n:
        raise FormatError(f"line {rows[n][0]}: trailing data after {n} rows")
    adj = np.zeros((n, n), dtype=np.uint8)
    for i, (lineno, row) in enumerate(rows):
        if len(row) != n:
            raise FormatError(f"line {lineno}: expected {n} characters, got {len(row)}")
        bad = set(row) - {"0", "1"}
        if bad:
            raise FormatError(f"line {lineno}: invalid symbol {sorted(bad)[0]!r}")
        if row[i] != "0":
            raise FormatError(f"line {lineno}: nonzero diagonal entry")
        adj[i] = np.frombuffer(row.encode(), dtype=np.uint8) - ord("0")
    return Digraph(adj)


def write_matrix(g: Digraph) -> str:
    rows = ["".join("1" if x else "0" for x in row) for row in g.adj]
    return f"{g.n}\n" + "\n".join(rows) + "\n"


def load_matrix(path) -> Digraph:
    return read_matrix(Path(path).read_text(encoding="utf-8"))
