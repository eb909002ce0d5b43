from __future__ import annotations

import hashlib
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dsrgkit.digraph import (Digraph, FormatError, complement, complete_digraph, int_matmul,
                             matmul, read_matrix, transpose, write_matrix)


def loopless(max_n=9):
    def build(m):
        m = m.copy()
        np.fill_diagonal(m, 0)
        return Digraph(m)

    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.uint8, (n, n), elements=st.integers(0, 1))).map(build)


def naive_product(A, B):
    n, m = A.shape[0], B.shape[1]
    return np.array([[sum(int(A[i, l]) * int(B[l, j]) for l in range(A.shape[1]))
                      for j in range(m)] for i in range(n)])


@settings(max_examples=60)
@given(loopless(), st.data())
def test_matmul_matches_triple_loop(g, data):
    B = data.draw(arrays(np.uint8, (g.n, g.n), elements=st.integers(0, 1)))
    assert (matmul(g.adj, B) == naive_product(g.adj, B)).all()


@given(loopless())
def test_complement_and_transpose_are_involutions(g):
    assert complement(complement(g)) == g
    assert transpose(transpose(g)) == g
    assert complement(transpose(g)) == transpose(complement(g))


@given(loopless())
def test_round_trip(g):
    text = write_matrix(g)
    assert read_matrix(text) == g
    assert write_matrix(read_matrix(text)) == text


@given(loopless())
def test_bitsets_agree_with_matrix(g):
    for v in range(g.n):
        assert [w for w in range(g.n) if g.out_masks[v] >> w & 1] == np.flatnonzero(g.adj[v]).tolist()
        assert [w for w in range(g.n) if g.in_masks[v] >> w & 1] == np.flatnonzero(g.adj[:, v]).tolist()
    assert (g.out_degrees() == g.adj.sum(1)).all()
    assert (g.in_degrees() == g.adj.sum(0)).all()


def test_k2():
    g = read_matrix("2\n01\n10")
    assert g == complete_digraph(2)
    assert g.arcs() == [(0, 1), (1, 0)]


def test_comments_and_trailing_blank_lines():
    g = read_matrix("# a comment\n3\n010\n# inside\n001\n100\n\n\n")
    assert g.arcs() == [(0, 1), (1, 2), (2, 0)]


@pytest.mark.parametrize("text, msg", [
    ("x\n", "count"),
    ("3\n010\n001\n", "rows"),
    ("2\n01\n10\n11\n", "trailing"),
    ("2\n011\n10\n", "length"),
    ("2\n02\n10\n", "symbol"),
    ("2\n11\n10\n", "diagonal"),
])
def test_malformed_files(text, msg):
    with pytest.raises(FormatError):
        read_matrix(text)


def test_digraph_is_read_only():
    g = complete_digraph(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = 0


def test_digraph_rejects_non_binary():
    with pytest.raises(ValueError):
        Digraph(np.array([[0, 2], [1, 0]]))


def test_relabel_moves_arcs():
    g = Digraph.from_arcs(3, [(0, 1)])
    h = g.relabel([2, 0, 1])
    assert h.arcs() == [(2, 0)]


def test_int_matmul_overflow_guard():
    big = np.full((2, 2), 2**62, dtype=np.int64)
    with pytest.raises(OverflowError):
        int_matmul(big, big)


# Checksums of the shipped matrix files; a change
# to any byte of the shipped data files must be deliberate.
CHECKSUMS = {
    "A_15_5": "dc8c0be5ffd4c00a495d331463f917b5897ee2e7ea1d069055da016aaa70c696",
    "A_16": "b3701f26c42257fd0e952ef5085157ff4a662a61d38c37ab610f9a9766b43ace",
    "A_18_7": "fe9082cbb3c45c89b6e3c647cffc0ceb0e80cefc343fdd71b56905edeb8b3a46",
}


@pytest.mark.parametrize("name", sorted(CHECKSUMS))
def test_data_file_checksums(name):
    data = resources.files("dsrgkit").joinpath("data").joinpath(f"{name}.txt").read_bytes()
    assert hashlib.sha256(data).hexdigest() == CHECKSUMS[name]
