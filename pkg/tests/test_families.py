from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest

from dsrgkit.families import (FamilySpec, duval_vertices, expected_params, family_names,
                              known_partitions, make_graph, pair_vertices, shipped_specs)
from dsrgkit.groups import parse_cycles
from dsrgkit.params import ParameterSet, pi_join_params
from dsrgkit.pijoin import Partition, build_pi_join, is_good_partition, measure_quotient, solve_eq1
from dsrgkit.search import find_good_partitions
from dsrgkit.verify import classify

SPECS = shipped_specs()


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_classify_matches_claim(spec):
    assert classify(make_graph(spec)).params == expected_params(spec)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_documented_partitions_are_good(spec):
    g = make_graph(spec)
    p = expected_params(spec)
    for sol in solve_eq1(p):
        for pi in known_partitions(spec, sol):
            assert (pi.a, pi.b) == (sol.a, sol.b)
            assert is_good_partition(g, pi, p)


@pytest.mark.parametrize("text, params", [
    ("jorgensen(3,1)", (8, 3, 2, 1, 1)),
    ("petersen", (10, 3, 3, 0, 1)),
    ("A_15_5", (15, 5, 2, 1, 2)),
    ("duval(2)", (6, 2, 1, 0, 1)),
    ("lattice(3)", (9, 4, 4, 1, 2)),
    ("dihedral(5)", (10, 4, 2, 1, 2)),
    ("s4(2)", (24, 9, 7, 2, 4)),
])
def test_named_examples(text, params):
    assert classify(make_graph(FamilySpec.parse(text))).params.as_tuple() == params


@pytest.mark.parametrize("bad", ["jorgensen(5,3)", "jorgensen(3,2)", "dihedral(4)", "duval(0)",
                                 "triangular(4)", "s4(4)", "nosuch", "petersen(3)"])
def test_invalid_specs(bad):
    with pytest.raises(ValueError):
        make_graph(FamilySpec.parse(bad))


def test_spec_parse_round_trip():
    for spec in SPECS:
        assert FamilySpec.parse(str(spec)) == spec
    assert set(family_names()) >= {s.family for s in SPECS}


def test_jorgensen_row_cells_example():
    # C_i = {ib} u {k(s - ib)}: k=3, b=4 gives {0,3,6,1} and {4,7,2,5}
    spec = FamilySpec("jorgensen", (3, 1))
    pi = known_partitions(spec, (2, 4))[0]
    assert pi == Partition.from_cells([[0, 3, 6, 1], [4, 7, 2, 5]])


def test_jorgensen_residue_cells_example():
    spec = FamilySpec("jorgensen", (3, 1))
    pi = known_partitions(spec, (4, 2))[0]
    assert pi == Partition(tuple(v % 4 for v in range(8)))


def jorgensen_domain(max_k=9):
    return [(k, mu) for k in range(3, max_k + 1) for mu in range(1, k - 1) if (k - 1) % mu == 0]


@pytest.mark.parametrize("k, mu", jorgensen_domain())
def test_jorgensen_structural_partitions(k, mu):
    spec = FamilySpec("jorgensen", (k, mu))
    g = make_graph(spec)
    row_shape = ((k - 1) // mu, k + 1)
    assert len(known_partitions(spec, row_shape)) == 1
    if mu in (1, 2) and (k + 1) % mu == 0:
        residue_shape = ((k + 1) // mu, k - 1)
        if residue_shape[1] >= 2:
            assert len(known_partitions(spec, residue_shape)) == 1
    assert classify(g).params == ParameterSet((k * k - 1) // mu, k, mu + 1, mu, mu)


def test_triangular_7_difference_classes():
    spec = FamilySpec("triangular", (7,))
    pi = known_partitions(spec, (3, 7))[0]
    verts = pair_vertices(7)
    for i in range(1, 4):
        cell = {frozenset((l, (l + i) % 7)) for l in range(7)}
        assert any({frozenset(verts[v]) for v in c} == cell for c in pi.cells)


def test_triangular_8_has_no_good_partition():
    g = make_graph(FamilySpec("triangular", (8,)))
    (sol,) = solve_eq1(classify(g).params)
    assert (sol.a, sol.b) == (2, 14)
    assert find_good_partitions(g, sol) == []


def test_duval_cells():
    for k in range(2, 7):
        spec = FamilySpec("duval", (k,))
        verts = duval_vertices(k)
        first = known_partitions(spec, (k + 1, k))[0]
        assert all(len({verts[v][0] for v in c}) == 1 for c in first.cells)
        assert len(known_partitions(spec, (k, k + 1))) == 1


def test_lattice_partitions():
    for n in range(3, 9):
        spec = FamilySpec("lattice", (n,))
        assert known_partitions(spec, (n, n))
        if n % 2 == 0:
            assert known_partitions(spec, (n // 2, 2 * n))


def test_hoffman_singleton_petersen_cells():
    spec = FamilySpec("hoffman_singleton")
    g = make_graph(spec)
    pi = known_partitions(spec, (5, 10))[0]
    for cell in pi.cells:
        assert classify(g.induced(cell)).params == ParameterSet.srg(10, 3, 0, 1)
    Q = measure_quotient(g, pi)
    # lam + b - k = 0 + 10 - 7 on the diagonal, mu = 1 elsewhere
    assert (Q == 1 + 2 * np.eye(5, dtype=int)).all()


def test_metacyclic_cells_by_x_power():
    spec = FamilySpec("metacyclic21")
    pi = known_partitions(spec, (3, 7))[0]
    assert pi == Partition(tuple(v // 7 for v in range(21)))
    assert (measure_quotient(make_graph(spec), pi) == 2).all()


S4_X1_REFERENCE = [
    ["()", "(3,4)", "(1,2,3)", "(2,3,4)", "(1,2,3,4)", "(1,2,4)", "(2,4,3)", "(2,3)"],
    ["(1,3)(2,4)", "(2,4)", "(1,3,2,4)", "(1,3,2)", "(1,3,4,2)", "(1,2)", "(1,4,3,2)", "(1,2)(3,4)"],
    ["(1,4,2)", "(1,4,3)", "(1,2,4,3)", "(1,3)", "(1,4)", "(1,3,4)", "(1,4,2,3)", "(1,4)(2,3)"],
]


def test_s4_x1_reference_cells_are_not_good():
    # the reference cell list is not column-equitable under this (or any tried)
    # multiplication convention; a search-found partition is shipped instead
    elems = list(permutations(range(4)))
    cells = [[elems.index(parse_cycles(c, 4)) for c in cell] for cell in S4_X1_REFERENCE]
    reference = Partition.from_cells(cells)
    g = make_graph(FamilySpec("s4", (1,)))
    assert not is_good_partition(g, reference)
    shipped = known_partitions(FamilySpec("s4", (1,)), (3, 8))
    assert len(shipped) == 1 and is_good_partition(g, shipped[0])


def test_s4_other_structural_partitions():
    for i, shapes in ((2, [(2, 12), (3, 8)]), (3, [(2, 12), (3, 8)])):
        spec = FamilySpec("s4", (i,))
        for shape in shapes:
            assert len(known_partitions(spec, shape)) == 1
    # the (2,12) split of the second graph is even vs odd permutations
    pi = known_partitions(FamilySpec("s4", (2,)), (2, 12))[0]
    elems = list(permutations(range(4)))
    parity = [sum(p[x] > p[y] for x in range(4) for y in range(x + 1, 4)) % 2 for p in elems]
    assert pi == Partition(tuple(parity))


def test_pinned_partitions_are_search_results():
    for name, shape in (("clebsch", (2, 8)), ("shrikhande", (2, 8)), ("shrikhande", (4, 4)),
                        ("s4(1)", (3, 8))):
        spec = FamilySpec.parse(name)
        g = make_graph(spec)
        sol = next(s for s in solve_eq1(expected_params(spec)) if (s.a, s.b) == shape)
        assert known_partitions(spec, shape) == find_good_partitions(g, sol, limit=1)


def test_no_documented_partition_returns_empty():
    assert known_partitions(FamilySpec("triangular_complement", (8,)), (2, 14)) == []
    assert known_partitions(FamilySpec("petersen"), (3, 5)) == []


@pytest.mark.parametrize("j", [1, 2, 3])
def test_join_round_trip_sample(j):
    for spec in (FamilySpec("A_15_5"), FamilySpec("metacyclic21"), FamilySpec("s4", (3,))):
        g = make_graph(spec)
        p = expected_params(spec)
        for sol in solve_eq1(p):
            for pi in known_partitions(spec, sol):
                assert classify(build_pi_join(g, pi, j)).params == pi_join_params(p, pi.a, pi.b, j)
