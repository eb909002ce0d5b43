from __future__ import annotations

from math import comb

import pytest

from dsrgkit.digraph import complete_digraph
from dsrgkit.families import FamilySpec, known_partitions, make_graph
from dsrgkit.pijoin import JoinSolution, Partition, is_good_partition, solve_eq1
from dsrgkit.search import (SearchTimeout, _homogeneous_partitions, brute_force_partitions,
                            count_homogeneous_partitions, find_good_partitions, iter_good_partitions)
from dsrgkit.verify import classify


def sol_for(g, a, b):
    p = classify(g).params
    return next(s for s in solve_eq1(p) if (s.a, s.b) == (a, b))


def test_homogeneous_partition_count():
    assert count_homogeneous_partitions(10, 2) == comb(10, 5) // 2 == 126
    for n, b in ((6, 2), (6, 3), (8, 2), (9, 3)):
        assert sum(1 for _ in _homogeneous_partitions(n, b)) == count_homogeneous_partitions(n, n // b)


def test_petersen():
    spec = FamilySpec("petersen")
    g = make_graph(spec)
    sol = sol_for(g, 2, 5)
    found = find_good_partitions(g, sol)
    assert found
    assert known_partitions(spec, sol)[0] in found
    assert found == brute_force_partitions(g, sol)


def test_triangular_complement_6_has_none():
    g = make_graph(FamilySpec("triangular_complement", (6,)))
    assert find_good_partitions(g, sol_for(g, 3, 5)) == []


def test_clebsch_exists():
    g = make_graph(FamilySpec("clebsch"))
    found = find_good_partitions(g, sol_for(g, 2, 8), limit=3)
    assert 1 <= len(found) <= 3
    assert all(is_good_partition(g, p) for p in found)


def test_k4_all_pairings():
    g = complete_digraph(4)
    sol = JoinSolution(2, 2, 1, 2)
    assert len(brute_force_partitions(g, sol)) == 3
    assert find_good_partitions(g, sol) == brute_force_partitions(g, sol)


def test_c4_only_non_adjacent_pairs():
    g = make_graph(FamilySpec("cycle4"))
    sol = sol_for(g, 2, 2)
    assert brute_force_partitions(g, sol) == [Partition((0, 1, 0, 1))]
    assert find_good_partitions(g, sol) == [Partition((0, 1, 0, 1))]


def test_limit_and_order():
    g = make_graph(FamilySpec("duval", (3,)))
    sol = sol_for(g, 3, 4)
    full = find_good_partitions(g, sol)
    assert [p.assign for p in full] == sorted(p.assign for p in full)
    assert find_good_partitions(g, sol, limit=5) == full[:5]


def test_parallel_matches_serial():
    g = make_graph(FamilySpec("duval", (3,)))
    sol = sol_for(g, 3, 4)
    assert find_good_partitions(g, sol, jobs=2) == find_good_partitions(g, sol)


def test_iter_has_no_duplicates():
    g = make_graph(FamilySpec("A_15_5"))
    seen = [p.assign for p in iter_good_partitions(g, sol_for(g, 3, 5))]
    assert len(seen) == len(set(seen))


def test_timeout():
    g = make_graph(FamilySpec("A_16"))
    with pytest.raises(SearchTimeout):
        find_good_partitions(g, sol_for(g, 4, 4), timeout=0)


def test_guard():
    g = make_graph(FamilySpec("A_16"))
    with pytest.raises(ValueError):
        brute_force_partitions(g, sol_for(g, 4, 4))


def test_shape_mismatch():
    g = make_graph(FamilySpec("petersen"))
    with pytest.raises(ValueError):
        find_good_partitions(g, JoinSolution(3, 5, 0, 1))
