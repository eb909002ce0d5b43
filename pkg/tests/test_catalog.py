from __future__ import annotations

import pytest

from dsrgkit.catalog import (NO_DATA, OUT_OF_SCOPE, REPRODUCED, TABLE1, format_report, run_catalog,
                             run_row)
from dsrgkit.params import complement_params, feasibility_check, pi_join_params
from dsrgkit.verify import classify


def test_table_has_34_rows():
    assert len(TABLE1) == 34


@pytest.mark.parametrize("row", TABLE1, ids=lambda r: str(r.target.as_tuple()))
def test_table_rows_are_consistent(row):
    # every table target follows from its basic graph by the join formula
    assert pi_join_params(row.basic, row.a, row.b, row.j) == row.target
    assert feasibility_check(row.target).feasible


def test_constructible_rows():
    results = run_catalog("constructible", keep_graphs=True)
    assert len(results) == 26
    for r in results:
        assert r.status == REPRODUCED, (r.index, r.reason)
        assert r.measured == r.row.target
        g = r.graph
        assert classify(g.relabel(list(range(g.n))[::-1])).params == r.row.target
        from dsrgkit.digraph import complement, transpose

        assert classify(transpose(g)).params == r.row.target
        assert classify(complement(g)).params == complement_params(r.row.target)


def test_out_of_scope_rows():
    results = run_catalog("all")
    missing = [r for r in results if r.status == OUT_OF_SCOPE]
    assert len(missing) == 8
    assert all(r.reason == NO_DATA for r in missing)
    targets = {r.row.target.as_tuple() for r in missing}
    assert (78, 36, 23, 16, 17) in targets


def test_petersen_join_row_uses_search():
    row = next(r for r in TABLE1 if r.basic.as_tuple() == (30, 13, 8, 5, 6))
    res = run_row(20, row)
    assert res.status == REPRODUCED
    assert res.partition_origin == "search"


def test_report_is_deterministic():
    a = format_report(run_catalog("all"), "catalog all")
    b = format_report(run_catalog("all"), "catalog all")
    assert a == b
    assert "reproduced: 26" in a
    assert "seconds" not in a
    assert "seconds: " in format_report(run_catalog("constructible"), "x", timing=True)


def test_bad_scope():
    with pytest.raises(ValueError):
        run_catalog("some")
