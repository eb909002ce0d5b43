"""Reproduce the table of pi-join parameter sets up to 110 vertices.

Each row names a target parameter set, the basic graph it comes from and the
join shape ``(a, b, j)``.  :func:`run_catalog` rebuilds every row it has
adjacency data for and checks the result with :func:`classify`.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from itertools import islice

from .digraph import Digraph, write_matrix
from .families import FamilySpec, known_partitions, make_graph
from .params import ParameterSet, pi_join_params
from .pijoin import JoinSolution, Partition, build_pi_join, solve_eq1
from .search import SearchTimeout, find_good_partitions, iter_good_partitions
from .verify import SearchBudgetExceeded, classify, equivalence

REPRODUCED = "Reproduced"
MISMATCH = "Mismatch"
SEARCH_REQUIRED = "SearchRequired"
OUT_OF_SCOPE = "OutOfScope"

NO_DATA = "adjacency data not published"


@dataclass(frozen=True)
class Source:
    """A basic graph: a family member, optionally pi-joined once more before use."""

    spec: FamilySpec
    pre: tuple[int, int, int] | None = None

    def __str__(self):
        if self.pre is None:
            return str(self.spec)
        a, b, j = self.pre
        return f"pijoin({self.spec},{a},{b},{j})"


@dataclass(frozen=True)
class TableRow:
    target: ParameterSet
    basic: ParameterSet
    a: int
    b: int
    j: int
    source: Source | None = None


def _p(*xs):
    return ParameterSet.parse(xs)


def _src(text, pre=None):
    return Source(FamilySpec.parse(text), pre)


TABLE1: tuple[TableRow, ...] = (
    TableRow(_p(40, 11, 4, 3, 3), _p(8, 3, 2, 1, 1), 4, 2, 1, _src("jorgensen(3,1)")),
    TableRow(_p(50, 23, 13, 10, 11), _p(10, 3, 0, 1), 2, 5, 2, _src("petersen")),
    TableRow(_p(60, 15, 4, 3, 4), _p(12, 3, 1, 0, 1), 4, 3, 1, _src("duval(3)")),
    TableRow(_p(60, 20, 7, 6, 7), _p(6, 2, 1, 0, 1), 3, 2, 3, _src("duval(2)")),
    TableRow(_p(60, 20, 7, 6, 7), _p(15, 5, 2, 1, 2), 3, 5, 1, _src("A_15_5")),
    TableRow(_p(70, 33, 18, 15, 16), _p(10, 3, 0, 1), 2, 5, 3, _src("petersen")),
    TableRow(_p(72, 19, 6, 5, 5), _p(8, 3, 2, 1, 1), 4, 2, 2, _src("jorgensen(3,1)")),
    TableRow(_p(72, 25, 11, 8, 9), _p(18, 7, 5, 2, 3), 3, 6, 1, _src("A_18_7")),
    TableRow(_p(72, 33, 19, 14, 16), _p(24, 9, 7, 2, 4), 2, 12, 1, _src("s4(2)")),
    TableRow(_p(72, 34, 20, 16, 16), _p(24, 10, 8, 4, 4), 2, 12, 1, _src("s4(3)")),
    TableRow(_p(78, 26, 9, 8, 9), _p(6, 2, 1, 0, 1), 3, 2, 4, _src("duval(2)")),
    TableRow(_p(78, 36, 23, 16, 17), _p(26, 10, 3, 4), 2, 13, 1),
    TableRow(_p(78, 37, 20, 17, 18), _p(26, 11, 7, 4, 5), 2, 13, 1),
    TableRow(_p(80, 22, 10, 6, 6), _p(16, 6, 2, 2), 4, 4, 1, _src("shrikhande")),
    TableRow(_p(80, 23, 9, 8, 6), _p(16, 7, 5, 4, 2), 4, 4, 1, _src("A_16")),
    TableRow(_p(90, 19, 5, 4, 4), _p(15, 4, 2, 1, 1), 5, 3, 1, _src("jorgensen(4,1)")),
    TableRow(_p(90, 31, 13, 10, 11), _p(9, 4, 1, 2), 3, 3, 3, _src("lattice(3)")),
    TableRow(_p(90, 43, 23, 20, 21), _p(10, 3, 0, 1), 2, 5, 4, _src("petersen")),
    TableRow(_p(90, 43, 23, 20, 21), _p(18, 7, 5, 2, 3), 2, 9, 2, _src("A_18_7")),
    TableRow(_p(90, 43, 23, 20, 21), _p(30, 13, 8, 5, 6), 2, 15, 1, _src("petersen", (2, 5, 1))),
    TableRow(_p(96, 32, 11, 10, 11), _p(6, 2, 1, 0, 1), 3, 2, 5, _src("duval(2)")),
    TableRow(_p(96, 32, 11, 10, 11), _p(24, 8, 3, 2, 3), 3, 8, 1, _src("s4(1)")),
    TableRow(_p(96, 33, 15, 10, 12), _p(24, 9, 7, 2, 4), 3, 8, 1, _src("s4(2)")),
    TableRow(_p(96, 34, 16, 12, 12), _p(24, 10, 8, 4, 4), 3, 8, 1, _src("s4(3)")),
    TableRow(_p(102, 48, 29, 22, 23), _p(34, 14, 12, 5, 6), 2, 17, 1),
    TableRow(_p(102, 49, 26, 23, 24), _p(34, 15, 9, 6, 7), 2, 17, 1),
    TableRow(_p(104, 27, 8, 7, 7), _p(8, 3, 2, 1, 1), 4, 2, 3, _src("jorgensen(3,1)")),
    TableRow(_p(105, 35, 12, 11, 12), _p(15, 5, 2, 1, 2), 3, 5, 2, _src("A_15_5")),
    TableRow(_p(108, 27, 7, 6, 7), _p(12, 3, 1, 0, 1), 4, 3, 2, _src("duval(3)")),
    TableRow(_p(108, 37, 15, 12, 13), _p(27, 10, 6, 3, 4), 3, 9, 1),
    TableRow(_p(108, 49, 29, 20, 24), _p(36, 13, 11, 2, 6), 2, 18, 1),
    TableRow(_p(108, 50, 32, 22, 24), _p(36, 14, 4, 6), 2, 18, 1),
    TableRow(_p(108, 51, 33, 24, 24), _p(36, 15, 6, 6), 2, 18, 1),
    TableRow(_p(110, 53, 28, 25, 26), _p(10, 3, 0, 1), 2, 5, 5, _src("petersen")),
)


@dataclass
class CatalogRow:
    index: int
    row: TableRow
    status: str
    reason: str | None = None
    partition: Partition | None = None
    partition_origin: str | None = None
    measured: ParameterSet | None = None
    digest: str | None = None
    seconds: float = 0.0
    graph: Digraph | None = field(default=None, repr=False)

    @property
    def reproduced(self) -> bool:
        return self.status == REPRODUCED


def short_digest(g: Digraph) -> str:
    return hashlib.sha256(write_matrix(g).encode()).hexdigest()[:16]


def _solution(p: ParameterSet, a: int, b: int) -> JoinSolution | None:
    return next((s for s in solve_eq1(p) if (s.a, s.b) == (a, b)), None)


def _good_partition(g, p, spec, a, b, limit, jobs, timeout):
    """Documented partition first, else the first one the search reaches."""
    sol = _solution(p, a, b)
    if sol is None:
        return None, "no admissible shape"
    if spec is not None:
        documented = known_partitions(spec, sol)
        if documented:
            return documented[0], "documented"
    if limit is None:
        found = find_good_partitions(g, sol, jobs=jobs, timeout=timeout)
    else:
        # search order is deterministic, so the first hits are stable across runs
        deadline = None if timeout is None else time.monotonic() + timeout
        found = list(islice(iter_good_partitions(g, sol, deadline), limit))
    return (found[0], "search") if found else (None, "search exhausted")


def basic_graph(src: Source, limit=1, jobs=1, timeout=None) -> Digraph:
    g = make_graph(src.spec)
    if src.pre is None:
        return g
    a, b, j = src.pre
    pi, _ = _good_partition(g, classify(g).params, src.spec, a, b, limit, jobs, timeout)
    if pi is None:
        raise ValueError(f"no good ({a},{b}) partition of {src.spec}")
    return build_pi_join(g, pi, j)


def run_row(index: int, row: TableRow, limit: int | None = 1, jobs: int = 1,
            timeout: float | None = None, keep_graph: bool = False) -> CatalogRow:
    start = time.monotonic()
    if row.source is None:
        return CatalogRow(index, row, OUT_OF_SCOPE, NO_DATA)
    try:
        g = basic_graph(row.source, limit, jobs, timeout)
        params = classify(g).params
        if params != row.basic:
            return CatalogRow(index, row, MISMATCH, f"basic graph classifies as {params}",
                              seconds=time.monotonic() - start)
        spec = row.source.spec if row.source.pre is None else None
        pi, origin = _good_partition(g, params, spec, row.a, row.b, limit, jobs, timeout)
    except SearchTimeout:
        return CatalogRow(index, row, SEARCH_REQUIRED, "partition search timed out",
                          seconds=time.monotonic() - start)
    if pi is None:
        return CatalogRow(index, row, SEARCH_REQUIRED, origin, seconds=time.monotonic() - start)
    joined = build_pi_join(g, pi, row.j)
    measured = classify(joined).params
    ok = measured == row.target == pi_join_params(row.basic, row.a, row.b, row.j)
    return CatalogRow(index, row, REPRODUCED if ok else MISMATCH,
                      None if ok else "joined graph does not match the target",
                      partition=pi, partition_origin=origin, measured=measured,
                      digest=short_digest(joined), seconds=time.monotonic() - start,
                      graph=joined if keep_graph else None)


def run_catalog(scope: str = "constructible", limit: int | None = 1, jobs: int = 1,
                timeout: float | None = None, keep_graphs: bool = False) -> list[CatalogRow]:
    if scope not in ("all", "constructible"):
        raise ValueError(f"scope must be 'all' or 'constructible', got {scope!r}")
    out = []
    for i, row in enumerate(TABLE1, start=1):
        if scope == "constructible" and row.source is None:
            continue
        out.append(run_row(i, row, limit, jobs, timeout, keep_graphs))
    return out


def duplicate_verdicts(results: list[CatalogRow], budget: int = 10**6) -> list[tuple[int, int, str]]:
    """Equivalence verdicts between reproduced rows that share a target."""
    by_target: dict = {}
    for r in results:
        if r.reproduced and r.graph is not None:
            by_target.setdefault(r.row.target, []).append(r)
    out = []
    for rows in by_target.values():
        for x in range(len(rows)):
            for y in range(x + 1, len(rows)):
                try:
                    verdict = equivalence(rows[x].graph, rows[y].graph, budget).relation.value
                except SearchBudgetExceeded:
                    verdict = "Undecided"
                out.append((rows[x].index, rows[y].index, verdict))
    return out


def format_report(results: list[CatalogRow], command: str, timing: bool = False,
                  duplicates=None) -> str:
    """Stable key: value report, one block per row in table order."""
    lines = ["# pi-join catalog report", f"command: {command}", f"rows: {len(results)}"]
    counts: dict = {}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    for status in (REPRODUCED, MISMATCH, SEARCH_REQUIRED, OUT_OF_SCOPE):
        lines.append(f"{status.lower()}: {counts.get(status, 0)}")
    for r in results:
        row = r.row
        lines += ["", f"[row {r.index}]",
                  f"target: {row.target.as_tuple()}",
                  f"basic: {row.basic.as_tuple()}",
                  f"source: {row.source if row.source else '-'}",
                  f"shape: a={row.a} b={row.b} j={row.j}",
                  f"status: {r.status}"]
        if r.reason:
            lines.append(f"reason: {r.reason}")
        if r.partition is not None:
            lines.append(f"partition_origin: {r.partition_origin}")
            lines.append(f"partition: {r.partition.to_text()}")
        if r.measured is not None:
            lines.append(f"measured: {r.measured.as_tuple()}")
            lines.append(f"sha256: {r.digest}")
        if timing:
            lines.append(f"seconds: {r.seconds:.3f}")
    if duplicates:
        lines += ["", "[duplicates]"]
        for x, y, verdict in duplicates:
            lines.append(f"rows {x} {y}: {verdict}")
    return "\n".join(lines) + "\n"
