from __future__ import annotations

import subprocess
import sys

import pytest

from dsrgkit.cli import main
from dsrgkit.digraph import read_matrix, write_matrix
from dsrgkit.families import FamilySpec, make_graph
from dsrgkit.pijoin import read_partition
from dsrgkit.verify import classify


@pytest.fixture
def a15(tmp_path):
    path = tmp_path / "a15.txt"
    path.write_text(write_matrix(make_graph(FamilySpec("A_15_5"))))
    return path


def run(capsys, *argv):
    code = main([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eq1(capsys):
    code, out, _ = run(capsys, "eq1", 10, 3, 0, 1)
    assert code == 0 and out.strip() == "(2,5)"
    code, out, _ = run(capsys, "eq1", 21, 10, 3, 6)
    assert code == 1


def test_feasible_and_spectrum(capsys):
    assert run(capsys, "feasible", 14, 5, 4, 1, 2)[0] == 0
    assert run(capsys, "feasible", 6, 3, 1, 2, 1)[0] == 1
    code, out, _ = run(capsys, "spectrum", 15, 5, 2, 1, 2)
    assert code == 0 and "-1" in out


def test_bad_params_is_usage(capsys):
    code, _, err = run(capsys, "feasible", 1, 2, 3)
    assert code == 2 and "error" in err


def test_verify(capsys, a15, tmp_path):
    code, out, _ = run(capsys, "verify", a15)
    assert code == 0 and "DSRG(15,5,2,1,2)" in out
    path = tmp_path / "path.txt"
    path.write_text("3\n010\n001\n000\n")
    assert run(capsys, "verify", path)[0] == 1


def test_missing_and_malformed_files(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "nope.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1\n")
    assert run(capsys, "verify", bad)[0] == 2


def test_check_partition(capsys, a15, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 1 2 2 3 3 1 1 2 1 2 3 3 3 2\n")
    code, out, _ = run(capsys, "check-partition", a15, good)
    assert code == 0
    bad = tmp_path / "bad.txt"
    bad.write_text(" ".join(str(v // 5 + 1) for v in range(15)) + "\n")
    assert run(capsys, "check-partition", a15, bad)[0] == 1
    short = tmp_path / "short.txt"
    short.write_text("1 2\n")
    assert run(capsys, "check-partition", a15, short)[0] == 2


def test_quotient(capsys, a15, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 1 2 2 3 3 1 1 2 1 2 3 3 3 2\n")
    code, out, _ = run(capsys, "quotient", a15, good)
    assert code == 0
    assert out.split() == ["1", "2", "2", "2", "1", "2", "2", "2", "1"]


def test_pijoin(capsys, a15, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 1 2 2 3 3 1 1 2 1 2 3 3 3 2\n")
    code, out, _ = run(capsys, "pijoin", a15, good, "-j", 2)
    assert code == 0 and out.startswith("#")
    h = read_matrix(out)
    assert classify(h).params.as_tuple() == (105, 35, 12, 11, 12)


def test_search(capsys, a15):
    code, out, _ = run(capsys, "search", a15, 3, 5, "--limit", 2)
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert len(lines) == 2
    for ln in lines:
        assert read_partition(ln).a == 3
    assert run(capsys, "search", a15, 5, 3)[0] == 2


def test_search_timeout_is_undecided(capsys, tmp_path):
    path = tmp_path / "a16.txt"
    path.write_text(write_matrix(make_graph(FamilySpec("A_16"))))
    assert run(capsys, "search", path, 4, 4, "--timeout", 0)[0] == 3


def test_equiv(capsys, a15, tmp_path):
    other = tmp_path / "perm.txt"
    g = make_graph(FamilySpec("A_15_5"))
    other.write_text(write_matrix(g.relabel(list(range(15))[::-1])))
    code, out, _ = run(capsys, "equiv", a15, other, "--mapping")
    assert code == 0 and "Isomorphic" in out
    pet = tmp_path / "pet.txt"
    pet.write_text(write_matrix(make_graph(FamilySpec("petersen"))))
    assert run(capsys, "equiv", a15, pet)[0] == 1


def test_family(capsys):
    code, out, _ = run(capsys, "family", "jorgensen", 3, 1)
    assert code == 0 and out.startswith("#")
    assert classify(read_matrix(out)).params.as_tuple() == (8, 3, 2, 1, 1)
    code, out, _ = run(capsys, "family", "petersen", "--partitions", 2, 5)
    assert code == 0
    assert run(capsys, "family", "jorgensen", 5, 3)[0] == 2
    assert run(capsys, "family", "petersen", "--partitions", 3, 5)[0] == 1


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "all")
    assert code == 0
    assert out.startswith("# pi-join catalog report")
    assert "reproduced: 26" in out
    code2, out2, _ = run(capsys, "catalog", "all")
    assert out == out2


def test_argparse_errors_exit_2(capsys):
    for argv in (["nosuch"], ["search", "x", "2", "2", "--jobs", "0"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dsrgkit", "eq1", "10", "3", "0", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert out.strip() == "(2,5)"
