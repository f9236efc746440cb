import json
import subprocess
import sys

import pytest

from pellwalk import cli
from pellwalk.cycle import solve
from pellwalk.forms import StepWord, is_square, mat_of_word

GOLDEN_61 = (
    '{"d": "61", "word": "R^7 L R^4 L^3 R L^2 R^2 L R^3 L^4 R L^14 R L^4 R^3 L R^2 L^2 R L^3 R^4 L R^7", '
    '"n": ["1766319049", "13795392780", "226153980", "1766319049"], '
    '"x": "1766319049", "y": "226153980", '
    '"solutions": [["1766319049", "226153980"]], '
    '"negative": {"u1": "29718", "v1": "3805"}}\n'
)


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_text(capsys):
    code, out, _ = run(capsys, "solve", 2, "--count", 2, "--negative")
    assert code == 0
    assert out.splitlines() == [
        "D: 2",
        "word: R L^2 R",
        "N: 3 4 2 3",
        "fundamental: 3 2",
        "solutions:",
        "  3 2",
        "  17 12",
        "negative: u1=1 v1=1",
        "M: 2 1 1 1",
    ]


def test_solve_negative_none(capsys):
    code, out, _ = run(capsys, "solve", 7, "--negative")
    assert code == 0
    assert "negative: none" in out.splitlines()


def test_solve_61_json_golden(capsys):
    code, out, _ = run(capsys, "solve", 61, "--json", "--negative")
    assert code == 0
    assert out == GOLDEN_61


def test_json_flag_before_subcommand(capsys):
    code, out, _ = run(capsys, "--json", "solve", 61, "--negative")
    assert code == 0 and out == GOLDEN_61


def test_solve_trace(capsys):
    code, out, _ = run(capsys, "solve", 2, "--trace")
    assert code == 0
    assert "trace: (1,0,-2) R (1,1,-1) L^2 (1,-1,-1) R (1,0,-2)" in out.splitlines()


@pytest.mark.parametrize("argv, word", [
    (["solve", 9], "DIsSquare"),
    (["solve", 0], "DNotPositive"),
    (["word", 16], "DIsSquare"),
    (["approx", 4], "DIsSquare"),
    (["verify", 25, 1, 0], "DIsSquare"),
])
def test_invalid_d_exit_2(capsys, argv, word):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert word in err


def test_solve_9_message(capsys):
    _, _, err = run(capsys, "solve", 9)
    assert "square" in err


def test_negative_count_rejected(capsys):
    assert run(capsys, "solve", 2, "--count", -1)[0] == 2


@pytest.mark.parametrize("D, word", [(7, "R^2 L R L R^2"), (2, "R L^2 R")])
def test_word(capsys, D, word):
    assert run(capsys, "word", D) == (0, word + "\n", "")


def test_word_json(capsys):
    code, out, _ = run(capsys, "word", 2, "--json")
    assert json.loads(out) == {"d": "2", "word": "R L^2 R"}


def test_word_61_has_l14_center(capsys):
    _, out, _ = run(capsys, "word", 61)
    w = StepWord.parse(out)
    assert len(w.runs) == 23
    assert str(w.runs[11]) == "L^14"


def test_approx(capsys):
    assert run(capsys, "approx", 2, "--count", 4)[1].split() == ["2/1", "3/2", "4/3", "7/5"]
    assert run(capsys, "approx", 2, "--count", 1)[1] == "2/1\n"
    code, out, _ = run(capsys, "approx", 2, "--count", 4, "--json")
    assert json.loads(out) == ["2/1", "3/2", "4/3", "7/5"]


def test_approx_bad_count(capsys):
    assert run(capsys, "approx", 12, "--count", 0)[0] == 2


def test_table(capsys):
    code, out, _ = run(capsys, "table", 2, 3)
    assert code == 0
    assert out.splitlines() == ["2 3 2 4 yes", "3 2 1 3 no"]
    code, out, _ = run(capsys, "table", 61, 61, "--json")
    assert json.loads(out) == [
        {"d": "61", "x": "1766319049", "y": "226153980", "length": 72, "negative": True}  # sum of run lengths
    ]
    assert run(capsys, "table", 4, 4) == (0, "", "")
    assert json.loads(run(capsys, "table", 4, 4, "--json")[1]) == []


def test_table_rows_ordered_and_squares_skipped(capsys):
    _, out, _ = run(capsys, "table", 2, 30)
    ds = [int(line.split()[0]) for line in out.splitlines()]
    assert ds == [d for d in range(2, 31) if not is_square(d)]


@pytest.mark.parametrize("lo, hi", [(1, 5), (10, 3), (0, 0)])
def test_table_bad_range(capsys, lo, hi):
    assert run(capsys, "table", lo, hi)[0] == 2


@pytest.mark.parametrize("argv, n, nxt", [
    (["verify", 2, 1, 1], "-1", "7 5"),
    (["verify", 2, 3, 2], "1", "17 12"),
    (["verify", 7, 1, 0], "1", "8 3"),
])
def test_verify(capsys, argv, n, nxt):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines() == [f"n: {n}", f"next: {nxt}"]


def test_verify_json(capsys):
    _, out, _ = run(capsys, "verify", 2, 1, 1, "--json")
    assert json.loads(out) == {"d": "2", "x": "1", "y": "1", "n": "-1", "next": ["7", "5"]}


def test_internal_failure_exit_1(capsys, monkeypatch):
    from pellwalk.cycle import Check, VerificationReport

    monkeypatch.setattr(
        cli, "verify_cycle", lambda res: VerificationReport(res.D, (Check("automorphism", False),))
    )
    code, out, err = run(capsys, "solve", 2)
    assert code == 1
    assert out == ""
    assert "automorphism" in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve"])
    assert exc.value.code == 2


@pytest.mark.parametrize("D", [d for d in range(2, 101) if not is_square(d)])
def test_word_round_trip(capsys, D):
    _, out, _ = run(capsys, "word", D)
    assert mat_of_word(StepWord.parse(out.strip())) == solve(D).N


def test_module_entry_point_black_box():
    proc = subprocess.run(
        [sys.executable, "-m", "pellwalk", "solve", "61", "--json", "--negative"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == GOLDEN_61
    proc = subprocess.run([sys.executable, "-m", "pellwalk", "solve", "9"], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "square" in proc.stderr
