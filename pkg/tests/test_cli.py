import json
from pathlib import Path

import pytest

from path_resolutions.cli import run


def test_betti_text(capsys: pytest.CaptureFixture[str]) -> None:
    code = run(["betti", "--n", "4", "--d", "2", "--method", "closed-form", "--format", "text"])

    assert code == 0
    assert capsys.readouterr().out == "beta(1,4) = 6\nbeta(2,5) = 6\nbeta(3,6) = 1\n"


def test_betti_output_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["betti", "--n", "5", "--d", "2", "--method", "morse", "--format", "json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)

    assert capsys.readouterr().out == first


def test_betti_rejects_small_n(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["betti", "--n", "1", "--d", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_flag_is_a_usage_error() -> None:
    assert run(["betti", "--n", "4", "--d", "2", "--colour", "red"]) == 2
    assert run(["betti", "-n", "4", "--d", "2"]) == 2


def test_unknown_format_is_a_usage_error() -> None:
    assert run(["betti", "--n", "4", "--d", "2", "--format", "xml"]) == 2


def test_composite_prime_is_a_usage_error() -> None:
    assert run(["betti", "--n", "4", "--d", "2", "--prime", "9"]) == 2


def test_guard_exit_code() -> None:
    assert run(["verify", "--n", "9", "--d", "2", "--checks", "lattice"]) == 3


def test_verify_agree(capsys: pytest.CaptureFixture[str]) -> None:
    code = run(["verify", "--n", "4", "--d", "2", "--checks", "agree"])
    out = capsys.readouterr().out

    assert code == 0
    assert out.startswith("agree: pass\n")
    assert "closed-form, strings, morse, oracle" in out


GRID = [(2, 1), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (6, 1), (6, 2)]


@pytest.mark.parametrize(("n", "d"), GRID)
def test_verify_all(n: int, d: int, capsys: pytest.CaptureFixture[str]) -> None:
    code = run(["verify", "--n", str(n), "--d", str(d), "--checks", "all"])
    out = capsys.readouterr().out

    assert code == 0
    assert "FAIL" not in out
    for check in ("lattice", "supports", "acyclic", "minimal", "agree"):
        assert f"{check}: pass" in out


def test_verify_unknown_check() -> None:
    assert run(["verify", "--n", "4", "--d", "2", "--checks", "speed"]) == 2


def test_gens(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["gens", "--n", "3", "--d", "2"]) == 0
    assert capsys.readouterr().out == "x1^2*x2^2\nx1*x2^2*x3\nx2^2*x3^2\n"


def test_complex_stats(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["complex", "--n", "4", "--d", "2"]) == 0
    out = capsys.readouterr().out

    assert "cells: 17" in out
    assert "f-vector: 6 8 3" in out
    assert "euler characteristic: 1" in out


def test_complex_morse_json(tmp_path: Path) -> None:
    target = tmp_path / "out" / "matching.json"

    assert run(["complex", "--n", "4", "--d", "2", "--method", "morse", "--format", "json", "--out", str(target)]) == 0

    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["version"] == "morse-v1"
    assert len(payload["critical"]) == 13


def test_cov(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["cov", "--n", "6"]) == 0
    out = capsys.readouterr().out

    assert "face {23, 45}" in out
    assert "critical {34}" in out


def test_cov_without_critical_cell(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["cov", "--n", "7"]) == 0
    assert "critical: none" in capsys.readouterr().out


def test_missing_d() -> None:
    assert run(["betti", "--n", "4"]) == 2


def test_oracle_over_a_prime_beyond_int64_products(capsys: pytest.CaptureFixture[str]) -> None:
    code = run(["betti", "--n", "4", "--d", "2", "--method", "oracle", "--prime", "4294967311"])

    assert code == 0
    assert capsys.readouterr().out == "beta(1,4) = 6\nbeta(2,5) = 6\nbeta(3,6) = 1\n"


def test_gens_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["gens", "--n", "3", "--d", "2", "--format", "json"]) == 0
    out = capsys.readouterr().out

    assert out.endswith("}\n")
    assert json.loads(out) == {"n": 3, "d": 2, "generators": [[2, 2, 0], [1, 2, 1], [0, 2, 2]]}


def test_cov_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["cov", "--n", "4", "--format", "json"]) == 0
    out = capsys.readouterr().out

    assert out.endswith("}\n")
    assert set(json.loads(out)) == {"n", "faces", "pairs", "critical"}


def test_unwritable_out_is_reported(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")

    code = run(["gens", "--n", "3", "--d", "2", "--out", str(blocker / "gens.txt")])

    assert code == 2
    assert "cannot write" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["complex", "--n", "4", "--d", "2", "--method", "oracle"],
        ["complex", "--n", "4", "--d", "2", "--method", "closed-form"],
        ["gens", "--n", "3", "--d", "2", "--method", "morse"],
        ["cov", "--n", "4", "--method", "strings"],
        ["verify", "--n", "3", "--d", "2", "--method", "oracle"],
    ],
)
def test_inapplicable_method_is_a_usage_error(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert run(argv) == 2
    assert "does not apply" in capsys.readouterr().err


def test_complex_accepts_morse(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["complex", "--n", "4", "--d", "2", "--method", "morse"]) == 0
    assert "matched pairs" in capsys.readouterr().out
