"""Command line surface: exit codes, JSON lines output, flag plumbing."""

import json

import pytest

from ppavlab.checks import CHECKS
from ppavlab.cli import main


def run_lines(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line]


# -- exit codes ------------------------------------------------------------------


def test_passing_check_exits_zero(capsys):
    code, lines = run_lines(capsys, ["run", "--check", "theta-principal",
                                     "--gmax", "3"])
    assert code == 0
    assert len(lines) == 1
    assert lines[0]["check_id"] == "theta-principal"
    assert lines[0]["status"] == "pass"


def test_failing_check_exits_one(capsys):
    code, lines = run_lines(capsys, ["run", "--check", "kernel-action"])
    assert code == 1
    assert lines[0]["status"] == "fail"
    assert lines[0]["witnesses"]["c"] is True


def test_error_status_exits_one(capsys):
    code, lines = run_lines(capsys, ["run", "--check", "standard-build",
                                     "--factors", "1", "--ydim", "0"])
    assert code == 1
    assert lines[0]["status"] == "error"


def test_unknown_check_exits_two(capsys):
    code = main(["run", "--check", "nope"])
    captured = capsys.readouterr()
    assert code == 2
    assert "nope" in captured.err
    assert captured.out == ""


def test_bad_factors_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--factors", "x,y"])
    assert exc.value.code == 2


def test_missing_subcommand_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


# -- output shape ------------------------------------------------------------------


def test_json_lines_schema(capsys):
    _, lines = run_lines(capsys, ["run", "--check", "example-b-orders"])
    assert set(lines[0]) == {"check_id", "status", "witnesses", "elapsed_ms"}


def test_multiple_checks_in_registry_order(capsys):
    _, lines = run_lines(capsys, ["run", "--check", "example-b-orders",
                                  "--check", "theta-principal", "--gmax", "2"])
    assert [l["check_id"] for l in lines] == ["theta-principal",
                                              "example-b-orders"]


def test_list_prints_registry(capsys):
    code = main(["run", "--list"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == list(CHECKS)


def test_json_file_matches_stdout(tmp_path, capsys):
    path = tmp_path / "results.jsonl"
    code, lines = run_lines(capsys, ["run", "--check", "example-c-order",
                                     "--json", str(path)])
    assert code == 0
    on_disk = [json.loads(line) for line in path.read_text().splitlines()]
    assert on_disk == lines


def test_seed_flag_reaches_check(capsys):
    _, lines = run_lines(capsys, ["run", "--check", "box-kernel-product",
                                  "--seed", "3"])
    assert lines[0]["witnesses"]["seed"] == 3
