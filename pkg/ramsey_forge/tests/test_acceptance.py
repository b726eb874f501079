"""Tests for the acceptance runner and scoreboard"""
import csv

import pytest

from ramsey_forge.acceptance import criteria, runner
from ramsey_forge.acceptance.criteria import EVALUATIONS
from ramsey_forge.common.scoreboard import generate_scoreboard
from ramsey_forge.config import CRITERIA
from ramsey_forge.trees import decode
from ramsey_forge.witness import build_instance


def test_every_criterion_has_an_evaluation():
    assert sorted(EVALUATIONS) == sorted(CRITERIA)


def test_quick_criteria_pass(config):
    for number in (1, 2, 3):
        result = runner.run_single_criterion(number, config)
        assert result["passed"], result
        assert result["name"] == CRITERIA[number]["name"]


def test_crashing_criterion_becomes_error_row(config, monkeypatch):
    def boom(cfg):
        raise RuntimeError("boom")

    monkeypatch.setattr(runner, "EVALUATIONS", {1: boom, 2: EVALUATIONS[2]})
    results = runner.run_all_criteria(config)
    assert results[0]["error"] == "boom"
    assert not results[0]["passed"]
    assert results[1]["passed"]


def test_scoreboard_rows(tmp_path):
    results = [
        {"criterion": 1, "name": "a", "metric": "m", "value": 0, "passed": True, "runtime_seconds": 0.5},
        {"criterion": 2, "name": "b", "metric": "m", "value": 3, "passed": False, "runtime_seconds": 1.0},
        {"criterion": 3, "name": "c", "metric": "m", "error": "boom", "passed": False},
    ]
    md_path = generate_scoreboard(results, str(tmp_path))
    with open(tmp_path / "tables" / "scoreboard.csv") as f:
        rows = list(csv.DictReader(f))
    assert [r["Status"] for r in rows] == ["PASS", "FAIL", "ERROR"]
    assert rows[2]["Value"] == "ERROR" and rows[2]["Notes"] == "boom"
    assert rows[2]["Runtime (s)"] == "N/A"
    with open(md_path) as f:
        assert "**1 of 3 criteria pass.**" in f.read()


@pytest.mark.parametrize("seed", [0, 42, 7])
def test_sampled_monotonicity_holds_for_any_seed(config, seed):
    config.seed = seed
    instances = [build_instance("gr", k, l, m, 2) for k, l, m in [(2, 3, 3), (2, 3, 4), (1, 2, 3), (2, 2, 4)]]
    instances.append(build_instance("dual-tree", decode("(())"), decode("(()())"), decode("(()(()))"), 2))
    assert criteria._monotonicity_violations(instances, config) == 0
