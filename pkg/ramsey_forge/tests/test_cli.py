"""Tests for the command line surface"""
import json
import os

import pytest

from ramsey_forge.run import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, run


@pytest.fixture(autouse=True)
def _no_cap_override(monkeypatch):
    monkeypatch.delenv("RAMSEY_FORGE_CAP", raising=False)


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if code == EXIT_OK and captured.out.lstrip().startswith("{") else None
    return code, payload, captured


def test_trees_enumerate(capsys):
    code, payload, _ = invoke(capsys, "trees", "enumerate", "--max-nodes", "4")
    assert code == EXIT_OK
    assert payload["count"] == 9
    assert payload["rows"][0] == {"index": 0, "nodes": 1, "tree": "()"}
    code, payload, _ = invoke(capsys, "trees", "enumerate", "--max-nodes", "7", "--binary-leaves", "3")
    assert [r["tree"] for r in payload["rows"]] == ["((()())())", "(()(()()))"]


def test_table_output(capsys):
    code, _, captured = invoke(capsys, "trees", "enumerate", "--max-nodes", "2", "--output", "table")
    assert code == EXIT_OK
    lines = captured.out.splitlines()
    assert lines[0].startswith("count")
    assert "tree" in lines[3] and lines[-1].rstrip().endswith("(())")


def test_maps_enumerate(capsys):
    code, payload, _ = invoke(capsys, "maps", "enumerate", "--source", "((()))", "--target", "(())")
    assert code == EXIT_OK
    assert payload["count"] == 3
    assert payload["rows"][0]["map"] == "((())) -> (()) : 0,0,1"
    _, payload, _ = invoke(capsys, "maps", "enumerate", "--source", "((()))", "--target", "(())", "--sealed")
    assert payload["count"] == 1
    _, payload, _ = invoke(capsys, "maps", "enumerate", "--kind", "embedding",
                           "--source", "(())", "--target", "(()())")
    assert payload["count"] == 2


def test_axioms_check(capsys):
    code, payload, _ = invoke(capsys, "axioms", "check", "--max-nodes", "2")
    assert code == EXIT_OK
    assert payload["points"] == 2
    assert payload["sets"] == 3
    assert payload["space"]["all_passed"] and payload["domain"]["all_passed"]
    _, payload, _ = invoke(capsys, "axioms", "check", "--max-nodes", "3", "--space-only")
    assert payload["points"] == 6
    assert "domain" not in payload


def test_witness_check(capsys):
    code, payload, _ = invoke(capsys, "witness", "check", "--instance", "gr",
                              "--k", "2", "--l", "3", "--m", "3", "-c", "2")
    assert code == EXIT_OK
    assert payload["verdict"] == "not_witness"
    assert payload["instance"] == {"kind": "gr", "colors": 2, "smalls": 3, "placements": 1}
    _, oracle, _ = invoke(capsys, "witness", "check", "--instance", "gr",
                          "--k", "2", "--l", "3", "--m", "3", "--oracle")
    assert oracle["verdict"] == "not_witness"


def test_witness_search(capsys):
    code, payload, _ = invoke(capsys, "witness", "search", "--instance", "gr",
                              "--k", "1", "--l", "2", "--max-size", "3")
    assert code == EXIT_OK
    assert payload["witness"] == "2"
    assert payload["rejected"] == [{"candidate": "1", "bad_coloring": None}]


def test_moore_and_fullsets(capsys):
    _, payload, _ = invoke(capsys, "moore", "check", "--m", "3", "--n", "3")
    assert payload["verdict"] == "fails" and payload["counterexample"] == "10"
    _, payload, _ = invoke(capsys, "fullsets", "check", "--factor", "2,1,1", "-c", "2")
    assert payload["verdict"] == "holds"
    assert payload["params"] == [[2, 1, 1]]


@pytest.mark.parametrize("argv", [
    ["witness", "check", "--instance", "dual-tree", "--S", "(())", "--T", "(()())"],
    ["witness", "check", "--instance", "dual-tree", "--S", "(()", "--T", "(())", "--U", "(())"],
    ["fullsets", "check", "--factor", "2,1"],
    ["fullsets", "check", "--factor", "4,1,1"],
    ["moore", "check", "--m", "3", "--n", "2"],
    ["frobnicate"],
    ["trees"],
    ["trees", "enumerate"],
])
def test_usage_errors(capsys, argv):
    code, _, captured = invoke(capsys, *argv)
    assert code == EXIT_USAGE
    assert captured.err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["witness", "check", "--instance", "gr", "--k", "2", "--l", "3", "--m", "3", "--budget", "1"],
    ["moore", "check", "--m", "2", "--n", "4", "--cap", "8"],
    ["witness", "check", "--instance", "gr", "--k", "2", "--l", "3", "--m", "4", "--oracle", "--cap", "4"],
])
def test_inconclusive_runs(capsys, argv):
    code, _, captured = invoke(capsys, *argv)
    assert code == EXIT_INCONCLUSIVE
    assert captured.err.startswith("inconclusive:")
    assert captured.out == ""


def test_arguments_from_yaml_file(capsys, tmp_path):
    path = tmp_path / "instance.yaml"
    path.write_text("k: 2\nl: 3\nm: 3\ncolors: 2\n")
    code, payload, _ = invoke(capsys, "witness", "check", "--instance", "gr", "--file", str(path))
    assert code == EXIT_OK
    assert payload["verdict"] == "not_witness"
    path.write_text("bogus: 1\n")
    code, _, _ = invoke(capsys, "witness", "check", "--instance", "gr", "--file", str(path))
    assert code == EXIT_USAGE


def test_file_sets_flags_with_defaults(capsys, tmp_path):
    path = tmp_path / "instance.yaml"
    path.write_text("k: 2\nl: 3\nm: 3\ncolors: 1\n")
    code, payload, _ = invoke(capsys, "witness", "check", "--instance", "gr", "--file", str(path))
    assert code == EXIT_OK
    assert payload["verdict"] == "witness"
    assert payload["instance"]["colors"] == 1
    code, payload, _ = invoke(capsys, "witness", "check", "--instance", "gr", "-c", "2", "--file", str(path))
    assert payload["verdict"] == "not_witness"
    assert payload["instance"]["colors"] == 2

    path.write_text("source: (())\ntarget: (())\nkind: embedding\n")
    code, payload, _ = invoke(capsys, "maps", "enumerate", "--file", str(path))
    assert code == EXIT_OK
    assert payload["kind"] == "embedding"


@pytest.mark.parametrize("body", [
    "S: 5\nT: (())\nU: (())\n",
    "S: [1]\nT: (())\nU: (())\n",
    "S: (())\nT: (())\nU: (())\ncolors: two\n",
    "S: (())\nT: (())\nU: (())\ncolors: 1.5\n",
    "S: (())\nT: (())\nU: (())\nsealed: 1\n",
    "S: (())\nT: (())\nU: (())\nhandler: x\n",
])
def test_malformed_file_values_are_usage_errors(capsys, tmp_path, body):
    path = tmp_path / "instance.yaml"
    path.write_text(body)
    code, _, captured = invoke(capsys, "witness", "check", "--instance", "dual-tree", "--file", str(path))
    assert code == EXIT_USAGE
    assert captured.err.startswith("error:")


def test_run_logs_land_in_artifacts(capsys, tmp_path):
    code, _, _ = invoke(capsys, "witness", "search", "--instance", "gr", "--k", "1", "--l", "2",
                        "--max-size", "3", "--artifacts", str(tmp_path))
    assert code == EXIT_OK
    runs = os.listdir(tmp_path / "results")
    assert len(runs) == 1 and runs[0].startswith("witness_search_")
    with open(tmp_path / "results" / runs[0] / "candidates.jsonl") as f:
        candidates = [json.loads(line) for line in f]
    assert [c["verdict"] for c in candidates] == ["witness"]


def test_acceptance_writes_scoreboard(capsys, tmp_path):
    code, payload, _ = invoke(capsys, "acceptance", "--criterion", "1", "--artifacts", str(tmp_path))
    assert code == EXIT_OK
    assert payload["passed"]
    assert payload["rows"][0]["value"] == 0
    assert (tmp_path / "tables" / "scoreboard.csv").exists()
    assert (tmp_path / "tables" / "scoreboard.md").read_text().startswith("# ramsey-forge Acceptance Results")


def test_output_is_identical_across_worker_counts(capsys):
    argv = ["witness", "check", "--instance", "gr", "--k", "2", "--l", "3", "--m", "4"]
    _, _, first = invoke(capsys, *argv)
    _, _, again = invoke(capsys, *argv)
    _, _, parallel = invoke(capsys, *(argv + ["--workers", "2"]))
    assert first.out == again.out == parallel.out
