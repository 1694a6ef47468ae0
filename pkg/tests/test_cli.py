"""Tests for the command-line interface."""

import json

import pytest

from main import ExitCode, main
from semantics import load_model_file


@pytest.fixture
def model_arg(telescope_path):
    return str(telescope_path)


class TestCheckAndEval:
    """Test cases for the check and eval subcommands."""

    def test_check(self, capsys, model_arg):
        """Test the extension of p, one state per line."""
        assert main(["check", "--model", model_arg, "--formula", "p"]) == ExitCode.SUCCESS
        assert capsys.readouterr().out == "w1\nw3\n"

    def test_algorithms_agree(self, capsys, model_arg):
        """Test that labelling and the reference evaluator print the same states."""
        formula = "[? n,m : p] K{l} (C{n,m} p | C{n,m} ~p)"
        outputs = []
        for algo in ("labeling", "reference"):
            assert main(["check", "--model", model_arg, "--formula", formula, "--algo", algo]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert "w1\n" in outputs[0]

    def test_eval_true_and_false(self, capsys, model_arg):
        """Test exit codes 0 and 1 for true and false."""
        assert main(["eval", "--model", model_arg, "--state", "w1", "--formula", "[? n,m : p] C{n,m} p"]) == 0
        assert capsys.readouterr().out == "true\n"
        assert main(["eval", "--model", model_arg, "--state", "w2", "--formula", "p"]) == ExitCode.FALSE
        assert capsys.readouterr().out == "false\n"

    def test_single_country_cannot_pay(self, capsys, model_arg):
        """Test that n alone cannot afford the question at w1."""
        assert main(["eval", "--model", model_arg, "--state", "w1", "--formula", "(b[n] - c[n](p) >= 0)"]) == 1
        assert capsys.readouterr().out == "false\n"

    def test_unknown_state(self, capsys, model_arg):
        assert main(["eval", "--model", model_arg, "--state", "w9", "--formula", "p"]) == ExitCode.USAGE
        assert "w9" in capsys.readouterr().err

    def test_formula_file(self, capsys, model_arg, tmp_path):
        """Test reading the formula from a file."""
        path = tmp_path / "formula.txt"
        path.write_text("~p\n")
        assert main(["check", "--model", model_arg, "--formula-file", str(path)]) == 0
        assert capsys.readouterr().out == "w2\nw4\n"

    def test_formula_and_file_conflict(self, capsys, model_arg, tmp_path):
        """Test that giving both a formula and a formula file is a usage error."""
        path = tmp_path / "formula.txt"
        path.write_text("p")
        argv = ["check", "--model", model_arg, "--formula", "p", "--formula-file", str(path)]
        assert main(argv) == ExitCode.USAGE
        assert "mutually exclusive" in capsys.readouterr().err

    def test_parse_error(self, capsys, model_arg):
        assert main(["check", "--model", model_arg, "--formula", "p & & q"]) == ExitCode.USAGE
        assert "column 5" in capsys.readouterr().err

    def test_missing_model_file(self, tmp_path):
        assert main(["check", "--model", str(tmp_path / "none.json"), "--formula", "p"]) == ExitCode.USAGE


class TestUpdate:
    """Test cases for the update subcommand."""

    def test_writes_updated_model(self, model_arg, tmp_path):
        """Test that the written document holds the two surviving states."""
        out = tmp_path / "updated.json"
        argv = ["update", "--model", model_arg, "--group", "n,m", "--query", "p", "--out", str(out)]
        assert main(argv) == ExitCode.SUCCESS
        assert json.loads(out.read_text())["states"] == ["w1", "w2"]
        assert load_model_file(out).budget("m", "w1") == 0

    def test_empty_result(self, capsys, model_arg, tmp_path):
        """Test that a query nobody can pay leaves nothing to write."""
        out = tmp_path / "updated.json"
        argv = ["update", "--model", model_arg, "--group", "l", "--query", "p", "--out", str(out)]
        assert main(argv) == ExitCode.FALSE
        assert "update yields empty model" in capsys.readouterr().out
        assert not out.exists()

    def test_out_is_required(self, model_arg):
        assert main(["update", "--model", model_arg, "--group", "n", "--query", "p"]) == ExitCode.USAGE


class TestTranslateAndSat:
    """Test cases for translate and sat."""

    def test_translate(self, capsys):
        """Test that the printed translation has no query box."""
        assert main(["translate", "--formula", "[? n : p] K{m} q"]) == ExitCode.SUCCESS
        output = capsys.readouterr().out
        assert "[?" not in output
        assert "K{m}" in output

    def test_translate_unsupported(self, capsys):
        """Test that common knowledge under a query exits with code 3."""
        assert main(["translate", "--formula", "[? n,m : p] C{n,m} p"]) == ExitCode.UNSUPPORTED

    def test_sat(self, capsys):
        """Test a SAT verdict with its witness document."""
        assert main(["sat", "--formula", "(b[i] >= 3) & K{i} (b[i] < 5)", "--max-states", "1"]) == 0
        output = capsys.readouterr().out
        header, document = output.split("\n", 1)
        assert header.startswith("SAT at ")
        assert json.loads(document)["agents"] == ["i"]

    def test_unsat(self, capsys):
        assert main(["sat", "--formula", "(b[i] < 0)"]) == ExitCode.FALSE
        assert capsys.readouterr().out.startswith("UNSAT up to 3 states")

    def test_unsupported(self, capsys):
        assert main(["sat", "--formula", "[? n,m : p] C{n,m} p"]) == ExitCode.UNSUPPORTED
        assert capsys.readouterr().out == "UNSUPPORTED: common knowledge under query\n"


class TestPlanAndAxioms:
    """Test cases for plan and axioms."""

    def test_plan(self, capsys, model_arg):
        """Test the telescope plan and its cost lines."""
        argv = [
            "plan", "--model", model_arg, "--state", "w1", "--goal", "C{n,m} p | C{n,m} ~p",
            "--action", "l,m,n:p", "--action", "n,m:p",
        ]
        assert main(argv) == ExitCode.SUCCESS
        assert capsys.readouterr().out == "query {m,n} : p — spent 20, shares 10\ntotal: 20\n"

    def test_no_plan(self, capsys, model_arg):
        argv = ["plan", "--model", model_arg, "--state", "w3", "--goal", "C{n,m} p", "--action", "n,m:p"]
        assert main(argv) == ExitCode.FALSE
        assert capsys.readouterr().out == "no plan within 3 steps\n"

    def test_plan_needs_action(self, model_arg):
        assert main(["plan", "--model", model_arg, "--state", "w1", "--goal", "p"]) == ExitCode.USAGE

    def test_axioms(self, capsys):
        """Test a fuzz run over chosen schemas."""
        assert main(["axioms", "--trials", "3", "--seed", "0x10", "--schema", "T", "--schema", "c-top"]) == 0
        assert capsys.readouterr().out == "T 3 0\nc-top 3 0\n"

    def test_unknown_schema(self, capsys):
        assert main(["axioms", "--schema", "nope"]) == ExitCode.USAGE
        assert "nope" in capsys.readouterr().err


class TestModelViews:
    """Test cases for dot and info."""

    def test_dot(self, capsys, model_arg):
        """Test four nodes and four edges for the telescope."""
        assert main(["dot", "--model", model_arg]) == ExitCode.SUCCESS
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'graph "telescope" {'
        edges = [line.strip() for line in lines if " -- " in line]
        assert edges == [
            '"w1" -- "w2" [label="l,m,n"];',
            '"w1" -- "w3" [label="l"];',
            '"w2" -- "w4" [label="l"];',
            '"w3" -- "w4" [label="l,m,n"];',
        ]
        assert len([line for line in lines if "[label=" in line and " -- " not in line]) == 4

    def test_dot_to_file(self, model_arg, tmp_path):
        out = tmp_path / "telescope.dot"
        assert main(["dot", "--model", model_arg, "--out", str(out)]) == 0
        assert out.read_text().startswith("graph ")

    def test_info(self, capsys, model_arg):
        assert main(["info", "--model", model_arg]) == ExitCode.SUCCESS
        assert capsys.readouterr().out == "states: 4\nagents: 3\nvariables: 1\nsize: 50\n"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
