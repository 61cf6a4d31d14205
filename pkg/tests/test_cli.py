import json

import pytest
from click.testing import CliRunner

from asmbase import corpus
from asmbase.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workspace(tmp_path):
    (tmp_path / "flag.asms").write_text(corpus.read_text("flag.asms"))
    return tmp_path


def bundled(name: str) -> str:
    return str(corpus.path(name))


class TestStep:
    def test_inconsistent_family(self, runner):
        result = runner.invoke(cli, ["step", bundled("clash.asmr"), bundled("flag.asms")])
        assert result.exit_code == 0
        assert "update sets: 1" in result.output
        assert "inconsistent" in result.output
        assert result.output.rstrip().endswith("successors: 0")

    def test_json(self, runner):
        result = runner.invoke(cli, ["step", bundled("word_pairs.asmr"), bundled("word_pairs.asms"), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["successors"] == 14
        assert all(entry["consistent"] for entry in data["family"])

    def test_family_cap(self, runner):
        result = runner.invoke(cli, ["step", bundled("clash.asmr"), bundled("flag.asms"), "--max-family", "0"])
        assert result.exit_code == 3


class TestRun:
    def test_kruskal(self, runner):
        result = runner.invoke(cli, ["run", bundled("kruskal.asmr"), bundled("kruskal_4.asms"), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["runs"] > 0
        assert not data["non_terminating"]
        for terminal in data["terminal"]:
            assert len(terminal["T"]) == 6

    def test_stuck(self, runner):
        result = runner.invoke(cli, ["run", bundled("clash.asmr"), bundled("flag.asms")])
        assert result.exit_code == 0
        assert "stuck states: 1" in result.output
        assert "runs: 0" in result.output

    def test_sample_is_reproducible(self, runner):
        args = ["run", bundled("kruskal.asmr"), bundled("kruskal_6_ties.asms"), "--mode", "sample", "--seed", "3"]
        first, second = runner.invoke(cli, args), runner.invoke(cli, args)
        assert first.exit_code == 0
        assert first.output == second.output
        assert "seed: 3" in first.output

    def test_step_bound(self, runner):
        result = runner.invoke(cli, ["run", bundled("skip.asmr"), bundled("flag.asms"), "--max-steps", "2"])
        assert result.exit_code == 0
        assert "non-terminating: yes" in result.output


class TestEval:
    def test_kruskal_properties(self, runner):
        result = runner.invoke(
            cli,
            ["eval", bundled("kruskal.asml"), bundled("kruskal_4.asms"), "--machine", bundled("kruskal.asmr")],
        )
        assert result.exit_code == 0
        assert result.output == "1: true\n2: true\n3: true\n"

    def test_false_formula(self, runner, workspace):
        (workspace / "f.asml").write_text("c = false;\nc = true;\n")
        result = runner.invoke(cli, ["eval", str(workspace / "f.asml"), str(workspace / "flag.asms")])
        assert result.exit_code == 1
        assert result.output == "1: true\n2: false\n"

    def test_bindings(self, runner, workspace):
        (workspace / "f.asml").write_text("c = x;\n")
        args = ["eval", str(workspace / "f.asml"), str(workspace / "flag.asms")]
        assert runner.invoke(cli, args).exit_code == 1
        result = runner.invoke(cli, args + ["--bind", "x=false", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output) == [{"formula": "c = x", "value": True}]

    def test_rules_need_the_machine(self, runner):
        result = runner.invoke(cli, ["eval", bundled("kruskal.asml"), bundled("kruskal_4.asms")])
        assert result.exit_code == 2


class TestTranslate:
    def test_requires_signature(self, runner, workspace):
        (workspace / "f.asml").write_text("[c := true] c = true;\n")
        result = runner.invoke(cli, ["translate", str(workspace / "f.asml")])
        assert result.exit_code == 2

    def test_output(self, runner, workspace):
        (workspace / "f.asml").write_text("[c := true] c = true;\n")
        result = runner.invoke(cli, ["translate", str(workspace / "f.asml"), "--signature", str(workspace / "flag.asms")])
        assert result.exit_code == 0
        header, formula = result.output.strip().split("\n", 1)
        assert header.startswith("// ")
        assert "upd(" not in formula and formula.endswith(";")


class TestCheckAxioms:
    def test_deterministic_for_a_seed(self, runner):
        args = ["check-axioms", "--schema", "M4", "--trials", "5"]
        first, second = runner.invoke(cli, args), runner.invoke(cli, args)
        assert first.exit_code == 0
        assert first.output == second.output
        assert first.output.splitlines() == ["schema, trials, counterexamples, seed", "M4, 5, 0, 0"]

    def test_mutations_pass_by_failing(self, runner):
        result = runner.invoke(cli, ["check-axioms", "--schema", "M4", "--mutations", "--trials", "200", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["failed"] == []
        counts = {r["schema"]: r["counterexamples"] for r in data["reports"]}
        assert counts["M4"] == 0
        assert counts["A2-unguarded"] > 0 and counts["M5-converse"] > 0

    def test_lemma(self, runner):
        result = runner.invoke(cli, ["check-axioms", "--lemma", "box-conjunction", "--trials", "5"])
        assert result.exit_code == 0
        assert "box-conjunction, 5, 0, 0" in result.output

    def test_certified_rule(self, runner):
        result = runner.invoke(cli, ["check-axioms", "--schema", "UG"])
        assert result.exit_code == 2


class TestProveCheck:
    def test_ok(self, runner):
        result = runner.invoke(cli, ["prove-check", bundled("modus_ponens.asmd")])
        assert result.exit_code == 0
        assert result.output.rstrip().endswith("status: ok")

    def test_json(self, runner):
        result = runner.invoke(cli, ["prove-check", bundled("necessitation.asmd"), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["status"] == "ok"

    def test_rejected(self, runner, workspace):
        text = corpus.read_text("modus_ponens.asmd").replace("by M3 (1, 2)", "by M3 (2, 1)")
        (workspace / "bad.asmd").write_text(text)
        result = runner.invoke(cli, ["prove-check", str(workspace / "bad.asmd")])
        assert result.exit_code == 1
        assert result.output.startswith("rejected: line 3:")


class TestInputErrors:
    def test_malformed_machine(self, runner, workspace):
        (workspace / "bad.asmr").write_text("rule main = c := ;\n")
        result = runner.invoke(cli, ["step", str(workspace / "bad.asmr"), str(workspace / "flag.asms")])
        assert result.exit_code == 2

    def test_missing_file(self, runner, workspace):
        result = runner.invoke(cli, ["step", str(workspace / "none.asmr"), str(workspace / "flag.asms")])
        assert result.exit_code == 2
