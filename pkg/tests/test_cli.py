import json

import pytest
from click.testing import CliRunner

from conftest import FIXTURES
from pegkit.cli import main


@pytest.fixture
def runner():
    return CliRunner()


FIG1 = str(FIXTURES / "fig1.peg.json")
FIG3 = str(FIXTURES / "fig3.peg.json")


class TestValidate:
    def test_valid_file_exits_zero(self, runner):
        result = runner.invoke(main, ["validate", FIG1])
        assert result.exit_code == 0
        assert "relaxed-target" in result.output

    def test_json_diagnostics(self, runner):
        result = runner.invoke(main, ["validate", FIG1, "--json"])
        lines = [json.loads(l) for l in result.output.splitlines() if l]
        assert all({"severity", "code", "locus", "message"} <= set(d) for d in lines)

    def test_invalid_file_exits_one(self, runner, tmp_path, fig1):
        from pegkit import corpus
        payload = json.loads(corpus.save(fig1))
        payload["edges"] = [e for e in payload["edges"]
                            if not (e["source"] == "op_add" and e["role"] == "site")]
        bad = tmp_path / "bad.peg.json"
        bad.write_text(json.dumps(payload))
        result = runner.invoke(main, ["validate", str(bad)])
        assert result.exit_code == 1
        assert "missing-role" in result.output + result.stderr

    def test_malformed_file_is_cli_error(self, runner, tmp_path):
        p = tmp_path / "x.peg.json"
        p.write_text("{")
        assert runner.invoke(main, ["validate", str(p)]).exit_code == 1


class TestLint:
    def test_json_report(self, runner):
        result = runner.invoke(main, ["lint", FIG1, "--json"])
        assert json.loads(result.output) == {
            "component_count": 1, "isolated_mentions": [], "score": 1}


class TestScore:
    def test_identity_scores_one(self, runner):
        result = runner.invoke(main, ["score", "--gold", FIG1, "--pred", FIG1,
                                      "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["smatch"] == {"precision": 1.0, "recall": 1.0, "f1": 1.0}

    def test_decompose_and_relations(self, runner):
        result = runner.invoke(main, ["score", "--gold", FIG3, "--pred", FIG3,
                                      "--decompose", "--relations", "--json"])
        payload = json.loads(result.output)
        assert payload["decomposition"]["reentrancies"]["f1"] == 1.0
        assert payload["relations"]["core"]["f1"] == 1.0

    def test_human_readable(self, runner):
        result = runner.invoke(main, ["score", "--gold", FIG1, "--pred", FIG1,
                                      "--decompose"])
        assert "smatch" in result.output.lower()


class TestSimulate:
    def test_script_replay_writes_graph(self, runner, tmp_path, fig1):
        from pegkit import corpus
        from pegkit.evaluate import smatch
        out = tmp_path / "out.peg.json"
        result = runner.invoke(main, [
            "simulate", str(FIXTURES / "fig1.doc.json"),
            "--script", str(FIXTURES / "fig1.log"), "-o", str(out)])
        assert result.exit_code == 0, result.output
        rebuilt = corpus.load_path(out)
        assert smatch(fig1, rebuilt).f1 == 1.0

    def test_bad_script_fails(self, runner, tmp_path):
        script = tmp_path / "bad.log"
        script.write_text("ground T1 banana\n")
        result = runner.invoke(main, [
            "simulate", str(FIXTURES / "fig1.doc.json"),
            "--script", str(script), "-o", str(tmp_path / "o.json")])
        assert result.exit_code != 0
        assert "replay aborted" in result.output + result.stderr

    def test_interactive_repl(self, runner, tmp_path, fig1_log):
        out = tmp_path / "out.peg.json"
        stdin = "\n".join(["?"] + fig1_log + ["show", "done"]) + "\n"
        result = runner.invoke(main, [
            "simulate", str(FIXTURES / "fig1.doc.json"), "-o", str(out)],
            input=stdin)
        assert result.exit_code == 0, result.output
        assert "ground" in result.output  # the '?' completion listing
        assert out.exists()


class TestLower:
    def test_matches_golden(self, runner, tmp_path):
        out = tmp_path / "program.json"
        result = runner.invoke(main, ["lower", FIG1, "-o", str(out)])
        assert result.exit_code == 0
        assert "3 instructions, 2 holes" in result.output
        assert out.read_bytes() == (FIXTURES / "fig1.program.json").read_bytes()

    def test_strict_exits_two_on_holes(self, runner, tmp_path):
        result = runner.invoke(main, ["lower", FIG1, "--strict",
                                      "-o", str(tmp_path / "p.json")])
        assert result.exit_code == 2
        assert "vague-modifier" in result.output + result.stderr


class TestStats:
    def test_exact_fixture_stats(self, runner, fixture_stats):
        result = runner.invoke(main, ["stats", str(FIXTURES), "--json"])
        payload = json.loads(result.output)
        assert payload["relations"] == fixture_stats["relations"]
        assert payload["documents"]["words"] == 38

    def test_empty_directory_fails(self, runner, tmp_path):
        assert runner.invoke(main, ["stats", str(tmp_path)]).exit_code != 0


class TestImportBrat:
    def test_writes_doc_json(self, runner, tmp_path):
        out = tmp_path / "docs"
        result = runner.invoke(main, ["import-brat", str(FIXTURES / "brat"),
                                      "-o", str(out)])
        assert result.exit_code == 0, result.output
        payload = json.loads((out / "fig1.doc.json").read_text())
        assert len(payload["document"]["mentions"]) == 7
        roles = {(r["role"], r["head"], r["dep"])
                 for r in payload["imported_relations"]}
        assert ("ARG0", "T1", "T2") in roles
        assert (None, "T7", "T2") in roles  # legacy relation preserved


class TestExportOntology:
    def test_emits_tables(self, runner):
        result = runner.invoke(main, ["export-ontology"])
        tables = json.loads(result.output)
        assert len(tables["operation_types"]) == 13
