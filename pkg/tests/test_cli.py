import json

import pytest
from click.testing import CliRunner

from dpforge.canonical import are_isomorphic
from dpforge.formats import read_graph
from dpforge.graph import is_regular
from dpforge.isometry import read_certificate, verify_certificate
from dpforge.main import EXIT_FAILURE, EXIT_FALSE, EXIT_OK, cli


@pytest.fixture
def runner(monkeypatch):
    for var in ("DPFORGE_JOBS", "DPFORGE_LOG_LEVEL", "DPFORGE_BRUTE_CAP"):
        monkeypatch.delenv(var, raising=False)
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["-j", "1", *args])


class TestConstruct:
    def test_regular_to_edge_list(self, runner, tmp_path, reference_g7):
        out = tmp_path / "g7.edges"
        result = invoke(runner, "construct", "regular", "--n", "7", "--r", "4", "--format", "edges", "--out", str(out))
        assert result.exit_code == EXIT_OK, result.output
        assert out.read_text().splitlines()[0] == "7 14"
        assert are_isomorphic(read_graph(out), reference_g7)

    def test_regular_with_certificate(self, runner, tmp_path):
        out, cert = tmp_path / "g.g6", tmp_path / "g.cert"
        result = invoke(
            runner, "construct", "regular", "--n", "14", "--r", "3", "--out", str(out), "--emit-certificate", str(cert)
        )
        assert result.exit_code == EXIT_OK, result.output
        g = read_graph(out)
        assert is_regular(g, 3)
        assert verify_certificate(g, read_certificate(cert)).valid

    def test_regular_graph6_on_stdout(self, runner):
        result = invoke(runner, "construct", "regular", "--n", "5", "--r", "4")
        assert result.exit_code == EXIT_OK
        assert "D~{" in result.output

    def test_inadmissible_pair(self, runner):
        result = invoke(runner, "construct", "regular", "--n", "10", "--r", "2")
        assert result.exit_code == EXIT_FAILURE
        assert "inadmissible" in result.output

    def test_too_large_for_graph6(self, runner):
        result = invoke(runner, "construct", "regular", "--n", "64", "--r", "4")
        assert result.exit_code == EXIT_FALSE
        assert result.exception is None or isinstance(result.exception, SystemExit)
        assert "62" in result.output

    def test_large_graph_as_edge_list(self, runner, tmp_path):
        out = tmp_path / "g.edges"
        result = invoke(runner, "construct", "regular", "--n", "64", "--r", "4", "--format", "edges", "--out", str(out))
        assert result.exit_code == EXIT_OK, result.output
        assert out.read_text().splitlines()[0] == "64 128"

    def test_check_brute(self, runner, tmp_path):
        result = invoke(
            runner, "construct", "regular", "--n", "9", "--r", "4", "--check-brute", "--out", str(tmp_path / "g.g6")
        )
        assert result.exit_code == EXIT_OK
        assert "exhaustive search confirms" in result.output

    def test_hh_stall(self, runner):
        result = invoke(runner, "construct", "hh", "--sequence", "3,3,3,3,3,3", "--modified")
        assert result.exit_code == EXIT_FAILURE
        assert "(3,3)" in result.output

    def test_hh_certificate_round_trip(self, runner, tmp_path):
        graph, cert = tmp_path / "g.edges", tmp_path / "g.cert"
        result = invoke(
            runner,
            "construct", "hh", "--sequence", "3,2,2,2,1", "--modified",
            "--format", "edges", "--out", str(graph), "--emit-certificate", str(cert),
        )
        assert result.exit_code == EXIT_OK, result.output
        assert graph.read_text() == "5 5\n0 1\n0 2\n0 3\n1 2\n3 4\n"
        result = invoke(runner, "verify", "--in", str(graph), "--certificate", str(cert))
        assert result.exit_code == EXIT_OK
        assert "certificate valid" in result.output

    def test_certificate_needs_modified(self, runner, tmp_path):
        result = invoke(
            runner, "construct", "hh", "--sequence", "2,2,2", "--emit-certificate", str(tmp_path / "c.txt")
        )
        assert result.exit_code == EXIT_FALSE

    def test_hh_sequence_file(self, runner, write_file, tmp_path):
        out = tmp_path / "graphs.g6"
        path = write_file("seqs.txt", "# three sequences\n2,2,2\n3,3,3,3,3,3\n1,1\n")
        result = invoke(runner, "construct", "hh", "--sequence-file", path, "--modified", "--out", str(out))
        assert result.exit_code == EXIT_FAILURE
        assert out.read_text() == "Bw\nA_\n"
        assert "(3,3)" in result.output
        assert "2 of 3 sequences realised" in result.output

    def test_hh_sequence_file_all_realised(self, runner, write_file):
        result = invoke(runner, "construct", "hh", "--sequence-file", write_file("seqs.txt", "3,3,3,3,3,3\n"))
        assert result.exit_code == EXIT_OK

    def test_hh_needs_one_sequence_source(self, runner, write_file):
        assert invoke(runner, "construct", "hh").exit_code == EXIT_FALSE
        path = write_file("seqs.txt", "2,2,2\n")
        assert invoke(runner, "construct", "hh", "--sequence", "2,2,2", "--sequence-file", path).exit_code == EXIT_FALSE

    def test_classic_hh_realises_six_threes(self, runner):
        result = invoke(runner, "construct", "hh", "--sequence", "3,3,3,3,3,3", "--format", "edges")
        assert result.exit_code == EXIT_OK
        assert "6 9" in result.output


class TestVerify:
    def test_pentagon_is_not_dp(self, runner, write_file):
        path = write_file("c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        result = invoke(runner, "verify", "--in", path, "--brute")
        assert result.exit_code == EXIT_FALSE
        assert "first failing order 4" in result.output

    def test_clique_is_dp(self, runner, write_file):
        result = invoke(runner, "verify", "--in", write_file("k5.g6", "D~{\n"), "--brute")
        assert result.exit_code == EXIT_OK

    def test_json_report(self, runner, write_file, tmp_path):
        report = tmp_path / "report.json"
        path = write_file("c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        result = invoke(runner, "verify", "--in", path, "--brute", "--json", str(report))
        assert result.exit_code == EXIT_FALSE
        document = json.loads(report.read_text())
        assert document["schema_version"] == 1
        assert document["mode"] == "brute"
        assert document["is_dp"] is False
        assert document["first_failing_order"] == 4
        assert document["witnesses"]["4"] is None
        assert document["witnesses"]["3"] == [0, 1, 2]

    def test_lemma_mode(self, runner, write_file, tmp_path):
        report = tmp_path / "report.json"
        result = invoke(runner, "verify", "--in", write_file("k5.g6", "D~{\n"), "--lemma", "--json", str(report))
        assert result.exit_code == EXIT_OK
        assert json.loads(report.read_text())["removed"] == [0, 1, 2, 3]

    def test_invalid_certificate(self, runner, write_file):
        graph = write_file("c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        cert = write_file("c5.cert", "1: 0\n2: 0 1\n3: 0 1 2\n4: 0 1 2 3\n5: 0 1 2 3 4\n")
        result = invoke(runner, "verify", "--in", graph, "--certificate", cert)
        assert result.exit_code == EXIT_FALSE
        assert "first failing order 4" in result.output

    def test_brute_cap(self, runner, write_file):
        path = write_file("k5.g6", "D~{\n")
        assert invoke(runner, "verify", "--in", path, "--brute", "--cap", "4").exit_code == EXIT_FALSE

    def test_cap_zero_is_honoured(self, runner, write_file):
        result = invoke(runner, "verify", "--in", write_file("k2.g6", "A_\n"), "--brute", "--cap", "0")
        assert result.exit_code == EXIT_FALSE
        assert "cap 0" in result.output

    def test_certificate_on_a_disconnected_graph(self, runner, write_file):
        graph = write_file("two.edges", "4 2\n0 1\n2 3\n")
        cert = write_file("two.cert", "1: 0\n2: 0 1\n3: 0 1 2\n4: 0 1 2 3\n")
        result = invoke(runner, "verify", "--in", graph, "--certificate", cert)
        assert result.exit_code == EXIT_FALSE
        assert "certificate valid" not in result.output
        assert "connected" in result.output

    @pytest.mark.parametrize("mode", ["--brute", "--lemma"])
    def test_emit_certificate(self, runner, write_file, tmp_path, mode):
        cert = tmp_path / "k5.cert"
        graph = write_file("k5.g6", "D~{\n")
        result = invoke(runner, "verify", "--in", graph, mode, "--emit-certificate", str(cert))
        assert result.exit_code == EXIT_OK, result.output
        assert invoke(runner, "verify", "--in", graph, "--certificate", str(cert)).exit_code == EXIT_OK

    def test_no_certificate_for_a_pentagon(self, runner, write_file, tmp_path):
        cert = tmp_path / "c5.cert"
        graph = write_file("c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        result = invoke(runner, "verify", "--in", graph, "--lemma", "--emit-certificate", str(cert))
        assert result.exit_code == EXIT_FALSE
        assert not cert.exists()

    def test_json_report_matches_golden(self, runner, write_file, tmp_path, golden):
        report = tmp_path / "report.json"
        path = write_file("c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
        invoke(runner, "verify", "--in", path, "--brute", "--json", str(report))
        assert report.read_text() == golden("verify_brute_c5.json")

    def test_needs_exactly_one_mode(self, runner, write_file):
        path = write_file("k5.g6", "D~{\n")
        assert invoke(runner, "verify", "--in", path).exit_code == EXIT_FALSE
        assert invoke(runner, "verify", "--in", path, "--brute", "--lemma").exit_code == EXIT_FALSE

    def test_unreadable_input(self, runner, write_file):
        result = invoke(runner, "verify", "--in", write_file("bad.g6", "D~\n"), "--brute")
        assert result.exit_code == EXIT_FALSE

    def test_disconnected_input(self, runner, write_file):
        result = invoke(runner, "verify", "--in", write_file("two.edges", "4 2\n0 1\n2 3\n"), "--brute")
        assert result.exit_code == EXIT_FALSE


class TestSurvey:
    def test_hh_json(self, runner, tmp_path):
        report = tmp_path / "hh.json"
        result = invoke(runner, "survey", "hh", "--min-n", "5", "--max-n", "6", "--json", str(report))
        assert result.exit_code == EXIT_OK, result.output
        document = json.loads(report.read_text())
        assert document["kind"] == "hh"
        assert [(row["n"], row["total"], row["successes"]) for row in document["rows"]] == [(5, 20, 12), (6, 71, 32)]

    def test_regular_json_matches_golden(self, runner, tmp_path, golden):
        report = tmp_path / "regular.json"
        result = invoke(runner, "survey", "regular", "--min-n", "5", "--max-n", "5", "--json", str(report))
        assert result.exit_code == EXIT_OK, result.output
        assert report.read_text() == golden("survey_regular_n5.json")

    def test_regular_table(self, runner):
        result = invoke(runner, "survey", "regular", "--min-n", "5", "--max-n", "7")
        assert result.exit_code == EXIT_OK
        assert "75.000" in result.output

    def test_regular_cap(self, runner):
        assert invoke(runner, "survey", "regular", "--max-n", "11").exit_code == EXIT_FALSE

    def test_dump_graphs(self, runner, tmp_path):
        result = invoke(runner, "survey", "regular", "--min-n", "6", "--max-n", "6", "--dump-graphs", str(tmp_path))
        assert result.exit_code == EXIT_OK
        assert len(list(tmp_path.glob("n6_*.g6"))) == 5


class TestConvert:
    def test_graph6_to_edges_and_back(self, runner, write_file, tmp_path):
        edges = tmp_path / "k5.edges"
        result = invoke(runner, "convert", "--in", write_file("k5.g6", "D~{\n"), "--format", "edges", "--out", str(edges))
        assert result.exit_code == EXIT_OK
        result = invoke(runner, "convert", "--in", str(edges), "--format", "graph6")
        assert result.exit_code == EXIT_OK
        assert result.output == "D~{\n"

    def test_dot(self, runner, write_file):
        result = invoke(runner, "convert", "--in", write_file("k3.g6", "Bw\n"), "--format", "dot")
        assert result.exit_code == EXIT_OK
        assert "0 -- 1;" in result.output


def test_bad_config_file(runner, write_file):
    path = write_file("bad.yaml", "jobs: 0\n")
    result = runner.invoke(cli, ["--config", path, "convert", "--in", write_file("k3.g6", "Bw\n"), "--format", "dot"])
    assert result.exit_code == EXIT_FALSE
