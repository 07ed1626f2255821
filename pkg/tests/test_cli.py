import json

import pytest

from pursuitwidth.cli import (EXIT_INPUT_ERROR, EXIT_PASS,
                              EXIT_RESOURCE_ERROR, SCHEMA, main)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def c3(tmp_path):
    path = tmp_path / "c3.edges"
    path.write_text("3\n0 1\n1 2\n2 0\n")
    return str(path)


class TestWidthCommand:
    def test_cycle_width(self, c3, capsys):
        code, rep = run(["width", c3, "--measure", "dw"], capsys)
        assert code == EXIT_PASS
        assert rep["results"]["value"] == 2
        assert rep["schema"] == SCHEMA
        assert c3 in rep["inputs"]

    def test_invisible_width_notes_convention(self, tmp_path, capsys):
        code, rep = run(["generate", "grk", "--r", "1", "--k", "2",
                         "-o", str(tmp_path / "g.edges")], capsys)
        assert code == EXIT_PASS
        code, rep = run(["width", str(tmp_path / "g.edges"), "--measure", "dpw"], capsys)
        assert rep["results"]["value"] == 4
        assert any("plus one" in n for n in rep["notes"])

    def test_single_vertex(self, tmp_path, capsys):
        p = tmp_path / "one.edges"
        p.write_text("1\n")
        code, rep = run(["width", str(p), "--measure", "dw"], capsys)
        assert rep["results"]["value"] == 1

    def test_missing_file_is_input_error(self, capsys):
        code, rep = run(["width", "/nonexistent.edges"], capsys)
        assert code == EXIT_INPUT_ERROR

    def test_malformed_file_is_input_error(self, tmp_path, capsys):
        p = tmp_path / "bad.edges"
        p.write_text("3\n9 9\n")
        code, rep = run(["width", str(p)], capsys)
        assert code == EXIT_INPUT_ERROR
        assert "line 2" in rep["error"]

    def test_budget_exhaustion_is_resource_error(self, tmp_path, capsys):
        code, rep = run(["generate", "tree", "--r", "2",
                         "-o", str(tmp_path / "t.edges")], capsys)
        code, rep = run(["width", str(tmp_path / "t.edges"), "--budget", "2"], capsys)
        assert code == EXIT_RESOURCE_ERROR
        assert rep["kind"] == "resource"


class TestGenerateCommand:
    def test_two_tree_size(self, tmp_path, capsys):
        code, rep = run(["generate", "thm7", "--n", "2",
                         "-o", str(tmp_path / "g2.edges")], capsys)
        assert code == EXIT_PASS
        assert rep["results"]["vertices"] == 30

    def test_random_deterministic(self, capsys):
        _, rep_a = run(["generate", "random", "--n", "5", "--p", "0.4",
                        "--seed", "7"], capsys)
        _, rep_b = run(["generate", "random", "--n", "5", "--p", "0.4",
                        "--seed", "7"], capsys)
        assert rep_a["results"]["edge_list"] == rep_b["results"]["edge_list"]

    def test_dot_output(self, tmp_path, capsys):
        dot = tmp_path / "c.dot"
        run(["generate", "cycle", "--n", "3", "-o", str(tmp_path / "c.edges"),
             "--dot", str(dot)], capsys)
        assert dot.read_text().startswith("digraph")


class TestParityCommand:
    @pytest.fixture
    def game(self, tmp_path):
        from pursuitwidth.parity import distinguisher_game, emit_observation, emit_parity_game
        pg, eq = distinguisher_game()
        gp = tmp_path / "g.pg"
        gp.write_text(emit_parity_game(pg))
        op = tmp_path / "g.obs"
        op.write_text(emit_observation(eq))
        return str(gp), str(op)

    def test_solve(self, game, capsys):
        gp, _ = game
        code, rep = run(["parity", gp, "--action", "solve"], capsys)
        assert code == EXIT_PASS
        assert rep["results"]["player0_wins_from_init"] is True

    def test_identity_pipeline_matches_solve(self, game, capsys):
        gp, _ = game
        _, direct = run(["parity", gp, "--action", "solve"], capsys)
        _, piped = run(["parity", gp, "--action", "solve-imperfect"], capsys)
        assert piped["results"]["player0_wins"] == \
            direct["results"]["player0_wins_from_init"]

    def test_merged_flips_winner(self, game, capsys):
        gp, op = game
        _, piped = run(["parity", gp, op, "--action", "solve-imperfect"], capsys)
        assert piped["results"]["player0_wins"] is False

    def test_powerset_emits_wellformed_file(self, game, tmp_path, capsys):
        gp, op = game
        out = tmp_path / "pow.pg"
        code, rep = run(["parity", gp, op, "--action", "powerset",
                         "-o", str(out)], capsys)
        assert code == EXIT_PASS
        from pursuitwidth.parity import parse_parity_game
        kg = parse_parity_game(out.read_text())
        assert kg.n == rep["results"]["knowledge_positions"]


class TestVerifyCommand:
    def test_small_hierarchy_suite(self, capsys):
        code, rep = run(["verify", "hierarchy", "--nmax", "3", "--samples", "5"],
                        capsys)
        assert code == EXIT_PASS
        assert rep["passed"] is True

    def test_thm25_suite(self, capsys):
        code, rep = run(["verify", "thm25"], capsys)
        assert code == EXIT_PASS
        assert rep["results"]["values"]["dpw(T2)"] == 3

    def test_single_graph_trace_artifact(self, c3, tmp_path, capsys):
        trace = tmp_path / "trace.json"
        code, rep = run(["verify", "thm10", "--graph", c3, "--r", "2",
                         "--trace-out", str(trace)], capsys)
        assert code == EXIT_PASS
        records = json.loads(trace.read_text())
        assert records and records[0]["mover"] == "robbers"

    def test_jobs_flag_gives_same_report(self, capsys):
        _, rep_a = run(["verify", "lemma9", "--nmax", "3"], capsys)
        _, rep_b = run(["verify", "lemma9", "--nmax", "3", "--jobs", "2"], capsys)
        a, b = rep_a, rep_b
        for rep in (a, b):
            rep.pop("elapsed_s")
        assert a == b
