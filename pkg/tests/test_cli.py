import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from pagtc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def load_schema():
    ref = resources.files("pagtc.schemas").joinpath("output.schema.json")
    return json.loads(ref.read_text())


class TestCentrality:
    def test_shapley_efficiency(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                               "--k", "2", "--beta", "shapley")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["id", "label", "score"]
        assert len(rows) == 15
        assert sum(float(r[2]) for r in rows) == pytest.approx(15.0, abs=1e-9)
        scores = [float(r[2]) for r in rows]
        assert scores == sorted(scores, reverse=True)

    def test_dirac_with_conditioning(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:fig2-grid",
                               "--k", "3", "--s0", "0,1", "--beta", "dirac:6")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 23
        assert all(float(r[2]) >= 0 for r in rows)

    def test_json_output_validates(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                               "--k", "2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, load_schema())
        assert payload["command"] == "centrality"

    def test_oracle_deviation_zero(self, capsys, tmp_path):
        edges = tmp_path / "star.edges"
        edges.write_text("w z\nv z\nu z\n")
        code, out, _ = run_cli(capsys, "centrality", "--graph", f"file:{edges}",
                               "--k", "3", "--s0", "w,v", "--oracle", "--format", "json")
        assert code == 0
        meta = json.loads(out)["meta"]
        assert meta["oracle"] == "ok"
        assert meta["oracle_mode"] == "exact"
        assert meta["oracle_max_deviation"] == "0"

    def test_monte_carlo_path(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                               "--k", "2", "--samples", "200", "--seed", "3", "--threads", "2")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 15

    def test_monte_carlo_thread_count_invariant(self, capsys):
        outs = []
        for threads in ("1", "4"):
            code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                                   "--k", "2", "--samples", "150", "--seed", "11",
                                   "--threads", threads)
            assert code == 0
            outs.append(out)
        assert outs[0] == outs[1]

    def test_label_resolution_error(self, capsys):
        code, _, err = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                               "--k", "2", "--s0", "Atlantis")
        assert code == 2
        assert "Atlantis" in err

    def test_unknown_bundled_is_computational_error(self, capsys):
        code, _, err = run_cli(capsys, "centrality", "--graph", "bundled:nowhere", "--k", "2")
        assert code == 1
        assert "flor-families" in err


class TestSimulate:
    def test_path_cascade(self, capsys, tmp_path):
        edges = tmp_path / "p.edges"
        edges.write_text("a b\nb c\nc d\n")
        code, out, _ = run_cli(capsys, "simulate", "--graph", f"file:{edges}",
                               "--k", "1", "--s0", "a")
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["round", "active_count", "newly_count", "newly_nodes"]
        assert [r[1] for r in rows] == ["1", "2", "3", "4"]

    def test_missing_seeds_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--graph", "bundled:flor-families",
                               "--k", "2", "--s0", "")
        assert code == 2


class TestMaximize:
    def test_fig2_pagtc_delta(self, capsys):
        code, out, _ = run_cli(capsys, "maximize", "--graph", "bundled:fig2-grid",
                               "--k", "3", "--r", "7", "--alg", "pagtc-delta",
                               "--objective", "one-round")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert row["one_round_value"] == "14"
        assert row["one_round_pct"] == "56.0"

    def test_flor_optimal_k3(self, capsys):
        code, out, _ = run_cli(capsys, "maximize", "--graph", "bundled:flor-families",
                               "--k", "3", "--r", "6", "--alg", "optimal",
                               "--objective", "one-round")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert row["one_round_value"] == "9"
        assert row["one_round_pct"] == "60.0"

    def test_all_flag_runs_every_algorithm(self, capsys):
        code, out, _ = run_cli(capsys, "maximize", "--graph", "bundled:flor-families",
                               "--k", "2", "--r", "4", "--all", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, load_schema())
        assert [r[0] for r in payload["rows"]] == ["greedy", "pagtc-delta", "degree", "optimal"]

    def test_zero_budget_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "maximize", "--graph", "bundled:flor-families",
                               "--k", "2", "--r", "0", "--alg", "greedy")
        assert code == 2
        assert "--r" in err

    def test_guard_violation_is_computational_error(self, capsys):
        code, _, err = run_cli(capsys, "maximize", "--graph", "bundled:les-miserables",
                               "--k", "2", "--r", "10", "--alg", "optimal", "--guard", "100")
        assert code == 1
        assert "guard" in err


class TestTarget:
    def test_flor_degree(self, capsys):
        code, out, _ = run_cli(capsys, "target", "--graph", "bundled:flor-families",
                               "--k", "4", "--strategy", "degree")
        assert code == 0
        header, rows = parse_csv(out)
        row = dict(zip(header, rows[0]))
        assert row["rounds"] == "15"
        assert row["rounds_pct"] == "100.0"

    def test_rounds_equal_n_when_threshold_unreachable(self, capsys, tmp_path):
        edges = tmp_path / "p.edges"
        edges.write_text("a b\nb c\nc d\n")
        code, out, _ = run_cli(capsys, "target", "--graph", f"file:{edges}",
                               "--k", "9", "--strategy", "pagtc-shapley")
        assert code == 0
        _, rows = parse_csv(out)
        assert rows[0][2] == "4"

    def test_growth_file(self, capsys, tmp_path):
        growth = tmp_path / "growth.txt"
        code, out, _ = run_cli(capsys, "target", "--graph", "bundled:flor-families",
                               "--k", "4", "--strategy", "degree", "--growth", str(growth))
        assert code == 0
        lines = growth.read_text().splitlines()
        assert lines[0] == "1 1"
        assert lines[-1] == "15 15"
        assert len(lines) == 15

    def test_truncated_strategy(self, capsys):
        code, out, _ = run_cli(capsys, "target", "--graph", "bundled:flor-families",
                               "--k", "3", "--strategy", "pagtc-trunc:0.5")
        assert code == 0

    def test_les_miserables_k2_soft_reference(self, capsys):
        """The published benchmark reports 19 rounds (24.7%) for both strategies;
        exact counts depend on tie-breaking, so they are logged, not pinned."""
        rounds = {}
        for strat in ("pagtc-shapley", "greedy-full"):
            code, out, _ = run_cli(capsys, "target", "--graph", "bundled:les-miserables",
                                   "--k", "2", "--strategy", strat)
            assert code == 0
            header, rows = parse_csv(out)
            rounds[strat] = int(dict(zip(header, rows[0]))["rounds"])
        print(f"les-miserables K=2 rounds: {rounds} (reference: 19 for both)")
        assert all(v <= 77 for v in rounds.values())


class TestGen:
    def test_deterministic_output(self, capsys):
        code1, out1, _ = run_cli(capsys, "gen", "--side", "4", "--long-range", "1",
                                 "--exponent", "2.0", "--seed", "5")
        code2, out2, _ = run_cli(capsys, "gen", "--side", "4", "--long-range", "1",
                                 "--exponent", "2.0", "--seed", "5")
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.startswith("# navigable small-world")

    def test_out_file_loads_back(self, capsys, tmp_path):
        path = tmp_path / "g.edges"
        code, _, _ = run_cli(capsys, "gen", "--side", "3", "--seed", "1", "--out", str(path))
        assert code == 0
        from pagtc.graphs import load_edge_list

        g = load_edge_list(path)
        assert g.node_count == 9

    def test_graph_spec_generator_route(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "gen:small-world:3,1,2,7",
                               "--k", "2")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 9


class TestBench:
    def test_table1_flor(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--suite", "table1",
                               "--graph", "bundled:flor-families")
        assert code == 0
        header, rows = parse_csv(out)
        assert len(rows) == 3
        table = {int(dict(zip(header, r))["k"]): dict(zip(header, r)) for r in rows}
        assert [table[k]["opt_one_round_pct"] for k in (2, 3, 4)] == ["66.7", "60.0", "73.3"]
        assert [table[k]["opt_full_pct"] for k in (2, 3, 4)] == ["86.7", "73.3", "73.3"]

    def test_table2_runs(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--suite", "table2",
                               "--graph", "bundled:flor-families", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, load_schema())
        assert len(payload["rows"]) == 12  # 3 thresholds x 4 strategies

    def test_fig3_small_sizes(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "--suite", "fig3", "--sizes", "49,100",
                               "--k", "5", "--seed", "2")
        assert code == 0
        header, rows = parse_csv(out)
        assert len(rows) == 4
        assert "influence_ratio" in header

    def test_empty_suite_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "bench", "--suite", "")
        assert code == 2
        assert "table1" in err

    def test_bad_size_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "bench", "--suite", "fig3", "--sizes", "50")
        assert code == 2


class TestPlumbing:
    def test_missing_required_flag_exits_2(self, capsys):
        assert main(["centrality", "--k", "2"]) == 2
        capsys.readouterr()

    def test_unknown_command_exits_2(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_tsv_format(self, capsys):
        code, out, _ = run_cli(capsys, "centrality", "--graph", "bundled:flor-families",
                               "--k", "2", "--format", "tsv")
        assert code == 0
        assert out.splitlines()[0] == "id\tlabel\tscore"

    def test_csv_quoting(self, capsys, tmp_path):
        edges = tmp_path / "odd.edges"
        edges.write_text('x,y b\nb c\n')  # a label containing a comma
        code, out, _ = run_cli(capsys, "centrality", "--graph", f"file:{edges}", "--k", "1")
        assert code == 0
        assert '"x,y"' in out

    def test_bad_graph_spec_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "centrality", "--graph", "ftp:somewhere", "--k", "2")
        assert code == 2
