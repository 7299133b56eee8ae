import json

import pytest

from cutsparse import load_sparse, save_graph
from cutsparse.cli import main

from conftest import complete_graph, dumbbell_graph, multi_complete_graph, random_graph


@pytest.fixture
def tiny_graph_file(tmp_path):
    path = tmp_path / "g.txt"
    save_graph(random_graph(8, 20, 9, seed=1), path)
    return path


@pytest.fixture
def multigraph_file(tmp_path):
    path = tmp_path / "mg.txt"
    save_graph(multi_complete_graph(10, 30, 8, seed=2), path)
    return path


class TestSparsifyCommand:
    def test_theory_mode_identity_bytes(self, tiny_graph_file, tmp_path):
        out = tmp_path / "h.txt"
        rc = main(
            ["sparsify", "--input", str(tiny_graph_file), "--output", str(out),
             "--epsilon", "0.5", "--seed", "7", "--mode", "theory"]
        )
        assert rc == 0
        assert out.read_text() == tiny_graph_file.read_text()

    def test_repeat_runs_byte_identical(self, multigraph_file, tmp_path):
        outs = []
        for name in ("a.txt", "b.txt"):
            out = tmp_path / name
            rc = main(
                ["sparsify", "--input", str(multigraph_file), "--output", str(out),
                 "--epsilon", "0.5", "--seed", "5", "--mode", "practical",
                 "--rho-scale", "0.0001"]
            )
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_bad_epsilon_exit_2(self, tiny_graph_file, tmp_path):
        rc = main(
            ["sparsify", "--input", str(tiny_graph_file),
             "--output", str(tmp_path / "h.txt"), "--epsilon", "1.5"]
        )
        assert rc == 2

    def test_parse_error_exit_1(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 1\n0 1 0\n")
        rc = main(
            ["sparsify", "--input", str(bad), "--output", str(tmp_path / "h.txt"),
             "--epsilon", "0.5"]
        )
        assert rc == 1

    def test_report_written(self, multigraph_file, tmp_path):
        report = tmp_path / "report.json"
        # rho-scale small enough that the final wrapper round samples despite
        # the tightened per-round epsilon schedule
        rc = main(
            ["sparsify", "--input", str(multigraph_file),
             "--output", str(tmp_path / "h.txt"), "--epsilon", "0.5",
             "--seed", "3", "--mode", "practical", "--rho-scale", "1e-6",
             "--report", str(report)]
        )
        assert rc == 0
        payload = json.loads(report.read_text())
        assert payload["input"]["n"] == 10
        assert payload["rounds"]
        exercised = [r for r in payload["rounds"] if not r["early_out"]]
        assert exercised, "this rho-scale must make the final round sample"
        for rnd in exercised:
            assert len(rnd["levels"]) == rnd["gamma"] + 1

    def test_methods_run(self, multigraph_file, tmp_path):
        for method in ("msf", "ni", "pipeline"):
            out = tmp_path / f"{method}.txt"
            rc = main(
                ["sparsify", "--input", str(multigraph_file), "--output", str(out),
                 "--epsilon", "0.5", "--seed", "1", "--method", method]
            )
            assert rc == 0
            load_sparse(out)


class TestVerifyCommand:
    def test_identical_graphs_zero_error(self, tiny_graph_file, capsys):
        rc = main(
            ["verify", "--graph", str(tiny_graph_file),
             "--sparsifier", str(tiny_graph_file)]
        )
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["max_rel_error"] == 0.0
        assert report["num_cuts"] == 2**7 - 1

    def test_oversized_graph_exit_2(self, tmp_path, capsys):
        path = tmp_path / "big.txt"
        save_graph(random_graph(25, 40, 5, seed=3), path)
        rc = main(["verify", "--graph", str(path), "--sparsifier", str(path)])
        assert rc == 2


class TestMincutCommand:
    def test_unit_k5_theory_mode_exact(self, tmp_path, capsys):
        path = tmp_path / "k5.txt"
        save_graph(complete_graph(5), path)
        rc = main(["mincut", "--input", str(path), "--epsilon", "0.5",
                   "--seed", "1", "--mode", "theory"])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "value 4.0"
        assert lines[1].startswith("side ")

    def test_dumbbell(self, tmp_path, capsys):
        path = tmp_path / "d.txt"
        save_graph(dumbbell_graph(6), path)
        rc = main(["mincut", "--input", str(path), "--epsilon", "0.5", "--seed", "2"])
        assert rc == 0
        assert capsys.readouterr().out.splitlines()[0] == "value 1.0"


class TestMsfCommand:
    def test_dump_levels(self, tmp_path, capsys):
        path = tmp_path / "t.txt"
        path.write_text("3 3\n0 1 5\n1 2 3\n0 2 4\n")
        rc = main(["msf", "--input", str(path), "--levels", "2"])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["0 0 1 5 1", "1 1 2 3 2", "2 0 2 4 1"]

    def test_over_label(self, tmp_path, capsys):
        path = tmp_path / "t.txt"
        path.write_text("3 3\n0 1 1\n0 2 1\n1 2 1\n")
        rc = main(["msf", "--input", str(path), "--levels", "1"])
        assert rc == 0
        assert capsys.readouterr().out.splitlines()[2].endswith(" OVER")

    def test_algorithms_agree(self, tmp_path, capsys):
        path = tmp_path / "g.txt"
        save_graph(random_graph(15, 60, 40, seed=4), path)
        main(["msf", "--input", str(path), "--levels", "4"])
        bounded = capsys.readouterr().out
        main(["msf", "--input", str(path), "--levels", "4", "--algorithm", "general"])
        general = capsys.readouterr().out
        assert bounded == general


class TestBenchCommand:
    def test_row_count_contract(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        for i in range(3):
            save_graph(random_graph(8, 18, 6, seed=10 + i), corpus / f"g{i}.txt")
        rc = main(
            ["bench", "--corpus", str(corpus), "--methods", "msf,ni",
             "--seeds", "1,2", "--epsilon", "0.5", "--mode", "theory"]
        )
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "graph,method,mode,size_out,max_rel_error,time_ms"
        assert len(lines) == 1 + 3 * 2

    def test_rows_deterministic_modulo_time(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        save_graph(multi_complete_graph(8, 20, 5, seed=20), corpus / "g.txt")
        outputs = []
        for _ in range(2):
            rc = main(
                ["bench", "--corpus", str(corpus), "--methods", "msf",
                 "--seeds", "3", "--epsilon", "0.5", "--mode", "practical"]
            )
            assert rc == 0
            rows = [
                line.rsplit(",", 1)[0]  # drop the wall-clock column
                for line in capsys.readouterr().out.strip().splitlines()
            ]
            outputs.append(rows)
        assert outputs[0] == outputs[1]
