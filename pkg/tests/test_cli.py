import csv
import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from spectrabound import report as rp
from spectrabound.cli import main
from spectrabound.graphs import generate, parse_graph, write_graph

SCHEMA = rp.schema()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def check_json(text):
    obj = json.loads(text)
    jsonschema.validate(obj, SCHEMA)
    assert json.loads(json.dumps(obj)) == obj
    return obj


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("p3", generate("path", 3)), ("c4", generate("cycle", 4)), ("dc3", generate("directed_cycle", 3))):
        paths[name] = tmp_path / f"{name}.g"
        write_graph(g, paths[name])
    paths["a"] = tmp_path / "a.mat"
    paths["a"].write_text("2\n0 2\n1 0\n")
    paths["t"] = tmp_path / "t.vec"
    paths["t"].write_text("2\n4.5 1\n")
    paths["red"] = tmp_path / "reducible.mat"
    paths["red"].write_text("2\n0 1\n0 0\n")
    return paths


class TestBounds:
    def test_graph_distance_json(self, capsys, files):
        code, out, _ = run(capsys, "bounds", "--graph", files["p3"], "--kind", "distance", "--format", "json")
        assert code == 0
        d = check_json(out)
        assert d["bounds"]["lower"] == 2.66666667
        assert d["bounds"]["upper"] == 2.82842712
        assert d["oracle"]["rho"] == 2.73205081
        assert d["source"]["kind"] == "distance"

    def test_matrix_with_shift(self, capsys, files):
        code, out, _ = run(capsys, "bounds", "--matrix", files["a"], "--shift", files["t"], "--format", "json")
        assert code == 0
        d = check_json(out)
        assert d["bounds"]["upper"] == 5.0 and d["oracle"]["rho"] == 5.0
        c2 = d["diagnosis"]["condition_ii"]
        assert c2["l"] == 0.5 and c2["U"] == [1] and c2["W"] == [2]
        assert d["diagnosis"]["side"] == "BothAttained"
        assert d["bounds"]["argmax"] in ([1, 2], [2, 1])

    def test_text_output(self, capsys, files):
        code, out, _ = run(capsys, "bounds", "--matrix", files["a"], "--corollary")
        assert code == 0
        assert "lower       : 3" in out and "condition i : holds" in out

    def test_reducible_exit_2(self, capsys, files):
        code, _, err = run(capsys, "bounds", "--matrix", files["red"])
        assert code == 2 and "NotIrreducible" in err

    def test_parse_error_names_location(self, capsys, tmp_path):
        bad = tmp_path / "bad.mat"
        bad.write_text("2\n0 2\n1 q\n")
        code, _, err = run(capsys, "bounds", "--matrix", bad)
        assert code == 2 and f"{bad}:3:3" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "bounds", "--graph", tmp_path / "none.g")
        assert code == 2

    def test_shift_with_graph_rejected(self, capsys, files):
        code, _, _ = run(capsys, "bounds", "--graph", files["p3"], "--corollary")
        assert code == 2

    def test_no_convergence_exit_3(self, capsys, files):
        code, _, err = run(capsys, "bounds", "--graph", files["p3"], "--kind", "distance", "--max-iter", "1")
        assert code == 3 and "NoConvergence" in err

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["bounds"])
        assert info.value.code == 2
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2


class TestReport:
    def test_json(self, capsys, files):
        code, out, _ = run(capsys, "report", "--graph", files["c4"], "--format", "json")
        assert code == 0
        d = check_json(out)
        assert [s["source"]["kind"] for s in d["spectra"]] == [
            "adjacency",
            "signless-laplacian",
            "distance",
            "distance-signless-laplacian",
        ]
        assert d["spectra"][0]["oracle"]["rho"] == 2.0
        assert {b["id"] for b in d["spectra"][0]["baseline"]} == {"1.1", "1.2"}

    def test_text(self, capsys, files):
        code, out, _ = run(capsys, "report", "--graph", files["dc3"])
        assert code == 0
        assert "[distance-signless-laplacian]" in out and "(1.11)" in out


class TestCompare:
    def test_csv_p3_distance(self, capsys, files):
        code, out, _ = run(capsys, "compare", files["p3"], "--kind", "distance", "--format", "csv")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == rp.CSV_COLUMNS
        assert [r[2] for r in rows[1:]] == ["theorem", "1.5", "1.6", "1.7"]
        assert all(r[5] == "2.73205081" for r in rows[1:])

    def test_three_files_ordered(self, capsys, files, tmp_path):
        args = ["compare", files["p3"], files["c4"], files["dc3"], "--kind", "adjacency", "--format", "json"]
        code, out, _ = run(capsys, *args)
        assert code == 0
        d = check_json(out)
        ids = [r["graph_id"] for r in d["rows"]]
        assert ids == sorted(ids, key=["p3", "c4", "dc3"].index)
        assert ids.count("p3") == 3 and ids.count("dc3") == 6

    def test_directory_and_output_file(self, capsys, tmp_path):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        write_graph(generate("star", 3), corpus / "b.g")
        write_graph(generate("path", 4), corpus / "a.g")
        out_file = tmp_path / "out.csv"
        code, out, _ = run(capsys, "compare", corpus, "--format", "csv", "-o", out_file)
        assert code == 0 and out == ""
        rows = list(csv.reader(io.StringIO(out_file.read_text())))
        assert rows[0] == rp.CSV_COLUMNS
        assert rows[1][0] == "a" and rows[-1][0] == "b"

    def test_non_graph_file_in_corpus(self, capsys, files):
        code, _, err = run(capsys, "compare", files["p3"].parent)
        assert code == 2 and "ParseError" in err

    def test_threads_match_sequential(self, capsys, files, monkeypatch):
        args = ["compare", files["p3"], files["c4"], files["dc3"], "--format", "csv"]
        _, seq, _ = run(capsys, *args)
        monkeypatch.setenv("SPECTRABOUND_THREADS", "3")
        _, par, _ = run(capsys, *args)
        assert seq == par

    def test_bad_threads_env(self, capsys, files, monkeypatch):
        monkeypatch.setenv("SPECTRABOUND_THREADS", "many")
        code, _, _ = run(capsys, "compare", files["p3"], files["c4"])
        assert code == 2

    def test_empty_corpus(self, capsys, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        code, _, _ = run(capsys, "compare", empty)
        assert code == 2
        code, _, _ = run(capsys, "compare")
        assert code == 2

    def test_text_marks_annotated_rows(self, capsys, files):
        code, out, _ = run(capsys, "compare", files["p3"], "--kind", "adjacency")
        assert code == 0
        assert "1.1*" in out and "exempt" in out


class TestSearch:
    def test_text_summary(self, capsys):
        code, out, _ = run(capsys, "search-p34", "--max-n", "6")
        assert code == 0
        first = out.splitlines()[0]
        assert first.startswith("examined=") and " witnesses=" in first

    def test_max_n_3(self, capsys):
        code, _, err = run(capsys, "search-p34", "--max-n", "3")
        assert code == 2 and "BadParams" in err

    def test_json(self, capsys, tmp_path):
        code, out, _ = run(capsys, "search-p34", "--max-n", "4", "--format", "json", "--out-dir", tmp_path / "w")
        assert code == 0
        d = check_json(out)
        assert d["max_n"] == 4 and d["examined"] > 0 and d["witness_count"] == len(d["witnesses"])


class TestGen:
    def test_petersen(self, capsys, tmp_path):
        path = tmp_path / "petersen.g"
        code, _, _ = run(capsys, "gen", "petersen", "-o", path)
        assert code == 0
        g = parse_graph(path.read_text())
        assert g.n == 10 and len(g.edges) == 15

    def test_path_matches_format_example(self, capsys):
        code, out, _ = run(capsys, "gen", "path", "3")
        assert code == 0 and out == "directed: false\nn: 3\n1 2\n2 3\n"

    def test_seeded_byte_identical(self, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"g{k}.g"
            subprocess.run(
                [sys.executable, "-m", "spectrabound", "gen", "gnp", "8", "0.4", "--seed", "7", "-o", str(path)],
                check=True,
                env={**os.environ},
            )
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    @pytest.mark.parametrize("argv", [["gen", "path", "1"], ["gen", "cycle", "x"], ["gen", "complete"]])
    def test_bad_params(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2


def test_console_script_installed():
    proc = subprocess.run(["spectrabound", "gen", "complete", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("2 3\n")
