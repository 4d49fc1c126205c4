from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bendmin.cli import main
from bendmin.corpus import corpus

K4 = {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}


@pytest.fixture
def k4_file(tmp_path):
    p = tmp_path / "k4.json"
    p.write_text(json.dumps(K4))
    return str(p)


def test_global_k4(k4_file, capsys):
    assert main(["--input", k4_file, "--validate"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "bends: 4"


def test_missing_edge_exit_2(k4_file):
    assert main(["--input", k4_file, "--mode", "edge", "--edge", "0,7"]) == 2


@pytest.mark.parametrize(
    "graph",
    [
        {"n": 6, "edges": [[a, b] for a in range(3) for b in range(3, 6)]},
        {"n": 5, "edges": [[0, 1], [0, 2], [0, 3], [0, 4]]},
        {"n": 3, "edges": [[0, 1]]},
    ],
)
def test_input_errors_exit_2(tmp_path, graph):
    p = tmp_path / "g.json"
    p.write_text(json.dumps(graph))
    assert main(["--input", str(p)]) == 2


def test_outputs_are_byte_identical(k4_file, tmp_path):
    outs = []
    for run in range(2):
        d = tmp_path / f"r{run}"
        d.mkdir()
        files = [str(d / "rep.json"), str(d / "drawing.json"), str(d / "out.svg")]
        args = ["--input", k4_file, "--validate"]
        for f in files:
            args += ["--out", f]
        assert main(args) == 0
        outs.append([open(f, "rb").read() for f in files])
    assert outs[0] == outs[1]
    drawing = json.loads(outs[0][1])
    assert len(drawing["vertices"]) == 4 and len(drawing["edges"]) == 6


def test_vertex_and_edge_modes(k4_file, capsys):
    assert main(["--input", k4_file, "--mode", "vertex", "--vertex", "2", "--oracle-check"]) == 0
    assert main(["--input", k4_file, "--mode", "edge", "--edge", "1,3", "--oracle-check",
                 "--format", "json"]) == 0
    out = capsys.readouterr().out
    assert out.count("oracle: ok") == 2 and '"rotation"' in out


def test_oracle_check_on_small_corpus(tmp_path):
    for i, g in enumerate(corpus(6, 1)):
        p = tmp_path / f"g{i}.json"
        p.write_text(json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}))
        assert main(["--input", str(p), "--oracle-check", "--validate"]) == 0


def test_oracle_mismatch_exit_4(tmp_path):
    # the known fixed-edge gap makes the oracle disagree in edge mode
    p = tmp_path / "theta.json"
    edges = [[0, 1], [0, 5], [1, 2], [1, 6], [2, 3], [3, 4], [4, 5], [5, 6]]
    p.write_text(json.dumps({"n": 7, "edges": edges}))
    assert main(["--input", str(p), "--mode", "edge", "--edge", "0,1", "--oracle-check"]) == 4


def test_module_entry_point(k4_file):
    out = subprocess.run([sys.executable, "-m", "bendmin", "--input", k4_file],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("bends: 4")
