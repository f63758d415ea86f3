import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moeadlo.cli import main
from moeadlo.fit import synthetic_records
from moeadlo.io import parse_keyvalue, population_csv, read_csv_matrix
from moeadlo.llm import log_interactions
from moeadlo.operators import DEFAULT_COEFFS, LoWeights
from moeadlo.problems import make_problem


def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(["run", "--algo", "moead-lo", "--problem", "zdt1", "--seed", "7", "--pop", "20", "--evals", "2000", "--out", str(out)])
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["archive.csv", "population.csv", "summary.json", "trajectory.csv"]
    summary = json.loads((out / "summary.json").read_text())
    assert summary["seed"] == 7 and summary["evaluations"] >= 2000
    assert (out / "trajectory.csv").read_text().splitlines()[0] == "evals,hv,igd"
    assert (out / "population.csv").read_text().splitlines()[0] == "f1,f2"
    assert "HV  =" in capsys.readouterr().out


def test_run_with_decision_columns_and_overrides(tmp_path):
    out = tmp_path / "run"
    code = main(["run", "--algo", "moead-de", "--problem", "zdt4", "--dim", "10", "--pop", "20", "--evals", "500",
                 "--set", "T=4", "--set", "sigma2=0.5", "--with-x", "--out", str(out)])
    assert code == 0
    header = (out / "population.csv").read_text().splitlines()[0].split(",")
    assert header == ["f1", "f2"] + [f"x{k}" for k in range(1, 11)]
    assert json.loads((out / "summary.json").read_text())["settings"]["T"] == "4"


def test_run_usage_errors(tmp_path, capsys, monkeypatch):
    assert main(["run", "--algo", "moead", "--problem", "bogus", "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "zdt1" in err and "re25" in err
    monkeypatch.delenv("LLM_API_KEY", raising=False)
    code = main(["run", "--algo", "moead-llm", "--problem", "re21", "--backend", "live", "--base-url", "http://x", "--model", "m", "--out", str(tmp_path)])
    assert code == 2
    assert "LLM_API_KEY" in capsys.readouterr().err
    assert main(["run", "--algo", "moead-llm", "--problem", "re21", "--out", str(tmp_path)]) == 2
    assert main(["run", "--algo", "moead", "--problem", "zdt1", "--set", "bogus=1", "--out", str(tmp_path)]) == 2
    with pytest.raises(SystemExit) as info:
        main(["run", "--algo", "pso", "--problem", "zdt1"])
    assert info.value.code == 2


def test_run_llm_scripted(tmp_path):
    out = tmp_path / "llm"
    code = main(["run", "--algo", "moead-llm", "--problem", "re21", "--backend", "scripted:mimic",
                 "--set", "N=50", "--set", "T=10", "--evals", "200", "--out", str(out)])
    assert code == 0
    lines = (out / "interactions.jsonl").read_text().splitlines()
    assert len(lines) == json.loads((out / "summary.json").read_text())["interactions"] == 75


def test_console_script_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "moeadlo.cli", "run", "--algo", "nsga2", "--problem", "zdt2", "--pop", "20",
                        "--evals", "400", "--out", str(tmp_path / "n")], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "n" / "archive.csv").exists()


PLAN = """
name = tiny
algorithms = moead moead-lo
variant.LO5 = moead-lo l=5
problems = zdt1 zdt2
seeds = 3
reference = moead-lo
N = 20
T = 5
N_max = 1000
"""


def test_experiment_tables_deterministic(tmp_path):
    plan = tmp_path / "plan.txt"
    plan.write_text(PLAN)
    for k in (1, 2):
        assert main(["experiment", str(plan), "--out", str(tmp_path / f"o{k}")]) == 0
    for name in ("table_hv.csv", "table_hv.txt", "table_igd.csv", "table_igd.txt"):
        assert (tmp_path / "o1" / name).read_bytes() == (tmp_path / "o2" / name).read_bytes()
    text = (tmp_path / "o1" / "table_hv.txt").read_text()
    assert "+/-/=" in text and "moead-lo" in text
    cells = (tmp_path / "o1" / "cells.csv").read_text().splitlines()
    assert len(cells) == 1 + 3 * 2 * 3


def test_experiment_usage_errors(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    assert main(["experiment", str(empty), "--out", str(tmp_path / "o")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("algorithms = moead\nproblems = nope\nseeds = 2\n")
    assert main(["experiment", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert main(["experiment", "--preset", "table1_re_demo", "--out", str(tmp_path / "o")]) == 2


def test_presets_shape():
    from moeadlo.experiment import preset

    ab = preset("table4_ablation")
    assert ab.labels == ["Random", "Equal", "Linear", "LO40", "LO30", "LO20", "LO10"]
    assert len(preset("table2_hv").seeds) == 30


def test_fit_command(tmp_path):
    log = tmp_path / "log.jsonl"
    log_interactions(synthetic_records(100, 6, LoWeights(theta=0.0), np.random.default_rng(0)), log)
    op = tmp_path / "op.txt"
    assert main(["fit", str(log), "--out", str(op)]) == 0
    w = LoWeights.from_text(op.read_text())
    assert np.allclose(w.coeffs, DEFAULT_COEFFS, atol=1e-6)
    assert (tmp_path / "op.report.txt").exists()
    # the fitted operator is usable by a run
    out = tmp_path / "run"
    assert main(["run", "--algo", "moead-lo", "--problem", "zdt1", "--pop", "20", "--evals", "500", "--set", f"operator_file={op}", "--out", str(out)]) == 0


def test_fit_single_record_and_empty(tmp_path, capsys):
    one = tmp_path / "one.jsonl"
    log_interactions(synthetic_records(1, 4, LoWeights(theta=0.0, l=4), np.random.default_rng(1)), one)
    assert main(["fit", str(one), "--out", str(tmp_path / "op.txt")]) == 0
    assert "samples: 4" in capsys.readouterr().out
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert main(["fit", str(empty), "--out", str(tmp_path / "op2.txt")]) == 1


def test_indicators_command(tmp_path, capsys):
    p = make_problem("zdt1")
    front = tmp_path / "front.csv"
    population_csv(front, p.reference_front)
    assert main(["indicators", str(front), "--problem", "zdt1"]) == 0
    out = capsys.readouterr().out
    hv = float(out.split("HV  =")[1].split()[0])
    assert abs(hv - 0.7245) < 1e-3
    assert "IGD = 0.000000e+00" in out
    empty = tmp_path / "empty.csv"
    empty.write_text("f1,f2\n")
    assert main(["indicators", str(empty), "--problem", "zdt1"]) == 2
    assert main(["indicators", str(front), "--problem", "uf8"]) == 2


def test_plotdata(tmp_path, capsys):
    runs = []
    for seed in range(3):
        d = tmp_path / f"r{seed}"
        assert main(["run", "--algo", "moead", "--problem", "zdt1", "--seed", str(seed), "--pop", "20", "--evals", "1000", "--out", str(d)]) == 0
        runs.append(str(d))
    out = tmp_path / "conv.csv"
    assert main(["plotdata", "convergence", *runs, "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "algo,seed,evals,hv" and len(lines) == 1 + 3 * 20
    d3 = tmp_path / "uf8"
    assert main(["run", "--algo", "moead-lo", "--problem", "uf8", "--pop", "21", "--set", "T=5", "--evals", "300", "--out", str(d3)]) == 0
    capsys.readouterr()
    assert main(["plotdata", "front", str(d3)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "algo,f1,f2,f3"
    assert main(["plotdata", "scatter", str(d3)]) == 2
    assert main(["plotdata", "convergence", str(tmp_path / "missing")]) == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.floats(allow_nan=False, allow_infinity=False, width=64), min_size=3, max_size=3), min_size=1, max_size=20))
def test_csv_roundtrip(tmp_path_factory, rows):
    path = tmp_path_factory.mktemp("csv") / "m.csv"
    F = np.array(rows)
    population_csv(path, F)
    assert np.array_equal(read_csv_matrix(path), F)


def test_keyvalue_parsing():
    assert parse_keyvalue("a = 1\n# c\n\nb=x y # tail\n") == {"a": "1", "b": "x y"}
    with pytest.raises(ValueError):
        parse_keyvalue("no equals sign")
