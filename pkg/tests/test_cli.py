import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from tmst_bounds import cli

HEADER = "lambda,v,r,N,E_lf,E_uf,E_ur,E_LN,I_B,separable"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture(scope="module")
def schema():
    text = resources.files("tmst_bounds").joinpath("schemas/eval.schema.json").read_text()
    return json.loads(text)


def test_eval_reference(capsys, schema):
    code, out, _ = run(capsys, "eval", "--lambda", "0.5", "--v", "0.2")
    assert code == 0
    doc = json.loads(out)
    assert doc["e_ln"] == 1.0
    assert not doc["separable"]
    jsonschema.validate(doc, schema)


def test_eval_separable(capsys, schema):
    code, out, _ = run(capsys, "eval", "--lambda", "0.2", "--v", "0.2")
    doc = json.loads(out)
    assert code == 0 and doc["separable"] is True
    assert [doc[k] for k in ("e_lf", "e_uf", "e_ur", "e_ln", "i_b")] == [0.0] * 5
    jsonschema.validate(doc, schema)


def test_eval_alternate_input(capsys):
    code, out, _ = run(capsys, "eval", "--r", "0.5493061443340548", "--n", "0.25")
    assert code == 0
    assert json.loads(out)["e_ln"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("argv", [
    ("eval", "--lambda", "1.5", "--v", "0.2"),
    ("eval", "--lambda", "0.5"),
    ("eval", "--lambda", "0.5", "--v", "0.2", "--r", "0.1", "--n", "1"),
    ("eval", "--lambda", "nan", "--v", "0.2"),
    ("eval", "--lambda", "abc", "--v", "0.2"),
    ("bogus",),
])
def test_eval_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_eval_convergence_failure(capsys):
    code, out, err = run(capsys, "eval", "--lambda", "0.99", "--v", "0.9", "--max-shell", "20")
    assert code == 3
    assert "not converged" in err
    assert json.loads(out)["e_lf"] is None


def test_sweep_contract(capsys):
    code, out, _ = run(capsys, "sweep", "--lambda", "0.5", "--n-min", "0", "--n-max", "1",
                       "--steps", "3")
    assert code == 0
    assert out.splitlines()[0] == HEADER
    data = rows(out)
    assert len(data) == 3
    assert float(data[0]["N"]) == 0.0
    assert float(data[0]["E_uf"]) == pytest.approx(1.081704, abs=1e-6)
    assert [float(r["N"]) for r in data] == sorted(float(r["N"]) for r in data)
    assert all(float(r["E_uf"]) >= float(r["E_lf"]) for r in data)
    assert data[-1]["separable"] == "true"


def test_sweep_formatting(capsys):
    _, out, _ = run(capsys, "sweep", "--lambda", "0.3", "--n-min", "0", "--n-max", "0.5",
                    "--steps", "4")
    for row in rows(out):
        for key in ("r", "E_uf", "E_LN"):
            mantissa = row[key].split("e")[0].replace("-", "").replace(".", "").lstrip("0")
            assert len(mantissa) <= 9
            assert "E" not in row[key] and "," not in row[key]


def test_sweep_byte_stable(capsys, monkeypatch):
    argv = ("sweep", "--lambda", "0.6", "--n-min", "0", "--n-max", "2", "--steps", "9")
    monkeypatch.setenv("TMST_BOUNDS_THREADS", "1")
    first = run(capsys, *argv)[1]
    monkeypatch.setenv("TMST_BOUNDS_THREADS", "4")
    second = run(capsys, *argv)[1]
    assert first == second


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--lambda", "0.5", "--n-max", "1", "--steps", "2",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 2 and data[0]["E_LN"] == pytest.approx(1.5849625007, abs=1e-9)


@pytest.mark.parametrize("argv", [
    ("sweep", "--lambda", "0.5", "--steps", "1"),
    ("sweep", "--lambda", "0.5", "--n-min", "1", "--n-max", "0.5"),
    ("sweep", "--lambda", "0.5", "--n-min", "-1"),
    ("sweep", "--lambda", "1.2"),
    ("sweep",),
])
def test_sweep_invalid(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_sweep_writes_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "sweep", "--lambda", "0.5", "--steps", "3", "--out", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text().splitlines()[0] == HEADER


def test_sweep_failure_leaves_no_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--lambda", "0.99", "--n-min", "0", "--n-max", "20",
                     "--steps", "3", "--max-shell", "20", "--out", str(out))
    assert code == 3
    assert list(tmp_path.iterdir()) == []


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("TMST_BOUNDS_THREADS", "many")
    assert run(capsys, "sweep", "--lambda", "0.5", "--steps", "2")[0] == 2


def test_figure_columns(capsys):
    _, out3, _ = run(capsys, "figure", "--id", "3", "--steps", "5")
    assert out3.splitlines()[0] == "lambda,v,r,N,E_lf,E_uf,E_ur,I_B,separable"
    _, out2, _ = run(capsys, "figure", "--id", "2", "--steps", "5")
    assert out2.splitlines()[0] == HEADER
    _, out1, _ = run(capsys, "figure", "--id", "1", "--steps", "100")
    assert out1.splitlines()[0] == "lambda,v,r,N,E_uf,E_ur,E_LN,I_B,separable"
    data = rows(out1)
    assert len(data) == 100
    assert {r["lambda"] for r in data} == {"0.99"}


def test_figure_range():
    spec = cli.figure_spec(2)
    assert spec.n_max == pytest.approx(1.0)
    assert spec.steps == 200
    assert cli.figure_spec(1).n_max == 2.0
    assert cli.figure_spec(3).n_max == pytest.approx(0.01 / 0.99)


def test_figure_unknown(capsys):
    assert run(capsys, "figure", "--id", "4")[0] == 2


def test_verify_insufficient_truncation(capsys):
    code, out, err = run(capsys, "verify", "--fock-dim", "4", "--grid", "coarse")
    assert code in (1, 3)


def test_verify_memory_cap(capsys):
    code, _, err = run(capsys, "verify", "--fock-dim", "200", "--grid", "coarse")
    assert code == 3 and "cap" in err
