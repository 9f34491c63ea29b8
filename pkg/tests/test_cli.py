import csv
import io
import json
import subprocess
import sys

import pytest

from hc3.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_constants_json():
    code, text = call("constants")
    assert code == 0
    d = json.loads(text)
    assert d["schema"] == "hc3/1"
    assert d["xi0"] == pytest.approx(-0.768, abs=1e-3)
    assert d["C1"] == pytest.approx(0.254, abs=1e-3)


def test_constants_csv():
    code, text = call("constants", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 1
    assert float(rows[0]["theta0"]) == pytest.approx(0.59, abs=1e-2)


def test_disc_lambda_row():
    code, text = call("disc-lambda", "--b", "100")
    assert code == 0
    assert text.endswith("\n") and "\r" not in text
    row = next(csv.DictReader(io.StringIO(text)))
    assert float(row["lambda1"]) == pytest.approx(56.4, abs=1.0)
    assert list(row) == ["B", "m_star", "lambda1", "delta_m", "Delta_B", "residual"]


def test_hc3():
    code, text = call("hc3", "--kappa", "10", "--skip-local")
    assert code == 0
    row = json.loads(text)["rows"][0]
    assert row["H"] == pytest.approx(17.5, abs=0.5)
    assert abs(row["residual"]) < 1e-4


def test_series(tmp_path):
    z = tmp_path / "z.csv"
    z.write_text("0,0.2\n1,-0.1\n")
    code, text = call("series", "--order", "4", "--k2", "0.5", "--zeta", str(z))
    assert code == 0
    d = json.loads(text)
    assert len(d["eta"]) == 5
    assert d["max_resubstitution_residual"] <= 1e-12
    assert d["H_terms"][0] == {"exponent": 1.0, "coefficient": pytest.approx(1.6946, abs=1e-3)}


def test_gauge_check():
    code, text = call("gauge-check")
    d = json.loads(text)
    assert code == 0 and d["gamma0"] == 0.5 and d["max_error"] <= 1e-15


def test_mu_and_trial_check():
    code, text = call("mu", "--zeta", "0")
    assert code == 0 and json.loads(text)["rows"][0]["mu"] == pytest.approx(1.0, abs=1e-9)
    code, text = call("trial-check", "--b", "400", "--format", "csv")
    assert code == 0 and len(text.strip().splitlines()) == 3


def test_sweep():
    code, text = call("sweep", "--b-min", "100", "--b-max", "101", "--b-step", "0.5")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and [float(r["B"]) for r in rows] == [100.0, 100.5, 101.0]


def test_exit_codes():
    assert call("nonsense")[0] == 2
    assert call("disc-lambda", "--b", "-4")[0] == 2
    assert call("disc-lambda", "--b", "100", "--radial-n", "50")[0] == 2
    assert call("sweep", "--b-min", "100")[0] == 2
    assert call("series", "--zeta", "/nonexistent/z.csv")[0] == 2
    assert call("hc3", "--kappa", "10", "--skip-local", "--grid-n", "8")[0] == 2


def test_nonconvergence_exit_code(monkeypatch):
    from hc3 import critical_field
    from hc3.errors import BracketError

    def boom(*a, **k):
        raise BracketError("no crossing")
    monkeypatch.setattr(critical_field, "hc3_local", boom)
    assert call("hc3", "--kappa", "10")[0] == 3


def test_deterministic_output():
    assert call("constants")[1] == call("constants")[1]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "hc3", "gauge-check", "--format", "csv"],
                       capture_output=True, text=True, check=True)
    assert p.stdout.startswith("s,t,A1_bar,exact,error\n")
