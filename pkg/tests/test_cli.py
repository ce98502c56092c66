import json
import subprocess
import sys
from collections import Counter
from fractions import Fraction as F

import numpy as np
import pytest

from su3cg.cli import main
from su3cg.exact import Surd
from su3cg.generators import fundamental_ladders
from su3cg.isoscalar import clear_cache


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def jsonl(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "jsonl")
    assert code == 0
    return json.loads(out)


def test_dim_and_casimir(capsys):
    assert run(capsys, "dim", "1", "1")[1].strip() == "8"
    assert run(capsys, "dim", "0", "0")[1].strip() == "1"
    rec = jsonl(capsys, "casimir", "1", "0")
    assert rec["results"]["f"] == "4/3"
    assert rec["results"]["g"] == "20/9"
    assert rec["provenance"] == "closed-form"


def test_series(capsys):
    assert run(capsys, "series", "1", "1", "1", "1")[1].strip() == "(2,2) + (3,0) + (0,3) + 2x(1,1) + (0,0)"
    assert run(capsys, "series", "1", "0", "0", "0")[1].strip() == "(1,0)"
    assert run(capsys, "series", "1", "0", "0", "1")[1].strip() == "(1,1) + (0,0)"


def test_gen(capsys):
    rec = jsonl(capsys, "gen", "1", "0", "--op", "I+")
    m = np.zeros((3, 3))
    for e in rec["results"]["matrices"]["I+"]:
        m[e["row"], e["col"]] = float(Surd.from_json(e["value"]))
    assert np.allclose(m, fundamental_ladders()["I+"])
    assert jsonl(capsys, "gen", "0", "0", "--op", "K+")["results"]["matrices"]["K+"] == []
    cols = Counter(e["col"] for e in jsonl(capsys, "gen", "1", "1", "--op", "K+")["results"]["matrices"]["K+"])
    assert max(cols.values()) <= 2


def test_isf(capsys):
    rec = jsonl(capsys, "isf", "1", "1", "1", "1", "3", "0")
    vals = [Surd.from_json(e["value"]) for e in rec["results"]["rows"][0]["entries"]]
    assert vals == [Surd.sqrt(F(1, 2)), Surd.sqrt(F(1, 2), -1)]
    rec = jsonl(capsys, "isf", "1", "1", "1", "1", "0", "0")
    got = {(e["mu"], e["j"], e["k"]): str(Surd.from_json(e["value"])) for e in rec["results"]["rows"][0]["entries"]}
    assert got == {("0", "1", "1"): "sqrt(3/8)", ("-1", "1/2", "1/2"): "-1/2",
                   ("0", "0", "0"): "-sqrt(1/8)", ("1", "1/2", "1/2"): "1/2"}
    rec = jsonl(capsys, "isf", "1", "1", "1", "1", "1", "1", "--all")
    assert {r["gamma"] for r in rec["results"]["rows"]} == {1, 2}
    assert len(rec["results"]["rows"]) == 2 * 4


def test_cgc_zero_with_reason(capsys):
    rec = jsonl(capsys, "cgc", "1", "0", "0", "1", "1", "1", "--i1", "1/2", "--m1", "1/2", "--y1", "1/3",
                "--i2", "1/2", "--m2", "-1/2", "--y2", "-1/3", "--i", "1/2", "--i3", "1/2", "--y", "1")
    assert rec["results"]["float"] == 0.0
    assert rec["results"]["reason"] == "hypercharge not additive"


def test_cgc_negative_arguments(capsys):
    rec = jsonl(capsys, "cgc", "1", "0", "0", "1", "1", "1", "--i1", "1/2", "--m1", "1/2", "--y1", "1/3",
                "--i2", "1/2", "--m2", "-1/2", "--y2", "-1/3", "--i", "1", "--i3", "0", "--y", "0")
    assert rec["results"]["reason"] is None
    assert abs(abs(rec["results"]["float"]) - 2 ** -0.5) < 1e-15


def test_usage_errors(capsys):
    code, _, err = run(capsys, "isf", "1", "1", "1", "1", "3", "3")
    assert code == 2 and "does not occur" in err
    code, _, err = run(capsys, "isf", "1", "1", "1", "1", "1", "1", "--gamma", "3")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["dim", "-1", "0"])
    assert exc.value.code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "commutators", "--max-dim", "100")
    assert code == 0 and out.startswith("PASS")
    rec = jsonl(capsys, "verify", "--suite", "unitarity", "--max-dim", "27")
    assert rec["results"]["passed"]
    assert rec["results"]["suites"][0]["max_residual"] <= 1e-12


def test_verify_failure_exit_code(capsys, monkeypatch):
    from su3cg import verify

    monkeypatch.setitem(verify.SUITES, "golden", lambda d: verify.SuiteResult("golden", False, 1.0, 1, 1e-12))
    assert run(capsys, "verify", "--suite", "golden")[0] == 3


def test_jsonl_is_deterministic():
    argv = [sys.executable, "-m", "su3cg.cli", "isf", "2", "1", "1", "1", "2", "1", "--all", "--format", "jsonl"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_cache_round_trip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SU3_CACHE_DIR", str(tmp_path))
    clear_cache()
    cold = jsonl(capsys, "isf", "1", "1", "1", "1", "1", "1", "--all")
    assert not cold["cache_hit"]
    assert len(list(tmp_path.glob("isf_1_1_1_1_1_1.jsonl"))) == 1
    assert not list(tmp_path.glob(".isf-*"))
    warm = jsonl(capsys, "isf", "1", "1", "1", "1", "1", "1", "--all")
    assert warm["cache_hit"]
    cold.pop("cache_hit")
    warm.pop("cache_hit")
    assert cold == warm
