import io
import json
import math
import subprocess
import sys

import pytest

from sharpgrad.cli import dumps, run
from sharpgrad.specialfn import sphere_area


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def record(*argv):
    code, out, _ = call(*argv)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_alpha_root():
    rec = record("alpha-root", "--n", "3", "--beta", "2.5")
    assert rec["n"] == 3 and rec["beta"] == 2.5
    assert rec["root"] == pytest.approx(1.2865, abs=1e-3)


def test_constant_pinf_alpha1():
    rec = record("constant", "--n", "3", "--alpha", "1", "--beta", "3", "--k", "1", "--p", "inf")
    assert rec["constant"] == pytest.approx(4 * math.pi, rel=1e-12)
    assert rec["branch"] == "pinf_alpha1" and rec["p"] == "inf"
    assert set(rec) == {"n", "alpha", "beta", "k", "p", "constant", "method", "branch", "variant",
                        "xn_exponent", "est_error"}


def test_invalid_params_exit_2():
    code, out, err = call("constant", "--n", "3", "--alpha", "0", "--beta", "1", "--k", "1", "--p", "2")
    assert code == 2 and out == "" and "beta" in err


def test_unknown_flag_rejected():
    code, out, _ = call("constant", "--n", "3", "--alpha", "0", "--beta", "3", "--p", "2", "--bogus", "1")
    assert code == 2 and out == ""


def test_no_closed_form_exit_3():
    code, out, _ = call("constant", "--n", "3", "--alpha", "0.5", "--beta", "3", "--p", "inf", "--method", "closed")
    assert code == 3 and out == ""


def test_auto_matches_closed_and_numeric():
    base = ["constant", "--n", "3", "--beta", "3", "--p"]
    auto = record(*base, "2", "--alpha", "0.5")
    closed = record(*base, "2", "--alpha", "0.5", "--method", "closed")
    assert auto == closed
    auto = record(*base, "inf", "--alpha", "0.5")
    numeric = record(*base, "inf", "--alpha", "0.5", "--method", "numeric")
    assert auto == numeric


def test_variant_flag():
    rec = record("constant", "--n", "3", "--alpha", "1", "--beta", "3", "--p", "1", "--variant", "as-printed")
    assert rec["constant"] == pytest.approx(9 * math.sqrt(3) / 32, rel=1e-14)
    assert rec["variant"] == "as-printed"


def test_coefficient_roundtrip():
    rec = record("coefficient", "--n", "4", "--alpha", "0.3", "--beta", "4.1", "--k", "0.7", "--p", "2", "--xn", "0.37")
    assert rec["coefficient"] == rec["constant"] / 0.37 ** rec["xn_exponent"]
    again = record(
        "coefficient", "--n", str(rec["n"]), "--alpha", repr(rec["alpha"]), "--beta", repr(rec["beta"]),
        "--k", repr(rec["k"]), "--p", str(rec["p"]), "--xn", repr(rec["xn"]),
    )
    assert again == rec


def test_dumps_17_digits():
    x = 0.1 + 0.2
    text = dumps({"x": x, "p": math.inf, "n": 3})
    assert json.loads(text)["x"] == x
    assert '"p":"inf"' in text
    assert "0.30000000000000004" in text


def test_table_remark2():
    code, out, _ = call("table", "remark2")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "n,beta,root" and lines[-1] == ""
    rows = [l.split(",") for l in lines[1:-1]]
    assert len(rows) == 24
    assert {int(r[0]) for r in rows} == {3, 4, 5, 6}


def test_sweep(tmp_path):
    grid = tmp_path / "grid.csv"
    grid.write_text("n,alpha,beta,p\n3,0,3,2\n3,0.5,3,inf\n3,1,3,1\n")
    code, out, _ = call("sweep", "--grid", str(grid))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,alpha,beta,p,closed,oracle,rel_diff,branch"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[3] for r in rows] == ["2", "inf", "1"]
    assert rows[1][4] == "" and rows[1][7] == "numeric_only"
    assert float(rows[0][6]) < 1e-8 and float(rows[2][6]) < 1e-8


def test_sweep_bad_header(tmp_path):
    grid = tmp_path / "grid.csv"
    grid.write_text("n,a,b,p\n3,0,3,2\n")
    assert call("sweep", "--grid", str(grid))[0] == 2


def test_verify_equality_case():
    rec = record("verify", "--n", "3", "--alpha", "0", "--beta", "3", "--p", "inf", "--xn", "1",
                 "--family", "constant", "--radius", "200")
    assert rec["ratio"] == pytest.approx(1, abs=5e-3)
    assert rec["measured"] == pytest.approx(2 * math.pi, rel=5e-3)


def test_verify_gaussian_and_near_extremal():
    rec = record("verify", "--n", "3", "--alpha", "1", "--beta", "3", "--p", "2", "--xn", "1",
                 "--family", "gaussian", "--center", "0.5,0", "--width", "0.4")
    assert 0 < rec["ratio"] <= 1
    rec = record("verify", "--n", "3", "--alpha", "1", "--beta", "3", "--p", "inf", "--xn", "1",
                 "--family", "near-extremal", "--direction", "0,0,1")
    assert rec["ratio"] >= 0.95 and rec["family"] == "kernel_sign"


def test_verify_harmonic_k():
    k = repr(2 / sphere_area(3).value)
    rec = record("verify", "--n", "3", "--alpha", "0", "--beta", "3", "--k", k, "--p", "inf", "--xn", "2",
                 "--family", "constant")
    assert rec["constant"] == pytest.approx(1, rel=1e-12)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sharpgrad", "alpha-root", "--n", "4", "--beta", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["root"] == pytest.approx(1.4115, abs=1e-3)
