"""Command-line front end. Data goes to stdout (one JSON object per line, or CSV), messages to stderr.

Exit codes: 0 ok, 2 invalid parameters, 3 no closed form for ``--method closed``,
4 numeric failure.
"""

import argparse
import csv
import io
import math
import sys

from .constants import sharp_constant
from .errors import InvalidParams, NumericFailure, OutOfRegime
from .harness import Constant, EvaluationPoint, GaussianBump, Tabulated, near_extremal_boundary, verify_bound
from .model import Branch, KernelParams, NormIndex, Variant, classify_regime, validate, xn_exponent
from .oracle import numeric_constant
from .roots import alpha_root, root_table

__all__ = ["run", "main", "dumps"]

EXIT_OK, EXIT_INVALID, EXIT_NO_CLOSED_FORM, EXIT_NUMERIC = 0, 2, 3, 4


def _fmt(v):
    if isinstance(v, bool) or v is None:
        return "true" if v is True else "false" if v is False else "null"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "null"
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        return format(v, ".17g")
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, dict):
        return "{" + ",".join(f"{_fmt(str(k))}:{_fmt(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return _fmt(float(v))


def dumps(obj):
    """Compact JSON with floats at 17 significant digits and inf as the string "inf"."""
    return _fmt(obj)


def _p_out(p):
    return "inf" if p.is_inf else p.p


def _real(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _norm_index(text):
    try:
        return NormIndex.parse(text)
    except (ValueError, InvalidParams) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _vector(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}")


def _kernel_args(ap, need_p=True):
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--alpha", type=_real, required=True)
    ap.add_argument("--beta", type=_real, required=True)
    ap.add_argument("--k", type=_real, default=1.0)
    if need_p:
        ap.add_argument("--p", type=_norm_index, required=True)


def _constant_args(ap):
    _kernel_args(ap)
    ap.add_argument("--method", choices=("auto", "closed", "numeric"), default="auto")
    ap.add_argument("--variant", choices=("corrected", "as-printed"), default="corrected")


def build_parser():
    ap = argparse.ArgumentParser(prog="sharpgrad", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    _constant_args(sub.add_parser("constant", help="sharp constant C_{alpha,beta,p}"))

    co = sub.add_parser("coefficient", help="pointwise coefficient at x_n")
    _constant_args(co)
    co.add_argument("--xn", type=_real, required=True)

    ar = sub.add_parser("alpha-root", help="threshold root alpha_n(beta)")
    ar.add_argument("--n", type=int, required=True)
    ar.add_argument("--beta", type=_real, required=True)

    tb = sub.add_parser("table", help="tabulated results")
    tb.add_argument("name", choices=("remark2",))

    sw = sub.add_parser("sweep", help="closed form against oracle over a grid file")
    sw.add_argument("--grid", required=True, help="CSV with header n,alpha,beta,p")

    ve = sub.add_parser("verify", help="numeric gradient against the bound")
    _kernel_args(ve)
    ve.add_argument("--xn", type=_real, required=True)
    ve.add_argument("--xprime", type=_vector, default=None, help="tangential coordinates, comma separated")
    ve.add_argument("--family", choices=("constant", "gaussian", "near-extremal", "tabulated"), required=True)
    ve.add_argument("--radius", type=_real, default=None)
    ve.add_argument("--c", type=_real, default=1.0, help="value for --family constant")
    ve.add_argument("--center", type=_vector, default=None)
    ve.add_argument("--width", type=_real, default=1.0)
    ve.add_argument("--height", type=_real, default=1.0)
    ve.add_argument("--direction", type=_vector, default=None, help="z for near-extremal data")
    ve.add_argument("--table", default=None, help="CSV file for --family tabulated")
    return ap


def _params(a):
    return KernelParams(a.n, a.alpha, a.beta, a.k)


def _constant_record(a):
    params = _params(a)
    p = validate(params, a.p)
    const = sharp_constant(params, p, a.method, Variant(a.variant))
    return {
        "n": params.n,
        "alpha": params.alpha,
        "beta": params.beta,
        "k": params.k,
        "p": _p_out(p),
        "constant": const.value,
        "method": const.method.value,
        "branch": const.branch.value,
        "variant": const.variant.value,
        "xn_exponent": xn_exponent(params, p),
        "est_error": const.est_error,
    }


def _cmd_constant(a, out):
    out.write(dumps(_constant_record(a)) + "\n")


def _cmd_coefficient(a, out):
    if not a.xn > 0:
        raise InvalidParams("xn", f"must be positive, got {a.xn!r}")
    rec = _constant_record(a)
    rec["xn"] = a.xn
    rec["coefficient"] = rec["constant"] * a.xn ** (-rec["xn_exponent"])
    out.write(dumps(rec) + "\n")


def _cmd_alpha_root(a, out):
    if a.n < 3:
        raise InvalidParams("n", f"must be >= 3, got {a.n}")
    r = alpha_root(a.n, a.beta)
    out.write(dumps({"n": r.n, "beta": r.beta, "root": r.value, "residual": r.residual}) + "\n")


def _csv_num(v):
    """Shortest round-trip decimal; integral values without the trailing .0."""
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


def _csv_writer(out):
    return csv.writer(out, lineterminator="\n")


def _cmd_table(a, out):
    w = _csv_writer(out)
    w.writerow(["n", "beta", "root"])
    for n, beta, r in root_table():
        w.writerow([n, _csv_num(beta), _csv_num(r.value)])


def sweep_rows(rows):
    """Evaluate closed form and oracle for each (n, alpha, beta, p) row; yields CSV fields."""
    for row in rows:
        params = KernelParams(int(row["n"]), float(row["alpha"]), float(row["beta"]))
        p = validate(params, row["p"])
        branch = classify_regime(params, p).branch
        oracle = numeric_constant(params, p).value
        if branch is Branch.NUMERIC_ONLY:
            closed, rel = "", ""
        else:
            closed = sharp_constant(params, p, "closed").value
            rel = format(abs(closed - oracle) / abs(oracle), ".6e")
            closed = _csv_num(closed)
        p_text = "inf" if p.is_inf else _csv_num(p.p)
        yield [params.n, _csv_num(params.alpha), _csv_num(params.beta), p_text, closed, _csv_num(oracle), rel,
               branch.value]


def _cmd_sweep(a, out):
    with open(a.grid, newline="") as fh:
        reader = csv.DictReader(fh)
        if [h.strip() for h in reader.fieldnames or []] != ["n", "alpha", "beta", "p"]:
            raise InvalidParams("grid", "header must be n,alpha,beta,p")
        rows = list(reader)
    buf = io.StringIO()
    w = _csv_writer(buf)
    w.writerow(["n", "alpha", "beta", "p", "closed", "oracle", "rel_diff", "branch"])
    for fields in sweep_rows(rows):
        w.writerow(fields)
    out.write(buf.getvalue())


def _boundary(a, params, x):
    m = params.n - 1
    if a.family == "constant":
        return Constant(a.c)
    if a.family == "gaussian":
        center = a.center if a.center is not None else x.x_prime
        if len(center) != m:
            raise InvalidParams("center", f"needs {m} coordinates")
        return GaussianBump(center, a.width, a.height, a.p)
    if a.family == "tabulated":
        if a.table is None:
            raise InvalidParams("table", "--family tabulated needs --table")
        return Tabulated.from_csv(a.table, a.p)
    return near_extremal_boundary(params, a.p, x, a.direction)


def _cmd_verify(a, out):
    params = _params(a)
    p = validate(params, a.p)
    xp = a.xprime if a.xprime is not None else (0.0,) * (params.n - 1)
    if len(xp) != params.n - 1:
        raise InvalidParams("xprime", f"needs {params.n - 1} coordinates")
    x = EvaluationPoint(xp, a.xn)
    f = _boundary(a, params, x)
    rep = verify_bound(params, p, f, x, truncation_radius=a.radius)
    rec = {"n": params.n, "alpha": params.alpha, "beta": params.beta, "k": params.k, "p": _p_out(p),
           "xn": a.xn, "family": f.family, **rep.as_dict()}
    out.write(dumps(rec) + "\n")


COMMANDS = {
    "constant": _cmd_constant,
    "coefficient": _cmd_coefficient,
    "alpha-root": _cmd_alpha_root,
    "table": _cmd_table,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def run(argv=None, out=None, err=None):
    """Run one invocation and return its exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        COMMANDS[a.command](a, out)
    except OutOfRegime as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NO_CLOSED_FORM if getattr(a, "method", None) == "closed" else EXIT_INVALID
    except NumericFailure as exc:
        err.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except (InvalidParams, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run())
