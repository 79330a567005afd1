"""Command-line front end: evaluate finite sums, verify identities, benchmark.

The ``eval`` subcommand parses a summand g(k), always computes the
compensated direct oracle, then runs whichever routes were requested and
reports each value together with its deviation from that oracle.  Reports
serialize to JSON with a fixed field order (floats go through repr, so two
identical runs produce identical bytes once the runtime counters are set
aside) or to CSV.

Defaults may come from a plain ``key=value`` config file named by the
FINSUM_CONFIG environment variable; command-line flags win over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import expr as ex
from .errors import (CapabilityError, DomainError, EvaluationError,
                     FinsumError, ParseError, PreconditionError,
                     RecognitionError)
from .eulermaclaurin import EMJob, em_sum
from .fourier import recognize_fourier, sum_via_fourier
from .identities import eval_identity, verify_all
from .kernels import EXP, KPOW, _Unrecognized, linear_terms, recognize_pair
from .laplace import sum_via_integral
from .series import (Diagnostics, SeriesSpec, SumResult, Variant, direct_sum,
                     effective_term)
from .telescope import telescoping_sum

VERSION = "0.1.0"

#: every evaluation route the ``eval`` subcommand knows, reporting order.
METHODS = ("oracle", "laplace", "fourier", "telescope", "euler-maclaurin",
           "closed-form")

# a route that cannot handle the request records an error entry instead of
# aborting the report; the oracle is computed outside this net, so a broken
# summand still fails the whole run.
_ROUTE_ERRORS = (CapabilityError, RecognitionError, DomainError,
                 PreconditionError, EvaluationError)


# -- per-route runners -------------------------------------------------------

def _fold_scale(node: ex.Node, alpha: float) -> ex.Node:
    """g(alpha*k) as a tree in k, for routes that only know unit spacing."""
    if alpha == 1:
        return node
    return ex.substitute_index(node, ex.Mul(ex.Num(alpha), ex.Var()))


def _run_laplace(node: ex.Node, spec: SeriesSpec, tol: float) -> SumResult:
    rec = recognize_pair(node)
    return sum_via_integral(spec, rec.kernel, tol=tol)


def _run_fourier(node: ex.Node, spec: SeriesSpec, tol: float) -> SumResult:
    if spec.variant is not Variant.STANDARD:
        raise CapabilityError("the transform route covers the standard variant only")
    if spec.alpha.imag != 0:
        raise CapabilityError("the transform route needs a real positive scale")
    pair = recognize_fourier(_fold_scale(node, spec.alpha.real))
    return sum_via_fourier(pair, spec.n_terms, tol=max(tol, 1e-12))


def _run_telescope(spec: SeriesSpec, tol: float) -> SumResult:
    return telescoping_sum(effective_term(spec), spec.n_terms, tol=tol)


def _run_em(spec: SeriesSpec, tol: float) -> SumResult:
    h = effective_term(spec)
    n = spec.n_terms
    if n == 1:
        # a one-point lattice needs no correction terms at all
        return SumResult(value=complex(h(1.0)), method="euler-maclaurin",
                         error_estimate=0.0, diagnostics=Diagnostics(nodes=1))
    job = EMJob(h, 1.0, float(n), n - 1)
    return em_sum(job, quad_tol=min(tol, 1e-13))


def _term_closed_form(factors: dict, n: int) -> complex:
    live = {key: v for key, v in factors.items() if v != 0}
    keys = set(live)
    if not keys:
        return complex(n)
    trig = [key for key in keys if key[0] in ("sin", "cos")]
    if len(trig) == 1:
        key = trig[0]
        kind, theta = key
        if live[key] != 1:
            raise CapabilityError("no closed form for powers of a trigonometric factor")
        rest = keys - {key}
        if kind == "cos":
            if not rest:
                return eval_identity("cosine", {"theta": theta}, n)
            if rest == {KPOW} and live[KPOW] == 1:
                return eval_identity("k-cosine", {"theta": theta}, n)
            if rest == {EXP}:
                c = live[EXP]
                if c.imag == 0 and c.real < 0:
                    return eval_identity("exp-cosine",
                                         {"theta": theta, "beta": -c.real}, n)
        elif kind == "sin" and not rest:
            return eval_identity("sine", {"theta": theta}, n)
        raise CapabilityError("no catalog entry for this trigonometric combination")
    if keys == {EXP}:
        c = live[EXP]
        if c.imag == 0 and c.real < 0:
            return eval_identity("geometric", {"a": -c.real, "alpha": 1.0}, n)
        raise CapabilityError("the geometric closed form needs a real decaying exponent")
    if keys == {KPOW}:
        p = live[KPOW]
        if p < -1:
            return eval_identity("power", {"s": float(-p)}, n)
        raise CapabilityError("the power closed form needs an exponent below -1")
    raise CapabilityError("no catalog entry matches this term")


def _run_closed_form(node: ex.Node, spec: SeriesSpec) -> SumResult:
    """Match the summand against the identity catalog, term by term."""
    if spec.variant is not Variant.STANDARD:
        raise CapabilityError("the identity catalog covers the standard variant only")
    if spec.alpha.imag != 0:
        raise CapabilityError("the identity catalog needs a real positive scale")
    folded = _fold_scale(node, spec.alpha.real)
    try:
        terms = linear_terms(folded)
    except _Unrecognized as exc:
        raise CapabilityError(f"no closed form: {exc}") from None
    total = 0j
    for coeff, factors in terms:
        total += coeff * _term_closed_form(factors, spec.n_terms)
    value = complex(total)
    return SumResult(value=value, method="closed-form",
                     error_estimate=4e-16 * max(1.0, abs(value)),
                     diagnostics=Diagnostics(nodes=len(terms)))


# -- report assembly ---------------------------------------------------------

def _cplx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _jsonable(value):
    if isinstance(value, complex):
        return _cplx(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return float(value)


def _success_record(name: str, result: SumResult, oracle_value: complex,
                    runtime_ns: int) -> dict:
    d = result.diagnostics
    return {
        "method": name,
        "value": _cplx(result.value),
        "abs_err_vs_oracle": abs(result.value - oracle_value),
        "error_estimate": float(result.error_estimate),
        "flags": list(result.flags),
        "diagnostics": {
            "nodes": int(d.nodes),
            "truncation_index": int(d.truncation_index),
            "converged": bool(d.converged),
            "notes": _jsonable(d.notes),
            "runtime_ns": int(runtime_ns),
        },
    }


def run(text: str, n: int, method: str = "all", alpha: complex = 1 + 0j,
        variant: Variant | str = Variant.STANDARD, beta: complex = 0j,
        tol: float = 1e-10) -> dict:
    """Evaluate sum_{k=1}^{n} of the parsed summand; the full report as a dict.

    The oracle record is always present and first; ``abs_err_vs_oracle`` in
    every other record is measured against it.  Routes that cannot handle
    the request contribute an error entry instead of aborting the run.
    """
    node = ex.parse_expression(text)
    try:
        var = variant if isinstance(variant, Variant) else Variant(variant)
    except ValueError:
        raise DomainError(f"unknown variant {variant!r}") from None
    if method != "all" and method not in METHODS:
        raise DomainError(
            f"unknown method {method!r}; have all, {', '.join(METHODS)}")
    spec = SeriesSpec(g=ex.as_function(node), n_terms=n, alpha=complex(alpha),
                      variant=var, beta=complex(beta))

    started = time.perf_counter_ns()
    oracle = direct_sum(spec)
    records = [_success_record("oracle", oracle, oracle.value,
                               time.perf_counter_ns() - started)]

    runners = {
        "laplace": lambda: _run_laplace(node, spec, tol),
        "fourier": lambda: _run_fourier(node, spec, tol),
        "telescope": lambda: _run_telescope(spec, tol),
        "euler-maclaurin": lambda: _run_em(spec, tol),
        "closed-form": lambda: _run_closed_form(node, spec),
    }
    wanted = METHODS[1:] if method == "all" else [m for m in METHODS[1:] if m == method]
    for name in wanted:
        started = time.perf_counter_ns()
        try:
            result = runners[name]()
        except _ROUTE_ERRORS as exc:
            records.append({"method": name, "error": str(exc), "flags": ["error"]})
            continue
        records.append(_success_record(name, result, oracle.value,
                                       time.perf_counter_ns() - started))

    meta = {
        "expr": text,
        "n": n,
        "alpha": _cplx(spec.alpha),
        "variant": spec.variant.value,
        "beta": _cplx(spec.beta),
        "tol": tol,
        "version": VERSION,
    }
    return {"meta": meta, "results": records}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


_CSV_FIELDS = ("method", "value_re", "value_im", "abs_err_vs_oracle",
               "error_estimate", "flags", "nodes", "runtime_ns")


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for rec in report["results"]:
        if "error" in rec:
            writer.writerow([rec["method"], "", "", "", "",
                             "error:" + rec["error"], "", ""])
            continue
        writer.writerow([rec["method"],
                         repr(rec["value"]["re"]), repr(rec["value"]["im"]),
                         repr(rec["abs_err_vs_oracle"]),
                         repr(rec["error_estimate"]),
                         ";".join(rec["flags"]),
                         rec["diagnostics"]["nodes"],
                         rec["diagnostics"]["runtime_ns"]])
    return buf.getvalue()


def _exit_code(report: dict, requested: list[str]) -> int:
    """0 iff at least one requested route produced a clean (unflagged) value."""
    for rec in report["results"]:
        if rec["method"] in requested and not rec.get("flags"):
            return 0
    return 1


# -- config file -------------------------------------------------------------

def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise DomainError(f"cannot parse {text!r} as a number") from None


def _load_config() -> dict:
    path = os.environ.get("FINSUM_CONFIG")
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from None
    out: dict[str, str] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
        out[key.strip()] = value.strip()
    return out


def _setting(args, config: dict, key: str, cast, fallback, attr: str | None = None):
    """Flag if given, else the config file entry, else the fallback."""
    flag = getattr(args, attr or key, None)
    if flag is not None:
        return flag
    if key in config:
        return cast(config[key])
    return fallback


# -- subcommands -------------------------------------------------------------

def _cmd_eval(args, config: dict) -> int:
    text = _setting(args, config, "expr", str, None)
    if text is None:
        raise DomainError("--expr is required (as a flag or a config entry)")
    n = _setting(args, config, "n", int, None)
    if n is None:
        raise DomainError("--n is required (as a flag or a config entry)")
    method = _setting(args, config, "method", str, "all")
    alpha = _setting(args, config, "alpha", _parse_complex, 1 + 0j)
    variant = _setting(args, config, "variant", str, Variant.STANDARD.value)
    beta = _setting(args, config, "beta", _parse_complex, 0j)
    tol = _setting(args, config, "tol", float, 1e-10)
    fmt = _setting(args, config, "format", str, "json", attr="fmt")
    if fmt not in ("json", "csv"):
        raise DomainError(f"unknown format {fmt!r}; have json, csv")

    report = run(text, n, method=method, alpha=alpha, variant=variant,
                 beta=beta, tol=tol)
    sys.stdout.write(report_json(report) if fmt == "json" else report_csv(report))
    requested = list(METHODS) if method == "all" else [method]
    return _exit_code(report, requested)


def _dense_grids() -> dict:
    thetas = [float(t) for t in np.round(np.arange(0.15, 6.14, 0.13), 10)]
    ns = (1, 2, 3, 5, 8, 13, 21, 50)
    trig = [({"theta": t}, n) for t in thetas for n in ns]
    return {
        "sine": trig,
        "cosine": trig,
        "k-cosine": trig,
        "exp-cosine": [({"theta": t, "beta": b}, n)
                       for t in thetas[::4]
                       for b in (0.1, 0.5, 1.0, 2.0, 3.0) for n in ns],
        "power": [({"s": s}, n) for s in (1.1, 1.5, 2.0, 2.5, 3.0, 4.0)
                  for n in (1, 2, 10, 100, 1000)],
        "geometric": [({"a": a, "alpha": al}, n)
                      for a in (0.1, 0.3, 1.0, 2.0) for al in (0.5, 1.0, 2.0)
                      for n in (1, 5, 20, 100)],
    }


def _cmd_identities(args, config: dict) -> int:
    grid = _setting(args, config, "grid", str, "default")
    if grid not in ("default", "dense"):
        raise DomainError(f"unknown grid {grid!r}; have default, dense")
    reports = verify_all(_dense_grids() if grid == "dense" else None)
    failures = 0
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        print(f"{rep.name}: {status} points={rep.points} "
              f"max_abs={rep.max_abs_dev:.3e} max_rel={rep.max_rel_dev:.3e}")
        if not rep.passed:
            failures += 1
    return 1 if failures else 0


#: the fixed benchmark suite: one summand per kernel family the routes cover.
_BENCH_SUITE = (
    ("1/k", 50),
    ("1/k^2", 100),
    ("1/(k^2+1)", 10),
    ("exp(-0.7*k)", 25),
    ("sin(1.1*k)", 50),
    ("k*cos(2.2*k)", 30),
    ("exp(-k^2)", 8),
)


def _cmd_bench(args, config: dict) -> int:
    suite = _setting(args, config, "suite", str, "standard")
    if suite != "standard":
        raise DomainError(f"unknown suite {suite!r}; have standard")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(("expr", "N", "method", "value_re", "value_im", "abs_err",
                     "nodes", "runtime_ns"))
    for text, n in _BENCH_SUITE:
        report = run(text, n)
        for rec in report["results"]:
            if "error" in rec:
                continue
            writer.writerow((text, n, rec["method"],
                             repr(rec["value"]["re"]), repr(rec["value"]["im"]),
                             repr(rec["abs_err_vs_oracle"]),
                             rec["diagnostics"]["nodes"],
                             rec["diagnostics"]["runtime_ns"]))
    return 0


# -- entry point -------------------------------------------------------------

def _complex_arg(text: str) -> complex:
    try:
        return _parse_complex(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finsum",
        description="finite-series summation engines with a shared oracle")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a finite sum by one or all routes")
    ev.add_argument("--expr", help="summand g(k), e.g. '1/(k^2+1)'")
    ev.add_argument("--n", type=int, help="number of terms N")
    ev.add_argument("--method", choices=("all",) + METHODS,
                    help="route to run (default: all)")
    ev.add_argument("--alpha", type=_complex_arg,
                    help="lattice scale, Re > 0 (default 1)")
    ev.add_argument("--variant", choices=[v.value for v in Variant],
                    help="summation variant (default standard)")
    ev.add_argument("--beta", type=_complex_arg,
                    help="shift or damping parameter for the variants that take one")
    ev.add_argument("--tol", type=float, help="target tolerance (default 1e-10)")
    ev.add_argument("--format", dest="fmt", choices=("json", "csv"),
                    help="report format (default json)")

    idents = sub.add_parser("identities", help="closed-form identity utilities")
    idsub = idents.add_subparsers(dest="subcommand", required=True)
    ver = idsub.add_parser("verify",
                           help="sweep every identity against the direct oracle")
    ver.add_argument("--grid", choices=("default", "dense"),
                     help="verification grid density")

    bench = sub.add_parser("bench", help="time every applicable route on a fixed suite")
    bench.add_argument("--suite", choices=("standard",), help="suite name")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config()
        if args.command == "eval":
            return _cmd_eval(args, config)
        if args.command == "identities":
            return _cmd_identities(args, config)
        return _cmd_bench(args, config)
    except ParseError as exc:
        sys.stderr.write(f"finsum: {exc}\n")
        return 2
    except FinsumError as exc:
        sys.stderr.write(f"finsum: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
