"""Command-line front end.

    padval sum --p 2 --a 1 --n-max 20
    padval verify lcm-binom --n-max 500
    padval scan-equality --p 3 --n-max 60
    padval padic-log --p 3 --a 1 --precision 6

Exit status: 0 all claims hold, 1 some claim failed, 2 bad usage/config.
Every flag can also be set through PADVAL_<FLAG> (e.g. PADVAL_N_MAX=100);
an explicit flag wins over the environment.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
from fractions import Fraction

from . import bounds, padic_log, series
from .arith import INF, ParameterError, format_rational, require_prime, val_p

log = logging.getLogger("padval")

ENV_PREFIX = "PADVAL_"
CHECKS = ("mansour", "lcm-binom", "identity11", "taylor", "theorem2", "eqint", "functional-eq", "eq14")


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=_env("p", 2))
    common.add_argument("--a", type=int, default=_env("a", 1))
    common.add_argument("--n-max", type=int, default=_env("n-max", 50))
    common.add_argument("--precision", type=int, default=_env("precision", padic_log.DEFAULT_PRECISION))
    common.add_argument("--format", choices=("json", "csv", "human"), default=_env("format", "human"))
    common.add_argument("--seed", type=int, default=_env("seed", 0))
    common.add_argument("--samples", type=int, default=_env("samples", 100))
    common.add_argument("--window", type=int, default=_env("window", 50))
    common.add_argument("--jobs", type=int, default=_env("jobs", os.cpu_count() or 1))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="padval", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sum", parents=[common], help="valuations of s_n against the optimal bound")
    v = sub.add_parser("verify", parents=[common], help="run one identity/theorem check")
    v.add_argument("check", choices=CHECKS)
    sub.add_parser("scan-equality", parents=[common], help="indices where the bound is tight")
    pl = sub.add_parser("padic-log", parents=[common], help="truncated p-adic logarithm checks")
    pl.add_argument("--x", type=_rational, default=None, help="also print -L_p(1-x) mod p^N")
    return parser


def _claim(anchor: str, params: dict, ok: bool, witness=None, **extra) -> dict:
    c = {"anchor": anchor, "params": params, "verdict": "pass" if ok else "fail"}
    c.update(extra)
    if witness is not None:
        c["witness"] = witness
    return c


def _series_params(args) -> series.SeriesParams:
    return series.SeriesParams(args.p, args.a)


def _positive(name: str, value: int):
    if value < 1:
        raise ParameterError(f"--{name} must be >= 1, got {value}")


def cmd_sum(args) -> list[dict]:
    params = _series_params(args)
    _positive("n-max", args.n_max)
    jobs = args.jobs if args.n_max >= 64 else 1
    claims = []
    for rep in bounds.check_theorem1(params, args.n_max, jobs=jobs):
        claims.append(
            _claim(
                "Thm1/Eq4",
                {"p": params.p, "a": params.a, "n": rep.n},
                rep.ok,
                witness=None if rep.ok else "; ".join(rep.problems),
                s_n=format_rational(rep.value),
                nu=rep.nu,
                bound=f"{rep.n + 1} - log_{params.p}({rep.n + 1}/2)",
                cmp=str(rep.cmp),
                tail_min=rep.tail_min,
                tail_witness=rep.tail_witness,
                alpha=rep.alpha,
            )
        )
    return claims


def cmd_scan_equality(args) -> list[dict]:
    params = _series_params(args)
    _positive("n-max", args.n_max)
    jobs = args.jobs if args.n_max >= 64 else 1
    found = [r.n for r in bounds.check_theorem1(params, args.n_max, jobs=jobs) if r.cmp.value == "Equal"]
    predicted = [n for n in range(1, args.n_max + 1) if bounds.equality_case(params.p, n) is not None]
    ok = found == predicted
    return [
        _claim(
            "Thm1/equality",
            {"p": params.p, "a": params.a, "n_max": args.n_max},
            ok,
            witness=None if ok else {"unexpected": sorted(set(found) - set(predicted)),
                                     "missing": sorted(set(predicted) - set(found))},
            equal_set=found,
            predicted_set=predicted,
        )
    ]


def _random_rational(rng: random.Random, bound: int = 50) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def _verify_mansour(args) -> list[dict]:
    rng = random.Random(args.seed)
    claims = []
    for i in range(args.samples):
        while True:
            x, y = _random_rational(rng), _random_rational(rng)
            if x + y != 0:
                break
        n = rng.randint(0, args.n_max)
        lhs, rhs = series.mansour_sides(x, y, n)
        ok = lhs == rhs
        claims.append(
            _claim("Eq9", {"x": format_rational(x), "y": format_rational(y), "n": n}, ok,
                   witness=None if ok else {"lhs": format_rational(lhs), "rhs": format_rational(rhs)})
        )
    return claims


def _verify_lcm_binom(args) -> list[dict]:
    return [_claim("Eq10", {"n": n}, series.verify_lcm_binom(n)) for n in range(args.n_max + 1)]


def _verify_identity11(args) -> list[dict]:
    params = _series_params(args)
    claims = []
    for n, s in series.prefix_sums(params, args.n_max):
        rhs = series.identity11_rhs(params, n)
        ok = rhs == s
        claims.append(
            _claim("Eq11", {"p": params.p, "a": params.a, "n": n}, ok,
                   witness=None if ok else {"s_n": format_rational(s), "rhs": format_rational(rhs)})
        )
    return claims


def _verify_taylor(args) -> list[dict]:
    if args.a == 0:
        raise ParameterError("--a must be nonzero")
    p = require_prime(args.p)
    check_eval = args.a % p != 0
    stream = series.PrefixSumStream(series.SeriesParams(p, args.a)) if check_eval else None
    claims = []
    for n in range(1, args.n_max + 1):
        poly = series.clearing_polynomial(args.a, n)
        mult = series.vanishing_order(poly)
        ok = mult >= n + 1
        extra = {"multiplicity": str(mult) if mult is INF else mult}
        if stream is not None:
            _, s = next(stream)
            r = Fraction(series.eval_polynomial(poly, p), series.clearing_denominator(stream.params, n))
            ok = ok and r == s
            extra["eval_matches_s_n"] = r == s
        claims.append(_claim("Method2/vanishing", {"a": args.a, "p": p, "n": n}, ok, **extra))
    return claims


def _verify_theorem2(args) -> list[dict]:
    params = _series_params(args)
    _positive("n-max", args.n_max)
    oracle = bounds.SeriesOracle(params)
    claims = []
    for n, s in series.prefix_sums(params, args.n_max):
        nu = val_p(s, params.p)
        violations = bounds.check_theorem2_prefix(oracle, [(n, nu)], args.n_max)
        tm = bounds.tail_min(oracle, n) if not violations else None
        claims.append(
            _claim("Thm2/Eq2-3", {"p": params.p, "a": params.a, "n": n}, not violations,
                   witness=[v.as_dict() for v in violations] or None,
                   nu=str(nu) if nu is INF else nu,
                   tail_min=tm.value if tm else None,
                   tail_witness=tm.witness if tm else None)
        )
    return claims


def _verify_eqint(args) -> list[dict]:
    _positive("n-max", args.n_max)
    violations = bounds.dubickas_corollary(args.n_max)
    return [
        _claim("Eqint1+Eqint2", {"p": 2, "a": 1, "n_max": args.n_max}, not violations,
               witness=[v.as_dict() for v in violations] or None)
    ]


def _verify_functional_eq(args) -> list[dict]:
    p = require_prime(args.p)
    _positive("precision", args.precision)
    rng = random.Random(args.seed)
    claims = []
    for _ in range(args.samples):
        u, v = (1 + p * _random_unit(rng, p) for _ in range(2))
        ok = padic_log.verify_functional_eq(u, v, p, args.precision)
        claims.append(
            _claim("Sec1/Lp-functional-eq",
                   {"p": p, "N": args.precision, "u": format_rational(u), "v": format_rational(v)}, ok)
        )
    return claims


def _random_unit(rng: random.Random, p: int) -> Fraction:
    """Random rational with denominator prime to p (numerator may be 0)."""
    num = rng.randint(-50, 50)
    den = rng.randint(1, 50)
    while den % p == 0:
        den = rng.randint(1, 50)
    return Fraction(num, den)


def _eq14_claim(args) -> dict:
    params = _series_params(args)
    _positive("precision", args.precision)
    cert = padic_log.verify_eq14(params, args.precision, args.window)
    return _claim(
        "Eq14",
        {"p": params.p, "a": params.a, "N": args.precision, "window": args.window},
        cert.ok,
        witness=cert.problems or None,
        n0=cert.n0,
        n0_kind="empirical",
        bound_index=cert.bound_index,
        log_sum_residue=cert.log_sum.residue,
    )


def cmd_verify(args) -> list[dict]:
    handlers = {
        "mansour": _verify_mansour,
        "lcm-binom": _verify_lcm_binom,
        "identity11": _verify_identity11,
        "taylor": _verify_taylor,
        "theorem2": _verify_theorem2,
        "eqint": _verify_eqint,
        "functional-eq": _verify_functional_eq,
        "eq14": lambda a: [_eq14_claim(a)],
    }
    return handlers[args.check](args)


def cmd_padic_log(args) -> list[dict]:
    params = _series_params(args)
    p, N = params.p, args.precision
    _positive("precision", N)
    claims = [_eq14_claim(args)]
    for x in (Fraction(p, params.a), Fraction(p, params.b)):
        r = padic_log.log1m(x, p, N)
        claims.append(_claim("Sec1/Lp-series", {"p": p, "N": N, "x": format_rational(x)}, True, residue=r.residue))
    if args.x is not None:
        r = padic_log.log1m(args.x, p, N)
        claims.append(_claim("Sec1/Lp-series", {"p": p, "N": N, "x": format_rational(args.x)}, True, residue=r.residue))
    return claims


COMMANDS = {
    "sum": cmd_sum,
    "verify": cmd_verify,
    "scan-equality": cmd_scan_equality,
    "padic-log": cmd_padic_log,
}


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("verbose", "jobs")}
    if cfg.get("x") is not None:
        cfg["x"] = format_rational(cfg["x"])
    return cfg


def _flatten(claim: dict) -> dict:
    row = {"anchor": claim["anchor"]}
    for k, v in claim["params"].items():
        row[k] = v
    for k, v in claim.items():
        if k not in ("anchor", "params"):
            row[k] = json.dumps(v) if isinstance(v, (list, dict)) else v
    return row


def render(report: dict, fmt: str) -> str:
    claims = report["claims"]
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        rows = [_flatten(c) for c in claims]
        fields = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for c in claims:
        params = " ".join(f"{k}={v}" for k, v in c["params"].items())
        rest = " ".join(
            f"{k}={v}" for k, v in c.items() if k not in ("anchor", "params", "verdict")
        )
        lines.append(f"[{c['verdict'].upper()}] {c['anchor']} {params} {rest}".rstrip())
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} claims passed; seed={report['config']['seed']}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        claims = COMMANDS[args.command](args)
    except ParameterError as e:
        print(f"padval: error: {e}", file=sys.stderr)
        return 2
    failed = sum(c["verdict"] != "pass" for c in claims)
    report = {
        "config": _config(args),
        "claims": claims,
        "summary": {"total": len(claims), "passed": len(claims) - failed, "failed": failed,
                    "verdict": "pass" if not failed else "fail"},
    }
    sys.stdout.write(render(report, args.format))
    if failed:
        log.error("%d claim(s) failed", failed)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
