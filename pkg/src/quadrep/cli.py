"""Command-line front end.

Subcommands dispatch to the library modules and emit deterministic JSON
(default), CSV, or plain key=value output.  Exit codes: 0 success, 1
computation error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction

from .arith import DEFAULT_FACTOR_BOUND, factorize
from .divisor import sigma_decomp, sigma_def, sigma_euler
from .dirichlet import residue_at_2, series_lhs, series_rhs, verify_theorem
from .errors import ConsistencyError, QuadrepError
from .gauss import classical_gauss, eval_complex, gauss_closed, gauss_direct
from .ideals import (
    DEFAULT_MAX_ENUM_B,
    FracIdeal,
    format_ideal,
    genus_fingerprint,
    genus_representatives,
    parse_ideal,
    prime_above,
    unit_ideal,
)
from .quadfield import Discriminant
from .repnum import rep_count, rep_count_bruteforce, rep_from_gauss_dft

JSON_INT_LIMIT = 2**53

IDEAL_GRAMMAR = "ideal grammar: ok | prim:a,b | frac:num/den:a,b | prime:p,k"


class UsageError(Exception):
    """Bad invocation; printed with the grammar and exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    max_factor_bound: int = DEFAULT_FACTOR_BOUND
    max_enum_b: int = DEFAULT_MAX_ENUM_B
    default_b: int = 5000
    tolerance: float = 1e-3
    output: str = "json"

    def __post_init__(self) -> None:
        for name in ("max_factor_bound", "max_enum_b", "default_b"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.output not in ("json", "csv", "plain"):
            raise ValueError(f"unknown output format {self.output!r}")


_CONFIG_KEYS = {
    "max_factor_bound": int,
    "max_enum_b": int,
    "B": int,
    "tolerance": float,
    "output": str,
}


def load_config(path: str) -> dict:
    """Read key=value lines; blank lines and # comments are skipped."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](text)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {text!r}") from exc
    return values


def _build_config(args: argparse.Namespace) -> CliConfig:
    values = load_config(args.config) if args.config else {}
    if "B" in values:
        values["default_b"] = values.pop("B")
    try:
        cfg = CliConfig(**values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if "max_enum_b" in values and "QUADREP_MAX_B" not in os.environ:
        os.environ["QUADREP_MAX_B"] = str(cfg.max_enum_b)
    return cfg


def jsonable(x):
    """Map values onto JSON types: big integers and rationals as strings,

    complex numbers as {re, im} pairs.  Integers stay native below 2^53 so
    every emitted number round-trips losslessly.
    """
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x if abs(x) < JSON_INT_LIMIT else str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return jsonable(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if x is None:
        return None
    return str(x)


def _flatten(value, prefix: str, out: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(v, f"{prefix}{k}." if prefix else f"{k}.", out)
        return
    key = prefix[:-1]
    if isinstance(value, list):
        out[key] = json.dumps(value)
    else:
        out[key] = value


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(payload, output: str, meta: bool, stream=None) -> None:
    stream = stream or sys.stdout
    data = jsonable(payload)
    if meta:
        stamp = {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "tool": "quadrep",
        }
    if output == "json":
        obj = {"data": data, "meta": stamp} if meta else data
        print(json.dumps(obj), file=stream)
        return
    flat: dict = {}
    _flatten(data, "", flat)
    if meta:
        flat["meta.generated_at"] = stamp["generated_at"]
        flat["meta.tool"] = stamp["tool"]
    if output == "csv":
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(flat.keys())
        writer.writerow([_cell(v) for v in flat.values()])
        stream.write(buf.getvalue())
        return
    for k, v in flat.items():
        print(f"{k} = {_cell(v)}", file=stream)


def _disc(value: int) -> Discriminant:
    try:
        return Discriminant(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad discriminant: {exc}") from exc


def _ideal(disc: Discriminant, text: str) -> FracIdeal:
    try:
        return parse_ideal(disc, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _positive(value: int, flag: str) -> int:
    if value < 1:
        raise UsageError(f"{flag} must be a positive integer, got {value}")
    return value


def _fingerprint_payload(fp) -> dict:
    return {str(p): fp.sign(p) for p in fp.disc.primes}


def _dft_count(ideal: FracIdeal, m: int, b: int, bound: int) -> int:
    total = 1
    for p, e in factorize(b, bound):
        total *= rep_from_gauss_dft(ideal, m, p, e)
    return total


def _cmd_repnum(args, cfg: CliConfig):
    disc = _disc(args.disc)
    ideal = _ideal(disc, args.ideal)
    b = _positive(args.b, "--b")
    if args.method == "all":
        n = rep_count(ideal, args.m, b)
        brute = rep_count_bruteforce(ideal, args.m, b)
        dft = _dft_count(ideal, args.m, b, cfg.max_factor_bound)
        return {"N": n, "agree": n == brute == dft}, 0
    if args.method == "brute":
        n = rep_count_bruteforce(ideal, args.m, b)
    elif args.method == "gauss-dft":
        n = _dft_count(ideal, args.m, b, cfg.max_factor_bound)
    else:
        n = rep_count(ideal, args.m, b)
    return {"N": n}, 0


def _cmd_gauss(args, cfg: CliConfig):
    b = _positive(args.b, "--b")
    if args.classical:
        closed, vec = classical_gauss(args.a, b)
        c = closed.as_complex()
        d = eval_complex(vec)
        return {"a": args.a, "c": b, "closed": c, "direct": d, "abs_diff": abs(c - d)}, 0
    if args.disc is None:
        raise UsageError("--disc is required without --classical")
    disc = _disc(args.disc)
    ideal = _ideal(disc, args.ideal)
    d = eval_complex(gauss_direct(ideal, args.a, b))
    payload = {"a": args.a, "b": b, "direct": d}
    fac = factorize(b, cfg.max_factor_bound) if b > 1 else []
    if len(fac) == 1:
        ((p, beta),) = fac
        c = gauss_closed(ideal, args.a, p, beta).as_complex()
        payload["closed"] = c
        payload["abs_diff"] = abs(c - d)
    else:
        payload["closed"] = None
    return payload, 0


def _cmd_sigma(args, cfg: CliConfig):
    disc = _disc(args.disc)
    ideal = _ideal(disc, args.ideal)
    fp = genus_fingerprint(ideal)
    if args.form == "all":
        return {
            "def": sigma_def(fp, args.m, args.s),
            "decomp": sigma_decomp(fp, args.m, args.s),
            "euler": sigma_euler(fp, args.m, args.s),
        }, 0
    fn = {"def": sigma_def, "decomp": sigma_decomp, "euler": sigma_euler}[args.form]
    return {"sigma": fn(fp, args.m, args.s)}, 0


def _series_eval_payload(ev) -> dict:
    return {"value": ev.value, "truncation": ev.truncation, "tail_bound": ev.tail_bound}


def _cmd_series(args, cfg: CliConfig):
    disc = _disc(args.disc)
    ideal = _ideal(disc, args.ideal)
    B = _positive(args.B if args.B is not None else cfg.default_b, "--B")
    tol = args.tol if args.tol is not None else cfg.tolerance
    if args.verify:
        if args.oracle:
            series_lhs(ideal, args.m, args.s, min(B, 60), oracle=True)
        report = verify_theorem(ideal, args.m, args.s, B, tol)
        payload = {
            "lhs": _series_eval_payload(report.lhs),
            "rhs": report.rhs,
            "factors": [
                {"p": f.p, "lhs": f.lhs, "rhs": f.rhs, "ok": f.ok}
                for f in report.factors
            ],
            "pass": report.passed,
        }
        return payload, 0 if report.passed else 3
    fp = genus_fingerprint(ideal)
    lhs = series_lhs(ideal, args.m, args.s, B, oracle=args.oracle)
    payload = {
        "lhs": _series_eval_payload(lhs),
        "rhs": series_rhs(fp, args.m, args.s, B),
        "residue_at_2": residue_at_2(fp, args.m),
    }
    return payload, 0


def _cmd_genus(args, cfg: CliConfig):
    disc = _disc(args.disc)
    if args.ideal is not None:
        ideal = _ideal(disc, args.ideal)
        fp = genus_fingerprint(ideal)
        return {
            "ideal": format_ideal(ideal),
            "norm": ideal.norm(),
            "fingerprint": _fingerprint_payload(fp),
        }, 0
    reps = genus_representatives(disc)
    payload = {
        "count": len(reps),
        "representatives": [
            {
                "ideal": format_ideal(r),
                "norm": r.norm(),
                "fingerprint": _fingerprint_payload(genus_fingerprint(r)),
            }
            for r in reps
        ],
    }
    return payload, 0


def _cmd_ideal(args, cfg: CliConfig):
    disc = _disc(args.disc)
    ideal = _ideal(disc, args.ideal)
    if args.op == "norm":
        return {"ideal": format_ideal(ideal), "norm": ideal.norm()}, 0
    if args.op == "inverse":
        inv = ideal.inverse()
        return {"ideal": format_ideal(inv), "norm": inv.norm()}, 0
    if args.op == "mul":
        if args.other is None:
            raise UsageError("--op mul needs --other")
        prod = ideal * _ideal(disc, args.other)
        return {"ideal": format_ideal(prod), "norm": prod.norm()}, 0
    if args.p is None:
        raise UsageError("--op primes-above needs --p")
    primes = prime_above(disc, args.p)
    return {
        "p": args.p,
        "kind": primes[0].kind,
        "primes": [
            {"ideal": format_ideal(P.ideal), "e": P.ramification_index()}
            for P in primes
        ],
    }, 0


def _suite_oracle() -> dict:
    checks = 0
    failures = []
    for D in (5, 13, 21):
        disc = Discriminant(D)
        for rep in genus_representatives(disc):
            name = format_ideal(rep)
            for b in range(1, 13):
                for m in range(-6, 7):
                    checks += 1
                    if rep_count(rep, m, b) != rep_count_bruteforce(rep, m, b):
                        failures.append(f"repnum D={D} ideal={name} b={b} m={m}")
    for m in (1, 2):
        checks += 1
        try:
            series_lhs(unit_ideal(Discriminant(5)), m, 4.0, 40, oracle=True)
        except ConsistencyError as exc:
            failures.append(f"series oracle m={m}: {exc}")
    return {"suite": "oracle", "checks": checks, "failures": failures}


def _suite_gauss() -> dict:
    checks = 0
    failures = []
    for D in (5, 21):
        disc = Discriminant(D)
        for rep in genus_representatives(disc):
            name = format_ideal(rep)
            for p, beta in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)):
                b = p**beta
                for a in (-2, 1, 3):
                    checks += 1
                    closed = gauss_closed(rep, a, p, beta).as_complex()
                    direct = eval_complex(gauss_direct(rep, a, b))
                    if abs(closed - direct) > 1e-9 * max(1.0, abs(closed)):
                        failures.append(f"gauss D={D} ideal={name} a={a} b={b}")
    for c in range(3, 26, 2):
        for a in (1, 2):
            if math.gcd(a, c) != 1:
                continue
            checks += 1
            closed, vec = classical_gauss(a, c)
            if abs(closed.as_complex() - eval_complex(vec)) > 1e-9:
                failures.append(f"classical a={a} c={c}")
    return {"suite": "gauss", "checks": checks, "failures": failures}


def _suite_sigma() -> dict:
    checks = 0
    failures = []
    for D in (5, 21, 33):
        disc = Discriminant(D)
        for rep in genus_representatives(disc):
            name = format_ideal(rep)
            fp = genus_fingerprint(rep)
            for m in range(-10, 11):
                if m == 0:
                    continue
                for s in (-2.0, 0.0, 1.0, 2.0):
                    checks += 1
                    v = sigma_def(fp, m, s)
                    scale = max(1.0, abs(v))
                    if (
                        abs(v - sigma_decomp(fp, m, s)) > 1e-11 * scale
                        or abs(v - sigma_euler(fp, m, s)) > 1e-11 * scale
                        or abs(v - sigma_def(fp, m, -s)) > 1e-11 * scale
                    ):
                        failures.append(f"sigma D={D} ideal={name} m={m} s={s}")
    return {"suite": "sigma", "checks": checks, "failures": failures}


def _suite_theorem() -> dict:
    checks = 0
    failures = []
    for D in (5, 21):
        disc = Discriminant(D)
        for rep in genus_representatives(disc):
            name = format_ideal(rep)
            for m in (0, 1, 2, 3, 4):
                checks += 1
                report = verify_theorem(rep, m, 4.0, 2000, 1e-3)
                if not report.passed:
                    failures.append(
                        f"theorem D={D} ideal={name} m={m} err={report.abs_err:.3e}"
                    )
    return {"suite": "theorem", "checks": checks, "failures": failures}


_SUITES = {
    "oracle": _suite_oracle,
    "gauss": _suite_gauss,
    "sigma": _suite_sigma,
    "theorem": _suite_theorem,
}


def _cmd_verify(args, cfg: CliConfig):
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    results = [_SUITES[name]() for name in names]
    failures = sum(len(r["failures"]) for r in results)
    payload = {
        "suites": results,
        "checks": sum(r["checks"] for r in results),
        "failures": failures,
    }
    return payload, 3 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=("json", "csv", "plain"), default=None,
        help="output format (default json)",
    )
    common.add_argument(
        "--meta", action="store_true",
        help="attach a timestamped meta block to the output",
    )
    common.add_argument("--config", default=None, help="key=value config file")

    parser = argparse.ArgumentParser(
        prog="quadrep",
        description="Representation numbers of ideals in real quadratic fields "
        "of odd squarefree discriminant, with Gauss sums, generalized divisor "
        "sums, and the Dirichlet series identity tying them together.",
        epilog=IDEAL_GRAMMAR + "; QUADREP_MAX_B caps brute-force enumeration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repnum", parents=[common], help="norm residue counts")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--ideal", default="ok")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--b", type=int, required=True, help="modulus")
    p.add_argument(
        "--method", choices=("brute", "formula", "gauss-dft", "all"),
        default="formula",
    )
    p.set_defaults(handler=_cmd_repnum)

    p = sub.add_parser("gauss", parents=[common], help="quadratic Gauss sums")
    p.add_argument("--disc", type=int)
    p.add_argument("--ideal", default="ok")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True, help="modulus (or c with --classical)")
    p.add_argument(
        "--classical", action="store_true",
        help="classical sum over x mod c of e(a x^2 / c) instead of the ideal sum",
    )
    p.set_defaults(handler=_cmd_gauss)

    p = sub.add_parser("sigma", parents=[common], help="generalized divisor sums")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--ideal", default="ok")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--form", choices=("def", "decomp", "euler", "all"), default="def")
    p.set_defaults(handler=_cmd_sigma)

    p = sub.add_parser("series", parents=[common], help="Dirichlet series identity")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--ideal", default="ok")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--B", type=int, default=None, help="truncation point")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--verify", action="store_true", help="factor-by-factor report")
    p.add_argument(
        "--oracle", action="store_true",
        help="cross-check counts against brute force for moduli up to 60",
    )
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("genus", parents=[common], help="genus fingerprints")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--ideal", default=None)
    p.set_defaults(handler=_cmd_genus)

    p = sub.add_parser("ideal", parents=[common], help="fractional ideal arithmetic")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--op", choices=("norm", "mul", "inverse", "primes-above"),
                   required=True)
    p.add_argument("--ideal", default="ok")
    p.add_argument("--other", default=None, help="second ideal for --op mul")
    p.add_argument("--p", type=int, default=None, help="prime for --op primes-above")
    p.set_defaults(handler=_cmd_ideal)

    p = sub.add_parser("verify", parents=[common], help="built-in verification suites")
    p.add_argument(
        "--suite", choices=("oracle", "gauss", "sigma", "theorem", "all"),
        default="all",
    )
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
        payload, code = args.handler(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(IDEAL_GRAMMAR, file=sys.stderr)
        return 2
    except QuadrepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    emit(payload, args.output or cfg.output, args.meta)
    return code


if __name__ == "__main__":
    sys.exit(main())
