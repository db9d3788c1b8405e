"""Command-line entry point: ``bandet {det,charpoly,closed,verify,bench}``.

Exit codes: 0 success, 1 usage or parse error, 2 invalid band spec,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import statistics
import sys
import time
from fractions import Fraction

from . import closedform, oracle
from .bandspec import BandSpec, BandSpecError, dense, validate
from .detengine import det, det_shifted
from .matpow import OpCounter, Strategy
from .scalar import DEFAULT_PRIME, PrimeField, ScaledValue, mode_from_name, parse_exact

EXIT_OK, EXIT_USAGE, EXIT_SPEC, EXIT_MISMATCH = 0, 1, 2, 3
MAX_N = 2**63 - 1
RATIONAL_WARN_N = 10**4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_spec_args(p):
    g = p.add_argument_group("band spec (inline flags or --spec FILE)")
    g.add_argument("--s", type=int, help="number of superdiagonals")
    g.add_argument("--r", type=int, help="number of subdiagonals")
    g.add_argument("--coeffs", help="comma-separated a_0,...,a_{s+r} (exact: '3', '-7/2')")
    g.add_argument("--spec", metavar="FILE", help='JSON file {"s":..,"r":..,"coeffs":[..]}')


def _add_mode_args(p, strategy=True):
    p.add_argument("--mode", default="rational", choices=["rational", "float", "prime"])
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="modulus for --mode prime")
    if strategy:
        p.add_argument("--strategy", default="auto", choices=[s.value for s in Strategy])
    p.add_argument("--format", default="plain", choices=["plain", "json", "csv"])


def _add_n_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--n", type=int, help="matrix size")
    g.add_argument("--n-range", metavar="A:B", help="inclusive range of sizes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bandet", description="Determinants of banded Toeplitz matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("det", help="det(T_n)")
    _add_spec_args(p)
    _add_n_args(p)
    _add_mode_args(p)

    p = sub.add_parser("charpoly", help="det(T_n - lambda I) for one or more lambda")
    _add_spec_args(p)
    _add_n_args(p)
    p.add_argument("--lam", required=True, help="comma-separated lambda values")
    _add_mode_args(p)

    p = sub.add_parser("closed", help="closed-form evaluation (tridiagonal, or pentadiagonal from roots)")
    _add_spec_args(p)
    _add_n_args(p)
    p.add_argument("--roots", help="pentadiagonal roots as root:mult,... e.g. 2:2,3:2")
    p.add_argument("--c", help="a_2 for the pentadiagonal formula (default: from the spec, else 1)")
    p.add_argument("--format", default="plain", choices=["plain", "json", "csv"])

    p = sub.add_parser("verify", help="randomized three-way agreement suite")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sabotage", action="store_true", help="flip the sign factor (harness self-test)")

    p = sub.add_parser("bench", help="timing and multiplication counts as csv")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n-list", default=f"{2**20},{2**30}")
    p.add_argument("--reps", type=int, default=7)
    p.add_argument("--strategies", default="polymod,dense")
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    return parser


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def load_spec(args, exact: bool) -> BandSpec:
    inline = args.coeffs is not None or args.s is not None or args.r is not None
    if inline and args.spec:
        raise UsageError("give either --spec or inline --s/--r/--coeffs, not both")
    try:
        if args.spec:
            with open(args.spec) as fh:
                return BandSpec.from_json(json.load(fh), exact=exact)
        if args.coeffs is None or args.s is None or args.r is None:
            raise UsageError("a band spec needs --s, --r and --coeffs (or --spec FILE)")
        return BandSpec.from_strings(args.s, args.r, _split(args.coeffs), exact=exact)
    except (ValueError, ZeroDivisionError, OSError, TypeError) as exc:
        if isinstance(exc, BandSpecError):
            raise
        raise UsageError(f"cannot parse band spec: {exc}") from None


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def n_values(args) -> list[int]:
    if args.n is not None:
        ns = [args.n]
    else:
        try:
            a, b = (int(t) for t in args.n_range.split(":"))
        except ValueError:
            raise UsageError(f"bad --n-range {args.n_range!r}; expected A:B") from None
        if b < a:
            raise UsageError("--n-range must be nonempty and increasing")
        ns = list(range(a, b + 1))
    for n in ns:
        if not 1 <= n <= MAX_N:
            raise UsageError(f"n={n} outside 1..2**63-1")
    return ns


def _parse_scalar(text: str, mode):
    try:
        return parse_exact(text) if mode.exact else mode.convert(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse scalar {text!r}: {exc}") from None


def format_value(value) -> str:
    if isinstance(value, ScaledValue):
        return f"{value} ~= {value.decimal()}"
    return str(value)


def json_value(value):
    if isinstance(value, ScaledValue):
        return {"sign": value.sign, "mantissa": value.mantissa, "exp2": value.exp2,
                "decimal": value.decimal()}
    return str(value)


def _emit(rows: list[dict], fmt: str, plain_keys: list[str], out) -> None:
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        keys = list(rows[0].keys())
        w.writerow(keys)
        for row in rows:
            w.writerow([row[k] if not isinstance(row[k], dict) else row[k]["decimal"] for k in keys])
    else:
        for row in rows:
            if len(rows) == 1 and len(plain_keys) == 1:
                out.write(f"{row[plain_keys[0]]}\n")
            else:
                out.write(" ".join(str(row[k]) for k in plain_keys) + "\n")


def _warn_large(mode, ns, err):
    if mode.exact and not isinstance(mode, PrimeField) and max(ns) > RATIONAL_WARN_N:
        err.write(f"warning: rational results for n > {RATIONAL_WARN_N} can be enormous; "
                  "consider --mode prime\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def run_det(args, out, err) -> int:
    mode = mode_from_name(args.mode, args.prime)
    spec = validate(load_spec(args, exact=mode.exact))
    ns = n_values(args)
    _warn_large(mode, ns, err)
    rows = []
    for n in ns:
        res = det(spec, n, args.strategy, mode)
        rows.append({
            "n": n,
            "value": format_value(res.value) if args.format == "plain" else json_value(res.value),
            "path": res.path.value,
            "mode": args.mode,
            **({"prime": args.prime} if args.mode == "prime" else {}),
            "strategy": args.strategy,
            "spec": spec.to_json(),
        })
    if args.format == "csv":
        rows = [{k: v for k, v in row.items() if k != "spec"} for row in rows]
    _emit(rows, args.format, ["value"] if len(ns) == 1 else ["n", "value"], out)
    return EXIT_OK


def run_charpoly(args, out, err) -> int:
    mode = mode_from_name(args.mode, args.prime)
    spec = validate(load_spec(args, exact=mode.exact))
    ns = n_values(args)
    _warn_large(mode, ns, err)
    lams = [_parse_scalar(t, mode) for t in _split(args.lam)]
    if not lams:
        raise UsageError("--lam needs at least one value")
    rows = []
    for n in ns:
        for text, lam in zip(_split(args.lam), lams):
            res = det_shifted(spec, n, lam, args.strategy, mode)
            val = format_value(res.value) if args.format == "plain" else json_value(res.value)
            row = {"lambda": text, "value": val}
            if len(ns) > 1 or args.format == "json":
                row = {"n": n, **row}
            if args.format == "json":
                row.update(path=res.path.value, mode=args.mode, strategy=args.strategy,
                           spec=spec.to_json())
                if args.mode == "prime":
                    row["prime"] = args.prime
            rows.append(row)
    keys = ["value"] if len(rows) == 1 else (["n"] if len(ns) > 1 else []) + ["lambda", "value"]
    _emit(rows, args.format, keys, out)
    return EXIT_OK


def _parse_roots(text: str) -> closedform.RootMultiset:
    pairs = []
    for item in _split(text):
        root, _, mult = item.partition(":")
        try:
            pairs.append((Fraction(root), int(mult or 1)))
        except ValueError:
            raise UsageError(f"bad root spec {item!r}; expected root:mult") from None
    return closedform.RootMultiset(pairs)


def run_closed(args, out, err) -> int:
    ns = n_values(args)
    rows = []
    if args.roots:
        roots = _parse_roots(args.roots)
        case = closedform.penta_case_of(roots)
        if args.c is not None:
            c = Fraction(args.c)
        elif args.coeffs is not None or args.spec:
            spec = validate(load_spec(args, exact=True))
            if spec.s != 2 or spec.r != 2:
                raise UsageError("pentadiagonal closed form needs s = r = 2")
            c = Fraction(spec.a_s)
        else:
            c = Fraction(1)
        for n in ns:
            rows.append({"n": n, "value": str(closedform.penta_det(roots, c, n)),
                         "case": case, "path": "ClosedForm"})
    else:
        spec = validate(load_spec(args, exact=True))
        if spec.s != 1 or spec.r != 1:
            raise UsageError("without --roots the closed form needs a tridiagonal spec (s = r = 1)")
        for n in ns:
            rows.append({"n": n, "value": str(closedform.tridiag_det(spec, n)),
                         "case": "tridiagonal", "path": "ClosedForm"})
    _emit(rows, args.format, ["value"] if len(ns) == 1 else ["n", "value"], out)
    return EXIT_OK


def random_spec(rng: random.Random, k: int, bound: int = 9, s: int | None = None) -> BandSpec:
    """Integer band with k = s + r, |a_i| <= bound and nonzero a_s, a_k."""
    if s is None:
        s = rng.randint(1, k - 1)
    coeffs = [rng.randint(-bound, bound) for _ in range(k + 1)]
    nonzero = [v for v in range(-bound, bound + 1) if v]
    coeffs[s] = rng.choice(nonzero)
    coeffs[k] = rng.choice(nonzero)
    return BandSpec(s, k - s, tuple(Fraction(c) for c in coeffs))


def run_verify(args, out, err) -> int:
    if args.k_min < 2 or args.k_max < args.k_min or args.trials < 1:
        raise UsageError("need 2 <= k-min <= k-max and trials >= 1")
    rng = random.Random(args.seed)
    failures = []
    ok = 0
    for trial in range(args.trials):
        k = rng.randint(args.k_min, args.k_max)
        spec = random_spec(rng, k, args.coeff_bound)
        n = rng.randint(k, max(k, args.n_max))
        fast = det(spec, n, Strategy.POLYMOD).value
        if args.sabotage:
            fast = -fast
        truth = oracle.dense_det_bareiss(dense(spec, n))
        chain = oracle.reduction_det(spec, n)
        if fast == truth == chain:
            ok += 1
        else:
            failures.append({"trial": trial, "n": n, "spec": spec.to_json(),
                             "fast": str(fast), "bareiss": str(truth), "reduction": str(chain)})
    out.write(f"{ok}/{args.trials} ok\n")
    for f in failures:
        out.write("mismatch " + json.dumps(f, sort_keys=True) + "\n")
    return EXIT_OK if not failures else EXIT_MISMATCH


def run_bench(args, out, err) -> int:
    if args.k < 2:
        raise UsageError("bench needs k >= 2")
    mode = PrimeField(args.prime)
    rng = random.Random(args.seed)
    spec = random_spec(rng, args.k, s=args.k // 2)
    try:
        ns = [int(t) for t in _split(args.n_list)]
        strategies = [Strategy(t) for t in _split(args.strategies)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "strategy", "median_ns", "polymul_count"])
    for n in ns:
        for strat in strategies:
            counter = OpCounter()
            det(spec, n, strat, mode, counter)
            count = counter.polymul if strat is Strategy.POLYMOD else counter.matmul
            times = []
            for _ in range(max(1, args.reps)):
                t0 = time.perf_counter_ns()
                det(spec, n, strat, mode)
                times.append(time.perf_counter_ns() - t0)
            w.writerow([n, strat.value, int(statistics.median(times)), count])
    return EXIT_OK


COMMANDS = {
    "det": run_det,
    "charpoly": run_charpoly,
    "closed": run_closed,
    "verify": run_verify,
    "bench": run_bench,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out, err)
    except BandSpecError as exc:
        err.write(f"invalid spec: {exc.code}: {exc}\n")
        return EXIT_SPEC
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def run(argv) -> tuple[int, str, str]:
    """Run the CLI in-process and capture (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
