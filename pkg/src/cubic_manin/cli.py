"""Command-line frontend: counts, constants, empirical vs predicted, prime cache."""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Callable, Iterable, TextIO

import mpmath

from . import constant, counting, moebius, polytope, primes, torsor
from .ring import ADMISSIBLE_N, QuadInt, make_field, power, product

BACKENDS: dict[str, Callable] = {
    "torsor9": counting.count_torsor9,
    "oracle": lambda field, B, workers=1: counting.count_divisor_oracle(field, B),
}
REPORT_KEYS = ("field", "bound", "backend", "count", "predicted", "ratio", "elapsed_ms")
COMPARE_KEYS = REPORT_KEYS + ("inv_log_bound", "euler_bound")
DEFAULT_EULER_BOUND = 10**5


@dataclass(frozen=True)
class CountReport:
    field: int
    bound: int | float
    backend: str
    count: int
    predicted: float
    ratio: float | None
    elapsed_ms: float
    euler_bound: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")

    @property
    def inv_log_bound(self) -> float | None:
        return 1 / math.log(self.bound) if self.bound > 1 else None

    def record(self, keys=REPORT_KEYS) -> dict:
        return {k: getattr(self, k) for k in keys}


def predicted_count(c: float, B: float) -> float:
    """c B (log B)**6, zero for B <= 1."""
    return c * B * math.log(B) ** 6 if B > 1 else 0.0


def run_count(n: int, B, backend: str, c: float, euler_bound: int, workers: int | None) -> CountReport:
    field = make_field(n)
    start = time.perf_counter()
    count = BACKENDS[backend](field, B, workers=workers)
    elapsed = (time.perf_counter() - start) * 1000
    pred = predicted_count(c, B)
    return CountReport(
        field=n,
        bound=B,
        backend=backend,
        count=count,
        predicted=pred,
        ratio=count / pred if pred > 0 else None,
        elapsed_ms=round(elapsed, 3),
        euler_bound=euler_bound,
    )


# -- parsing and output ------------------------------------------------------

def parse_bound(text: str) -> int | float:
    """Integer or decimal/scientific notation; integral values become ints."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d < 0:
        raise argparse.ArgumentTypeError(f"bound must be finite and nonnegative: {text!r}")
    if d == d.to_integral_value():
        return int(d)
    return float(d)


def parse_bounds(text: str) -> list[int | float]:
    return [parse_bound(t) for t in text.split(",") if t.strip()]


def parse_field(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be an integer, got {text!r}") from None
    if n not in ADMISSIBLE_N:
        raise argparse.ArgumentTypeError(f"field {n} not in {list(ADMISSIBLE_N)}")
    return n


def parse_euler_bound(text: str) -> int:
    X = parse_bound(text)
    if X < 2:
        raise argparse.ArgumentTypeError("euler bound must be at least 2")
    return int(X)


def _csv_value(v) -> str:
    return "" if v is None else str(v)


class RecordWriter:
    """Writes flat records one at a time as CSV or JSON lines."""

    def __init__(self, stream: TextIO, fmt: str, keys: tuple[str, ...]):
        self.stream, self.fmt, self.keys = stream, fmt, keys
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(keys)

    def write(self, record: dict) -> None:
        if self._csv is not None:
            self._csv.writerow([_csv_value(record[k]) for k in self.keys])
        else:
            self.stream.write(json.dumps({k: record[k] for k in self.keys}) + "\n")
        self.stream.flush()


def _number(text: str):
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


def read_records(text: str, fmt: str) -> list[dict]:
    """Inverse of RecordWriter, with numbers converted back."""
    if fmt == "json":
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    out = []
    for row in csv.DictReader(text.splitlines()):
        rec = {}
        for k, v in row.items():
            if v == "":
                rec[k] = None
            else:
                rec[k] = _number(v)
        out.append(rec)
    return out


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.stream: TextIO = sys.stdout

    def __enter__(self) -> TextIO:
        if self.path:
            self.stream = open(self.path, "w", newline="")
        return self.stream

    def __exit__(self, *exc):
        if self.path:
            self.stream.close()


def _constant_value(n: int, euler_bound: int, cache_dir) -> float:
    return float(constant.leading_constant(make_field(n), euler_bound, cache_dir).c_value)


# -- subcommands -------------------------------------------------------------

def cmd_count(args) -> int:
    c = _constant_value(args.field, args.euler_bound, args.cache_dir)
    report = run_count(args.field, args.bound, args.backend, c, args.euler_bound, args.workers)
    with _Output(args.output) as out:
        RecordWriter(out, args.format, REPORT_KEYS).write(report.record())
    return 0


def cmd_constant(args) -> int:
    breakdown = constant.leading_constant(make_field(args.field), args.euler_bound, args.cache_dir)
    record = breakdown.as_dict()
    with _Output(args.output) as out:
        RecordWriter(out, args.format, tuple(record)).write(record)
    return 0


def cmd_compare(args) -> int:
    bounds = args.bounds
    if any(b > a for a, b in zip(bounds[1:], bounds)):
        return _usage_error(args, "--bounds must be ascending")
    c = _constant_value(args.field, args.euler_bound, args.cache_dir)
    with _Output(args.output) as out:
        writer = RecordWriter(out, args.format, COMPARE_KEYS)
        for B in bounds:
            report = run_count(args.field, B, args.backend, c, args.euler_bound, args.workers)
            writer.write(report.record(COMPARE_KEYS))
    return 0


def cmd_primes(args) -> int:
    field = make_field(args.field)
    directory = primes.cache_dir(args.cache_dir)
    plist = primes.sieve_primes(field, args.bound)
    X = int(math.floor(args.bound))
    path = None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
        path = primes.cache_path(directory, field)
        primes.write_cache(path, field, X, plist)
    record = {"field": args.field, "bound": X, "primes": len(plist), "path": str(path) if path else ""}
    with _Output(args.output) as out:
        RecordWriter(out, args.format, tuple(record)).write(record)
    return 0


def cmd_volume(args) -> int:
    poly = polytope.height_polytope()
    vol = poly.volume()
    record = {
        "volume": f"{vol.numerator}/{vol.denominator}",
        "vertices": len(poly.vertices()),
        "period": poly.period(),
    }
    with _Output(args.output) as out:
        RecordWriter(out, args.format, tuple(record)).write(record)
    return 0


def _expected_moebius() -> list[int]:
    # (1 - x)**7 (1 + 7x + x**2) by repeated multiplication
    poly = [1, 7, 1]
    for _ in range(7):
        poly = [a - b for a, b in zip(poly + [0], [0] + poly)]
    return poly


def selftest_checks(level: str) -> Iterable[tuple[str, Callable[[], tuple[bool, str]]]]:
    def volume():
        v = polytope.polytope_volume()
        return v == Fraction(1, 2880), f"{v}"

    def alpha():
        a = constant.alpha_value()
        return a == Fraction(1, 25920), f"{a}"

    def moebius_reduced():
        got = moebius.moebius_polynomial_reduced()
        return got == _expected_moebius(), f"coefficients {got}"

    def moebius_direct():
        got = moebius.moebius_polynomial_direct()
        return got == _expected_moebius(), f"coefficients {got}"

    def cube_identities():
        import random
        rng = random.Random(1)
        bad = 0
        for n in ADMISSIBLE_N:
            f = make_field(n)
            for _ in range(50):
                ys = [QuadInt(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(9)]
                y = torsor.TorsorTuple(*ys)
                for xs in (torsor.psi2(f, y), torsor.psi0(f, *ys[:3])):
                    bad += power(f, xs[0], 3) != product(f, xs[1:])
        return bad == 0, f"{bad} failures"

    def backends():
        grid = (1, 5, 10, 50, 100) if level == "fast" else (1, 5, 10, 50, 100, 200)
        bad = []
        for n in ADMISSIBLE_N:
            f = make_field(n)
            for B in grid:
                a, b = counting.count_torsor9(f, B), counting.count_divisor_oracle(f, B)
                if a != b:
                    bad.append((n, B, a, b))
        return not bad, f"mismatches {bad}" if bad else f"{len(ADMISSIBLE_N) * len(grid)} cases agree"

    def unit_points():
        bad = [n for n in ADMISSIBLE_N if counting.count_torsor9(make_field(n), 1) != make_field(n).w ** 2]
        return not bad, f"failing fields {bad}" if bad else "N(1) = w^2"

    def circles():
        expected = {-1: 4, -3: 6}
        got = {n: constant.circle_count(make_field(n), 1) for n in expected}
        return got == expected, f"{got}"

    def densities():
        cx = constant.archimedean_density("complex")
        re_ = constant.archimedean_density("real")
        ok = abs(cx / (36 * math.pi**2) - 1) < 1e-3 and abs(re_ / 36 - 1) < 1e-3
        return ok, f"complex {cx:.9f}, real {re_:.9f}"

    def assembly():
        with mpmath.workdps(constant.PRECISION_DPS):
            worst = max(
                abs(constant.general_prefactor(make_field(n)) / constant.closed_form_prefactor(make_field(n)) - 1)
                for n in ADMISSIBLE_N
            )
        return worst < 1e-12, f"max relative gap {mpmath.nstr(worst, 3)}"

    yield "volume", volume
    yield "alpha", alpha
    yield "moebius_reduced", moebius_reduced
    yield "moebius_direct", moebius_direct
    yield "cube_identities", cube_identities
    yield "unit_points", unit_points
    yield "backends", backends
    yield "circle_counts", circles
    yield "densities", densities
    yield "constant_assembly", assembly


def cmd_selftest(args) -> int:
    failures = 0
    out = sys.stdout
    for name, check in selftest_checks(args.level):
        start = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        ms = (time.perf_counter() - start) * 1000
        out.write(f"{'PASS' if ok else 'FAIL'} {name} ({ms:.0f} ms): {detail}\n")
        out.flush()
        failures += not ok
    out.write(f"{failures} failure(s)\n")
    return 1 if failures else 0


# -- argument parsing --------------------------------------------------------

def _usage_error(args, message: str) -> int:
    args.parser.print_usage(sys.stderr)
    sys.stderr.write(f"{args.parser.prog}: error: {message}\n")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubic-manin",
        description="Rational points of bounded height on x0^3 = x1 x2 x3 over imaginary quadratic fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, field=True, fmt=True):
        if field:
            p.add_argument("--field", type=parse_field, required=True, help="n in K = Q(sqrt(n))")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--cache-dir", default=os.environ.get(primes.CACHE_ENV),
                       help=f"prime cache directory (default ${primes.CACHE_ENV})")

    def counting_flags(p):
        p.add_argument("--backend", choices=tuple(BACKENDS), default="torsor9")
        p.add_argument("--euler-bound", type=parse_euler_bound, default=DEFAULT_EULER_BOUND)
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("count", help="count points of height <= B")
    common(p)
    p.add_argument("--bound", type=parse_bound, required=True)
    counting_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("constant", help="leading constant and its breakdown")
    common(p)
    p.add_argument("--euler-bound", type=parse_euler_bound, default=DEFAULT_EULER_BOUND)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("compare", help="empirical counts against c B (log B)^6")
    common(p)
    p.add_argument("--bounds", type=parse_bounds, required=True)
    counting_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("primes", help="sieve prime ideals and write the cache")
    common(p)
    p.add_argument("--bound", type=parse_bound, required=True)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("volume", help="exact volume of the height polytope")
    common(p, field=False)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("selftest", help="exact-identity checks")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    if getattr(args, "workers", 1) is not None and getattr(args, "workers", 1) < 1:
        return _usage_error(args, "--workers must be positive")
    try:
        return args.func(args)
    except ValueError as exc:
        return _usage_error(args, str(exc))


if __name__ == "__main__":
    sys.exit(main())
