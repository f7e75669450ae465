"""Command-line tables of the spreading lengths of Hermite polynomials.

Examples::

    hermspread lengths --n-max 2 --q 2
    hermspread entropic --n-max 10 --q 2,3 --format json
    hermspread bounds --n-max 12
    hermspread fits --range 0:100 --threads 4
    hermspread oscillator --n 3 --lam 4
    hermspread asymptotics --n 25,50,100 --q 1

Every float is printed with ``--digits`` significant digits; quantities
with a closed form get an ``*_exact`` column right after the float one,
in the ``p/q * sqrt(t) * pi^(a/2)`` syntax of :func:`exactreal.parse`.
Exit status: 0 success, 1 usage error, 2 precision failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .analysis import heller_vs_std_fit, shannon_vs_std_fit
from .entropic import (
    DomainError,
    aptekarev_asymptotic,
    azor_z4_asymptotic,
    entropic_moment,
    renyi_entropy,
    renyi_length,
    tsallis_entropy,
    z_functional,
)
from .exactreal import ExactReal, mp_context
from .hermite import fisher_length, moment, standard_deviation
from .oscillator import (
    OscillatorParams,
    ho_entropic_moment,
    ho_fisher_information,
    ho_lengths,
    ho_shannon_entropy,
)
from .quadrature import ConvergenceFailure, PrecisionNotMet, QuadratureConfig, entropic_moment_quadrature
from .shannon import BoundSearchWarning, optimal_bound, shannon_asymptotic, shannon_entropy

SCHEMA_VERSION = 1
N_CAP = 150
Q_CAP = 8

EXIT_USAGE = 1
EXIT_PRECISION = 2


@dataclass(frozen=True)
class Column:
    name: str
    unit: str = ""
    kind: str = "float"  # float | exact | int | bool | str

    @property
    def header(self) -> str:
        return f"{self.name}[{self.unit}]" if self.unit else self.name


@dataclass(frozen=True)
class OutputRecord:
    """A finished table.  Cells are already formatted strings (ints and bools stay native)."""

    command: str
    parameters: dict
    columns: tuple[Column, ...]
    rows: tuple[tuple, ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([c.header for c in self.columns])
        for row in self.rows:
            w.writerow(["true" if v is True else "false" if v is False else v for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "columns": [{"name": c.name, "unit": c.unit, "kind": c.kind} for c in self.columns],
            "rows": [list(r) for r in self.rows],
        }
        return json.dumps(doc, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {doc.get('schema')!r}")
        cols = tuple(Column(c["name"], c["unit"], c["kind"]) for c in doc["columns"])
        return cls(doc["command"], doc["parameters"], cols, tuple(tuple(r) for r in doc["rows"]))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting ---------------------------------------------------------------


def _fmt(v, digits: int) -> str:
    if v is None:
        return ""
    ctx = mp_context(max(53, int(digits * 3.33) + 8))
    if isinstance(v, Fraction):
        v = ctx.mpf(v.numerator) / v.denominator
    return ctx.nstr(ctx.mpf(v), digits, strip_zeros=False, min_fixed=-4, max_fixed=digits)


def _fmt_exact(v) -> str:
    if isinstance(v, ExactReal):
        return str(v)
    return str(Fraction(v))


def _num(x: ExactReal | object, bits: int):
    return x.to_float(bits) if isinstance(x, ExactReal) else x


# -- argument helpers -----------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return lo, hi


def _lam(text: str):
    try:
        return Fraction(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _order(text: str):
    """``q`` as an exact rational when possible."""
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational order: {text!r}")


def _check_n(n: int, args) -> None:
    if n < 0:
        raise UsageError(f"degree must be nonnegative, got {n}")
    if n > N_CAP and not args.no_cap:
        raise UsageError(f"n={n} exceeds the cap {N_CAP}; pass --no-cap to override")


def _check_q(q, args, low: int = 1) -> None:
    if q < low:
        raise UsageError(f"q must be >= {low}, got {q}")
    if q > Q_CAP and not args.no_cap:
        raise UsageError(f"q={q} exceeds the cap {Q_CAP}; pass --no-cap to override")


def _cfg(args) -> QuadratureConfig:
    return QuadratureConfig(precision_bits=args.precision_bits)


def _map_rows(func, jobs: list, threads: int) -> list:
    """Apply ``func`` to each job, in a worker pool if asked; order follows ``jobs``."""
    if threads and threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, jobs))
    return [func(j) for j in jobs]


# -- lengths ------------------------------------------------------------------


def _lengths_row(job):
    n, qs, k_max, bits, digits = job
    cfg = QuadratureConfig(precision_bits=bits)
    row = [n]
    sd = standard_deviation(n)
    row += [_fmt(sd.to_float(bits), digits), _fmt_exact(sd)]
    for q in qs:
        if q == 2:
            l2 = entropic_moment(n, 2).value.reciprocal()
            row += [_fmt(l2.to_float(bits), digits), _fmt_exact(l2)]
        else:
            row.append(_fmt(renyi_length(n, q, bits), digits))
    sh = shannon_entropy(n, cfg)
    row += [_fmt(sh.length, digits), _fmt(sh.entropy, digits), _fmt(sh.error_estimate, 3)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundSearchWarning)
        ob = optimal_bound(n, k_max if k_max else max(40, 2 * n + 16), bits)
    row += [ob.k_opt, _fmt(ob.bound, digits), ob.near_cap]
    fl = fisher_length(n)
    row += [_fmt(fl.to_float(bits), digits), _fmt_exact(fl)]
    return tuple(row)


def cmd_lengths(args) -> OutputRecord:
    qs = args.q
    for q in qs:
        _check_q(q, args, low=2)
    for n in (args.n_min, args.n_max):
        _check_n(n, args)
    if args.n_max < args.n_min:
        raise UsageError("--n-max must be >= --n-min")
    cols = [Column("n", kind="int"), Column("std_dev", "x"), Column("std_dev_exact", "x", "exact")]
    for q in qs:
        cols.append(Column(f"renyi_length_q{q}", "x"))
        if q == 2:
            cols.append(Column(f"renyi_length_q{q}_exact", "x", "exact"))
    cols += [
        Column("shannon_length", "x"),
        Column("shannon_entropy", "nats"),
        Column("shannon_error", "nats"),
        Column("k_opt", kind="int"),
        Column("kl_bound", "x"),
        Column("kl_near_cap", kind="bool"),
        Column("fisher_length", "x"),
        Column("fisher_length_exact", "x", "exact"),
    ]
    jobs = [(n, tuple(qs), args.k_max, args.precision_bits, args.digits) for n in range(args.n_min, args.n_max + 1)]
    rows = _map_rows(_lengths_row, jobs, args.threads)
    params = {"n_min": args.n_min, "n_max": args.n_max, "q": list(qs), "k_max": args.k_max}
    return OutputRecord("lengths", params, tuple(cols), tuple(rows))


# -- moments / entropic -------------------------------------------------------


def cmd_moments(args) -> OutputRecord:
    _check_n(args.n, args)
    if args.k_max < 0:
        raise UsageError("--k-max must be nonnegative")
    rows = []
    for k in range(args.k_max + 1):
        m = moment(args.n, k)
        rows.append((k, _fmt(m, args.digits), _fmt_exact(m)))
    cols = (Column("k", kind="int"), Column("moment", "x^k"), Column("moment_exact", "x^k", "exact"))
    return OutputRecord("moments", {"n": args.n, "k_max": args.k_max}, cols, tuple(rows))


def _entropic_row(job):
    n, q, bits, digits = job
    w = entropic_moment(n, q).value
    row = [n, q, _fmt(w.to_float(bits), digits), _fmt_exact(w)]
    if q >= 2:
        row += [
            _fmt(renyi_length(n, q, bits), digits),
            _fmt(renyi_entropy(n, q, bits), digits),
            _fmt(tsallis_entropy(n, q, bits), digits),
        ]
    else:
        row += ["", "", ""]
    return tuple(row)


def cmd_entropic(args) -> OutputRecord:
    for q in args.q:
        _check_q(q, args)
    _check_n(args.n_max, args)
    cols = (
        Column("n", kind="int"),
        Column("q", kind="int"),
        Column("W_q", "x^(1-q)"),
        Column("W_q_exact", "x^(1-q)", "exact"),
        Column("renyi_length", "x"),
        Column("renyi_entropy", "nats"),
        Column("tsallis_entropy"),
    )
    jobs = [(n, q, args.precision_bits, args.digits) for n in range(args.n_max + 1) for q in args.q]
    rows = _map_rows(_entropic_row, jobs, args.threads)
    return OutputRecord("entropic", {"n_max": args.n_max, "q": list(args.q)}, cols, tuple(rows))


# -- bounds -------------------------------------------------------------------


def cmd_bounds(args) -> OutputRecord:
    _check_n(args.n_max, args)
    rows = []
    for n in range(args.n_max + 1):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", BoundSearchWarning)
            ob = optimal_bound(n, args.k_max, args.precision_bits)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        rows.append((n, ob.k_opt, _fmt(ob.bound, args.digits), ob.near_cap))
    cols = (Column("n", kind="int"), Column("k_opt", kind="int"), Column("kl_bound", "x"), Column("near_cap", kind="bool"))
    return OutputRecord("bounds", {"n_max": args.n_max, "k_max": args.k_max}, cols, tuple(rows))


# -- fits ---------------------------------------------------------------------


def cmd_fits(args) -> OutputRecord:
    lo, hi = args.range
    _check_n(hi, args)
    if lo < 0 or hi < lo + 2:
        raise UsageError("--range needs 0 <= LO and HI >= LO + 2")
    fits = {
        "shannon": shannon_vs_std_fit(lo, hi, _cfg(args), workers=args.threads),
        "heller": heller_vs_std_fit(lo, hi),
    }
    params = {"range": [lo, hi]}
    d = args.digits
    if args.points:
        cols = (Column("fit", kind="str"), Column("n", kind="int"), Column("std_dev", "x"), Column("length", "x"))
        rows = [
            (name, lo + i, _fmt(x, d), _fmt(y, d))
            for name, fit in fits.items()
            for i, (x, y) in enumerate(fit.points)
        ]
        return OutputRecord("fits", params | {"points": True}, cols, tuple(rows))
    cols = (
        Column("fit", kind="str"),
        Column("slope"),
        Column("intercept", "x"),
        Column("correlation"),
        Column("n_lo", kind="int"),
        Column("n_hi", kind="int"),
    )
    rows = [
        (name, _fmt(f.slope, d), _fmt(f.intercept, d), _fmt(f.correlation, d), f.n_range[0], f.n_range[1])
        for name, f in fits.items()
    ]
    return OutputRecord("fits", params, cols, tuple(rows))


# -- oscillator ---------------------------------------------------------------


def cmd_oscillator(args) -> OutputRecord:
    _check_n(args.n, args)
    try:
        params = OscillatorParams(args.lam)
    except ValueError as exc:
        raise UsageError(str(exc))
    for q in args.q:
        _check_q(q, args, low=2)
    n, bits, d = args.n, args.precision_bits, args.digits
    cfg = _cfg(args)
    one = OscillatorParams(1)
    base = ho_lengths(n, one, cfg, tuple(args.q))
    ho = ho_lengths(n, params, cfg, tuple(args.q))
    rows = []

    def add(name, unit, b, h, scaling):
        exact = _fmt_exact(h) if isinstance(h, (ExactReal, Fraction)) else ""
        rows.append((name, unit, _fmt(_num(b, bits), d), _fmt(_num(h, bits), d), exact, scaling))

    add("std_dev", "x", base.std_dev, ho.std_dev, "lam^(-1/2)")
    for q in args.q:
        add(f"renyi_length_q{q}", "x", base.renyi[q], ho.renyi[q], "lam^(-1/2)")
    add("shannon_length", "x", base.shannon, ho.shannon, "lam^(-1/2)")
    add("fisher_length", "x", base.fisher_length, ho.fisher_length, "lam^(-1/2)")
    add("fisher_information", "x^-2", ho_fisher_information(n, one), ho_fisher_information(n, params), "lam")
    s0 = shannon_entropy(n, cfg).entropy
    rows.append(("shannon_entropy", "nats", _fmt(s0, d), _fmt(ho_shannon_entropy(n, params, cfg), d), "", "-ln(lam)/2"))
    for q in args.q:
        add(f"W_q{q}", f"x^{1 - q}", entropic_moment(n, q).value, ho_entropic_moment(n, q, params, bits), "lam^((q-1)/2)")
    cols = (
        Column("quantity", kind="str"),
        Column("unit", kind="str"),
        Column("hermite"),
        Column("oscillator"),
        Column("oscillator_exact", kind="exact"),
        Column("scaling", kind="str"),
    )
    return OutputRecord("oscillator", {"n": n, "lam": str(args.lam), "q": list(args.q)}, cols, tuple(rows))


# -- asymptotics --------------------------------------------------------------


def _asymptotics_row(job):
    n, q, bits, digits = job
    cfg = QuadratureConfig(precision_bits=bits)
    if q.denominator == 1 and q >= 1:
        w = entropic_moment(n, int(q)).to_float(bits)
    else:
        w, _ = entropic_moment_quadrature(n, q, cfg)
    try:
        apt = aptekarev_asymptotic(n, q, bits)
        apt_ratio = w / apt
    except DomainError:
        apt = apt_ratio = None
    if n >= 1:
        z4 = z_functional(n, 4).to_float(bits)
        z4_ratio = z4 / azor_z4_asymptotic(n, bits)
        n_asym = shannon_asymptotic(n, bits)
    else:
        z4 = z4_ratio = n_asym = None
    sh = shannon_entropy(n, cfg).length
    n_ratio = sh / n_asym if n_asym is not None else None
    f = lambda v: _fmt(v, digits)  # noqa: E731
    return (n, str(q), f(w), f(apt), f(apt_ratio), f(z4), f(z4_ratio), f(sh), f(n_asym), f(n_ratio))


def cmd_asymptotics(args) -> OutputRecord:
    for n in args.n:
        _check_n(n, args)
    q = args.q
    if q <= 0:
        raise UsageError("q must be positive")
    _check_q(q, args, low=0)
    cols = (
        Column("n", kind="int"),
        Column("q", kind="str"),
        Column("W_q", "x^(1-q)"),
        Column("aptekarev", "x^(1-q)"),
        Column("W_q_ratio"),
        Column("Z_4", "1"),
        Column("Z_4_ratio"),
        Column("shannon_length", "x"),
        Column("shannon_asymptotic", "x"),
        Column("shannon_ratio"),
    )
    jobs = [(n, q, args.precision_bits, args.digits) for n in args.n]
    rows = _map_rows(_asymptotics_row, jobs, args.threads)
    return OutputRecord("asymptotics", {"n": list(args.n), "q": str(q)}, cols, tuple(rows))


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--precision-bits", type=int, default=128, help="working precision (default 128)")
    common.add_argument("--digits", type=int, default=17, help="significant digits of float columns")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker processes for per-n rows")
    common.add_argument("--no-cap", action="store_true", help=f"allow n > {N_CAP} and q > {Q_CAP}")

    p = _Parser(prog="hermspread", description="Spreading lengths of Hermite polynomials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lengths", parents=[common], help="per-n table of all spreading lengths")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--n-min", type=int, default=0)
    s.add_argument("--q", type=_int_list, default=[2, 3, 4, 5], help="Renyi orders, e.g. 2,3,4,5")
    s.add_argument("--k-max", type=int, default=None, help="cap of the bound search (default grows with n)")
    s.set_defaults(func=cmd_lengths)

    s = sub.add_parser("moments", parents=[common], help="exact moments <x^k>")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k-max", type=int, default=10)
    s.set_defaults(func=cmd_moments)

    s = sub.add_parser("entropic", parents=[common], help="exact entropic moments W_q")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--q", type=_int_list, default=[2])
    s.set_defaults(func=cmd_entropic)

    s = sub.add_parser("bounds", parents=[common], help="optimal Kullback-Leibler bounds")
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--k-max", type=int, default=40)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("fits", parents=[common], help="linear fits against the standard deviation")
    s.add_argument("--range", type=_range, default=(0, 100), help="LO:HI degree range (default 0:100)")
    s.add_argument("--points", action="store_true", help="emit the fitted points instead of the fits")
    s.set_defaults(func=cmd_fits)

    s = sub.add_parser("oscillator", parents=[common], help="harmonic-oscillator scaling")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lam", type=_lam, required=True, help="oscillator strength, e.g. 4 or 1/4")
    s.add_argument("--q", type=_int_list, default=[2, 3, 4, 5])
    s.set_defaults(func=cmd_oscillator)

    s = sub.add_parser("asymptotics", parents=[common], help="exact values against large-n formulas")
    s.add_argument("--n", type=_int_list, default=[25, 50, 100])
    s.add_argument("--q", type=_order, default=Fraction(1))
    s.set_defaults(func=cmd_asymptotics)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < 53:
        parser.error("--precision-bits must be >= 53")
    if args.digits < 1:
        parser.error("--digits must be positive")
    try:
        record = args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"hermspread: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionNotMet, ConvergenceFailure) as exc:
        print(f"hermspread: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    text = record.to_json() if args.format == "json" else record.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
