"""Command line runner: ``tplab <command> [options]``.

Exit codes: 0 when every decided check holds, 1 when a certified violation
was found, 2 when undecided results remain, 3 on usage or configuration
errors.

Options can also come from ``--config FILE``, a flat ``key = value`` file
whose keys are the long option names (``max-order = 5``).  Flags given on
the command line win over the file.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DomainError, LengthError, TPLabError
from .lp_class import hankel_psd, jensen, series_reciprocal, turan_deltas
from .moments import rootedness_verdict, schoenberg_pipeline, vd_battery
from .numerics.ball import Ball
from .numerics.precision import PrecisionConfig, default_digits
from .numerics.series import PowerSeries
from .numerics.xi import xi1_series
from .pff_catalog import CATALOG_NAMES, get_entry
from .report import VERDICT_EXIT, ball_json, build_report, csv_text, dumps
from .subjects import XI_LAMBDA
from .tp_tester import STRATEGIES, bochner_battery, tp_battery
from .transforms.lambda_xi import DEFAULT_X_MAX, empirical_decay_rate, lambda_from_xi
from .transforms.laplace import bilateral_laplace
from .transforms.quadrature import SCHEMES, QuadratureConfig
from .transforms.roundtrip import lambda_integral, roundtrip_check

EXIT_USAGE = 3
ROUNDTRIP_TOLERANCE = mpf("1e-6")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


@dataclass(frozen=True)
class RunConfig:
    prec: PrecisionConfig
    qc: QuadratureConfig
    seed: int
    output: str
    threads: int

    def as_dict(self) -> dict:
        # the worker count is deliberately left out: it must not change the body
        return {
            "digits": self.prec.digits,
            "seed": self.seed,
            "quadrature": {"scheme": self.qc.scheme, "level": self.qc.level},
        }


def _num(x, digits):
    return mpmath.nstr(x, digits) if x else "0"


# -- commands -------------------------------------------------------------
# each returns (subject, results, verdict, csv_header, csv_rows)

def _support_str(support) -> str:
    lo, hi = support
    return f"({'-inf' if lo is None else lo}, {'inf' if hi is None else hi})"


def cmd_catalog(args, rc):
    entries = [get_entry(n) for n in CATALOG_NAMES]
    control = get_entry("indicator")

    def row(e):
        return {"name": e.name, "support": [str(b) if b is not None else None for b in e.support], "strip": str(e.strip), "transform_reciprocal": e.psi_description}

    results = {"entries": [row(e) for e in entries], "negative_controls": [row(control)]}
    rows = [(e.name, _support_str(e.support), str(e.strip), e.psi_description) for e in entries]
    return None, results, "no-certified-violation", ("name", "support", "strip", "transform_reciprocal"), rows


def cmd_laplace(args, rc):
    s = args.s
    d = rc.prec.digits
    if args.subject == XI_LAMBDA:
        check = roundtrip_check(s, rc.qc, rc.prec)
        value = lambda_integral("laplace", s, rc.qc, rc.prec)
        # int Lambda e^(-s x) = int Lambda cosh(s x) since Lambda is even
    else:
        entry = get_entry(args.subject)
        value = bilateral_laplace(entry, s, rc.qc, rc.prec).value
        with rc.prec.context():
            check = value * entry.psi(s, rc.prec) - 1
    verdict = "certified-violation" if not check.contains_zero() else "no-certified-violation"
    results = {"s": str(s), "value": ball_json(value, d), "times_reciprocal_minus_one": ball_json(check, d)}
    rows = [(str(s), _num(value.mid, d), _num(value.rad, 6))]
    return args.subject, results, verdict, ("s", "center", "radius"), rows


def cmd_lambda(args, rc):
    if args.step <= 0 or args.xmax < args.xmin:
        raise UsageError("need step > 0 and xmax >= xmin")
    xs = []
    x = args.xmin
    while x <= args.xmax:
        xs.append(x)
        x += args.step
    x_max = max(DEFAULT_X_MAX, int(mpmath.ceil(max(abs(args.xmin), abs(args.xmax)))))
    d = rc.prec.digits
    rows, samples = [], []
    verdict = "no-certified-violation"
    for x in xs:
        v = lambda_from_xi(x, rc.qc, rc.prec, x_max=x_max)
        if v.upper < 0:
            verdict = "certified-violation"
        elif v.contains_zero() and verdict != "certified-violation":
            verdict = "undecided"
        rows.append((str(x), _num(v.mid, d), _num(v.rad, 6)))
        samples.append({"x": str(x), **ball_json(v, d)})
    return XI_LAMBDA, {"samples": samples}, verdict, ("x", "center", "radius"), rows


def cmd_tp(args, rc):
    r = tp_battery(args.subject, args.max_order, args.trials, rc.seed, args.strategy, rc.prec, rc.qc, rc.threads)
    body = r.to_json()
    rows = [(o["n"], o["trials"], o["min_det"]["center"], o["min_det"]["radius"], " ".join(o["worst_grid"]["xs"]), " ".join(o["worst_grid"]["ys"]), o["undecided"]) for o in body["orders"]]
    return args.subject, body, r.verdict, ("n", "trials", "min_det_center", "min_det_radius", "worst_xs", "worst_ys", "undecided"), rows


def cmd_bochner(args, rc):
    r = bochner_battery(args.n, args.range, args.trials, rc.seed, rc.prec, rc.threads)
    body = r.to_json()
    rows = [(" ".join(t["taus"]), t["status"], t["min_eigenvalue"]["center"], t["min_eigenvalue"]["radius"]) for t in body["trials"]]
    return "inverse-xi", body, r.verdict, ("taus", "status", "min_eig_center", "min_eig_radius"), rows


def _sign_status(b) -> str:
    if isinstance(b, Fraction):
        return "certified-nonnegative" if b >= 0 else "certified-negative"
    if b.lower >= 0:
        return "certified-nonnegative"
    return "certified-negative" if b.upper < 0 else "undecided"


def _series_for(source: str, N: int, rc: RunConfig):
    """``{label: PowerSeries}`` for ``xi1`` (plus ``Xi(sqrt(s))``) or ``catalog:NAME``."""
    if source == "xi1":
        x1 = xi1_series(N, rc.prec)
        # Xi(sqrt(s)) has the same coefficients up to the sign (-1)^m
        with rc.prec.context():
            alt = PowerSeries([c if m % 2 == 0 else -c for m, c in enumerate(x1)])
        return {"xi1": x1, "xi_sqrt": alt}
    kind, _, name = source.partition(":")
    if kind != "catalog" or not name:
        raise UsageError("--series must be xi1 or catalog:NAME")
    res = schoenberg_pipeline(name, N=N, n_max=min(N, 2), prec=rc.prec, qc=rc.qc, threads=rc.threads)
    return {f"psi:{name}": res.psi_series}


def cmd_lp(args, rc):
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = set(checks) - {"turan", "hankel", "jensen"}
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
    n = args.n
    N = max(n + 1, 2 * n - 1)
    d = rc.prec.digits
    series = _series_for(args.series, N, rc)
    results, rows, statuses = {}, [], []
    for label, ps in series.items():
        out = {"coefficients": [ball_json(c, d) if isinstance(c, Ball) else {"center": str(c), "radius": "0"} for c in ps]}
        if "turan" in checks:
            deltas = turan_deltas(ps.truncate(n + 1), rc.prec)
            items = []
            for k, delta in enumerate(deltas, start=1):
                st = _sign_status(delta)
                statuses.append({"certified-negative": "violation"}.get(st, st))
                items.append({"n": k, "status": st, **ball_json(Ball(delta), d)})
                rows.append((label, "turan", k, st, _num(Ball(delta).mid, d), _num(Ball(delta).rad, 6)))
            out["turan"] = items
        if label == "xi_sqrt":
            results[label] = out
            continue
        if "hankel" in checks:
            rec = series_reciprocal(ps, rc.prec)
            items = []
            for k in range(1, n + 1):
                v = hankel_psd(rec, k, rc.prec)
                statuses.append({"certified-not": "violation"}.get(v.status, v.status))
                items.append({"n": k, "status": v.status, "min_eigenvalue": ball_json(v.min_eigenvalue, d)})
                rows.append((label, "hankel", k, v.status, _num(v.min_eigenvalue.mid, d), _num(v.min_eigenvalue.rad, 6)))
            out["hankel"] = items
        if "jensen" in checks:
            items = []
            with rc.prec.context():
                for k in range(n + 1):
                    st, cnt = rootedness_verdict(jensen(ps, k, rc.prec)[0])
                    statuses.append({"not-real-rooted": "violation"}.get(st, st))
                    cnt = cnt if isinstance(cnt, int) else [cnt.lo, cnt.hi]
                    items.append({"n": k, "status": st, "real_zeros": cnt})
                    rows.append((label, "jensen", k, st, str(cnt), ""))
            out["jensen"] = items
        results[label] = out
    if "violation" in statuses:
        verdict = "certified-violation"
    elif "undecided" in statuses:
        verdict = "undecided"
    else:
        verdict = "no-certified-violation"
    return args.series, results, verdict, ("series", "check", "n", "status", "center", "radius"), rows


def cmd_vd(args, rc):
    subjects = CATALOG_NAMES if args.subject == "all" else tuple(args.subject.split(","))
    r = vd_battery(subjects, args.trials, rc.seed, args.degree, rc.prec, rc.qc, rc.threads)
    body = r.to_json()
    rows = [(c["trial"], c["subject"], " ".join(c["p"]), c["status"], c["N_p"], c["N_q"]) for c in body["cases"]]
    return ",".join(subjects), body, r.verdict, ("trial", "subject", "p_coefficients", "status", "N_p", "N_q"), rows


def cmd_pipeline(args, rc):
    r = schoenberg_pipeline(args.subject, args.N, args.nmax, rc.prec, rc.qc, rc.threads)
    d = rc.prec.digits
    body = r.to_json(d)
    rows = [(j, c["center"], c["radius"]) for j, c in enumerate(body["psi_series"])]
    return args.subject, body, r.verdict, ("j", "psi_center", "psi_radius"), rows


def cmd_roundtrip(args, rc):
    smax = args.smax
    points = sorted({-smax, -smax / 2, Fraction(0), smax / 2, smax})
    kinds = ("laplace", "fourier") if args.kind == "both" else (args.kind,)
    d = rc.prec.digits
    items, rows, statuses = [], [], []
    for kind in kinds:
        for s in points:
            try:
                b = roundtrip_check(s, rc.qc, rc.prec, kind)
            except (TPLabError, ArithmeticError) as exc:
                items.append({"kind": kind, "s": str(s), "status": "undecided", "error": str(exc)})
                rows.append((kind, str(s), "", "", "undecided"))
                statuses.append("undecided")
                continue
            if not b.contains_zero():
                st = "inconsistent"
            elif b.rad < ROUNDTRIP_TOLERANCE:
                st = "consistent"
            else:
                st = "undecided"
            statuses.append(st)
            items.append({"kind": kind, "s": str(s), "status": st, "product_minus_one": ball_json(b, d)})
            rows.append((kind, str(s), _num(b.mid, d), _num(b.rad, 6), st))
    if "inconsistent" in statuses:
        verdict = "certified-violation"
    elif "undecided" in statuses:
        verdict = "undecided"
    else:
        verdict = "no-certified-violation"
    rate = empirical_decay_rate(rc.prec, rc.qc)
    results = {"checks": items, "empirical_decay_rate": mpmath.nstr(rate, 12)}
    return XI_LAMBDA, results, verdict, ("kind", "s", "center", "radius", "status"), rows


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker processes (0 = all cores)")
    common.add_argument("--digits", type=int, default=None, help="decimal digits (default: $TPLAB_DIGITS or 50)")
    common.add_argument("--output", choices=("json", "csv"), default=None)
    common.add_argument("--config", default=None, help="flat key = value file mirroring the long options")
    common.add_argument("--quad-scheme", choices=SCHEMES, default="gauss-legendre")
    common.add_argument("--quad-level", type=int, default=4)

    p = _Parser(prog="tplab", description="Certified experiments on totally positive functions and the xi function.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    add("catalog", cmd_catalog, "list the closed-form catalog")

    sp = add("laplace", cmd_laplace, "bilateral Laplace transform of a subject")
    sp.add_argument("--subject", required=True)
    sp.add_argument("--s", type=_fraction, required=True)

    sp = add("lambda", cmd_lambda, "sample the inverse Fourier transform of 1/xi (CSV: x,center,radius)")
    sp.add_argument("--xmin", type=_fraction, default=Fraction(-2))
    sp.add_argument("--xmax", type=_fraction, default=Fraction(2))
    sp.add_argument("--step", type=_fraction, default=Fraction(1, 4))

    sp = add("tp", cmd_tp, "total-positivity determinant battery")
    sp.add_argument("--subject", required=True)
    sp.add_argument("--max-order", type=int, default=5)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--strategy", choices=STRATEGIES, default="uniform-window")

    sp = add("bochner", cmd_bochner, "positive-definiteness of 1/xi(1/2 + t_j - t_k)")
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--range", type=_fraction, default=Fraction(5))
    sp.add_argument("--trials", type=int, default=100)

    sp = add("lp", cmd_lp, "Turan / Hankel / Jensen checks on a series")
    sp.add_argument("--series", required=True, help="xi1 or catalog:NAME")
    sp.add_argument("--checks", default="turan,hankel,jensen")
    sp.add_argument("--n", type=int, default=8)

    sp = add("vd", cmd_vd, "zero-decreasing battery on random exact polynomials")
    sp.add_argument("--subject", default="all")
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--trials", type=int, default=200)

    sp = add("pipeline", cmd_pipeline, "moments -> transform series -> reciprocal -> Jensen")
    sp.add_argument("--subject", required=True)
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--N", type=int, default=None)

    sp = add("roundtrip", cmd_roundtrip, "consistency of the inverted kernel with xi")
    sp.add_argument("--smax", type=_fraction, default=Fraction(2))
    sp.add_argument("--kind", choices=("laplace", "fourier", "both"), default="laplace")
    return p


def read_config(path: str) -> list[str]:
    """``key = value`` lines -> option tokens (``--key value``)."""
    tokens = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or key == "config":
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        tokens += [f"--{key}", value]
    return tokens


def _with_config(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not argv:
        return argv
    # file options go right after the command name so later flags override them
    return argv[:1] + read_config(known.config) + argv[1:]


def run(argv: list[str]) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(_with_config(argv))
    digits = args.digits if args.digits is not None else default_digits()
    try:
        prec = PrecisionConfig(digits=digits)
        qc = QuadratureConfig(scheme=args.quad_scheme, level=args.quad_level)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.threads < 0:
        raise UsageError("--threads must be >= 0")
    default_output = "csv" if args.command == "lambda" else "json"
    rc = RunConfig(prec, qc, args.seed, args.output or default_output, args.threads)
    subject, results, verdict, header, rows = args.func(args, rc)
    if rc.output == "csv":
        text = csv_text(header, rows)
    else:
        options = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(vars(args).items())
                   if k not in ("func", "command", "threads", "config", "output", "seed", "digits", "quad_scheme", "quad_level")}
        config = {**rc.as_dict(), "options": options}
        text = dumps(build_report(args.command, config, subject, results, verdict))
    return VERDICT_EXIT[verdict], text


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, LengthError) as exc:
        print(f"tplab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TPLabError, ArithmeticError) as exc:
        print(f"tplab: unresolved at this precision: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
