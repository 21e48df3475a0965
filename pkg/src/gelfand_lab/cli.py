"""Command-line front end: ``gelfand-lab verify|sample|table``.

Exit codes: 0 pass, 1 statistical gate failure, 2 exact-identity failure,
64 usage error (bad flags or a module guard exceeded), 74 output error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import random
import subprocess
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import (
    GATE_SIGMAS,
    clt_report,
    clt_targets,
    finite_n_moments,
    limit_process_mean,
    report_text,
    variance_ratio_verdict,
)
from .characters import (
    MEASURES,
    character,
    gelfand_expectation_sigma,
    gelfand_expectation_sigma_direct,
    measure_table,
)
from .diagrams import OMEGA, normalized
from .ik_algebra import cyclic_power, mobius_identity_check, power_top_formula, top_kerov_part
from .partition import Partition, dim_exact, partitions_of
from .sampling import (
    MAX_N,
    ExperimentConfig,
    RngConfig,
    default_threads,
    random_involution,
    rsk_shape,
    run_experiment,
    sample_shape,
)
from .series import free_cumulants, transition_measure
from .square_roots import brute_force_square_roots, involution_count, representative, square_root_count

EXIT_OK, EXIT_STAT, EXIT_EXACT, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74
FORMATS = ("csv", "json", "svg")
POWER_CASES = ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (4, 4))
VERIFY_NMAX = {"exact": 12, "algebra": 8, "oracle": 8}
TABLE_NMAX = 500


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def version_string() -> str:
    """Package version plus ``git describe`` of the source tree when available."""
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
        if out.returncode == 0 and out.stdout.strip():
            return f"{__version__}+{out.stdout.strip()}"
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    trials: int | None = None
    measure: list[str] = field(default_factory=list)
    seed: int | None = None
    k: list[int] = field(default_factory=list)
    out: str | None = None
    formats: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def header(self) -> dict:
        return {"run_config": asdict(self), "version": version_string()}


def _comment_lines(cfg: RunConfig) -> str:
    h = cfg.header()
    return f"# run_config: {json.dumps(h['run_config'], sort_keys=True)}\n# version: {h['version']}\n"


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _choice_list(choices):
    def parse(text: str) -> list[str]:
        values = [v.strip() for v in text.split(",") if v.strip()]
        bad = [v for v in values if v not in choices]
        if bad or not values:
            raise argparse.ArgumentTypeError(f"choose from {','.join(choices)}; got {text!r}")
        return list(dict.fromkeys(values))

    return parse


# ---------------------------------------------------------------- verify


@dataclass
class Check:
    name: str
    cases: int
    failures: int
    kind: str = "exact"
    seconds: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _timed(name, kind, fn) -> Check:
    start = time.perf_counter()
    cases, failures, detail = fn()
    return Check(name, cases, failures, kind, time.perf_counter() - start, detail)


def _verify_exact(nmax: int) -> list[Check]:
    def square_roots():
        cases = fails = 0
        for n in range(1, min(nmax, 8) + 1):
            for t in partitions_of(n):
                cases += 1
                fails += square_root_count(t) != brute_force_square_roots(representative(t))
        cases += 1
        fails += square_root_count(Partition((3, 2, 2, 1, 1, 1))) != 8
        return cases, fails, "product formula vs exhaustive search"

    def trace():
        cases = fails = 0
        for n in range(1, min(nmax, 8) + 1):
            lams = partitions_of(n)
            for t in lams:
                cases += 1
                fails += sum(character(lam, t) for lam in lams) != square_root_count(t)
        return cases, fails, "sum of irreducible characters vs square-root count"

    def dims():
        cases = fails = 0
        for n in range(0, nmax + 1):
            d = [dim_exact(lam) for lam in partitions_of(n)]
            cases += 2
            fails += (sum(d) != involution_count(n)) + (sum(x * x for x in d) != math.factorial(n))
        return cases, fails, "sum dim = I_n and sum dim^2 = n!"

    def expectations():
        cases = fails = 0
        for n in range(1, nmax + 1):
            for k in range(1, min(n, 6) + 1):
                for mu in partitions_of(k):
                    cases += 1
                    fails += gelfand_expectation_sigma(n, mu) != gelfand_expectation_sigma_direct(n, mu)
        return cases, fails, "closed formula vs summation over partitions"

    return [
        _timed("square_roots", "exact", square_roots),
        _timed("gelfand_trace", "exact", trace),
        _timed("dimension_sums", "exact", dims),
        _timed("gelfand_expectations", "exact", expectations),
    ]


def _verify_algebra(nmax: int, seed: int) -> list[Check]:
    def powers():
        cases = fails = 0
        details = []
        for k, m in POWER_CASES:
            top = top_kerov_part(cyclic_power(k, m), k * m)
            cases += 1
            ok = top == power_top_formula(k, m)
            fails += not ok
            if (k, m) == (4, 4):
                coefs = sorted((int(c) for c in top.terms.values()))
                details.append(f"(Sigma_4)^4 top coefficients {coefs}")
        return cases, fails, "; ".join(details)

    def mobius():
        rng = random.Random(seed)
        cases = fails = 0
        table = {(i, r): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for i in range(1, 9) for r in range(1, 9)}
        cases += 1
        fails += mobius_identity_check(table, [2, 2]) != 0
        while cases < 101:
            s = rng.randint(2, 4)
            mults = [rng.randint(1, 3) for _ in range(s)]
            if sum(mults) > min(nmax, 8):
                continue
            table = {(i, r): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for i in range(1, s + 1) for r in range(1, 9)}
            cases += 1
            fails += mobius_identity_check(table, mults) != 0
        return cases, fails, "randomized rational instances with s >= 2"

    def cumulants():
        cases = fails = 0
        for n in range(0, min(nmax, 8) + 1):
            for lam in partitions_of(n):
                tm = transition_measure(lam)
                kappa = tm.free_cumulants(6)
                r = free_cumulants(lam, 6)
                cases += 1
                fails += tm.total_mass() != 1 or any(kappa[k] != r[k] for k in range(2, 7)) or r[2] != n
        return cases, fails, "free cumulants via series reversion vs transition measure moments"

    return [
        _timed("power_top_degree", "exact", powers),
        _timed("mobius_identity", "exact", mobius),
        _timed("free_cumulants", "exact", cumulants),
    ]


def _chi2_pvalue(counts, probs) -> float:
    from scipy.stats import chisquare

    counts = np.asarray(counts, dtype=float)
    return float(chisquare(counts, np.asarray(probs, dtype=float) * counts.sum()).pvalue)


def _verify_oracle(nmax: int, seed: int, samples: int) -> list[Check]:
    checks = []

    def pushforward():
        cases = fails = 0
        for n in range(1, nmax + 1):
            words = list(itertools.permutations(range(n)))
            shapes = Counter(rsk_shape(w) for w in words if all(w[w[i]] == i for i in range(n)))
            table = measure_table(n, "gelfand")
            total = sum(shapes.values())
            cases += 1
            fails += any(Fraction(shapes[lam], total) != p for lam, p in table.rows)
        return cases, fails, "RSK image of all involutions equals the Gelfand measure"

    checks.append(_timed("rsk_pushforward", "exact", pushforward))

    def uniformity():
        cases = fails = 0
        pvals = []
        for n in range(4, max(nmax, 4) + 1):
            rng = RngConfig(seed, n).generator()
            counts = Counter(tuple(random_involution(n, rng).tolist()) for _ in range(samples))
            cells = involution_count(n)
            observed = list(counts.values()) + [0] * (cells - len(counts))
            p = _chi2_pvalue(observed, [1 / cells] * cells)
            pvals.append(f"n={n}: p={p:.3g}")
            cases += 1
            fails += p <= 1e-3
        return cases, fails, "; ".join(pvals)

    def shape_law():
        cases = fails = 0
        pvals = []
        for n in range(4, max(nmax, 4) + 1):
            rng = RngConfig(seed + 1, n).generator()
            counts = Counter(sample_shape("gelfand", n, rng) for _ in range(samples))
            table = measure_table(n, "gelfand")
            p = _chi2_pvalue([counts[lam] for lam, _ in table.rows], [float(q) for _, q in table.rows])
            pvals.append(f"n={n}: p={p:.3g}")
            cases += 1
            fails += p <= 1e-3
        return cases, fails, "; ".join(pvals)

    checks.append(_timed("involution_uniformity", "statistical", uniformity))
    checks.append(_timed("sampled_shape_law", "statistical", shape_law))
    return checks


def cmd_verify(args) -> int:
    limit = VERIFY_NMAX[args.suite]
    nmax = args.nmax if args.nmax is not None else {"exact": 8, "algebra": 8, "oracle": 6}[args.suite]
    if not 1 <= nmax <= limit:
        raise UsageError(f"--nmax for the {args.suite} suite must be in [1, {limit}], got {nmax}")
    cfg = RunConfig("verify", n=nmax, seed=args.seed, out=args.out, formats=[args.format], extra={"suite": args.suite})
    if args.suite == "exact":
        checks = _verify_exact(nmax)
    elif args.suite == "algebra":
        checks = _verify_algebra(nmax, args.seed)
    else:
        checks = _verify_oracle(nmax, args.seed, args.samples)
    report = {
        **cfg.header(),
        "checks": [{**asdict(c), "passed": c.passed} for c in checks],
        "passed": all(c.passed for c in checks),
    }
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [_comment_lines(cfg).rstrip("\n")]
        for c in checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"{status}  {c.name:<24}{c.cases:>6} cases  {c.seconds:7.2f}s  {c.detail}")
        text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write(Path(args.out) / f"verify_{args.suite}.{'json' if args.format == 'json' else 'txt'}", text)
    if any(not c.passed and c.kind == "exact" for c in checks):
        return EXIT_EXACT
    if any(not c.passed for c in checks):
        return EXIT_STAT
    return EXIT_OK


# ---------------------------------------------------------------- sample


def overlay_svg(shape: Partition, measure: str, cfg: RunConfig, width: int = 640, height: int = 400) -> str:
    """lambda* against Omega, with the predicted mean deviation under the Gelfand measure."""
    diagram = normalized(shape)
    lo = min(diagram.support[0], -2.0) - 0.25
    hi = max(diagram.support[1], 2.0) + 0.25
    top = max(hi, -lo) + 0.1
    pad = 20

    def xy(s, w):
        px = pad + (s - lo) / (hi - lo) * (width - 2 * pad)
        py = height - pad - w / top * (height - 2 * pad)
        return f"{px:.2f},{py:.2f}"

    def polyline(points, colour, dash=""):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(xy(s, w) for s, w in points)
        return f'<polyline fill="none" stroke="{colour}" stroke-width="1.5"{extra} points="{pts}"/>'

    knots = [(lo, abs(lo))] + [(float(s), float(w)) for s, w in diagram.knots()] + [(hi, abs(hi))]
    grid = np.linspace(lo, hi, 801)
    omega = list(zip(grid.tolist(), np.asarray(OMEGA(grid)).tolist()))
    parts = [polyline(omega, "#1f77b4"), polyline(knots, "#d62728")]
    if measure == "gelfand":
        theta = np.linspace(0, math.pi, 401)
        s = 2 * np.cos(theta)
        band = OMEGA(s) + (2 / math.sqrt(shape.size)) * limit_process_mean(theta)
        parts.append(polyline(list(zip(s.tolist(), np.asarray(band).tolist())), "#2ca02c", "4,3"))
    meta = json.dumps(cfg.header(), sort_keys=True).replace("--", "- -")
    title = f"{measure} diagram, n={shape.size}, rescaled, against the limit shape"
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
        f"<!-- {meta} -->\n<title>{title}</title>\n"
        f'<rect width="100%" height="100%" fill="white"/>\n' + "\n".join(parts) + "\n</svg>\n"
    )


def cmd_sample(args) -> int:
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    if not 1 <= args.n <= MAX_N:
        raise UsageError(f"--n must be in [1, {MAX_N}], got {args.n}")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if any(k < 2 for k in args.k):
        raise UsageError("--k values must be >= 2")
    cfg = RunConfig(
        "sample", n=args.n, trials=args.trials, measure=args.measure, seed=args.seed, k=args.k,
        out=args.out, formats=args.format,
    )
    out = Path(args.out)
    summary = {**cfg.header(), "seed": args.seed, "threads": threads, "gate_sigmas": GATE_SIGMAS, "measures": {}}
    results = {}
    failed = False
    for measure in args.measure:
        exp_cfg = ExperimentConfig(measure, args.n, args.trials, args.seed, ks=tuple(args.k), threads=threads)
        res = run_experiment(exp_cfg)
        results[measure] = res
        entry = res.stats.summary()
        # exact finite-n law of X_k, to tell slow convergence apart from sampler error
        entry["finite_n_exact"] = {
            f"X{k}": dict(zip(("mean", "variance"), finite_n_moments(measure, args.n, k))) for k in args.k if k <= 9
        }
        if res.stats.count >= 100:
            rows = clt_report(res.stats, clt_targets(measure, exp_cfg.ks, exp_cfg.upsilons))
            entry["clt"] = [asdict(r) for r in rows]
            failed |= not all(r.passed for r in rows)
            sys.stdout.write(f"{measure} n={args.n} T={args.trials}\n{report_text(rows)}\n")
        else:
            entry["clt"] = None
            sys.stdout.write(f"{measure}: fewer than 100 trials, no gates evaluated\n")
        summary["measures"][measure] = entry
        stem = f"{measure}_n{args.n}_seed{args.seed}"
        if "csv" in args.format:
            _write(out / f"{stem}.csv", _comment_lines(cfg) + res.to_csv())
        if "svg" in args.format:
            last = sample_shape(measure, args.n, RngConfig(args.seed, args.trials - 1).generator())
            _write(out / f"{stem}.svg", overlay_svg(last, measure, cfg))
    if set(MEASURES) <= set(results):
        g, p = results["gelfand"].stats, results["plancherel"].stats
        if min(g.count, p.count) >= 100:
            ratios = [asdict(variance_ratio_verdict(g, p, f"X{k}")) for k in args.k]
            failed |= not all(r["passed"] for r in ratios)
        else:
            ratios = [
                {"observable": f"X{k}", "statistic": "variance_ratio",
                 "estimate": g.variance_of(f"X{k}") / p.variance_of(f"X{k}") if g.count > 1 and p.count > 1 else None,
                 "target": 2.0, "passed": None}
                for k in args.k
            ]
        summary["variance_ratio"] = ratios
    if "json" in args.format:
        _write(out / f"summary_n{args.n}_seed{args.seed}.json", json.dumps(summary, indent=2) + "\n")
    return EXIT_STAT if failed else EXIT_OK


# ---------------------------------------------------------------- table


def cmd_table(args) -> int:
    cfg = RunConfig("table", out=args.out, extra={"what": args.what})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.what == "involutions":
        nmax = args.nmax if args.nmax is not None else 10
        if not 0 <= nmax <= TABLE_NMAX:
            raise UsageError(f"--nmax must be in [0, {TABLE_NMAX}]")
        cfg.n = nmax
        w.writerow(["n", "involutions"])
        for n in range(nmax + 1):
            w.writerow([n, involution_count(n)])
        body = buf.getvalue()
    elif args.what == "measure":
        if args.n is None:
            raise UsageError("table measure needs --n")
        measure = args.measure[0] if args.measure else "gelfand"
        cfg.n, cfg.measure = args.n, [measure]
        try:
            body = measure_table(args.n, measure).to_csv()
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        if not args.mu:
            raise UsageError("table expectation needs --mu, e.g. --mu 3 or --mu 2,2")
        mu = Partition.of(args.mu)
        nmax = args.nmax if args.nmax is not None else 12
        if not 1 <= nmax <= TABLE_NMAX:
            raise UsageError(f"--nmax must be in [1, {TABLE_NMAX}]")
        cfg.n, cfg.k = nmax, list(mu.parts)
        w.writerow(["n", "numerator", "denominator", "value"])
        for n in range(1, nmax + 1):
            v = gelfand_expectation_sigma(n, mu)
            w.writerow([n, v.numerator, v.denominator, repr(float(v))])
        body = buf.getvalue()
    text = _comment_lines(cfg) + body
    sys.stdout.write(text)
    if args.out:
        _write(Path(args.out) / f"table_{args.what}.csv", text)
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gelfand-lab", description="Random Young diagrams under the Gelfand and Plancherel measures.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {version_string()}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run an exact or oracle verification suite")
    v.add_argument("suite", choices=("exact", "algebra", "oracle"))
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--seed", type=int, default=2024)
    v.add_argument("--samples", type=int, default=100_000, help="samples per chi-square test (oracle suite)")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", default=None, help="directory for a copy of the report")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", help="Monte Carlo experiment with CSV, JSON and SVG outputs")
    s.add_argument("--measure", type=_choice_list(MEASURES), default=["gelfand"], help="gelfand, plancherel or both (comma-separated)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=2000)
    s.add_argument("--seed", type=int, default=2024)
    s.add_argument("--k", type=_int_list, default=[2, 3, 4, 5])
    s.add_argument("--out", default="out")
    s.add_argument("--threads", type=int, default=None, help="worker processes (default: GELFAND_LAB_THREADS or CPU count)")
    s.add_argument("--format", type=_choice_list(FORMATS), default=list(FORMATS), help="subset of csv,json,svg")
    s.set_defaults(func=cmd_sample)

    t = sub.add_parser("table", help="exact tables as CSV")
    t.add_argument("what", choices=("involutions", "measure", "expectation"))
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--nmax", type=int, default=None)
    t.add_argument("--measure", type=_choice_list(MEASURES), default=None)
    t.add_argument("--mu", type=_int_list, default=None)
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gelfand-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gelfand-lab: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
