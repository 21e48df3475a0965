"""Acceptance suite: one test and one printed PASS/FAIL line per criterion."""

import itertools
import math
import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from conftest import MC_N, MC_TRIALS, SWEEP_NS, SWEEP_SAMPLES, record_acceptance
from gelfand_lab.asymptotics import clt_targets, clt_report, covariance_verdict
from gelfand_lab.characters import (
    character,
    gelfand_expectation_sigma,
    gelfand_expectation_sigma_direct,
    measure_table,
)
from gelfand_lab.ik_algebra import cyclic_power, mobius_identity_check, power_top_formula, top_kerov_part
from gelfand_lab.partition import Partition, dim_exact, partitions_of
from gelfand_lab.sampling import random_involution, rsk_shape
from gelfand_lab.square_roots import (
    brute_force_square_roots,
    estimate_relative_error,
    involution_count,
    representative,
    square_root_count,
)

from oracles import brute_involutions, chi2_pvalue


def test_criterion_01_square_roots():
    start = time.perf_counter()
    mismatches, cases = [], 0
    for n in range(1, 9):
        for t in partitions_of(n):
            cases += 1
            if square_root_count(t) != brute_force_square_roots(representative(t)):
                mismatches.append(t)
    # the S_10 example factorises over cycle lengths; each factor is brute-forced in S_3, S_4, S_3
    worked = square_root_count(Partition((3, 2, 2, 1, 1, 1)))
    factors = [brute_force_square_roots(representative(Partition(p))) for p in ((1, 1, 1), (2, 2), (3,))]
    elapsed = time.perf_counter() - start
    ok = not mismatches and worked == 8 and math.prod(factors) == 8 and elapsed < 120
    record_acceptance(1, "square-root counts", ok, f"{cases} cycle types n<=8 agree, type 1^3 2^2 3 -> {worked} (factors {factors}), {elapsed:.1f}s")
    assert ok, mismatches


def test_criterion_02_trace_identity():
    start = time.perf_counter()
    bad, cases = [], 0
    for n in range(1, 9):
        lams = partitions_of(n)
        for t in lams:
            cases += 1
            if sum(character(lam, t) for lam in lams) != square_root_count(t):
                bad.append(t)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    record_acceptance(2, "trace of the Gelfand model", ok, f"{cases} classes n<=8 exact, {elapsed:.1f}s")
    assert ok, bad


def test_criterion_03_dimension_sums():
    bad = []
    for n in range(0, 13):
        dims = [dim_exact(lam) for lam in partitions_of(n)]
        if sum(dims) != involution_count(n) or sum(d * d for d in dims) != math.factorial(n):
            bad.append(n)
    brute = all(involution_count(n) == brute_involutions(n) for n in range(9))
    ok = not bad and brute
    record_acceptance(3, "dimension sums", ok, "sum dim = I_n and sum dim^2 = n! for n = 0..12")
    assert ok, bad


def test_criterion_04_gelfand_expectations():
    bad, cases = [], 0
    for n in range(1, 13):
        for k in range(1, 7):
            for mu in partitions_of(k):
                cases += 1
                if gelfand_expectation_sigma(n, mu) != gelfand_expectation_sigma_direct(n, mu):
                    bad.append((n, mu))
    ok = not bad
    record_acceptance(4, "closed vs direct G_n[Sigma_mu]", ok, f"{cases} exact rational comparisons, |mu|<=6, n<=12")
    assert ok, bad


def test_criterion_05_power_lemma():
    start = time.perf_counter()
    cases = ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (4, 4))
    bad = [(k, m) for k, m in cases if top_kerov_part(cyclic_power(k, m), k * m) != power_top_formula(k, m)]
    top44 = top_kerov_part(cyclic_power(4, 4), 16)
    coefs = {mu.parts: int(c) for mu, c in top44.terms.items()}
    expected = {(4, 4, 4, 4): 1, (4, 4, 1, 1, 1, 1): 24, (1,) * 8: 48}
    elapsed = time.perf_counter() - start
    ok = not bad and coefs == expected and elapsed < 600
    record_acceptance(5, "top Kerov degree of powers", ok, f"{len(cases)} cases, (Sigma_4)^4 -> 1, 24, 48, {elapsed:.1f}s")
    assert ok, (bad, coefs)


def test_criterion_06_mobius():
    rng = random.Random(123)
    instances = []
    while len(instances) < 100:
        s = rng.randint(2, 5)
        mults = [rng.randint(1, 4) for _ in range(s)]
        if sum(mults) <= 8:
            instances.append(mults)
    values = []
    for mults in instances:
        table = {(i, r): Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for i in range(1, len(mults) + 1) for r in range(1, 9)}
        values.append(mobius_identity_check(table, mults))
    worked_table = {(i, r): Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for i in (1, 2) for r in (1, 2)}
    worked = mobius_identity_check(worked_table, [2, 2])
    ok = all(v == 0 for v in values) and worked == 0
    record_acceptance(6, "Moebius lemma", ok, "100 random instances (s>=2, sum r<=8) and the (1,1,2,2) instance all vanish")
    assert ok


def test_criterion_07_sampler():
    rng = np.random.default_rng(77)
    samples = 100_000
    details, ok = [], True
    for n in (4, 5, 6):
        cells = involution_count(n)
        counts = Counter(tuple(random_involution(n, rng).tolist()) for _ in range(samples))
        p_uniform = chi2_pvalue(list(counts.values()) + [0] * (cells - len(counts)), [1 / cells] * cells)
        shapes = Counter(rsk_shape(w) for w in counts.elements())
        table = measure_table(n, "gelfand")
        p_shape = chi2_pvalue([shapes[lam] for lam, _ in table.rows], [float(q) for _, q in table.rows])
        # exact pushforward: all involutions of S_n through RSK
        exact = Counter(
            rsk_shape(w) for w in itertools.permutations(range(n)) if all(w[w[i]] == i for i in range(n))
        )
        exact_ok = all(Fraction(exact[lam], cells) == q for lam, q in table.rows)
        ok &= p_uniform > 1e-3 and p_shape > 1e-3 and exact_ok and len(counts) == cells
        details.append(f"n={n}: p_unif={p_uniform:.3f} p_shape={p_shape:.3f}")
    record_acceptance(7, "sampler correctness", ok, "; ".join(details))
    assert ok


def test_criterion_08_gelfand_clt(gelfand_run):
    st = gelfand_run.stats
    m2, v2 = st.mean_of("X2"), st.variance_of("X2")
    m3, v3 = st.mean_of("X3"), st.variance_of("X3")
    cov = covariance_verdict(st, "X2", "X3", 4.0, 6.0)
    ok = abs(m2) < 0.2 and abs(v2 - 4) < 0.5 and abs(m3 - 1) < 0.15 and abs(v3 - 6) < 1.0 and cov.passed
    record_acceptance(
        8, "Gelfand CLT", ok,
        f"n={MC_N} T={MC_TRIALS}: mean X2={m2:.3f} var X2={v2:.3f} mean X3={m3:.3f} var X3={v3:.3f} "
        f"cov={cov.estimate:.3f} (z={cov.z:.2f})",
    )
    assert ok


def test_criterion_09_plancherel_contrast(gelfand_run, plancherel_run):
    vp = plancherel_run.stats.variance_of("X2")
    ratio = gelfand_run.stats.variance_of("X2") / vp
    ok = abs(vp - 2) < 0.3 and 1.6 <= ratio <= 2.4
    record_acceptance(9, "Plancherel contrast", ok, f"var X2 (Plancherel)={vp:.3f}, Gelfand/Plancherel ratio={ratio:.3f}")
    assert ok


def test_criterion_10_chebyshev_functionals(gelfand_run):
    targets = clt_targets("gelfand", ks=(), upsilons=(2, 3))
    rows = {(r.observable, r.statistic): r for r in clt_report(gelfand_run.stats, targets)}
    gated = [rows[("upsilon_2", "mean")], rows[("upsilon_2", "variance")], rows[("upsilon_3", "mean")]]
    ok = all(r.passed for r in gated)
    detail = ", ".join(f"{r.statistic}(Y{r.observable[-1]})={r.estimate:.3f} vs {r.target:.3f} (z={r.z:.2f})" for r in gated)
    record_acceptance(10, "Chebyshev functionals", ok, detail)
    assert ok


def test_criterion_11_limit_shape(sup_sweep):
    medians = [sup_sweep[n] for n in SWEEP_NS]
    ok = all(a > b for a, b in zip(medians, medians[1:])) and medians[-1] < 0.25
    detail = ", ".join(f"n={n}: {m:.4f}" for n, m in zip(SWEEP_NS, medians))
    record_acceptance(11, "limit shape", ok, f"median sup distance over {SWEEP_SAMPLES} samples: {detail}")
    assert ok


def test_criterion_12_involution_asymptotics():
    ns = (100, 200, 500, 1000)
    errs = [estimate_relative_error(n) for n in ns]
    ok = all(a > b for a, b in zip(errs, errs[1:]))
    record_acceptance(12, "involution asymptotics", ok, ", ".join(f"n={n}: {e:.2e}" for n, e in zip(ns, errs)))
    assert ok

