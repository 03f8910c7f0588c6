"""Packaged verification suites behind ``speclab verify``.

Each suite returns summary rows ``check, count, failures, worst, passed``
where ``worst`` is the most adverse value of the monitored quantity (a
relative margin, a residual or a maximum, depending on the check).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..bounds import (
    BoundQuery,
    bound_ladder,
    coefficient_identities,
    omega_ratio,
    remark13_holds,
)
from ..geometry import ine_lower_bound
from ..lemma_lab import (
    find_epsilon,
    lemma23_check,
    proof_constant_checks,
    random_profile,
    theta_gap,
    theta_scale,
    thm_proof_functions,
    zeta_universal_bound,
)
from ..lemma_lab.proof_functions import J_value
from ..spectra import (
    KernelParams,
    bessel_bound_profile,
    box_eigenvalues,
    cauchy_constant_discrepancy,
    profile_integral,
    total_mass,
)
from .campaign import worker_count

DEFAULT_TOL = 1e-12
LEMMA_B = (2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 7.5, 8.0)
LEMMA_ALPHA = (0.25, 0.5, 1.0, 1.5, 2.0)


@dataclass
class SuiteResult:
    name: str
    rows: list

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.rows)


def _row(check, count, failures, worst):
    return {"check": check, "count": int(count), "failures": int(failures),
            "worst": float(worst), "passed": bool(failures == 0)}


def _map(fn, items):
    workers = worker_count()
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


# ladder ------------------------------------------------------------------

def ladder_suite(trials: int = 200, seed: int = 0, tol: float = 0.0) -> SuiteResult:
    """Unit square, exact spectrum, k = 1..trials: mean >= THM11 >= MELAS >= BLY and Polya."""
    spec = box_eigenvalues((1.0, 1.0), trials)
    means = spec.running_means()
    worst_chain, worst_mean, worst_polya = math.inf, math.inf, math.inf
    fail_chain = fail_mean = fail_polya = 0
    for k in range(1, trials + 1):
        q = BoundQuery(2, 2.0, k, 1.0, 1.0 / 6.0)
        lad = bound_ladder(q)
        vals = {v.scheme.value: v.total for v in lad.values}
        chain_gap = min(lad.gaps.values())
        mean_gap = means[k - 1] - vals["thm11"]
        polya_gap = spec.eigenvalues[k - 1] - vals["polya"]
        worst_chain = min(worst_chain, chain_gap)
        worst_mean = min(worst_mean, mean_gap)
        worst_polya = min(worst_polya, polya_gap)
        fail_chain += not (lad.ordered and chain_gap >= -tol)
        fail_mean += mean_gap < -tol
        fail_polya += polya_gap < -tol
    return SuiteResult("ladder", [
        _row("mean_vs_thm11", trials, fail_mean, worst_mean),
        _row("thm11_melas_bly_chain", trials, fail_chain, worst_chain),
        _row("polya_single", trials, fail_polya, worst_polya),
    ])


# lemma -------------------------------------------------------------------

def _profile_batch(args):
    seed_seq, count, tol = args
    rng = np.random.default_rng(seed_seq)
    out = {"natural": [math.inf, 0, 0], "real": [math.inf, 0, 0], "chain": [0, 0],
           "scaling": [0.0, 0], "epsilon": [0.0, 0, 0]}
    for _ in range(count):
        mu = float(rng.uniform(0.2, 5.0))
        psi0 = float(rng.uniform(0.2, 5.0))
        p = random_profile(rng, mu, psi0)
        h = p.normalized().slope_density()
        for b in LEMMA_B:
            eps = find_epsilon(h, b, float(rng.choice(LEMMA_ALPHA)))
            acc = out["epsilon"]
            acc[0] = max(acc[0], eps.residual)
            acc[1] += 1
            acc[2] += not eps.upper_holds
            for a in LEMMA_ALPHA:
                r = lemma23_check(p, b, a)
                key = "natural" if float(b).is_integer() else "real"
                acc = out[key]
                rel = r.relative_margin
                acc[0] = min(acc[0], rel)
                acc[1] += 1
                acc[2] += not (rel >= -tol and r.verdict == r.normalized_verdict)
                out["chain"][0] += 1
                out["chain"][1] += not all(r.chain.values())
                out["scaling"][0] = max(out["scaling"][0], r.scaling_rel_diff)
                out["scaling"][1] += 1
    return out


def lemma_suite(trials: int = 1000, seed: int = 0, tol: float = DEFAULT_TOL) -> SuiteResult:
    """Random profiles x (b, alpha) grid, Theta sweep, and the window shift."""
    batches = 8
    seqs = np.random.SeedSequence(seed).spawn(batches + 1)
    sizes = [trials // batches + (i < trials % batches) for i in range(batches)]
    parts = _map(_profile_batch, [(s, n, tol) for s, n in zip(seqs[:batches], sizes)])

    def merge(key, op):
        return [op([p[key][i] for p in parts]) if i == 0 else sum(p[key][i] for p in parts)
                for i in range(len(parts[0][key]))]

    nat = merge("natural", min)
    real = merge("real", min)
    eps = merge("epsilon", max)
    scaling = merge("scaling", max)
    chain = [sum(p["chain"][0] for p in parts), sum(p["chain"][1] for p in parts)]

    rng = np.random.default_rng(seqs[-1])
    m = 100 * trials
    s = rng.uniform(1e-3, 5.0, m)
    tau = rng.uniform(1e-3, 5.0, m)
    b = rng.uniform(2.0, 8.0, m)
    b[: m // 2] = rng.integers(2, 9, m // 2)
    a = rng.uniform(0.0, 2.0, m)
    a[a == 0] = 2.0
    gap = theta_gap(s, tau, b, a) / theta_scale(s, tau, b, a)
    return SuiteResult("lemma", [
        _row("lemma_natural_b", nat[1], nat[2], nat[0]),
        _row("lemma_real_b", real[1], real[2], real[0]),
        _row("proof_chain", chain[0], chain[1], 0.0),
        _row("normalization_scaling", scaling[1], int(scaling[0] > 1e-10), scaling[0]),
        _row("epsilon_window", eps[1], eps[2], eps[0]),
        _row("theta_nonnegative", m, int(np.sum(gap < -tol)), float(np.min(gap))),
    ])


# proof -------------------------------------------------------------------

PROOF_N = tuple(range(2, 11))
PROOF_ALPHA = (0.1, 0.25, 0.5, 1.0, 1.5, 1.75, 2.0)
PROOF_K = (1, 2, 3, 5, 10, 20, 50, 100)
PROOF_INE = (1.0, 1.2, 2.0, 10.0)


def constant_grid():
    bs = 2.0 + 0.01 * np.arange(1001)
    alphas = 0.01 * np.arange(1, 201)
    return bs, alphas


def proof_suite(trials: int = 1000, seed: int = 0, tol: float = DEFAULT_TOL) -> SuiteResult:
    bs, alphas = constant_grid()
    fails = sum(not proof_constant_checks(float(b), float(a)).passed for b in bs for a in alphas)
    rows = [_row("constant_checks", bs.size * alphas.size, fails, 0.0)]

    worst_fp, worst_zeta, worst_id, fails_mono, count = -math.inf, -math.inf, 0.0, 0, 0
    for n in PROOF_N:
        for a in PROOF_ALPHA:
            for k in PROOF_K:
                for f in PROOF_INE:
                    pf = thm_proof_functions(n, a, 1.0, f * ine_lower_bound(1.0, n), k)
                    count += 1
                    fails_mono += not pf.monotone
                    worst_fp = max(worst_fp, pf.fprime_grid_max)
                    worst_zeta = max(worst_zeta, pf.zeta_grid_max)
                    worst_id = max(worst_id, pf.thm11_endpoint_rel_diff, pf.thm12_endpoint_rel_diff)
    rows.append(_row("fprime_zeta_J_grids", count, fails_mono, max(worst_fp, worst_zeta)))
    rows.append(_row("endpoint_equals_bound", count, int(worst_id > tol), worst_id))
    js = [J_value(n, k) for n in PROOF_N for k in range(1, 101)]
    rows.append(_row("J_negative", len(js), sum(j >= 0 for j in js), max(js)))
    zu = [zeta_universal_bound(c) for c in (288, 384)]
    rows.append(_row("zeta_universal", 2, sum(z > 0 for z in zu), max(zu)))

    # identities between schemes on random queries
    rng = np.random.default_rng(seed)
    worst, fails = 0.0, 0
    for _ in range(trials):
        n = int(rng.integers(2, 11))
        vol = float(10 ** rng.uniform(-2, 2))
        q = BoundQuery(n, float(rng.uniform(0.01, 2.0)), float(rng.integers(1, 10 ** 4)), vol,
                       ine_lower_bound(vol, n) * float(rng.uniform(1.0, 5.0)))
        ids = coefficient_identities(q)
        w = max(ids.values())
        worst = max(worst, w)
        fails += w > tol
    rows.append(_row("coefficient_identities", trials, fails, worst))
    r13 = [remark13_holds(n, a) for n in range(1, 11) for a in 0.01 * np.arange(1, 201)]
    rows.append(_row("ell_branch_alpha12", len(r13), sum(not x for x in r13), 0.0))
    ratios = [omega_ratio(n) for n in range(1, 51)]
    rows.append(_row("omega_ratio_below_half", 50, sum(x >= 0.5 for x in ratios), max(ratios)))
    return SuiteResult("proof", rows)


# kernels -----------------------------------------------------------------

def kernels_suite(trials: int = 0, seed: int = 0, tol: float = 1e-8) -> SuiteResult:
    rows = []
    worst, fails = 0.0, 0
    for n in (1, 2):
        for a in (1, 2):
            for t in (0.5, 1.0, 2.0):
                err = abs(total_mass(KernelParams(a, t, n)) - 1.0)
                worst = max(worst, err)
                fails += err > tol
    rows.append(_row("kernel_mass", 12, fails, worst))
    disc = [cauchy_constant_discrepancy(n)["rel_diff"] for n in range(1, 6)]
    # the two constants are expected to differ; passing means the discrepancy is visible
    rows.append(_row("cauchy_constant_discrepancy", 5, sum(d < 1e-6 for d in disc), min(disc)))
    xi = np.linspace(-200.0, 200.0, 40001)
    fails_v = fails_s = 0
    for k in range(1, 6):
        rep = bessel_bound_profile(k, xi)
        fails_v += not rep.value_ok
        fails_s += not rep.slope_ok
    rows.append(_row("profile_value_bound", 5, fails_v, 0.0))
    rows.append(_row("profile_slope_bound", 5, fails_s, 0.0))
    errs = [abs(profile_integral(k) - k) for k in (1, 2, 3)]
    rows.append(_row("profile_integral", 3, sum(e > tol for e in errs), max(errs)))
    return SuiteResult("kernels", rows)


SUITE_FUNCS = {"ladder": ladder_suite, "lemma": lemma_suite, "proof": proof_suite,
               "kernels": kernels_suite}


def run(name: str, trials: int | None = None, seed: int = 0, tol: float | None = None) -> SuiteResult:
    fn = SUITE_FUNCS[name]
    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    if tol is not None:
        kwargs["tol"] = tol
    return fn(**kwargs)
