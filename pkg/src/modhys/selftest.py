"""Quick invariant checks across all modules, for ``modhys selftest``."""
from __future__ import annotations

import time

import numpy as np

from . import spectral
from .encoders import (TimeGrid, build_fold_signal, encode_modified, transient,
                       verify_return, verify_separation)
from .pipeline import DEFAULT_CONFIG, end_to_end_trial, experiment_params, reconstruct, sample_times
from .signal_model import check_admissibility, generate_random_pw
from .sparse import SolverConfig, omp, saomp

K, T, OMEGA = 48, 0.0208, 6.3


def _direct_dft(z):
    N = len(z)
    return np.array([sum(z[n] * np.exp(-2j * np.pi * m * n / N) for n in range(N))
                     for m in range(N)])


def check_range():
    p = experiment_params(0.2, 0.1, 0.3, K, T)
    grid = TimeGrid(-K * T, T / 20, 40 * K + 1)
    worst = max(np.abs(encode_modified(generate_random_pw(OMEGA, K, T, 0.6, s), p, grid)
                       .output).max() for s in range(20))
    return worst <= 0.2 + 1e-6, f"max |output| = {worst:.9f}"


def check_separation_return():
    p = experiment_params(0.1, 0.05, 0.05, K, T)
    grid = TimeGrid.covering(-K * T, K * T + 2 * p.alpha + 5 * T, T / 20)
    n_adm = bad = 0
    for seed in range(30):
        g = generate_random_pw(OMEGA, K, T, 0.3, seed)
        if not check_admissibility(g, p, OMEGA, K, T).admissible:
            continue
        n_adm += 1
        tr = encode_modified(g, p, grid)
        bad += not (verify_separation(tr, p) and verify_return(tr, g, p, 1e-6))
    return n_adm > 0 and bad == 0, f"{n_adm - bad}/{n_adm} admissible signals pass"


def check_dft():
    rng = np.random.default_rng(0)
    worst = 0.0
    for N in (4, 17, 96):
        z = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        ref = _direct_dft(z)
        worst = max(worst, np.abs(spectral.dft(z) - ref).max() / np.abs(ref).max())
    return worst < 1e-9, f"max relative error {worst:.2e}"


def check_difference_identity():
    # integer data keeps the telescoping sum free of rounding
    z = np.random.default_rng(1).integers(-1000, 1000, 97)
    ok = np.array_equal(spectral.anti_difference(spectral.forward_difference(z)), z - z[0])
    return bool(ok), "S(diff z) = z - z[0]"


def _omp_instance(rng, layout, V):
    k = rng.integers(1, 7)
    support = rng.choice(layout.M - 1, size=k, replace=False)
    c0 = np.zeros(layout.N)
    c0[support] = rng.choice([-1, 1], k) * rng.uniform(0.1, 1.0, k)
    return c0, V @ c0


def check_omp_recovery():
    layout = spectral.band_layout(OMEGA, 2 * K, T)
    V = spectral.build_vandermonde(layout)
    rng = np.random.default_rng(2)
    hits = 0
    n = 50
    for _ in range(n):
        c0, s = _omp_instance(rng, layout, V)
        r = omp(V, s, 1e-9)
        hits += (set(r.support) == set(np.flatnonzero(c0))
                 and np.abs(r.c - c0).max() < 1e-8)
    return hits >= 0.95 * n, f"{hits}/{n} exact recoveries"


def check_saomp_matches_omp():
    layout = spectral.band_layout(OMEGA, 2 * K, T)
    V = spectral.build_vandermonde(layout)
    rng = np.random.default_rng(3)
    cfg = SolverConfig(eps=1e-9, nu=1.0, mu=0.0, i_max=layout.N)
    same = 0
    for _ in range(20):
        _, s = _omp_instance(rng, layout, V)
        same += omp(V, s, 1e-9).trajectory == saomp(V, s, cfg).trajectory
    return same == 20, f"{same}/20 identical trajectories"


def check_no_fold():
    p = experiment_params(0.1, 0.05, 0.05, K, T)
    worst = max(end_to_end_trial(OMEGA, K, T, p, 0.09, s).mse for s in range(20))
    return worst < 1e-10, f"max MSE {worst:.2e}"


def check_single_fold():
    g = generate_random_pw(OMEGA, K, T, 0.05, 4)
    clean = g(sample_times(K, T))
    n0 = K
    folded = clean - 0.15 * (np.arange(clean.size) > n0)
    r = reconstruct(folded, OMEGA, T, "omp", DEFAULT_CONFIG, ground_truth=clean)
    return r.solver.support == [n0] and r.mse < 1e-8, \
        f"support {r.solver.support}, MSE {r.mse:.2e}"


def check_fold_identity():
    p = experiment_params(0.1, 0.05, 0.05, K, T)
    g = generate_random_pw(OMEGA, K, T, 0.3, 5)
    grid = TimeGrid(-K * T, T / 20, 40 * K + 1)
    tr = encode_modified(g, p, grid)
    err = np.abs(tr.output + build_fold_signal(tr.fold_times, tr.fold_signs, p, grid)
                 - g(grid.times)).max()
    return err < 1e-9 and transient(0.15, 0.3) == 0.5, f"max deviation {err:.2e}"


CHECKS = {
    "range": check_range,
    "separation+return": check_separation_return,
    "dft-oracle": check_dft,
    "difference-identity": check_difference_identity,
    "fold-identity": check_fold_identity,
    "omp-exact-recovery": check_omp_recovery,
    "saomp-equals-omp": check_saomp_matches_omp,
    "no-fold-neutrality": check_no_fold,
    "single-fold-recovery": check_single_fold,
}


def run_all() -> list[dict]:
    results = []
    for name, fn in CHECKS.items():
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed selftest
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"check": name, "passed": bool(ok), "detail": detail,
                        "seconds": round(time.perf_counter() - t0, 3)})
    return results
