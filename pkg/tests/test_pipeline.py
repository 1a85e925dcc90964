import numpy as np
import pytest

from modhys.encoders import TimeGrid, build_fold_signal, encode_modified, sample_trace
from modhys.pipeline import (DEFAULT_CONFIG, DEFAULT_EPS, calibrate_eps, end_to_end_trial,
                             experiment_params, mse, reconstruct, sample_times)
from modhys.signal_model import generate_random_pw
from modhys.sparse import SolverConfig
from modhys.spectral import anti_difference

OMEGA, K, T = 6.3, 48, 0.0208
BASE = experiment_params(0.1, 0.05, 0.05, K, T)


@pytest.mark.parametrize("a, b, expected", [([1, 2, 3], [1, 2, 3], 0.0), ([0, 0], [1, 1], 1.0),
                                            ([0, 2], [1, 0], 2.5), ([1, -2], [-1, 1], 6.5)])
def test_mse_examples(a, b, expected):
    assert mse(a, b) == pytest.approx(expected)


def test_mse_length_mismatch():
    with pytest.raises(ValueError):
        mse([1, 2], [1, 2, 3])


@pytest.mark.parametrize("seed", range(10))
def test_no_fold_trials_are_untouched(seed):
    r = end_to_end_trial(OMEGA, K, T, BASE, 0.05, seed)
    assert r.n_folds == 0
    assert not r.solver.support
    assert r.mse < 1e-10


def test_single_synthetic_fold():
    g = generate_random_pw(OMEGA, K, T, 0.05, 4)
    truth = g(sample_times(K, T))
    folded = truth.copy()
    folded[K + 1:] -= 0.15
    r = reconstruct(folded, OMEGA, T, ground_truth=truth)
    assert r.solver.support == [K]
    assert r.mse < 1e-8


def test_reconstruction_assembly():
    r = end_to_end_trial(OMEGA, K, T, BASE, 0.3, 1)
    S = anti_difference(r.solver.c)
    assert np.allclose(r.fold_estimate, -S.real, atol=0)
    assert np.allclose(r.recovered_samples, r.folded_samples + r.fold_estimate, atol=0)
    assert r.mse == pytest.approx(mse(r.recovered_samples, r.true_samples))


def test_default_trial_recovers():
    r = end_to_end_trial(OMEGA, K, T, BASE, 0.3, 1)
    assert r.n_folds > 0
    assert r.mse < 1e-3
    assert r.imag_residue < 1e-6


@pytest.mark.parametrize("seed", [2, 6])
def test_instantaneous_folds_without_hysteresis(seed):
    p = experiment_params(0.1, 0.0, 0.0, K, T)
    r = end_to_end_trial(OMEGA, K, T, p, 0.4, seed, solver="omp")
    assert r.n_folds > 0
    assert r.mse < 1e-6


def test_support_sits_next_to_folds():
    # every selected atom sits on a sample step of the true fold signal; small
    # steps at the ends of a ramp may be missed, which is what limits the MSE
    hits = 0
    for seed in range(30):
        r = end_to_end_trial(OMEGA, K, T, BASE, 0.3, seed)
        if not r.admissibility.admissible or r.mse >= 1e-3:
            continue
        hits += 1
        grid = TimeGrid(-K * T, T / 20, 2 * K * 20 + 1)
        g = generate_random_pw(OMEGA, K, T, 0.3, seed)
        tr = encode_modified(g, BASE, grid)
        fs = build_fold_signal(tr.fold_times, tr.fold_signs, BASE, r.times)
        jumps = set(np.flatnonzero(np.abs(np.diff(fs)) > 1e-9))
        assert set(r.solver.support) <= jumps, seed
        # and within ceil(alpha / T) + 1 samples of a fold instant
        reach = np.ceil(BASE.alpha / T) + 1
        for n in r.solver.support:
            assert np.min(np.abs(r.times[n] - tr.fold_times)) / T <= reach, (seed, n)
    assert hits >= 8


def test_fold_signal_samples_consistent():
    g = generate_random_pw(OMEGA, K, T, 0.3, 3)
    grid = TimeGrid(-K * T, T / 20, 2 * K * 20 + 1)
    tr = encode_modified(g, BASE, grid)
    t = sample_times(K, T)
    fs = build_fold_signal(tr.fold_times, tr.fold_signs, BASE, t)
    assert np.allclose(sample_trace(tr, g, BASE, t), g(t) - fs, atol=1e-12)


def test_imaginary_residue_is_small_on_success():
    for seed in range(10):
        r = end_to_end_trial(OMEGA, K, T, BASE, 0.3, seed)
        if r.mse < 1e-3:
            assert r.imag_residue < 1e-6


@pytest.mark.parametrize("h", [0.03, 0.06, 0.1])
def test_larger_transient_does_not_help(h):
    # success at alpha = 0 is at least as common as at alpha = 3T, same seeds
    rates = []
    for alpha in (0.0, 3 * T):
        p = experiment_params(0.1, h, alpha, K, T)
        rates.append(np.mean([end_to_end_trial(OMEGA, K, T, p, 0.3, s).mse <= 1e-3
                              for s in range(20)]))
    assert rates[0] >= rates[1]


def test_reconstruct_rejects_unknown_solver():
    with pytest.raises(ValueError):
        reconstruct(np.zeros(97), OMEGA, T, solver="lasso")


def test_reconstruct_without_ground_truth():
    r = reconstruct(np.zeros(97), OMEGA, T)
    assert not r.ground_truth_available and np.isnan(r.mse)


def test_default_tolerance_is_calibrated():
    assert calibrate_eps(n=200) == pytest.approx(DEFAULT_EPS, rel=1e-3)
    assert DEFAULT_CONFIG.eps == DEFAULT_EPS


def test_omp_and_saomp_agree_on_a_clean_trial():
    a = end_to_end_trial(OMEGA, K, T, BASE, 0.3, 1, solver="omp")
    b = end_to_end_trial(OMEGA, K, T, BASE, 0.3, 1, solver="saomp",
                         config=SolverConfig(DEFAULT_EPS, 1.0, 0.0, 96))
    assert a.solver.trajectory == b.solver.trajectory
