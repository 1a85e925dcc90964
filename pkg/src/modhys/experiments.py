"""Demo, encoder comparison and (alpha, h) sweep runners behind the CLI."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .artifacts import heatmap_svg, line_plot_svg, write_csv
from .encoders import (RunawayFoldError, TimeGrid, encode_generalized, encode_modified)
from .pipeline import (DEFAULT_CONFIG, POINTS_PER_T, end_to_end_trial, experiment_params)
from .signal_model import generate_random_pw
from .sparse import SolverConfig

log = logging.getLogger(__name__)


@dataclass
class SweepConfig:
    lam: float = 0.1
    T: float = 0.0208
    omega: float = 6.3
    K: int = 48
    alpha_values: list = field(default_factory=lambda: list(np.linspace(0, 0.07, 8)))
    h_values: list = field(default_factory=lambda: list(np.linspace(0, 0.1, 11)))
    n_trials: int = 50
    peak: float = 0.3
    mse_threshold: float = 1e-3
    base_seed: int = 0
    solver: str = "saomp"
    solver_config: SolverConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not self.alpha_values or not self.h_values:
            raise ValueError("alpha and h grids must be non-empty")
        if self.n_trials < 1:
            raise ValueError("need at least one trial per cell")
        if not self.mse_threshold > 0:
            raise ValueError("mse threshold must be positive")


@dataclass(frozen=True)
class SweepCell:
    alpha: float
    h: float
    failures: int
    trials: int
    mean_mse: float
    inadmissible_count: int


def _trial(args):
    cfg, alpha, h, seed = args
    params = experiment_params(cfg.lam, h, alpha, cfg.K, cfg.T)
    try:
        r = end_to_end_trial(cfg.omega, cfg.K, cfg.T, params, cfg.peak, seed,
                             cfg.solver, cfg.solver_config)
    except RunawayFoldError:
        return math.inf, False
    return r.mse, r.admissibility.admissible


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[SweepCell]:
    """One cell per (alpha, h) pair in alpha-major order.

    Every cell reuses the seeds ``base_seed .. base_seed + n_trials - 1``, so
    all cells see the same random functions. A trial whose encoder runs away
    counts as a failure and as inadmissible, and is left out of ``mean_mse``.
    """
    cells = [(float(a), float(h)) for a in cfg.alpha_values for h in cfg.h_values]
    jobs = [(cfg, a, h, cfg.base_seed + k) for a, h in cells for k in range(cfg.n_trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=max(1, cfg.n_trials // 2)))
    else:
        results = [_trial(j) for j in jobs]

    out = []
    for i, (a, h) in enumerate(cells):
        chunk = results[i * cfg.n_trials:(i + 1) * cfg.n_trials]
        mses = np.array([m for m, _ in chunk])
        finite = mses[np.isfinite(mses)]
        out.append(SweepCell(
            alpha=a, h=h,
            failures=int(np.sum(~(mses <= cfg.mse_threshold))),
            trials=cfg.n_trials,
            mean_mse=float(np.mean(finite)) if finite.size else math.nan,
            inadmissible_count=sum(1 for _, ok in chunk if not ok),
        ))
    return out


def run_trials(cfg: SweepConfig, alpha: float, h: float,
               workers: int = 1) -> list[tuple[int, float, bool]]:
    """Per-seed ``(seed, mse, admissible)`` rows for a single (alpha, h) point."""
    seeds = [cfg.base_seed + k for k in range(cfg.n_trials)]
    jobs = [(cfg, float(alpha), float(h), seed) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=max(1, len(jobs) // (2 * workers))))
    else:
        results = [_trial(j) for j in jobs]
    return [(seed, m, ok) for seed, (m, ok) in zip(seeds, results)]


def write_trials(rows, path) -> Path:
    return write_csv(path, ["seed", "mse", "admissible"],
                     [(seed, m, int(ok)) for seed, m, ok in rows])


def write_sweep(cells: list[SweepCell], cfg: SweepConfig, out_dir) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_csv(out_dir / "sweep.csv",
                         ["alpha", "h", "failures", "trials", "mean_mse", "inadmissible_count"],
                         [(c.alpha, c.h, c.failures, c.trials, c.mean_mse, c.inadmissible_count)
                          for c in cells])
    na, nh = len(cfg.alpha_values), len(cfg.h_values)
    counts = np.array([c.failures for c in cells]).reshape(na, nh).T
    svg_path = heatmap_svg(out_dir / "sweep.svg", counts, cfg.h_values, cfg.alpha_values,
                           vmax=cfg.n_trials,
                           title=f"trials with MSE > {cfg.mse_threshold:g} (of {cfg.n_trials})",
                           row_name="h", col_name="alpha [s]")
    return csv_path, svg_path


def run_demo(omega=6.3, lam=0.1, h=0.05, alpha=0.05, T=0.0208, K=48, peak=0.3, seed=1,
             solver="saomp", config: SolverConfig = DEFAULT_CONFIG, out_dir="."):
    params = experiment_params(lam, h, alpha, K, T)
    report = end_to_end_trial(omega, K, T, params, peak, seed, solver, config)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = zip(report.times, report.true_samples, report.folded_samples,
               report.recovered_samples)
    write_csv(out_dir / "demo.csv", ["t", "g", "encoded", "recovered"], rows)
    line_plot_svg(out_dir / "demo.svg", report.times,
                  {"g": report.true_samples, "encoded": report.folded_samples,
                   "recovered": report.recovered_samples},
                  title=f"{solver.upper()} reconstruction, MSE = {report.mse:.3g}",
                  hlines=(-lam, lam))
    return report


def _fold_markers(grid: TimeGrid, times, signs) -> np.ndarray:
    # net fold sign inside [t_i, t_i + step)
    marks = np.zeros(grid.count, dtype=int)
    idx = np.clip(np.floor((np.asarray(times) - grid.start) / grid.step).astype(int),
                  0, grid.count - 1)
    np.add.at(marks, idx, np.asarray(signs, dtype=int))
    return marks


def run_encode(omega=6.3, lam=0.2, h=0.1, alpha=0.3, T=0.0208, K=48, peak=0.6, seed=1,
               points_per_T=POINTS_PER_T, out_dir="."):
    params = experiment_params(lam, h, alpha, K, T)
    g = generate_random_pw(omega, K, T, peak, seed)
    grid = TimeGrid(-K * T, T / points_per_T, 2 * K * points_per_T + 1)
    gen = encode_generalized(g, params, grid)
    mod = encode_modified(g, params, grid)
    t = grid.times
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(out_dir / "encode.csv",
              ["t", "g", "generalized", "modified", "fold_generalized", "fold_modified"],
              zip(t, g(t), gen.output, mod.output,
                  _fold_markers(grid, gen.fold_times, gen.fold_signs),
                  _fold_markers(grid, mod.fold_times, mod.fold_signs)))
    line_plot_svg(out_dir / "encode.svg", t,
                  {"g": g(t), "generalized": gen.output, "modified": mod.output},
                  title=f"lambda={lam:g}, h={h:g}, alpha={alpha:g}", hlines=(-lam, lam))
    return {
        "max_generalized": float(np.max(np.abs(gen.output))),
        "max_modified": float(np.max(np.abs(mod.output))),
        "folds_generalized": gen.n_folds,
        "folds_modified": mod.n_folds,
    }
