"""Modulo encoders: ideal, generalized (hysteresis with transient), and the
modified hysteresis operator whose fold detection sees the transient ramps.

All three are simulated on a fine uniform grid. A fold is located by scanning
the grid for the first point where the running residual leaves ``(-lam, lam)``
and refining the crossing by bisection.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class RunawayFoldError(RuntimeError):
    """More folds than the cap allows; the parameters are almost surely inadmissible."""


@dataclass(frozen=True)
class HysteresisParams:
    lam: float
    h: float = 0.0
    alpha: float = 0.0
    tau0: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"modulo threshold must be positive, got {self.lam}")
        if self.h < 0 or self.alpha < 0:
            raise ValueError("hysteresis and transient must be non-negative")

    @property
    def fold_height(self) -> float:
        return 2 * self.lam - self.h


@dataclass(frozen=True)
class TimeGrid:
    start: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0 or self.count < 2:
            raise ValueError("grid needs a positive step and at least two points")

    @classmethod
    def covering(cls, t0: float, t1: float, step: float) -> TimeGrid:
        """Smallest grid starting at ``t0`` whose last point is ``>= t1``."""
        n = math.ceil((t1 - t0) / step - 1e-9) + 1
        return cls(t0, step, max(n, 2))

    @property
    def times(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def end(self) -> float:
        return self.start + self.step * (self.count - 1)


class EncoderKind(enum.Enum):
    IDEAL = "ideal"
    GENERALIZED = "generalized"
    MODIFIED = "modified"


@dataclass(frozen=True)
class EncodedTrace:
    grid: TimeGrid
    output: np.ndarray
    fold_times: np.ndarray
    fold_signs: np.ndarray
    kind: EncoderKind
    event_tol: float = field(default=0.0)

    @property
    def folds(self) -> list[tuple[float, int]]:
        return list(zip(self.fold_times.tolist(), self.fold_signs.tolist()))

    @property
    def n_folds(self) -> int:
        return int(self.fold_times.size)


def ideal_modulo(v, lam: float):
    if not lam > 0:
        raise ValueError(f"modulo threshold must be positive, got {lam}")
    v = np.asarray(v, dtype=float)
    out = v - 2 * lam * np.floor((v + lam) / (2 * lam))
    return float(out) if out.shape == () else out


def transient(t, alpha: float):
    """Fold transition profile: a unit step for ``alpha == 0``, else a ramp of length ``alpha``."""
    if alpha < 0:
        raise ValueError("transient must be non-negative")
    t = np.asarray(t, dtype=float)
    if alpha == 0:
        out = (t >= 0).astype(float)
    else:
        out = np.clip(t / alpha, 0.0, 1.0)
    return float(out) if out.shape == () else out


def build_fold_signal(fold_times, fold_signs, params: HysteresisParams, t) -> np.ndarray:
    """``(2 lam - h) * sum_n sign_n * transient(t - time_n)`` on ``t`` (array or TimeGrid)."""
    if isinstance(t, TimeGrid):
        t = t.times
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for kappa, sigma in zip(np.asarray(fold_times, float), np.asarray(fold_signs)):
        out += sigma * transient(t - kappa, params.alpha)
    return params.fold_height * out


def _default_cap(grid: TimeGrid) -> int:
    return max(10, 10 * grid.count // 20)


def _detect_folds(g, lam: float, height: float, alpha: float, grid: TimeGrid,
                  max_folds: int | None):
    """Fold times and signs for a residual built from ``transient(., alpha)`` ramps."""
    t = grid.times
    g_grid = np.asarray(g(t), dtype=float)
    fold_sum = np.zeros_like(g_grid)
    tol = 1e-12 * (grid.end - grid.start)
    cap = _default_cap(grid) if max_folds is None else max_folds
    kappas: list[float] = []
    sigmas: list[int] = []

    def zeta(s: float) -> float:
        if not kappas:
            return g(s)
        k = np.asarray(kappas)
        return g(s) - height * float(np.dot(sigmas, transient(s - k, alpha)))

    def zeta_slope(s: float) -> float:
        # right derivative of the residual
        slope = g.derivative(s)
        if alpha > 0 and kappas:
            k = np.asarray(kappas)
            # a ramp starting at s is active even when s + alpha rounds to s
            active = (k == s) | ((k <= s) & (s < k + alpha))
            slope -= height / alpha * float(np.asarray(sigmas)[active].sum())
        return slope

    def add(kappa: float, sigma: int):
        kappas.append(kappa)
        sigmas.append(sigma)
        fold_sum[:] += sigma * transient(t - kappa, alpha)
        if len(kappas) > cap:
            raise RunawayFoldError(f"more than {cap} folds on a {grid.count}-point grid")

    start = 0
    last = grid.start
    while True:
        z = g_grid[start:] - height * fold_sum[start:]
        hits = np.flatnonzero(np.abs(z) >= lam)
        if hits.size == 0:
            break
        idx = start + int(hits[0])
        if idx == 0:
            kappa = float(t[0])
        else:
            lo, hi = max(float(t[idx - 1]), last), float(t[idx])
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if abs(zeta(mid)) >= lam:
                    hi = mid
                else:
                    lo = mid
            kappa = hi
        add(kappa, 1 if zeta(kappa) > 0 else -1)

        # the residual may still point outward right after the fold; the
        # infimum in the fold definition then yields further folds at kappa
        per_instant = 1
        while True:
            val = zeta(kappa)
            if abs(val) < lam * (1 - 1e-9):
                break
            sigma = 1 if val > 0 else -1
            if sigma * zeta_slope(kappa) <= 0:
                break
            per_instant += 1
            if alpha == 0 and per_instant > 3:
                raise RunawayFoldError(f"repeated instantaneous folds at t={kappa}")
            add(kappa, sigma)

        last = kappa
        start = int(np.searchsorted(t, kappa, side="right"))
        if start >= t.size:
            break
    return np.array(kappas, dtype=float), np.array(sigmas, dtype=int), tol


def encode_modified(g, params: HysteresisParams, grid: TimeGrid,
                    max_folds: int | None = None) -> EncodedTrace:
    """Modified modulo hysteresis: folds are triggered by the residual that
    already contains the transient ramps of earlier folds, so the output
    never leaves ``[-lam, lam]``."""
    times, signs, tol = _detect_folds(g, params.lam, params.fold_height, params.alpha,
                                      grid, max_folds)
    output = g(grid.times) - build_fold_signal(times, signs, params, grid)
    return EncodedTrace(grid, output, times, signs, EncoderKind.MODIFIED, tol)


def encode_generalized(g, params: HysteresisParams, grid: TimeGrid,
                       max_folds: int | None = None) -> EncodedTrace:
    """Generalized encoder: fold times come from the instantaneous (step)
    residual and the transient ramps are applied afterwards."""
    times, signs, tol = _detect_folds(g, params.lam, params.fold_height, 0.0,
                                      grid, max_folds)
    output = g(grid.times) - build_fold_signal(times, signs, params, grid)
    return EncodedTrace(grid, output, times, signs, EncoderKind.GENERALIZED, tol)


def encode_ideal(g, lam: float, grid: TimeGrid) -> EncodedTrace:
    params = HysteresisParams(lam)
    times, signs, tol = _detect_folds(g, lam, params.fold_height, 0.0, grid, None)
    output = ideal_modulo(g(grid.times), lam)
    return EncodedTrace(grid, output, times, signs, EncoderKind.IDEAL, tol)


def sample_trace(trace: EncodedTrace, g, params: HysteresisParams, t) -> np.ndarray:
    """Encoder output at arbitrary times inside the trace window."""
    t = np.asarray(t, dtype=float)
    return g(t) - build_fold_signal(trace.fold_times, trace.fold_signs, params, t)


def verify_separation(trace: EncodedTrace, params: HysteresisParams,
                      tol: float | None = None) -> bool:
    """Consecutive folds of opposite sign are at least ``alpha`` apart."""
    if tol is None:
        tol = trace.event_tol
    times, signs = trace.fold_times, trace.fold_signs
    if times.size < 2:
        return True
    flips = signs[1:] != signs[:-1]
    gaps = np.diff(times)[flips]
    return bool(np.all(gaps >= params.alpha - tol))


def verify_return(trace: EncodedTrace, g, params: HysteresisParams, tol: float) -> bool:
    """Output equals the input on every grid point from ``|tau0| + 2 alpha`` on."""
    t = trace.grid.times
    late = t >= abs(params.tau0) + 2 * params.alpha
    if not late.any():
        raise ValueError("trace grid does not reach |tau0| + 2 alpha")
    return bool(np.all(np.abs(trace.output[late] - g(t[late])) <= tol))
