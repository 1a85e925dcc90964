"""Bandlimited test signals.

A signal is a finite sinc series ``g(t) = sum_j a_j sinc(omega t / pi - j)``,
which lies in the Paley-Wiener space of bandwidth ``omega`` and can be
evaluated (with its first two derivatives) at any real time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .spectral import effective_bandwidth, snapped_ceil

if TYPE_CHECKING:
    from .encoders import HysteresisParams

# below this |x| the closed-form sinc derivatives lose too many digits
_SERIES_CUTOFF = 1e-2
_PI2 = math.pi ** 2


def _sinc_d1(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = x[small]
    out[small] = (-_PI2 * xs / 3 + _PI2 ** 2 * xs ** 3 / 30
                  - _PI2 ** 3 * xs ** 5 / 840)
    xl = x[~small]
    out[~small] = np.cos(np.pi * xl) / xl - np.sin(np.pi * xl) / (np.pi * xl ** 2)
    return out


def _sinc_d2(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < _SERIES_CUTOFF
    xs = x[small]
    out[small] = (-_PI2 / 3 + _PI2 ** 2 * xs ** 2 / 10
                  - _PI2 ** 3 * xs ** 4 / 168 + _PI2 ** 4 * xs ** 6 / 6480)
    xl = x[~small]
    s, c = np.sin(np.pi * xl), np.cos(np.pi * xl)
    out[~small] = -np.pi * s / xl - 2 * c / xl ** 2 + 2 * s / (np.pi * xl ** 3)
    return out


@dataclass(frozen=True)
class BandlimitedSignal:
    """Sinc series with centers spaced ``pi / omega`` apart.

    ``coefficients[i]`` multiplies the sinc centered at ``(i - J) * pi / omega``
    where ``J = (len(coefficients) - 1) // 2``.
    """

    omega: float
    coefficients: np.ndarray

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"bandwidth must be positive, got {self.omega}")
        coeffs = np.array(self.coefficients, dtype=float).ravel()
        if coeffs.size == 0 or coeffs.size % 2 == 0:
            raise ValueError("coefficient sequence must be non-empty with odd length")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def half_width(self) -> int:
        return (self.coefficients.size - 1) // 2

    @property
    def centers(self) -> np.ndarray:
        j = np.arange(-self.half_width, self.half_width + 1)
        return j * math.pi / self.omega

    def _arg(self, t):
        t = np.asarray(t, dtype=float)
        j = np.arange(-self.half_width, self.half_width + 1)
        return t[..., None] * (self.omega / math.pi) - j, t.shape

    def __call__(self, t):
        x, shape = self._arg(t)
        val = np.sinc(x) @ self.coefficients
        return float(val) if shape == () else val

    def derivative(self, t, order: int = 1):
        """First or second time derivative, from the closed-form sinc derivatives."""
        x, shape = self._arg(t)
        if order == 1:
            kern = _sinc_d1(x)
        elif order == 2:
            kern = _sinc_d2(x)
        else:
            raise ValueError("only first and second derivatives are available")
        val = (kern @ self.coefficients) * (self.omega / math.pi) ** order
        return float(val) if shape == () else val

    def __add__(self, other: BandlimitedSignal) -> BandlimitedSignal:
        if other.omega != self.omega:
            raise ValueError("cannot add signals with different bandwidths")
        n = max(self.half_width, other.half_width)
        a = np.pad(self.coefficients, n - self.half_width)
        b = np.pad(other.coefficients, n - other.half_width)
        return BandlimitedSignal(self.omega, a + b)

    def scaled(self, factor: float) -> BandlimitedSignal:
        return BandlimitedSignal(self.omega, factor * self.coefficients)


def evaluate(g: BandlimitedSignal, t):
    return g(t)


def generation_grid(K: int, T: float) -> np.ndarray:
    """Grid on [-KT, KT] with 20 points per sampling interval."""
    return np.linspace(-K * T, K * T, 40 * K + 1)


def generate_random_pw(omega: float, K: int, T: float, peak: float,
                       seed: int) -> BandlimitedSignal:
    """Draw a random bandlimited signal whose grid maximum on [-KT, KT] is ``peak``.

    Coefficients are standard normal draws damped by a Gaussian envelope
    ``exp(-(j pi / omega)^2 / (2 s^2))`` with ``s = 0.4 K T``.
    """
    if not omega > 0 or not T > 0 or not peak > 0:
        raise ValueError("omega, T and peak must be positive")
    if K < 1:
        raise ValueError("K must be a positive integer")
    spacing = math.pi / omega
    J = math.ceil(2 * K * T / spacing)
    j = np.arange(-J, J + 1)
    scale = 0.4 * K * T
    envelope = np.exp(-((j * spacing) ** 2) / (2 * scale ** 2))
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(j.size) * envelope
    g = BandlimitedSignal(omega, coeffs)
    gmax = np.max(np.abs(g(generation_grid(K, T))))
    return g.scaled(peak / gmax)


def estimate_d2_bound(g: BandlimitedSignal, t_min: float, t_max: float,
                      n_grid: int) -> float:
    if n_grid < 2:
        raise ValueError("n_grid must be at least 2")
    t = np.linspace(t_min, t_max, n_grid)
    return float(np.max(np.abs(g.derivative(t, order=2))))


def sinc_interpolate(samples, T: float, t, t0: float = 0.0):
    """Shannon series over a finite window; sample ``n`` sits at ``t0 + n T``."""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("need at least one sample")
    t = np.asarray(t, dtype=float)
    u = (t[..., None] - t0) / T - np.arange(samples.size)
    kern = np.sinc(u)
    # sample instants reproduce the sample exactly
    at_node = np.abs(u - np.round(u)) < 1e-12
    kern[at_node] = (np.round(u[at_node]) == 0).astype(float)
    val = kern @ samples
    return float(val) if t.shape == () else val


@dataclass(frozen=True)
class AdmissibilityReport:
    max_abs_outside: float
    d2_bound: float
    lipschitz_ok: bool
    decay_ok: bool
    d2_ok: bool
    guarantee_ok: bool
    oversampling_ok: bool
    hysteresis_ok: bool

    @property
    def admissible(self) -> bool:
        """Conditions under which folds stay separated and the encoder returns to g (not the recovery guarantee)."""
        return (self.lipschitz_ok and self.decay_ok and self.d2_ok
                and self.hysteresis_ok)


def check_admissibility(g: BandlimitedSignal, params: HysteresisParams,
                        omega: float, K: int, T: float,
                        extent: float | None = None) -> AdmissibilityReport:
    """Grid-based check of the identifiability and recovery hypotheses.

    Sup-norms are estimated on a grid of 20 points per ``T`` spanning
    ``|tau_0| + extent`` on both sides; ``extent`` defaults to ``2 K T``.
    """
    if K < 1 or not T > 0:
        raise ValueError("K must be >= 1 and T positive")
    lam, h, alpha = params.lam, params.h, params.alpha
    t0 = abs(params.tau0)
    if extent is None:
        extent = 2 * K * T
    per_side = max(2, math.ceil(20 * extent / T) + 1)
    right = np.linspace(t0, t0 + extent, per_side)
    outside = np.concatenate([-right, right])
    max_abs_outside = float(np.max(np.abs(g(outside))))

    n_full = max(2, math.ceil(20 * 2 * (t0 + extent) / T) + 1)
    full = np.linspace(-(t0 + extent), t0 + extent, n_full)
    d2 = float(np.max(np.abs(g.derivative(full, order=2))))
    d1 = float(np.max(np.abs(g.derivative(full, order=1))))

    N = 2 * K
    n_omega = effective_bandwidth(omega, N, T)
    guarantee_lhs = snapped_ceil((t0 + 2 * alpha) / T) + K
    return AdmissibilityReport(
        max_abs_outside=max_abs_outside,
        d2_bound=d2,
        lipschitz_ok=bool(np.isfinite(d1)),
        decay_ok=max_abs_outside < lam - h,
        d2_ok=True if alpha == 0 else d2 <= 2 * h / alpha ** 2,
        guarantee_ok=guarantee_lhs <= N - 2 * n_omega - 2,
        oversampling_ok=T < math.pi / omega,
        hysteresis_ok=0 <= h < lam,
    )
