"""Discrete operators of the Fourier-domain recovery: differences, DFT,
band bookkeeping, the Vandermonde dictionary and the measurement vector."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_SNAP = 1e-12


class InsufficientOversampling(ValueError):
    """The out-of-band index set is empty (``M < 1``)."""


def snapped_ceil(x: float) -> int:
    """Ceiling that treats values within 1e-12 of an integer as that integer."""
    r = round(x)
    if abs(x - r) <= _SNAP * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def forward_difference(z) -> np.ndarray:
    z = np.asarray(z)
    if z.ndim != 1 or z.size < 2:
        raise ValueError("forward difference needs a 1-D sequence of length >= 2")
    return z[1:] - z[:-1]


def anti_difference(z) -> np.ndarray:
    z = np.asarray(z)
    out = np.zeros(z.size + 1, dtype=np.result_type(z, float))
    np.cumsum(z, out=out[1:])
    return out


def dft(z) -> np.ndarray:
    """``Z[m] = sum_n z[n] exp(-2 pi i m n / N)`` (unnormalized, numpy sign convention)."""
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1 or z.size < 1:
        raise ValueError("dft needs a non-empty 1-D sequence")
    return np.fft.fft(z)


def effective_bandwidth(omega: float, N: int, T: float) -> int:
    """Number of DFT bins occupied by the band, ``ceil(omega (N+1) T / (2 pi))``."""
    # products in exact rationals so the only rounding is the final division by pi
    x = float(Fraction(omega) * (N + 1) * Fraction(T)) / (2 * math.pi)
    return snapped_ceil(x)


@dataclass(frozen=True)
class BandLayout:
    N: int
    n_omega: int

    @property
    def M(self) -> int:
        return self.N - 2 * self.n_omega - 1

    @property
    def out_of_band(self) -> np.ndarray:
        return np.arange(self.n_omega + 1, self.N - self.n_omega)

    @property
    def omega0(self) -> float:
        return 2 * math.pi / self.N


def band_layout(omega: float, N: int, T: float) -> BandLayout:
    if N < 2 or not T > 0 or not omega > 0:
        raise ValueError("need N >= 2 and positive T, omega")
    layout = BandLayout(N=N, n_omega=effective_bandwidth(omega, N, T))
    if layout.M < 1:
        raise InsufficientOversampling(
            f"N={N} leaves no out-of-band bins for effective bandwidth {layout.n_omega}")
    return layout


def build_vandermonde(layout: BandLayout) -> np.ndarray:
    m = layout.out_of_band[:, None]
    n = np.arange(layout.N)[None, :]
    # reduce m n mod N first so the phase stays small and exact
    return np.exp(-2j * math.pi * ((m * n) % layout.N) / layout.N)


def build_rhs(g_lambda, layout: BandLayout) -> np.ndarray:
    g_lambda = np.asarray(g_lambda, dtype=float)
    if g_lambda.size != layout.N + 1:
        raise ValueError(f"expected {layout.N + 1} samples, got {g_lambda.size}")
    return dft(forward_difference(g_lambda))[layout.out_of_band]
