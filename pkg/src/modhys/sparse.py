"""Greedy solvers for ``min ||c||_0  s.t.  V c = s``: OMP and stagewise
arithmetic OMP (SAOMP)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SupportTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    eps: float = 1e-6
    nu: float = 0.8
    mu: float = 0.05
    i_max: int = 50

    def __post_init__(self):
        if self.eps < 0:
            raise ValueError("eps must be non-negative")
        if not (0 <= self.nu <= 1 and 0 <= self.mu <= 1):
            raise ValueError("nu and mu must lie in [0, 1]")
        if self.i_max < 1:
            raise ValueError("i_max must be positive")


@dataclass
class SparseSolveResult:
    c: np.ndarray
    support: list[int]
    residual_norms: list[float]
    iterations: int
    converged: bool
    # support after each iteration, in selection order
    trajectory: list[list[int]]


def least_squares_restricted(V: np.ndarray, s: np.ndarray, support) -> np.ndarray:
    """Least-squares fit of ``s`` using only the columns in ``support``.

    ``lstsq`` goes through an SVD of the column block, so a rank-deficient
    block yields the minimum-norm minimizer.
    """
    support = list(support)
    M, N = V.shape
    if len(support) > M:
        raise SupportTooLarge(f"support of size {len(support)} exceeds {M} rows")
    c = np.zeros(N, dtype=np.result_type(V, s, complex))
    if support:
        c[support] = np.linalg.lstsq(V[:, support], s, rcond=None)[0]
    return c


def omp(V: np.ndarray, s: np.ndarray, eps: float) -> SparseSolveResult:
    V = np.asarray(V)
    s = np.asarray(s)
    M, N = V.shape
    VH = V.conj().T
    c = np.zeros(N, dtype=complex)
    support: list[int] = []
    residual = s.astype(complex)
    norms = [float(np.linalg.norm(residual))]
    trajectory: list[list[int]] = []
    converged = True
    while True:
        corr = np.abs(VH @ residual)
        if corr.max() <= eps:
            break
        if len(support) >= min(M, N):
            converged = False
            break
        # already-selected columns are orthogonal to the residual; never re-pick them
        corr[support] = -1.0
        support.append(int(np.argmax(corr)))
        c = least_squares_restricted(V, s, support)
        residual = s - V @ c
        norms.append(float(np.linalg.norm(residual)))
        trajectory.append(list(support))
    return SparseSolveResult(c, support, norms, len(trajectory), converged, trajectory)


def saomp(V: np.ndarray, s: np.ndarray, config: SolverConfig) -> SparseSolveResult:
    """Stagewise OMP with a rising selection threshold and magnitude pruning.

    Each pass adds every column whose correlation is within a factor ``delta``
    of the largest one, refits, and drops support entries smaller than
    ``mu`` times the largest coefficient. ``delta`` starts at ``nu`` and grows
    linearly to 1 over ``i_max`` passes. With ``nu = 1, mu = 0, i_max = N``
    this is plain OMP.
    """
    V = np.asarray(V)
    s = np.asarray(s)
    M, N = V.shape
    VH = V.conj().T
    c = np.zeros(N, dtype=complex)
    support: list[int] = []
    residual = s.astype(complex)
    norms = [float(np.linalg.norm(residual))]
    trajectory: list[list[int]] = []
    delta = config.nu
    i = 1
    converged = True
    while True:
        r = VH @ residual
        mag = np.abs(r)
        rmax = mag.max()
        if rmax <= config.eps:
            break
        if i > config.i_max:
            converged = False
            break
        in_support = np.zeros(N, dtype=bool)
        in_support[support] = True
        new = np.flatnonzero((mag >= delta * rmax) & ~in_support)
        # strongest first, so a truncated batch keeps the best candidates
        new = new[np.argsort(-mag[new], kind="stable")][: M - len(support)]
        if new.size == 0:
            converged = False
            break
        support = support + new.tolist()
        c = least_squares_restricted(V, s, support)
        keep = np.abs(c[support]) >= config.mu * np.abs(c).max()
        c[[j for j, k in zip(support, keep) if not k]] = 0
        support = [j for j, k in zip(support, keep) if k]
        residual = s - V @ c
        norms.append(float(np.linalg.norm(residual)))
        trajectory.append(list(support))
        delta += (1 - config.nu) / config.i_max
        i += 1
    return SparseSolveResult(c, support, norms, len(trajectory), converged, trajectory)
