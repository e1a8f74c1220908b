"""Planar embedding of a partition ensemble from its distance matrix.

Coordinates are fitted by gradient descent on a weighted stress
chi^2 = sum_{i<j, d_ij < d_lim} d_ij^gamma (d_ij - |r_i - r_j|)^2,
with an adaptive step size; the peak walk summarizes how concentrated the
top-quality partitions are by walking them in order of quality and
accumulating the distance covered.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmbeddingConfig:
    gamma_exp: float = -1.0
    d_lim: float = 1.0
    lamb: float = 0.2
    adj: float = 0.05
    eps: float = 1e-10
    lamb_floor: float = 1e-18
    stall_limit: int = 5000

    def __post_init__(self):
        if self.d_lim <= 0.0:
            raise ValueError("distance cutoff must be positive")
        if self.lamb <= 0.0:
            raise ValueError("initial step scale must be positive")


def _validate_D(D: np.ndarray) -> np.ndarray:
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.allclose(D, D.T):
        raise ValueError("distance matrix must be symmetric")
    if not np.allclose(np.diag(D), 0.0):
        raise ValueError("distance matrix must have a zero diagonal")
    if (D < 0).any():
        raise ValueError("distances must be non-negative")
    return D


def chi_grad(
    coords: np.ndarray, D: np.ndarray, gamma_exp: float = -1.0, d_lim: float = 1.0
) -> tuple[float, np.ndarray, float]:
    """Weighted stress and its analytic gradient over all 2N coordinates.

    Only pairs with d_ij strictly below the cutoff contribute.  Pairs with
    d_ij = 0 are excluded when the weight d_ij^gamma is undefined
    (negative exponent), with a warning.
    """
    D = _validate_D(D)
    coords = np.asarray(coords, dtype=float)
    N = D.shape[0]
    if coords.shape != (N, 2):
        raise ValueError(f"coordinates must be shaped ({N}, 2)")
    diff = coords[:, None, :] - coords[None, :, :]
    e = np.sqrt((diff ** 2).sum(axis=2))
    mask = np.triu(D < d_lim, k=1)
    zero_d = mask & (D == 0.0)
    if gamma_exp < 0.0 and zero_d.any():
        warnings.warn(
            "zero distances excluded: weight d^gamma undefined for negative gamma",
            stacklevel=2,
        )
        mask &= D > 0.0
    with np.errstate(divide="ignore"):
        w = np.where(mask, np.where(D > 0, D, 1.0) ** gamma_exp, 0.0)
    resid = D - e
    chi2 = float((w * resid ** 2).sum())
    # d chi2 / d r_i = sum_j 2 w_ij (d_ij - e_ij) * (-(r_i - r_j)/e_ij)
    w_full = w + w.T
    with np.errstate(invalid="ignore", divide="ignore"):
        coef = np.where(e > 0.0, -2.0 * w_full * resid / e, 0.0)
    grad = (coef[:, :, None] * diff).sum(axis=1)
    return chi2, grad, float(np.sqrt((grad ** 2).sum()))


def embed(
    D: np.ndarray,
    config: EmbeddingConfig = EmbeddingConfig(),
    rng: np.random.Generator | int | None = None,
) -> tuple[np.ndarray, float, float, str]:
    """Fit 2-D coordinates to a distance matrix by adaptive gradient descent.

    Starts from seeded random points in the unit square; a step is kept
    when it lowers chi^2 (and the step scale grows by ``adj``), otherwise
    undone (and the scale shrinks).  Stops when the per-coordinate
    gradient norm falls below ``eps``, the scale underflows
    ``lamb_floor``, or ``stall_limit`` consecutive steps fail.  Returns
    (coords, chi2, gradient norm, termination reason).
    """
    D = _validate_D(D)
    N = D.shape[0]
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    coords = rng.random((N, 2))
    lamb = config.lamb
    chi2, grad, gnorm = chi_grad(coords, D, config.gamma_exp, config.d_lim)
    stalled = 0
    while True:
        if gnorm / (2 * N) < config.eps:
            return coords, chi2, gnorm, "converged"
        if lamb < config.lamb_floor:
            return coords, chi2, gnorm, "step underflow"
        if stalled >= config.stall_limit:
            return coords, chi2, gnorm, "stalled"
        trial = coords - lamb * grad
        t_chi2, t_grad, t_gnorm = chi_grad(trial, D, config.gamma_exp, config.d_lim)
        if t_chi2 < chi2:
            coords, chi2, grad, gnorm = trial, t_chi2, t_grad, t_gnorm
            lamb *= 1.0 + config.adj
            stalled = 0
        else:
            lamb *= 1.0 - config.adj
            stalled += 1


def peak_walk(
    values: np.ndarray, D: np.ndarray, top: int
) -> list[tuple[float, float]]:
    """Cumulative distance walked through the ``top`` best entries.

    Values are normalized to [0, 1]; entries are visited in descending
    value order (ties by index) and the distance between consecutive
    entries accumulates.  Returns (cumulative distance, height) pairs.
    """
    D = _validate_D(D)
    values = np.asarray(values, dtype=float)
    N = D.shape[0]
    if values.shape != (N,):
        raise ValueError("one value per distance-matrix row required")
    if not (1 <= top <= N):
        raise ValueError(f"top must be in [1, {N}]")
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        raise ValueError("constant values cannot be normalized")
    heights = (values - lo) / (hi - lo)
    order = sorted(range(N), key=lambda i: (-values[i], i))[:top]
    out = [(0.0, float(heights[order[0]]))]
    cum = 0.0
    for prev, cur in zip(order, order[1:]):
        cum += float(D[prev, cur])
        out.append((cum, float(heights[cur])))
    return out


def load_distance_matrix(path) -> np.ndarray:
    """Read a matrix file: N on the first line, then N whitespace-split rows."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"{path}: empty matrix file")
    N = int(tokens[0])
    if len(tokens) != 1 + N * N:
        raise ValueError(f"{path}: expected {N * N} entries after the size, got {len(tokens) - 1}")
    return _validate_D(np.array(tokens[1:], dtype=float).reshape(N, N))


def save_distance_matrix(D: np.ndarray, path) -> None:
    D = _validate_D(D)
    with open(path, "w") as fh:
        fh.write(f"{D.shape[0]}\n")
        for row in D:
            fh.write(" ".join(f"{x:.12g}" for x in row) + "\n")
