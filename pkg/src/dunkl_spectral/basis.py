"""Generalized Hermite polynomials p_k, eigenfunctions phi_k, and xi_k = |x|^sigma phi_k.

The polynomials are the orthonormal family for the measure
e^(-s x^2) |x|^(2 sigma) dx with positive leading coefficients; the
eigenfunctions phi_k = p_k e^(-s x^2 / 2) diagonalize the Dunkl harmonic
oscillator with eigenvalues (2k + 1 + 2 sigma) s.

Stability: for phi_k the Gaussian factor is carried inside the three-term
recurrence (the recurrence is linear, so it holds verbatim for
r_k = p_k e^(-s x^2 / 2)), which keeps every intermediate bounded and makes
k of several hundred routine.  The raw polynomial route `eval_p` overflows
around k ~ 300 and signals instead of returning inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SingularPointError
from .params import Parity, SigmaParams


@dataclass
class GridFunction:
    """Function samples on a strictly increasing grid.

    If `parity` is set and the nodes all lie in x >= 0, the samples stand for
    the whole line by (anti)symmetric reflection; `full_line()` materializes
    that.
    """

    nodes: np.ndarray
    values: np.ndarray
    parity: Optional[Parity] = None

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.nodes.ndim != 1 or self.nodes.shape != self.values.shape:
            raise ValueError("nodes and values must be 1-d arrays of equal length")
        if self.nodes.size >= 2 and not np.all(np.diff(self.nodes) > 0):
            raise ValueError("nodes must be strictly increasing")

    @property
    def is_half_grid(self) -> bool:
        return self.parity is not None and self.nodes.size > 0 and self.nodes[0] >= 0.0

    def full_line(self) -> "GridFunction":
        """Expand a parity-tagged half grid to the symmetric full grid."""
        if self.parity is None or not self.is_half_grid:
            return self
        pos = self.nodes > 0.0
        sign = self.parity.sign
        nodes = np.concatenate([-self.nodes[pos][::-1], self.nodes])
        values = np.concatenate([sign * self.values[pos][::-1], self.values])
        return GridFunction(nodes, values, self.parity)


def turning_point(k: int, params: SigmaParams) -> float:
    """Classical turning point sqrt((2k + 1 + 2 sigma) / s); sizes evaluation grids."""
    return math.sqrt((2 * k + 1 + 2 * params.sigma) / params.s)


def log_p0(params: SigmaParams) -> float:
    """log of the constant polynomial p_0 = s^((2 sigma + 1)/4) Gamma(sigma + 1/2)^(-1/2)."""
    return 0.25 * (2.0 * params.sigma + 1.0) * math.log(params.s) - 0.5 * math.lgamma(
        params.sigma + 0.5
    )


def recurrence_step(k: int, params: SigmaParams) -> tuple[float, float]:
    """Coefficients (a_k, b_k) of the three-term recurrence p_k = a_k x p_{k-1} - b_k p_{k-2}.

    a_k = sqrt(2s / k), b_k = sqrt((k - 1 + 2 sigma) / k)           for even k,
    a_k = sqrt(2s / (k + 2 sigma)), b_k = sqrt((k - 1) / (k + 2 sigma)) for odd k.
    """
    if k < 1:
        raise ValueError("recurrence starts at k = 1")
    sigma, s = params.sigma, params.s
    if k % 2 == 0:
        return math.sqrt(2.0 * s / k), math.sqrt((k - 1 + 2.0 * sigma) / k)
    den = k + 2.0 * sigma
    return math.sqrt(2.0 * s / den), math.sqrt((k - 1) / den)


def _sweep(k: int, x: np.ndarray, params: SigmaParams, seed0: np.ndarray) -> np.ndarray:
    """Run the three-term recurrence from the given degree-0 row up to index k."""
    if k == 0:
        return seed0
    a1, _ = recurrence_step(1, params)
    prev, cur = seed0, a1 * x * seed0
    for j in range(2, k + 1):
        a, b = recurrence_step(j, params)
        prev, cur = cur, a * x * cur - b * prev
    return cur


def eval_p(k: int, x, params: SigmaParams):
    """Orthonormal generalized Hermite polynomial p_k(x).

    Raises OverflowError if the value leaves double range; for large k x^2
    use `eval_phi`, which never overflows.
    """
    if k < 0:
        raise ValueError("k must be a natural number")
    xa = np.asarray(x, dtype=float)
    seed0 = np.full_like(xa, math.exp(log_p0(params)))
    with np.errstate(over="ignore", invalid="ignore"):
        out = _sweep(k, xa, params, seed0)
    if not np.all(np.isfinite(out)):
        raise OverflowError(
            f"p_{k} overflowed double range at some sample; use eval_phi instead"
        )
    return out if np.ndim(x) else float(out)


def eval_phi(k: int, x, params: SigmaParams):
    """Eigenfunction phi_k(x) = p_k(x) e^(-s x^2 / 2), via the scaled recurrence.

    Evaluates at |x| and applies (-1)^k parity, so phi_k(-x) == (-1)^k phi_k(x)
    holds exactly.  Far beyond the turning point the value underflows to 0.
    """
    if k < 0:
        raise ValueError("k must be a natural number")
    xa = np.asarray(x, dtype=float)
    ax = np.abs(xa)
    seed0 = np.exp(log_p0(params) - 0.5 * params.s * ax * ax)
    out = _sweep(k, ax, params, seed0)
    if k % 2 == 1:
        out = out * np.sign(xa)
    return out if np.ndim(x) else float(out)


def eval_xi(k: int, x, params: SigmaParams):
    """Weight-absorbed eigenfunction xi_k(x) = |x|^sigma phi_k(x).

    At x = 0 this is 0 for sigma > 0 and phi_k(0) for sigma = 0; for
    sigma < 0 the point is singular and evaluation there is refused.
    """
    xa = np.asarray(x, dtype=float)
    if params.sigma < 0.0 and np.any(xa == 0.0):
        raise SingularPointError(
            "xi_k is unbounded at x = 0 for sigma < 0; evaluate on x != 0"
        )
    with np.errstate(divide="ignore"):
        weight = np.abs(xa) ** params.sigma
    out = weight * eval_phi(k, xa, params)
    return out if np.ndim(x) else float(out)


def phi_matrix(k_max: int, x: np.ndarray, params: SigmaParams) -> np.ndarray:
    """All eigenfunctions up to k_max at once: row k holds phi_k on the grid.

    One vectorized recurrence sweep; shape (k_max + 1, len(x)).
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    sign = np.sign(x)
    out = np.empty((k_max + 1, x.size), dtype=float)
    out[0] = np.exp(log_p0(params) - 0.5 * params.s * ax * ax)
    if k_max >= 1:
        a1, _ = recurrence_step(1, params)
        out[1] = a1 * ax * out[0]
    for k in range(2, k_max + 1):
        a, b = recurrence_step(k, params)
        out[k] = a * ax * out[k - 1] - b * out[k - 2]
    for k in range(1, k_max + 1, 2):
        out[k] *= sign
    return out


def phi_rows(k_list, x: np.ndarray, params: SigmaParams) -> dict[int, np.ndarray]:
    """phi_k rows for selected k only, without storing the whole ladder.

    Useful when k_list reaches into the hundreds but is sparse.
    """
    wanted = sorted(set(int(k) for k in k_list))
    if wanted and wanted[0] < 0:
        raise ValueError("k must be natural")
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    sign = np.sign(x)
    prev = np.exp(log_p0(params) - 0.5 * params.s * ax * ax)
    cur = None
    out = {}

    def capture(k, row):
        if k in out:
            return
        out[k] = row * sign if k % 2 == 1 else row.copy()

    if not wanted:
        return out
    if 0 in wanted:
        capture(0, prev)
    top = wanted[-1]
    if top >= 1:
        a1, _ = recurrence_step(1, params)
        cur = a1 * ax * prev
        if 1 in wanted:
            capture(1, cur)
    for k in range(2, top + 1):
        a, b = recurrence_step(k, params)
        prev, cur = cur, a * ax * cur - b * prev
        if k in wanted:
            capture(k, cur)
    return out
