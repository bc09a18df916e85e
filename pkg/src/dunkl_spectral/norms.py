"""Seminorms, Sobolev and sequence norms, embedding harness, and decay tables.

Norm families on a truncated eigen-expansion c (band-limited functions):

* schwartz:        sum over i+j <= m of sup_x |x^i f^(j)(x)|
* perturbed:       same with the Dunkl derivative T in place of d/dx and a
                   global |x|^sigma weight for sigma >= 0; for sigma < 0 the
                   weighted sup splits by the parity of x^i T^j f (unweighted
                   sup on |x| <= 1 plus weighted sup on |x| >= 1 whenever that
                   function is even, weighted global sup otherwise)
* weak_perturbed:  the perturbed family with d/dx instead of T
* sobolev:         sqrt(sum_k (1 + lambda_k)^m c_k^2), lambda_k = (2k+1+2 sigma)s
* ell2 / cmax:     sqrt(sum_k c_k^2 (1+k)^m)  /  sup_k |c_k| (1+k)^m

Suprema are taken over a deterministic grid: 4096 uniform points on
[-1.5 X_K, 1.5 X_K] (X_K the turning point of the top retained index) plus 64
log-spaced points in (0, 0.1] and their negatives, so the near-origin region
that matters for sigma < 0 is probed.  The even point count keeps the exact
origin (where the weight may be singular) off the grid.

The embedding harness draws random band-limited functions with geometric
coefficient decay, evaluates the two norms of a claimed continuous inclusion,
and reports the empirical constant.  Requests whose exponents violate the
inclusion's hypothesis are refused instead of "tested".
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .basis import phi_matrix, phi_rows, turning_point
from .errors import HypothesisViolationError
from .operators import derivative_matrix, eigenvalues, operator_matrix, OperatorKind
from .params import Parity, SigmaParams
from .quadrature import CoeffVector


class SeminormFamily(enum.Enum):
    SCHWARTZ = "schwartz"
    PERTURBED = "perturbed"
    WEAK_PERTURBED = "weak_perturbed"
    SOBOLEV = "sobolev"
    ELL2 = "ell2"
    CMAX = "cmax"


_SEMINORM_FAMILIES = {
    SeminormFamily.SCHWARTZ,
    SeminormFamily.PERTURBED,
    SeminormFamily.WEAK_PERTURBED,
}


@dataclass(frozen=True)
class SeminormSpec:
    """One side of an embedding: a norm family, an order, and a parity sector."""

    family: SeminormFamily
    m: float
    parity: Parity

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("norm order m must be >= 0")
        if self.family in _SEMINORM_FAMILIES and self.m != int(self.m):
            raise ValueError(f"{self.family.value} takes a natural order (got {self.m})")

    def as_dict(self) -> dict:
        return {"family": self.family.value, "m": self.m, "parity": self.parity.value}


@dataclass
class EmbeddingReport:
    spec_from: SeminormSpec
    spec_to: SeminormSpec
    samples: int
    empirical_constant: float
    violations: int

    def to_json(self) -> str:
        from ._serialize import json_dumps

        return json_dumps(
            {
                "from": self.spec_from.as_dict(),
                "to": self.spec_to.as_dict(),
                "samples": self.samples,
                "empirical_constant": self.empirical_constant,
                "violations": self.violations,
            }
        )


def standard_grid(
    params: SigmaParams,
    k_max: int,
    extent_factor: float = 1.5,
    n_uniform: int = 4096,
    n_log: int = 64,
) -> np.ndarray:
    """Deterministic supremum grid; see the module docstring."""
    extent = extent_factor * turning_point(k_max, params)
    xs = np.linspace(-extent, extent, n_uniform)
    logs = np.logspace(-4.0, -1.0, n_log)
    return np.unique(np.concatenate([xs, -logs, logs]))


def sobolev_norm(c: CoeffVector, m: float) -> float:
    """Perturbed Sobolev norm sqrt(sum (1 + lambda_k)^m c_k^2)."""
    lam = eigenvalues(c.order, c.params)
    return float(np.sqrt(np.sum((1.0 + lam) ** m * c.coeffs**2)))


def seq_norm(c: CoeffVector, family: Union[str, SeminormFamily], m: float) -> float:
    """Weighted sequence norm: ell2 -> sqrt(sum c^2 (1+k)^m), cmax -> sup |c|(1+k)^m."""
    family = SeminormFamily(family) if isinstance(family, str) else family
    k = np.arange(c.coeffs.size)
    if family is SeminormFamily.ELL2:
        return float(np.sqrt(np.sum(c.coeffs**2 * (1.0 + k) ** m)))
    if family is SeminormFamily.CMAX:
        return float(np.max(np.abs(c.coeffs) * (1.0 + k) ** m))
    raise ValueError("sequence norm family must be ell2 or cmax")


def _split_groups(parity: Parity, order_sum: int) -> bool:
    """True when x^i T^j f is even, i.e. the sigma<0 definition uses the unit-ball split."""
    return (order_sum % 2 == 0) == (parity is Parity.EVEN)


def _seminorm_batch(
    coeff_cols: np.ndarray,
    m: int,
    family: SeminormFamily,
    params: SigmaParams,
    parity: Optional[Parity],
    grid: np.ndarray,
    basis: np.ndarray,
) -> np.ndarray:
    """Seminorms of many expansions at once; columns of coeff_cols are functions.

    coeff_cols must carry at least m spare zero rows at the top so the banded
    operator applications stay exact (the caller pads); basis is the
    phi_matrix on the grid for the same row count.
    """
    sigma = params.sigma
    order = coeff_cols.shape[0] - 1
    weighted = family is not SeminormFamily.SCHWARTZ
    if weighted and sigma < 0.0 and parity is None:
        raise ValueError("sigma < 0 seminorms are defined per parity sector")
    if family is SeminormFamily.PERTURBED:
        deriv = operator_matrix(OperatorKind.DUNKL_T, order, params)
    else:
        deriv = derivative_matrix(order, params)

    absx = np.abs(grid)
    xpow = [absx**i for i in range(m + 1)]
    weight = absx**sigma if weighted else None
    if weighted and sigma < 0.0:
        core = absx <= 1.0
        tail = absx >= 1.0

    sums = np.zeros(coeff_cols.shape[1])
    cur = coeff_cols
    for j in range(m + 1):
        if j > 0:
            cur = deriv @ cur
        vals = np.abs(cur.T @ basis)
        for i in range(m + 1 - j):
            if not weighted:
                sums += np.max(vals * xpow[i], axis=1)
            elif sigma >= 0.0:
                sums += np.max(vals * (weight * xpow[i]), axis=1)
            elif _split_groups(parity, i + j):
                sums += np.max(vals[:, core] * xpow[i][core], axis=1)
                sums += np.max(vals[:, tail] * (weight * xpow[i])[tail], axis=1)
            else:
                sums += np.max(vals * (weight * xpow[i]), axis=1)
    return sums


def schwartz_seminorm(
    c: CoeffVector,
    m: int,
    family: Union[str, SeminormFamily] = SeminormFamily.PERTURBED,
    grid: Optional[np.ndarray] = None,
) -> float:
    """Schwartz-type seminorm of order m of a band-limited expansion.

    The input is zero-padded by m + 1 entries first, so every intermediate
    x^i T^j application is exact (band-limited functions stay band-limited).
    """
    family = SeminormFamily(family) if isinstance(family, str) else family
    if family not in _SEMINORM_FAMILIES:
        raise ValueError(f"{family.value} is not a seminorm family")
    m = int(m)
    padded = c.padded(m + 1)
    if grid is None:
        grid = standard_grid(c.params, padded.order)
    basis = phi_matrix(padded.order, grid, c.params)
    out = _seminorm_batch(
        padded.coeffs[:, np.newaxis], m, family, c.params, c.parity, grid, basis
    )
    return float(out[0])


# ---------------------------------------------------------------------------
# exponent tables for the embedding statements
# ---------------------------------------------------------------------------


def m_sigma(m: int, sigma: float) -> int:
    """Auxiliary order m + 1 + ceil(sigma)(ceil(sigma) + 1)/2 (ceil(sigma) = 0 for sigma < 0)."""
    n = max(math.ceil(sigma), 0)
    return m + 1 + (n * (n + 1)) // 2


def schwartz_to_sobolev_order(m: int, sigma: float, parity: Parity) -> int:
    """Smallest tabulated M with S^M in the parity sector embedding into W_sigma^m."""
    n = math.ceil(sigma)
    if m % 2 == 1:
        if sigma >= 0.0:
            return (3 * m + 3) // 2 + ((m + 1) * n * (n + 3)) // 4 + n
        return 2 * m + 3
    if parity is Parity.EVEN:
        if sigma >= 0.0:
            return (3 * m + 2) // 2 + (m * n * (n + 3)) // 4 + n
        return 2 * m + 2
    if sigma >= 0.0:
        return (3 * m + 4) // 2 + ((m + 2) * n * (n + 3)) // 4 + n
    return 2 * m + 4


def sobolev_to_schwartz_threshold(m: int, sigma: float, parity: Parity) -> int:
    """N such that W_sigma^{m'} embeds into S^m for m' > N (strict)."""
    ms = m_sigma(m, sigma)
    if ms == 1:
        return 2 if parity is Parity.EVEN else 5
    if ms == 2:
        return 6 if parity is Parity.EVEN else 5
    if ms == 3:
        return 6 if parity is Parity.EVEN else 7
    return ms + 3


def weak_to_perturbed_order(m: int, sigma: float, parity: Parity) -> int:
    """Tabulated M with S_{w,sigma}^M embedding into S_sigma^m, per parity."""
    n = math.ceil(sigma)
    if m % 2 == 0:
        if sigma >= 0.0:
            return (3 * m) // 2 + (m * n * (n + 3)) // 4
        return 2 * m
    if parity is Parity.EVEN:
        if sigma >= 0.0:
            return (3 * m - 1) // 2 + ((m - 1) * n * (n + 3)) // 4
        return 2 * m - 1
    if sigma >= 0.0:
        return (3 * m + 1) // 2 + ((m + 1) * n * (n + 3)) // 4
    return 2 * m + 1


_P2W_EVEN = {0: 0, 1: 1, 2: 5, 3: 5}
_P2W_ODD = {0: 0, 1: 4, 2: 4, 3: 6}


def perturbed_to_weak_order(m: int, parity: Parity) -> int:
    """Tabulated M with S_sigma^M embedding into S_{w,sigma}^m; irregular below m = 4."""
    if m >= 4:
        return m + 2
    return (_P2W_EVEN if parity is Parity.EVEN else _P2W_ODD)[m]


def schwartz_to_weak_order(m: int, sigma: float) -> int:
    return m + (math.ceil(sigma) if sigma >= 0.0 else 1)


def weak_to_schwartz_order(m: int, sigma: float) -> int:
    return m_sigma(m, sigma) if sigma >= 0.0 else m + 1


def _require(cond: bool, message: str):
    if not cond:
        raise HypothesisViolationError(message)


def check_embedding_hypothesis(
    spec_from: SeminormSpec, spec_to: SeminormSpec, params: SigmaParams
):
    """Refuse from/to exponent pairs that the embedding statements do not cover."""
    if spec_from.parity is not spec_to.parity:
        raise ValueError("embeddings act within one parity sector")
    sigma = params.sigma
    parity = spec_to.parity
    f, t = spec_from.family, spec_to.family
    mf, mt = spec_from.m, spec_to.m
    F = SeminormFamily
    if f is t:
        _require(mf >= mt, f"{f.value}: inclusion needs from-order >= to-order")
    elif (f, t) == (F.SCHWARTZ, F.SOBOLEV):
        need = schwartz_to_sobolev_order(int(mt), sigma, parity)
        _require(mf >= need, f"need Schwartz order >= {need} for Sobolev order {mt}")
    elif (f, t) == (F.SOBOLEV, F.SCHWARTZ):
        bound = sobolev_to_schwartz_threshold(int(mt), sigma, parity)
        _require(mf > bound, f"need Sobolev order > {bound} for Schwartz order {mt}")
    elif (f, t) == (F.PERTURBED, F.SOBOLEV):
        _require(mf >= mt + 1, "need perturbed order >= Sobolev order + 1")
    elif (f, t) == (F.SOBOLEV, F.PERTURBED):
        _require(mf - mt > 1, "need Sobolev order - perturbed order > 1")
    elif (f, t) == (F.ELL2, F.CMAX):
        _require(mf >= 2 * mt, "need ell2 order >= 2 * cmax order")
    elif (f, t) == (F.CMAX, F.ELL2):
        _require(2 * mf - mt > 1, "need 2 * cmax order - ell2 order > 1")
    elif (f, t) == (F.SCHWARTZ, F.WEAK_PERTURBED):
        _require(mf >= schwartz_to_weak_order(int(mt), sigma), "Schwartz order too small")
    elif (f, t) == (F.WEAK_PERTURBED, F.SCHWARTZ):
        _require(mf >= weak_to_schwartz_order(int(mt), sigma), "weak order too small")
    elif (f, t) == (F.WEAK_PERTURBED, F.PERTURBED):
        need = weak_to_perturbed_order(int(mt), sigma, parity)
        _require(mf >= need, f"need weak order >= {need}")
    elif (f, t) == (F.PERTURBED, F.WEAK_PERTURBED):
        need = perturbed_to_weak_order(int(mt), parity)
        _require(mf >= need, f"need perturbed order >= {need}")
    elif (f, t) == (F.SCHWARTZ, F.PERTURBED):
        extra = math.ceil(sigma) if sigma >= 0.0 else 1
        need = weak_to_perturbed_order(int(mt), sigma, parity) + extra
        _require(mf >= need, f"need Schwartz order >= {need}")
    elif (f, t) == (F.PERTURBED, F.SCHWARTZ):
        need = perturbed_to_weak_order(m_sigma(int(mt), sigma), parity)
        _require(mf >= need, f"need perturbed order >= {need}")
    else:
        raise ValueError(
            f"no embedding statement links {f.value} to {t.value}; nothing to test"
        )


def band_limited_sample(
    rng: np.random.Generator,
    order: int,
    parity: Parity,
    trials: int,
    rhos=(0.3, 0.5, 0.8),
) -> np.ndarray:
    """Columns c_k = g_k rho^k with standard normal g, parity-projected."""
    g = rng.standard_normal((order + 1, trials))
    rho = np.asarray([rhos[t % len(rhos)] for t in range(trials)])
    cols = g * rho[np.newaxis, :] ** np.arange(order + 1)[:, np.newaxis]
    if parity is Parity.EVEN:
        cols[1::2, :] = 0.0
    else:
        cols[0::2, :] = 0.0
    return cols


def _batch_norm(
    spec: SeminormSpec,
    cols: np.ndarray,
    params: SigmaParams,
    grid: np.ndarray,
    basis: np.ndarray,
) -> np.ndarray:
    if spec.family is SeminormFamily.SOBOLEV:
        lam = eigenvalues(cols.shape[0] - 1, params)
        return np.sqrt(np.sum((1.0 + lam[:, None]) ** spec.m * cols**2, axis=0))
    if spec.family is SeminormFamily.ELL2:
        k = np.arange(cols.shape[0])
        return np.sqrt(np.sum(cols**2 * (1.0 + k[:, None]) ** spec.m, axis=0))
    if spec.family is SeminormFamily.CMAX:
        k = np.arange(cols.shape[0])
        return np.max(np.abs(cols) * (1.0 + k[:, None]) ** spec.m, axis=0)
    return _seminorm_batch(
        cols, int(spec.m), spec.family, params, spec.parity, grid, basis
    )


def embedding_harness(
    spec_from: SeminormSpec,
    spec_to: SeminormSpec,
    params: SigmaParams,
    trials: int = 200,
    seed: int = 0,
    order: int = 32,
    rhos=(0.3, 0.5, 0.8),
) -> EmbeddingReport:
    """Empirically exercise one continuous inclusion on random band-limited functions.

    Draws `trials` expansions c_k = g_k rho^k (rho cycling through `rhos`),
    projects to the requested parity, evaluates both norms, and reports the
    largest ratio to-norm / from-norm together with the number of non-finite
    ratios (which the inclusions assert to be zero).  Refuses exponent pairs
    outside the tabulated hypotheses.
    """
    check_embedding_hypothesis(spec_from, spec_to, params)
    rng = np.random.default_rng(seed)
    cols = band_limited_sample(rng, order, spec_from.parity, trials, rhos)
    headroom = 1 + max(
        int(spec.m) if spec.family in _SEMINORM_FAMILIES else 0
        for spec in (spec_from, spec_to)
    )
    cols = np.vstack([cols, np.zeros((headroom, trials))])
    k_tot = cols.shape[0] - 1
    grid = standard_grid(params, k_tot)
    basis = phi_matrix(k_tot, grid, params)
    from_vals = _batch_norm(spec_from, cols, params, grid, basis)
    to_vals = _batch_norm(spec_to, cols, params, grid, basis)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = to_vals / from_vals
    finite = np.isfinite(ratios)
    constant = float(np.max(ratios[finite])) if np.any(finite) else math.inf
    return EmbeddingReport(
        spec_from=spec_from,
        spec_to=spec_to,
        samples=trials,
        empirical_constant=constant,
        violations=int(np.sum(~finite)),
    )


def quasi_isometry_interval(order: int, m: float, params: SigmaParams) -> tuple:
    """[r_min, r_max] containing every ratio sobolev_norm / ell2_norm at this order."""
    lam = eigenvalues(order, params)
    k = np.arange(order + 1)
    r = ((1.0 + lam) / (1.0 + k)) ** m
    return float(np.sqrt(np.min(r))), float(np.sqrt(np.max(r)))


def decay_grid(
    params: SigmaParams,
    k_max: int,
    extent_factor: float = 1.5,
    points_per_wavelength: int = 40,
    min_points: int = 4096,
) -> np.ndarray:
    """Uniform symmetric grid resolving the fastest oscillation of phi_{k_max}."""
    extent = extent_factor * turning_point(k_max, params)
    lam = (2 * k_max + 1 + 2.0 * params.sigma) * params.s
    step = 2.0 * math.pi / (points_per_wavelength * math.sqrt(lam))
    n = max(min_points, math.ceil(2.0 * extent / step))
    n += n % 2  # even count: keep x = 0 off the grid
    return np.linspace(-extent, extent, n)


def decay_check(
    params: SigmaParams,
    k_list,
    region: str = "full",
    extent_factor: float = 1.5,
) -> list:
    """Rows (k, sup, sup * k^(1/6)) of the squared-eigenfunction suprema.

    region 'full' and 'tail' (|x| >= 1) report sup of xi_k^2 = |x|^(2 sigma)
    phi_k^2; region 'core' (|x| <= 1) reports sup of phi_k^2, the quantity
    that stays bounded for sigma < 0.  The third column is the k^(1/6)-
    normalized sup, which boundedness claims say is flat in k for the first
    two regions.
    """
    if region not in ("full", "tail", "core"):
        raise ValueError("region must be one of full, tail, core")
    ks = [int(k) for k in k_list]
    if not ks:
        raise ValueError("k_list must be non-empty")
    grid = decay_grid(params, max(ks), extent_factor)
    if region == "tail":
        grid = grid[np.abs(grid) >= 1.0]
    elif region == "core":
        grid = grid[np.abs(grid) <= 1.0]
    rows = phi_rows(ks, grid, params)
    if region == "core":
        weight_sq = 1.0
    else:
        weight_sq = np.abs(grid) ** (2.0 * params.sigma)
    out = []
    for k in ks:
        sup = float(np.max(weight_sq * rows[k] ** 2))
        out.append((k, sup, sup * k ** (1.0 / 6.0) if k > 0 else sup))
    return out
