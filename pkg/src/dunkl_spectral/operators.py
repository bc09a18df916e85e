"""Exact coefficient-space actions of the Dunkl oscillator algebra.

On the eigenbasis the ladder factors are nu_k = 2ks for even k and
2(k + 2 sigma)s for odd k: the creation operator B' = sx - T maps e_{k-1} to
sqrt(nu_k) e_k, the annihilation operator B = sx + T maps e_k to
sqrt(nu_k) e_{k-1} (and e_0 to 0), the oscillator L = -T^2 + s^2 x^2 is
diagonal with entries (2k + 1 + 2 sigma)s, and the parity weight acts as
+sigma/-sigma on even/odd indices.  Multiplication by x and the Dunkl
derivative T come from x = (B + B')/(2s) and T = (B - B')/2.

The map `apply_Xi` realizes division by x from odd to even expansions; its
column coefficients follow the downward two-step recursion
A(l-2, k) = -A(l, k) sqrt(l / (l - 1 + 2 sigma)) started from
A(k-1, k) = sqrt(2s / (k + 2 sigma)), which reproduces the alternating
square-root products without re-multiplying long factor chains.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basis import GridFunction, turning_point
from .errors import GridTooCoarseError, TruncationWarning
from .params import Parity, SigmaParams, factorial_factor
from .quadrature import CoeffVector

#: apply_* warns about dropped tail terms above this fraction of max|c|
TRUNCATION_EDGE = 1e-10


class OperatorKind(enum.Enum):
    MULT_X = "mult_x"
    DUNKL_T = "dunkl_T"
    ANNIHILATE_B = "annihilate_B"
    CREATE_BPRIME = "create_Bprime"
    OSCILLATOR_L = "oscillator_L"
    REFLECTIONWEIGHT_SIGMA = "reflectionweight_Sigma"
    INVERSE_X_XI = "inverse_x_Xi"


_FLIPS_PARITY = {
    OperatorKind.MULT_X,
    OperatorKind.DUNKL_T,
    OperatorKind.ANNIHILATE_B,
    OperatorKind.CREATE_BPRIME,
    OperatorKind.INVERSE_X_XI,
}


def ladder_weights(order: int, params: SigmaParams) -> np.ndarray:
    """sqrt(nu_k) for k = 0..order (nu_0 = 0)."""
    fac = np.array([factorial_factor(k, params.sigma) for k in range(order + 1)])
    return np.sqrt(2.0 * params.s * fac)


def eigenvalues(order: int, params: SigmaParams) -> np.ndarray:
    """Oscillator spectrum (2k + 1 + 2 sigma)s for k = 0..order."""
    k = np.arange(order + 1)
    return (2 * k + 1 + 2.0 * params.sigma) * params.s


def _flip(parity: Optional[Parity]) -> Optional[Parity]:
    return parity.flipped() if parity is not None else None


def _warn_tail(c: CoeffVector, name: str):
    top = float(np.max(np.abs(c.coeffs)))
    if top > 0.0 and abs(c.coeffs[-1]) > TRUNCATION_EDGE * top:
        warnings.warn(
            f"{name} drops the k = {c.order + 1} term; the input tail "
            f"|c_{c.order}| = {abs(c.coeffs[-1]):.3e} is not negligible",
            TruncationWarning,
            stacklevel=3,
        )


def apply_Bprime(c: CoeffVector) -> CoeffVector:
    """Creation operator: (B'c)_k = sqrt(nu_k) c_{k-1}; the k = K+1 term is dropped."""
    _warn_tail(c, "apply_Bprime")
    w = ladder_weights(c.order, c.params)
    out = np.zeros_like(c.coeffs)
    out[1:] = w[1:] * c.coeffs[:-1]
    return CoeffVector(out, c.params, _flip(c.parity))


def apply_B(c: CoeffVector) -> CoeffVector:
    """Annihilation operator: (Bc)_{k-1} = sqrt(nu_k) c_k; kills e_0."""
    w = ladder_weights(c.order + 1, c.params)
    out = np.zeros_like(c.coeffs)
    out[:-1] = w[1 : c.order + 1] * c.coeffs[1:]
    return CoeffVector(out, c.params, _flip(c.parity))


def apply_L(c: CoeffVector) -> CoeffVector:
    """Oscillator: exactly diagonal, (Lc)_k = (2k + 1 + 2 sigma)s c_k."""
    return CoeffVector(eigenvalues(c.order, c.params) * c.coeffs, c.params, c.parity)


def apply_Sigma(c: CoeffVector) -> CoeffVector:
    """Parity weight: +sigma on even indices, -sigma on odd ones."""
    out = c.coeffs.copy()
    out[0::2] *= c.params.sigma
    out[1::2] *= -c.params.sigma
    return CoeffVector(out, c.params, c.parity)


def apply_x(c: CoeffVector) -> CoeffVector:
    """Multiplication by x = (B + B')/(2s); flips parity, drops the K+1 term."""
    _warn_tail(c, "apply_x")
    w = ladder_weights(c.order + 1, c.params)
    out = np.zeros_like(c.coeffs)
    out[:-1] = w[1 : c.order + 1] * c.coeffs[1:]
    out[1:] += w[1 : c.order + 1] * c.coeffs[:-1]
    return CoeffVector(out / (2.0 * c.params.s), c.params, _flip(c.parity))


def apply_T(c: CoeffVector) -> CoeffVector:
    """Dunkl derivative T = (B - B')/2; flips parity, drops the K+1 term."""
    _warn_tail(c, "apply_T")
    w = ladder_weights(c.order + 1, c.params)
    out = np.zeros_like(c.coeffs)
    out[:-1] = w[1 : c.order + 1] * c.coeffs[1:]
    out[1:] -= w[1 : c.order + 1] * c.coeffs[:-1]
    return CoeffVector(0.5 * out, c.params, _flip(c.parity))


def xi_matrix(order: int, params: SigmaParams) -> np.ndarray:
    """Matrix of division by x on odd expansions: column k odd, rows l even < k.

    Entry (l, k) = (-1)^((k-l-1)/2) sqrt( (k-1)(k-3)...(l+2) * 2s /
    ((k+2 sigma)(k-2+2 sigma)...(l+1+2 sigma)) ), the empty product being 1.
    """
    sigma, s = params.sigma, params.s
    out = np.zeros((order + 1, order + 1))
    for k in range(1, order + 1, 2):
        val = math.sqrt(2.0 * s / (k + 2.0 * sigma))
        out[k - 1, k] = val
        for ell in range(k - 1, 1, -2):
            val = -val * math.sqrt(ell / (ell - 1 + 2.0 * sigma))
            out[ell - 2, k] = val
    return out


def apply_Xi(c: CoeffVector, m_out: Optional[int] = None) -> CoeffVector:
    """Division by x of an odd expansion, exactly, in coefficient space.

    d_l = sum over odd k > l of the xi_matrix entries times c_k, for even
    l <= m_out (default: the input order).  Requires odd parity.
    """
    if c.parity is not Parity.ODD:
        if np.any(c.coeffs[0::2] != 0.0):
            raise ValueError("apply_Xi needs an odd-parity coefficient vector")
    m_out = c.order if m_out is None else int(m_out)
    mat = xi_matrix(c.order, c.params)
    d = mat[: m_out + 1, :] @ c.coeffs
    if m_out + 1 > c.order + 1:
        d = np.concatenate([d, np.zeros(m_out - c.order)])
    return CoeffVector(d, c.params, Parity.EVEN)


def apply_derivative(c: CoeffVector) -> CoeffVector:
    """Plain d/dx in coefficient space: T on the even part, T - 2 sigma Xi on the odd part."""
    even, odd = c.even_part(), c.odd_part()
    out = apply_T(even).coeffs + apply_T(odd).coeffs
    if c.params.sigma != 0.0:
        out -= 2.0 * c.params.sigma * apply_Xi(odd).coeffs
    return CoeffVector(out, c.params, _flip(c.parity))


@dataclass(frozen=True)
class CoeffOperator:
    """Descriptor for one generator of the algebra; immutable and shareable."""

    kind: OperatorKind
    params: SigmaParams

    @property
    def flips_parity(self) -> bool:
        return self.kind in _FLIPS_PARITY

    def apply(self, c: CoeffVector) -> CoeffVector:
        if c.params != self.params:
            raise ValueError("operator and coefficient parameters differ")
        return _DISPATCH[self.kind](c)

    def matrix(self, order: int) -> np.ndarray:
        return operator_matrix(self.kind, order, self.params)


_DISPATCH = {
    OperatorKind.MULT_X: apply_x,
    OperatorKind.DUNKL_T: apply_T,
    OperatorKind.ANNIHILATE_B: apply_B,
    OperatorKind.CREATE_BPRIME: apply_Bprime,
    OperatorKind.OSCILLATOR_L: apply_L,
    OperatorKind.REFLECTIONWEIGHT_SIGMA: apply_Sigma,
    OperatorKind.INVERSE_X_XI: apply_Xi,
}


def operator_matrix(kind: OperatorKind, order: int, params: SigmaParams) -> np.ndarray:
    """Dense (order+1)^2 matrix of a generator on the truncated basis."""
    if kind is OperatorKind.ANNIHILATE_B:
        w = ladder_weights(order, params)
        out = np.zeros((order + 1, order + 1))
        for k in range(1, order + 1):
            out[k - 1, k] = w[k]
        return out
    if kind is OperatorKind.CREATE_BPRIME:
        return operator_matrix(OperatorKind.ANNIHILATE_B, order, params).T
    if kind is OperatorKind.MULT_X:
        b = operator_matrix(OperatorKind.ANNIHILATE_B, order, params)
        return (b + b.T) / (2.0 * params.s)
    if kind is OperatorKind.DUNKL_T:
        b = operator_matrix(OperatorKind.ANNIHILATE_B, order, params)
        return 0.5 * (b - b.T)
    if kind is OperatorKind.OSCILLATOR_L:
        return np.diag(eigenvalues(order, params))
    if kind is OperatorKind.REFLECTIONWEIGHT_SIGMA:
        d = np.full(order + 1, params.sigma)
        d[1::2] *= -1.0
        return np.diag(d)
    if kind is OperatorKind.INVERSE_X_XI:
        return xi_matrix(order, params)
    raise ValueError(f"unknown operator kind {kind}")


def derivative_matrix(order: int, params: SigmaParams) -> np.ndarray:
    """Dense matrix of d/dx: T on even columns, T - 2 sigma Xi on odd ones.

    xi_matrix is already zero on even columns, so no projector is needed.
    """
    t = operator_matrix(OperatorKind.DUNKL_T, order, params)
    if params.sigma == 0.0:
        return t
    return t - 2.0 * params.sigma * xi_matrix(order, params)


def dunkl_poly(coeffs: np.ndarray, sigma: float) -> np.ndarray:
    """Dunkl derivative of a polynomial in the monomial basis.

    T maps x^n to n x^(n-1) for even n and (n + 2 sigma) x^(n-1) for odd n,
    i.e. the n-th perturbed-factorial factor times x^(n-1).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.size <= 1:
        return np.zeros(1)
    out = np.empty(coeffs.size - 1)
    for n in range(1, coeffs.size):
        out[n - 1] = coeffs[n] * factorial_factor(n, sigma)
    return out


def _fd_weights(x0: float, xs: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at x0 from arbitrary nodes."""
    n = xs.size
    c = np.zeros((n, m + 1))
    c1, c4 = 1.0, xs[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, xs[i] - x0
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def grid_derivative(nodes: np.ndarray, values: np.ndarray, deriv: int = 1) -> np.ndarray:
    """Derivative samples from 5-point stencils (centered 4th order on uniform grids)."""
    n = nodes.size
    if n < 5:
        raise GridTooCoarseError("need at least 5 nodes for the stencil")
    out = np.empty(n)
    diffs = np.diff(nodes)
    uniform = np.allclose(diffs, diffs[0], rtol=1e-12, atol=0.0)
    if uniform and deriv == 1:
        h = diffs[0]
        out[2:-2] = (
            values[:-4] - 8.0 * values[1:-3] + 8.0 * values[3:-1] - values[4:]
        ) / (12.0 * h)
        edges = [0, 1, n - 2, n - 1]
    else:
        edges = range(n)
    for i in edges:
        lo = min(max(i - 2, 0), n - 5)
        win = slice(lo, lo + 5)
        out[i] = _fd_weights(nodes[i], nodes[win], deriv) @ values[win]
    return out


def apply_T_pointwise(
    f: GridFunction,
    params: SigmaParams,
    resolution_index: Optional[int] = None,
) -> GridFunction:
    """Dunkl derivative of sampled data: f' on even input, f' + 2 sigma f/x on odd.

    The derivative uses 5-point stencils.  For odd input the f/x term near the
    origin comes from a local odd polynomial fit (basis x, x^3, x^5, x^7 on
    the 8 nodes closest to 0), since f/x extends smoothly through 0; direct
    division is used elsewhere.  If `resolution_index` is given, refuses grids
    whose spacing exceeds 0.25 / turning_point(resolution_index).
    """
    if f.parity is None:
        raise ValueError("pointwise Dunkl application needs a definite parity")
    g = f.full_line()
    nodes, values = g.nodes, g.values
    if resolution_index is not None:
        h_max = float(np.max(np.diff(nodes)))
        limit = 0.25 / turning_point(resolution_index, params)
        if h_max > limit:
            raise GridTooCoarseError(
                f"grid spacing {h_max:.3e} exceeds {limit:.3e}; refine the grid "
                f"to resolve index {resolution_index}"
            )
    dv = grid_derivative(nodes, values)
    if f.parity is Parity.ODD and params.sigma != 0.0:
        dv = dv + 2.0 * params.sigma * _odd_over_x(nodes, values)
    out = GridFunction(nodes, dv, f.parity.flipped())
    if g is not f:  # half-grid input: hand back the caller's nodes
        out = GridFunction(f.nodes, dv[-f.nodes.size :], f.parity.flipped())
    return out


def _odd_over_x(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """values/x for an odd sample set, patched through the origin by a local fit."""
    near = np.argsort(np.abs(nodes))[:8]
    radius = float(np.max(np.abs(nodes[near])))
    t = nodes[near] / radius
    design = np.stack([t, t**3, t**5, t**7], axis=1)
    coef, *_ = np.linalg.lstsq(design, values[near], rcond=None)
    out = np.empty_like(values)
    inner = np.abs(nodes) <= radius
    ti = nodes[inner] / radius
    out[inner] = (
        coef[0] + coef[1] * ti**2 + coef[2] * ti**4 + coef[3] * ti**6
    ) / radius
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~inner] = values[~inner] / nodes[~inner]
    return out
