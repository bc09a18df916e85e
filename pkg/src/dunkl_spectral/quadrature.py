"""Gauss quadrature for e^(-s x^2) |x|^(2 sigma) dx and the spectral transform.

The Jacobi matrix of the measure is read off the three-term recurrence.
Rearranging p_k = a_k x p_{k-1} - b_k p_{k-2} (see `basis.recurrence_step`)
into x p_{k-1} = (1/a_k) p_k + (b_k/a_k) p_{k-2} gives a symmetric tridiagonal
matrix with zero diagonal (the measure is even) and off-diagonals

    beta_k = 1/a_k = sqrt(k / (2s))              for even k,
    beta_k = 1/a_k = sqrt((k + 2 sigma) / (2s))  for odd k,

where consistency requires b_k / a_k = beta_{k-1}, which indeed holds:
b_k/a_k = sqrt((k-1+2 sigma)/(2s)) for even k (k-1 odd) and sqrt((k-1)/(2s))
for odd k (k-1 even).  Nodes and weights then come from the eigendecomposition
of that matrix (Golub-Welsch): nodes are the eigenvalues, weights are
mu_0 * (first eigenvector component)^2 with mu_0 = s^(-sigma-1/2) Gamma(sigma+1/2).
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .basis import GridFunction, phi_matrix
from .errors import TruncationWarning
from .params import Parity, SigmaParams, factorial_factor

#: analyze() flags an unresolved spectrum when the last coefficient is above
#: this fraction of the largest one.
UNRESOLVED_TAIL = 1e-8

#: coefficients of one parity all below this fraction of max|c| are treated
#: as exact zeros and the parity tag is set.
PARITY_DETECT = 1e-13


def total_mass(params: SigmaParams) -> float:
    """integral of e^(-s x^2)|x|^(2 sigma) dx over the line = s^(-sigma-1/2) Gamma(sigma+1/2)."""
    return math.exp(
        -(params.sigma + 0.5) * math.log(params.s) + math.lgamma(params.sigma + 0.5)
    )


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule: exact for polynomials of degree <= exact_degree against the measure.

    `weights` carry the full measure (Gaussian included); `scaled_weights` are
    weights * e^(s x^2), so sum(scaled_weights * f(nodes) * g(nodes)) is the
    weighted product <f, g>_sigma for plain samples f, g whose product times
    the weight is polynomial-like.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    exact_degree: int
    params: SigmaParams

    def inner(self, f_vals: np.ndarray, g_vals: np.ndarray) -> float:
        """<f, g>_sigma from samples of plain functions at the nodes."""
        return float(np.sum(self.scaled_weights * f_vals * g_vals))


def build_rule(n_nodes: int, params: SigmaParams) -> QuadratureRule:
    """N-node Gauss rule for e^(-s x^2)|x|^(2 sigma) dx, exact through degree 2N-1.

    Nodes are the eigenvalues of the Jacobi matrix.  Weights come from the
    Christoffel identity w_i = 1 / sum_{k<N} p_k(x_i)^2 rather than from
    eigenvector components, whose extreme entries underflow already around
    N = 60; with the Gaussian carried inside the recurrence the sum is made
    of O(1) terms, which keeps the scaled weights accurate at every node.

    For sigma < 0 an even N is required so no node lands on the singular
    point x = 0.  Eigensolver failures propagate as LinAlgError.
    """
    if n_nodes < 1:
        raise ValueError("need at least one node")
    if params.sigma < 0.0 and n_nodes % 2 == 1:
        raise ValueError(
            "sigma < 0 requires an even node count (a centered node would sit "
            "on the singularity of the weight)"
        )
    mu0 = total_mass(params)
    if n_nodes == 1:
        return QuadratureRule(np.zeros(1), np.array([mu0]), np.array([mu0]), 1, params)
    betas = np.sqrt(
        [factorial_factor(k, params.sigma) / (2.0 * params.s) for k in range(1, n_nodes)]
    )
    nodes = eigvalsh_tridiagonal(np.zeros(n_nodes), betas)
    # the measure is even: make node symmetry bit-exact instead of rounding-level
    nodes = 0.5 * (nodes - nodes[::-1])
    if n_nodes % 2 == 1:
        nodes[n_nodes // 2] = 0.0
    scaled = 1.0 / np.sum(phi_matrix(n_nodes - 1, nodes, params) ** 2, axis=0)
    scaled = 0.5 * (scaled + scaled[::-1])
    weights = np.exp(np.log(scaled) - params.s * nodes**2)
    return QuadratureRule(nodes, weights, scaled, 2 * n_nodes - 1, params)


@dataclass
class CoeffVector:
    """Truncated eigen-coefficient vector (c_0, ..., c_K) with parity metadata.

    parity EVEN/ODD asserts the complementary entries are exactly zero;
    parity None means mixed/unknown.
    """

    coeffs: np.ndarray
    params: SigmaParams
    parity: Optional[Parity] = None

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d array")
        if self.parity is not None:
            off = self.coeffs[_off_parity_slice(self.parity)]
            if off.size and np.any(off != 0.0):
                raise ValueError(
                    f"coefficients tagged {self.parity.value} must vanish on the "
                    "opposite parity indices"
                )

    @property
    def order(self) -> int:
        """Truncation order K."""
        return self.coeffs.size - 1

    @classmethod
    def zeros(cls, order: int, params: SigmaParams, parity: Optional[Parity] = None):
        return cls(np.zeros(order + 1), params, parity)

    @classmethod
    def unit(cls, k: int, order: int, params: SigmaParams):
        """Basis vector e_k of length order + 1."""
        if not 0 <= k <= order:
            raise ValueError("unit index outside truncation")
        c = np.zeros(order + 1)
        c[k] = 1.0
        return cls(c, params, Parity.of_index(k))

    def even_part(self) -> "CoeffVector":
        c = self.coeffs.copy()
        c[1::2] = 0.0
        return CoeffVector(c, self.params, Parity.EVEN)

    def odd_part(self) -> "CoeffVector":
        c = self.coeffs.copy()
        c[0::2] = 0.0
        return CoeffVector(c, self.params, Parity.ODD)

    def padded(self, extra: int) -> "CoeffVector":
        """Same function, truncation extended by `extra` zero entries."""
        if extra <= 0:
            return self
        return CoeffVector(
            np.concatenate([self.coeffs, np.zeros(extra)]), self.params, self.parity
        )

    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        _check_compatible(self, other)
        parity = self.parity if self.parity == other.parity else None
        return CoeffVector(self.coeffs + other.coeffs, self.params, parity)

    def __sub__(self, other: "CoeffVector") -> "CoeffVector":
        _check_compatible(self, other)
        parity = self.parity if self.parity == other.parity else None
        return CoeffVector(self.coeffs - other.coeffs, self.params, parity)

    def __mul__(self, scalar: float) -> "CoeffVector":
        return CoeffVector(self.coeffs * float(scalar), self.params, self.parity)

    __rmul__ = __mul__

    def to_json(self) -> str:
        from ._serialize import json_dumps

        return json_dumps(
            {
                "sigma": self.params.sigma,
                "s": self.params.s,
                "parity": self.parity.value if self.parity else "mixed",
                "coeffs": list(map(float, self.coeffs)),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CoeffVector":
        obj = json.loads(text)
        parity = None if obj.get("parity", "mixed") == "mixed" else Parity(obj["parity"])
        return cls(
            np.asarray(obj["coeffs"], dtype=float),
            SigmaParams(float(obj["sigma"]), float(obj["s"])),
            parity,
        )

    def to_csv(self) -> str:
        from ._serialize import format_float

        lines = ["k,c_k"]
        lines += [f"{k},{format_float(c)}" for k, c in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"


def _off_parity_slice(parity: Parity) -> slice:
    return slice(1, None, 2) if parity is Parity.EVEN else slice(0, None, 2)


def _check_compatible(a: CoeffVector, b: CoeffVector):
    if a.coeffs.size != b.coeffs.size or a.params != b.params:
        raise ValueError("coefficient vectors differ in length or parameters")


def default_node_count(order: int, params: SigmaParams) -> int:
    """Default rule size for analyze(): max(K + 8, ceil(1.5 K)), evened for sigma < 0."""
    n = max(order + 8, math.ceil(1.5 * order))
    if params.sigma < 0.0 and n % 2 == 1:
        n += 1
    return n


def analyze(
    f: Union[GridFunction, callable],
    order: int,
    params: SigmaParams,
    n_nodes: Optional[int] = None,
    rule: Optional[QuadratureRule] = None,
) -> CoeffVector:
    """Forward transform: c_k = <phi_k, f>_sigma for k = 0..order, by Gauss quadrature.

    `f` is a callable or a GridFunction (interpolated to the rule's nodes with
    a cubic spline; the caller is responsible for sampling densely enough and
    far enough out that f has decayed).  Emits TruncationWarning when the tail
    coefficient is not small, i.e. the spectrum is unresolved at this order.
    """
    if rule is None:
        rule = build_rule(n_nodes or default_node_count(order, params), params)
    nodes = rule.nodes
    if isinstance(f, GridFunction):
        g = f.full_line()
        from scipy.interpolate import CubicSpline

        spline = CubicSpline(g.nodes, g.values, extrapolate=False)
        f_vals = np.nan_to_num(spline(nodes), nan=0.0)
    else:
        f_vals = np.asarray(f(nodes), dtype=float)
    basis = phi_matrix(order, nodes, params)
    coeffs = basis @ (rule.scaled_weights * f_vals)

    top = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    if top > 0.0 and abs(coeffs[-1]) > UNRESOLVED_TAIL * top:
        warnings.warn(
            f"tail coefficient |c_{order}| = {abs(coeffs[-1]):.3e} exceeds "
            f"{UNRESOLVED_TAIL:g} * max|c|; spectrum not resolved at this truncation",
            TruncationWarning,
            stacklevel=2,
        )
    parity = None
    if top > 0.0:
        if np.all(np.abs(coeffs[1::2]) <= PARITY_DETECT * top):
            coeffs[1::2] = 0.0
            parity = Parity.EVEN
        elif np.all(np.abs(coeffs[0::2]) <= PARITY_DETECT * top):
            coeffs[0::2] = 0.0
            parity = Parity.ODD
    return CoeffVector(coeffs, params, parity)


def synthesize(c: CoeffVector, nodes) -> GridFunction:
    """Inverse transform: pointwise sums sum_k c_k phi_k(x) at the given nodes."""
    nodes = np.asarray(nodes, dtype=float)
    values = synthesize_values(c, nodes)
    return GridFunction(nodes, values, c.parity)


def synthesize_values(c: CoeffVector, x) -> np.ndarray:
    """Like synthesize() but returns bare values and puts no ordering demands on x."""
    x = np.asarray(x, dtype=float)
    flat = c.coeffs @ phi_matrix(c.order, x.ravel(), c.params)
    return flat.reshape(x.shape)
