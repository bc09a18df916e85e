"""Half-line realizations of P = H - 2 f1 d/dx + f2 and their spectral solver.

The power-law family P = H - 2 c1 x^(-1) d/dx + c2 x^(-2) on (0, inf) is
self-adjoint in L^2(R_+, x^(2 c1) dx) exactly when some real root a of

    a^2 + (2 c1 - 1) a - c2 = 0      with      a + c1 > -1/2

exists; the conjugation u = x^a v turns P into the even part of the Dunkl
oscillator with sigma = a + c1.  Zero, one, or two admissible roots can occur,
each giving a distinct self-adjoint operator (in a different Hilbert space),
with spectrum (4k + 1 + 2 sigma)s and normalized eigenfunctions
sqrt(2) x^a phi_{2k}.

Half-line integrals fold the symmetric full-line Gauss rule: for even
integrands, the positive nodes with doubled weights integrate
q(x) x^(2 sigma) e^(-s x^2) dx over (0, inf) exactly to the rule's degree.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .basis import GridFunction, phi_matrix
from .errors import SpectrumShiftError, TruncationWarning
from .params import SIGMA_MIN, Parity, SigmaParams
from .quadrature import CoeffVector, QuadratureRule, build_rule, default_node_count

#: two roots closer than this collapse to a single extension
ROOT_DEDUPE = 1e-10

#: relative tolerance for the root residual invariant
ROOT_RESIDUAL = 1e-12

#: acceptance threshold of validate_general (scaled residual)
CONSTRAINT_TOL = 1e-6


@dataclass(frozen=True)
class PowerLawProblem:
    """P = H - 2 c1 x^(-1) d/dx + c2 x^(-2) with oscillator scale s."""

    c1: float
    c2: float
    s: float

    def __post_init__(self):
        if not (self.s > 0.0):
            raise ValueError(f"oscillator scale s must be positive (got {self.s})")


@dataclass(frozen=True)
class HalfLineExtension:
    """One admissible root a: conjugator h = x^a, measure x^(2 c1) dx, sigma = a + c1."""

    a: float
    sigma: float
    h_exponent: float
    weight_exponent: float
    problem: PowerLawProblem

    def __post_init__(self):
        c1, c2 = self.problem.c1, self.problem.c2
        scale = max(1.0, abs(self.a) ** 2, abs(c2))
        residual = abs(self.a**2 + (2 * c1 - 1) * self.a - c2)
        if residual > ROOT_RESIDUAL * scale:
            raise ValueError(f"a = {self.a} is not a root (residual {residual:.3e})")
        if not (self.sigma > SIGMA_MIN):
            raise ValueError(f"extension needs sigma > -1/2 (got {self.sigma})")

    @property
    def params(self) -> SigmaParams:
        return SigmaParams(self.sigma, self.problem.s)


def extensions(prob: PowerLawProblem) -> list:
    """All self-adjoint realizations of the power-law operator, sorted by a.

    Returns 0, 1, or 2 extensions; an empty list means this construction
    yields no self-adjoint operator and is a valid answer, not an error.
    Double roots are deduplicated.
    """
    b = 2.0 * prob.c1 - 1.0
    disc = b * b + 4.0 * prob.c2
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    roots = sorted(((-b - sq) / 2.0, (-b + sq) / 2.0))
    if abs(roots[1] - roots[0]) <= ROOT_DEDUPE:
        roots = roots[:1]
    out = []
    for a in roots:
        sigma = a + prob.c1
        if sigma > SIGMA_MIN:
            out.append(
                HalfLineExtension(
                    a=a,
                    sigma=sigma,
                    h_exponent=a,
                    weight_exponent=2.0 * prob.c1,
                    problem=prob,
                )
            )
    return out


def eigenvalue(ext: HalfLineExtension, k: int) -> float:
    """(4k + 1 + 2 sigma) s; consecutive eigenvalues are spaced by exactly 4s."""
    return (4 * k + 1 + 2.0 * ext.sigma) * ext.problem.s


def eigenpair(ext: HalfLineExtension, k: int, x):
    """Eigenvalue and normalized eigenfunction sqrt(2) x^a phi_{2k}(x), x > 0."""
    from .basis import eval_phi

    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0.0):
        raise ValueError("half-line eigenfunctions are defined for x > 0")
    value = math.sqrt(2.0) * xa**ext.a * eval_phi(2 * k, xa, ext.params)
    return eigenvalue(ext, k), (value if np.ndim(x) else float(value))


def halfline_rule(n_half: int, params: SigmaParams):
    """Positive nodes of a 2*n_half-point symmetric rule, folded to (0, inf).

    For even integrands, int_0^inf q(x) x^(2 sigma) e^(-s x^2) dx equals half
    the full-line integral, which is the sum over the positive nodes alone of
    the symmetric rule's weights; so these weights integrate the half line
    exactly up to the folded rule's degree.  Returns (nodes, weights,
    scaled_weights) like the full-line rule.
    """
    rule = build_rule(2 * n_half, params)
    nodes = rule.nodes[n_half:]
    return nodes, rule.weights[n_half:], rule.scaled_weights[n_half:]


def _eval_on(g: Union[GridFunction, Callable], x: np.ndarray) -> np.ndarray:
    if callable(g):
        return np.asarray(g(x), dtype=float)
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(g.nodes, g.values, extrapolate=True)
    vals = np.asarray(spline(x), dtype=float)
    vals[x > g.nodes[-1]] = 0.0  # beyond the sampled range the data has decayed
    return vals


def solve_coefficients(
    ext: HalfLineExtension,
    g: Union[GridFunction, Callable],
    order: int,
    shift: float = 0.0,
    n_half: Optional[int] = None,
) -> CoeffVector:
    """Even-mode coefficients of u/h for (P - shift) u = g.

    Expands v = g / x^a in the even eigenfunctions phi_{2k} (k <= order) by
    folded quadrature and divides by (lambda_k - shift).  Refuses shifts on
    the spectrum; warns when the expansion of v decays too slowly for the
    truncation to be trustworthy.
    """
    s, sigma = ext.problem.s, ext.sigma
    # spectrum check against the full eigenvalue ladder, not just k <= order
    k_near = max(0.0, round((shift / s - 1.0 - 2.0 * sigma) / 4.0))
    lam_near = (4.0 * k_near + 1.0 + 2.0 * sigma) * s
    if abs(shift - lam_near) <= 1e-9 * max(abs(shift), s):
        raise SpectrumShiftError(
            f"shift {shift} lies on the spectrum (eigenvalue index {int(k_near)})"
        )
    params = ext.params
    if n_half is None:
        n_half = (default_node_count(2 * order, params) + 1) // 2
    nodes, _, scaled = halfline_rule(n_half, params)
    v = _eval_on(g, nodes) / nodes**ext.a
    basis_even = phi_matrix(2 * order, nodes, params)[0::2]
    # <phi_{2k}, v>_sigma over the full line is twice the half-line integral
    d = 2.0 * (basis_even @ (scaled * v))
    top = float(np.max(np.abs(d)))
    if top > 0.0 and abs(d[-1]) > 1e-6 * top:
        warnings.warn(
            f"expansion of g/h decays slowly (|d_{order}| = {abs(d[-1]):.3e}); "
            "increase the truncation order",
            TruncationWarning,
            stacklevel=2,
        )
    lam = (4.0 * np.arange(order + 1) + 1.0 + 2.0 * sigma) * s
    u_even = d / (lam - shift)
    # interleave into a full-line even coefficient vector (odd slots are zero)
    coeffs = np.zeros(2 * order + 1)
    coeffs[0::2] = u_even
    return CoeffVector(coeffs, params, Parity.EVEN)


def solve(
    ext: HalfLineExtension,
    g: Union[GridFunction, Callable],
    order: int,
    shift: float = 0.0,
    nodes=None,
    n_half: Optional[int] = None,
) -> GridFunction:
    """Spectral resolvent: u with (P - shift) u = g, sampled on the given nodes."""
    from .quadrature import synthesize_values

    c = solve_coefficients(ext, g, order, shift, n_half)
    if nodes is None:
        if isinstance(g, GridFunction):
            nodes = g.nodes
        else:
            raise ValueError("output nodes are required when g is a callable")
    nodes = np.asarray(nodes, dtype=float)
    if np.any(nodes <= 0.0):
        raise ValueError("half-line solutions are sampled on x > 0")
    values = nodes**ext.a * synthesize_values(c, nodes)
    return GridFunction(nodes, values)


def apply_power_law(
    prob: PowerLawProblem, u: Callable, x, step: float = 1e-3
) -> np.ndarray:
    """P u at the points x by 5-point central differences on the callable u.

    Independent of the spectral machinery; used to cross-check solve() and
    the conjugation identity.
    """
    x = np.asarray(x, dtype=float)
    h = step
    um2, um1, u0, up1, up2 = (u(x + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h)
    d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h)
    s = prob.s
    return -d2 + s * s * x * x * u0 - 2.0 * prob.c1 * d1 / x + prob.c2 * u0 / (x * x)


@dataclass(frozen=True)
class GeneralProblem:
    """P = H - 2 f1 d/dx + f2 on an open U in (0, inf) of full measure.

    The constraint f2 = sigma (sigma - 1) x^(-2) - f1^2 - f1' ties the
    coefficients to a conjugated oscillator; `validate_general` checks it
    numerically.  F1, a primitive of f1, is kept for building h = x^sigma
    e^(-F1) but is not needed for validation.
    """

    f1: Callable
    f2: Callable
    sigma: float
    F1: Optional[Callable] = None
    domain: Sequence[tuple] = field(default_factory=lambda: ((0.0, math.inf),))

    def __post_init__(self):
        if not (self.sigma > SIGMA_MIN):
            raise ValueError(f"sigma must exceed -1/2 (got {self.sigma})")

    def contains(self, x: float) -> bool:
        return any(lo < x < hi for lo, hi in self.domain)


@dataclass
class ValidationReport:
    points: np.ndarray
    residuals: np.ndarray
    scaled_residuals: np.ndarray
    accepted: bool

    @property
    def max_scaled_residual(self) -> float:
        return float(np.max(self.scaled_residuals))


def validate_general(prob: GeneralProblem, sample_points) -> ValidationReport:
    """Check f2 - (sigma (sigma - 1) x^(-2) - f1^2 - f1') at the sample points.

    f1' is taken by centered differences.  Accepts when every residual is at
    most 1e-6 times the local scale of the terms entering the constraint.
    """
    pts = np.asarray(sample_points, dtype=float)
    for x in pts:
        if not prob.contains(float(x)):
            raise ValueError(f"sample point {x} lies outside the problem domain")
    sig = prob.sigma
    f1 = np.asarray(prob.f1(pts), dtype=float)
    f2 = np.asarray(prob.f2(pts), dtype=float)
    h = 1e-6 * np.maximum(1.0, np.abs(pts))
    f1p = (np.asarray(prob.f1(pts + h), dtype=float) - np.asarray(prob.f1(pts - h), dtype=float)) / (2.0 * h)
    target = sig * (sig - 1.0) / pts**2 - f1**2 - f1p
    residuals = np.abs(f2 - target)
    scale = np.maximum.reduce(
        [
            np.ones_like(pts),
            np.abs(f2),
            np.abs(sig * (sig - 1.0)) / pts**2,
            f1**2,
            np.abs(f1p),
        ]
    )
    scaled = residuals / scale
    return ValidationReport(
        points=pts,
        residuals=residuals,
        scaled_residuals=scaled,
        accepted=bool(np.all(scaled <= CONSTRAINT_TOL)),
    )
