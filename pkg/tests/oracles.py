"""Independent oracles the tests check the package against.

Everything here is deliberately coded from scratch against textbook
formulas (classical Hermite functions, Gram-Schmidt, adaptive quadrature,
golden-section search, finite differences) and never calls back into the
package's own evaluation paths.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_hermite


def classical_hermite_phi(k: int, x, s: float = 1.0):
    """Orthonormal Hermite function for the plain weight: (s/pi)^(1/4) (2^k k!)^(-1/2) H_k(sqrt(s) x) e^(-s x^2/2)."""
    x = np.asarray(x, dtype=float)
    norm = (s / math.pi) ** 0.25 / math.sqrt(2.0**k * math.factorial(k))
    return norm * eval_hermite(k, math.sqrt(s) * x) * np.exp(-0.5 * s * x * x)


def classical_annihilation(order: int, s: float = 1.0) -> np.ndarray:
    """sqrt(2ks) lowering matrix of the plain oscillator."""
    out = np.zeros((order + 1, order + 1))
    for k in range(1, order + 1):
        out[k - 1, k] = math.sqrt(2.0 * k * s)
    return out


def classical_position(order: int, s: float = 1.0) -> np.ndarray:
    a = classical_annihilation(order, s)
    return (a + a.T) / (2.0 * s)


def classical_derivative(order: int, s: float = 1.0) -> np.ndarray:
    a = classical_annihilation(order, s)
    return 0.5 * (a - a.T)


def gram_schmidt_p2(s: float = 1.0):
    """Degree-2 orthonormal polynomial for e^(-s x^2), by Gram-Schmidt on {1, x, x^2}.

    Uses exact Gaussian moments M_{2n} = Gamma(n + 1/2) s^(-n - 1/2); returns
    a callable with positive leading coefficient.
    """
    m0 = math.gamma(0.5) * s**-0.5
    m2 = math.gamma(1.5) * s**-1.5
    m4 = math.gamma(2.5) * s**-2.5
    shift = m2 / m0
    norm = math.sqrt(m4 - m2 * m2 / m0)
    return lambda x: (np.asarray(x) ** 2 - shift) / norm


def weighted_moment(n: int, sigma: float, s: float) -> float:
    """integral of x^n e^(-s x^2) |x|^(2 sigma) dx over the line, n even, by adaptive quadrature."""
    if n % 2 == 1:
        return 0.0
    val, _ = quad(lambda x: x**n * math.exp(-s * x * x) * x ** (2 * sigma), 0.0, 50.0)
    return 2.0 * val


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Maximum value of a unimodal f on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return max(fc, fd)


def fd1(f, x, h: float):
    """4th-order centered first derivative of a callable."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def fd2(f, x, h: float):
    """4th-order centered second derivative of a callable."""
    return (
        -f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)
    ) / (12 * h * h)


def oscillator_apply_fd(f, x, sigma: float, s: float, odd: bool, h: float = 5e-3):
    """-f'' - (2 sigma/x) f' (+ 2 sigma f / x^2 if odd) + s^2 x^2 f, by finite differences."""
    out = -fd2(f, x, h) - (2.0 * sigma / x) * fd1(f, x, h) + s * s * x * x * f(x)
    if odd:
        out = out + 2.0 * sigma * f(x) / (x * x)
    return out
