"""Core parameters, parity bookkeeping, and the perturbed factorial.

Everything downstream is driven by the pair (sigma, s): sigma > -1/2 is the
exponent of the weight |x|^(2*sigma), s > 0 is the inverse-length^2 scale of
the oscillator.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

# Open condition sigma > -1/2, with a small buffer: the Gamma factors and the
# quadrature weights degrade right at the boundary, so reject explicitly
# instead of returning NaNs later.
SIGMA_MIN = -0.5 + 1e-9


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of_index(cls, k: int) -> "Parity":
        return cls.EVEN if k % 2 == 0 else cls.ODD

    def flipped(self) -> "Parity":
        return Parity.ODD if self is Parity.EVEN else Parity.EVEN

    @property
    def sign(self) -> int:
        """+1 on even functions, -1 on odd ones."""
        return 1 if self is Parity.EVEN else -1


@dataclass(frozen=True)
class SigmaParams:
    """Weight exponent sigma and oscillator scale s.

    Raises ValueError unless sigma > -1/2 (with a 1e-9 buffer) and s > 0.
    """

    sigma: float
    s: float

    def __post_init__(self):
        if not (self.sigma > SIGMA_MIN):
            raise ValueError(
                f"sigma must exceed -1/2 (got sigma={self.sigma}); the weight "
                "|x|^(2*sigma) is not locally integrable otherwise"
            )
        if not (self.s > 0.0):
            raise ValueError(f"oscillator scale s must be positive (got s={self.s})")


def factorial_factor(m: int, sigma: float) -> float:
    """m-th factor of the perturbed factorial: m for even m, m + 2*sigma for odd m.

    By convention the 0-th factor is 0, matching the annihilation of the
    ground state.
    """
    if m <= 0:
        return 0.0
    return float(m) if m % 2 == 0 else m + 2.0 * sigma


def perturbed_factorial(m: int, params: SigmaParams) -> float:
    """Perturbed factorial m!_sigma: product of factorial_factor(j) for j = 1..m.

    Equals the ordinary factorial at sigma = 0 and is strictly positive for
    every sigma > -1/2.
    """
    if m < 0:
        raise ValueError(f"m must be a natural number (got {m})")
    out = 1.0
    for j in range(1, m + 1):
        out *= factorial_factor(j, params.sigma)
    return out


def perturbed_factorial_ratio(m: int, k: int, sigma: float) -> float:
    """Quotient m!_sigma / k!_sigma for k <= m, as a product of surviving factors.

    Never forms the two factorials separately: that would overflow for
    m >~ 150 and would divide by zero at the sigma = -1/2 boundary, where
    the quotient convention (product of the factors used for m!_sigma but
    not for k!_sigma) still makes sense.  `sigma` is a plain float here so
    the boundary value -1/2 itself is allowed.
    """
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m (got k={k}, m={m})")
    if sigma < -0.5:
        raise ValueError(f"sigma must be >= -1/2 (got {sigma})")
    out = 1.0
    for j in range(k + 1, m + 1):
        out *= factorial_factor(j, sigma)
    return out


def sigma_action(params: SigmaParams, parity: Parity) -> float:
    """Scalar by which the parity-weight operator acts: +sigma on even, -sigma on odd."""
    return params.sigma * parity.sign
