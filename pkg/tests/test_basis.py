import math

import numpy as np
import pytest

from dunkl_spectral.basis import (
    GridFunction,
    eval_p,
    eval_phi,
    eval_xi,
    phi_matrix,
    phi_rows,
    recurrence_step,
    turning_point,
)
from dunkl_spectral.errors import SingularPointError
from dunkl_spectral.operators import dunkl_poly
from dunkl_spectral.params import Parity, SigmaParams, perturbed_factorial

from oracles import classical_hermite_phi, gram_schmidt_p2


def test_p0_is_quarter_root_of_pi():
    p = SigmaParams(0.0, 1.0)
    for x in (-3.0, 0.0, 1.234):
        assert eval_p(0, x, p) == pytest.approx(math.pi**-0.25, rel=1e-14)


def test_p1_at_one():
    # p_1 = (2(1+2 sigma)s)^(-1/2) 2sx p_0 with p_0 = 1 at sigma=1/2, s=1
    p = SigmaParams(0.5, 1.0)
    assert eval_p(0, 0.3, p) == pytest.approx(1.0, rel=1e-14)
    assert eval_p(1, 1.0, p) == pytest.approx(1.0, rel=1e-14)


def test_p2_matches_gram_schmidt_oracle():
    p = SigmaParams(0.0, 1.0)
    oracle = gram_schmidt_p2(1.0)
    xs = np.linspace(-3, 3, 11)
    assert np.max(np.abs(eval_p(2, xs, p) - oracle(xs))) < 1e-12


def test_eval_p_signals_overflow():
    p = SigmaParams(0.0, 1.0)
    with pytest.raises(OverflowError):
        eval_p(750, turning_point(750, p), p)


def test_phi0_at_origin():
    assert eval_phi(0, 0.0, SigmaParams(0.5, 1.0)) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("k", [1, 3, 11])
def test_odd_phi_vanishes_at_origin(k):
    assert eval_phi(k, 0.0, SigmaParams(0.7, 2.0)) == 0.0


def test_phi3_normalized_under_32_node_rule():
    from dunkl_spectral.quadrature import build_rule

    p = SigmaParams(1.7, 2.0)
    rule = build_rule(32, p)
    vals = eval_phi(3, rule.nodes, p)
    assert rule.inner(vals, vals) == pytest.approx(1.0, abs=1e-12)


def test_xi_reduces_to_phi_at_sigma_zero():
    p = SigmaParams(0.0, 1.0)
    xs = np.linspace(-4, 4, 33)
    for k in (0, 1, 4):
        assert np.array_equal(eval_xi(k, xs, p), eval_phi(k, xs, p))


def test_xi_closed_form_k0():
    assert eval_xi(0, 1.0, SigmaParams(0.5, 1.0)) == pytest.approx(
        math.exp(-0.5), rel=1e-14
    )


def test_xi_at_origin_by_sigma_sign():
    assert eval_xi(2, 0.0, SigmaParams(0.8, 1.0)) == 0.0
    p0 = SigmaParams(0.0, 1.0)
    assert eval_xi(2, 0.0, p0) == eval_phi(2, 0.0, p0)
    with pytest.raises(SingularPointError):
        eval_xi(2, 0.0, SigmaParams(-0.3, 1.0))


def test_turning_point_values():
    assert turning_point(0, SigmaParams(0.0, 1.0)) == pytest.approx(1.0)
    assert turning_point(12, SigmaParams(0.5, 1.0)) == pytest.approx(math.sqrt(26.0))
    assert turning_point(0, SigmaParams(1.5, 4.0)) == pytest.approx(1.0)


def test_symmetry_is_exact():
    p = SigmaParams(0.9, 1.3)
    rng = np.random.default_rng(5)
    xs = rng.uniform(0.01, 6.0, 50)
    for k in (0, 1, 2, 7, 16):
        left = eval_phi(k, -xs, p)
        right = eval_phi(k, xs, p)
        assert np.array_equal(left, (-1.0) ** k * right)


@pytest.mark.parametrize("sigma", [-0.4, 0.0, 0.5, 1.7])
def test_recurrence_consistency(sigma):
    p = SigmaParams(sigma, 1.0)
    rng = np.random.default_rng(11)
    xs = rng.uniform(-8.0, 8.0, 100)
    vals = {k: eval_p(k, xs, p) for k in range(65)}
    for k in range(2, 65):
        a, b = recurrence_step(k, p)
        resid = np.abs(vals[k] - (a * xs * vals[k - 1] - b * vals[k - 2]))
        assert np.all(resid <= 1e-10 * np.maximum(1.0, np.abs(vals[k])))


@pytest.mark.parametrize("s", [1.0, 2.0])
def test_classical_reduction_at_sigma_zero(s):
    p = SigmaParams(0.0, s)
    xs = np.linspace(-9, 9, 601)
    for k in range(33):
        ours = eval_phi(k, xs, p)
        ref = classical_hermite_phi(k, xs, s)
        assert np.max(np.abs(ours - ref)) <= 1e-10 * np.max(np.abs(ref))


def test_dunkl_power_identity_at_zero():
    # (T^m f)(0) = (m!_sigma / m!) f^(m)(0) for polynomials, degree <= 8
    rng = np.random.default_rng(2)
    coeffs = rng.uniform(-2, 2, 9)
    for sigma in (-0.4, 0.0, 0.5, 1.7):
        p = SigmaParams(sigma, 1.0)
        work = coeffs.copy()
        for m in range(9):
            lhs = work[0]  # value at zero of T^m f
            want = perturbed_factorial(m, p) * coeffs[m]
            assert lhs == pytest.approx(want, rel=1e-12, abs=1e-12)
            work = dunkl_poly(work, sigma)


def test_phi_matrix_and_rows_agree():
    p = SigmaParams(0.5, 1.0)
    xs = np.linspace(-5, 5, 40)
    mat = phi_matrix(12, xs, p)
    rows = phi_rows([0, 5, 12], xs, p)
    for k, row in rows.items():
        assert np.array_equal(row, mat[k])


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction(np.array([0.0, 0.0, 1.0]), np.zeros(3))
    with pytest.raises(ValueError):
        GridFunction(np.array([0.0, 1.0]), np.zeros(3))


def test_grid_function_reflection():
    nodes = np.array([0.0, 1.0, 2.0])
    f = GridFunction(nodes, np.array([0.0, 3.0, 5.0]), Parity.ODD)
    full = f.full_line()
    assert np.array_equal(full.nodes, np.array([-2.0, -1.0, 0.0, 1.0, 2.0]))
    assert np.array_equal(full.values, np.array([-5.0, -3.0, 0.0, 3.0, 5.0]))
    g = GridFunction(nodes[1:], np.array([2.0, 4.0]), Parity.EVEN)
    assert np.array_equal(g.full_line().values, np.array([4.0, 2.0, 2.0, 4.0]))
