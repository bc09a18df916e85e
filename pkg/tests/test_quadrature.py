import json
import math

import numpy as np
import pytest

from dunkl_spectral.basis import GridFunction, eval_phi, log_p0, phi_matrix
from dunkl_spectral.errors import TruncationWarning
from dunkl_spectral.params import Parity, SigmaParams
from dunkl_spectral.quadrature import (
    CoeffVector,
    analyze,
    build_rule,
    default_node_count,
    synthesize,
    synthesize_values,
    total_mass,
)

from oracles import weighted_moment

SIGMAS = (-0.4, 0.0, 0.5, 1.7)


def test_single_node_rule():
    rule = build_rule(1, SigmaParams(0.0, 1.0))
    assert rule.nodes == pytest.approx([0.0])
    assert rule.weights == pytest.approx([math.sqrt(math.pi)])


def test_second_moment_against_adaptive_quadrature():
    sigma, s = 0.5, 1.0
    rule = build_rule(8, SigmaParams(sigma, s))
    got = float(np.sum(rule.weights * rule.nodes**2))
    assert got == pytest.approx(weighted_moment(2, sigma, s), rel=1e-12)
    assert got == pytest.approx(math.gamma(sigma + 1.5) * s ** -(sigma + 1.5), rel=1e-13)
    # the rule reproduces <p_1, p_1> = 1
    p = SigmaParams(sigma, s)
    p1 = phi_matrix(1, rule.nodes, p)[1] * np.exp(0.5 * s * rule.nodes**2)
    assert float(np.sum(rule.weights * p1 * p1)) == pytest.approx(1.0, abs=1e-13)


def test_sixteen_node_orthonormality():
    p = SigmaParams(1.7, 1.0)
    rule = build_rule(16, p)
    basis = phi_matrix(15, rule.nodes, p)
    gram = (basis * rule.scaled_weights) @ basis.T
    assert np.max(np.abs(gram - np.eye(16))) < 1e-11


@pytest.mark.parametrize("sigma", SIGMAS)
def test_exactness_all_sigmas(sigma):
    p = SigmaParams(sigma, 1.0)
    rule = build_rule(16, p)
    basis = phi_matrix(15, rule.nodes, p)
    gram = (basis * rule.scaled_weights) @ basis.T
    assert np.max(np.abs(gram - np.eye(16))) < 1e-11


@pytest.mark.parametrize(
    "sigma,n", [(-0.4, 2), (-0.4, 64), (-0.4, 256), (0.5, 17), (0.5, 255), (1.7, 256)]
)
def test_symmetry_and_positivity(sigma, n):
    rule = build_rule(n, SigmaParams(sigma, 1.0))
    assert np.array_equal(rule.nodes, -rule.nodes[::-1])
    assert np.all(rule.weights > 0.0)
    assert np.all(np.diff(rule.nodes) > 0.0)


@pytest.mark.parametrize("sigma", SIGMAS)
def test_total_mass(sigma):
    p = SigmaParams(sigma, 2.0)
    rule = build_rule(24, p)
    assert float(np.sum(rule.weights)) == pytest.approx(total_mass(p), rel=1e-12)


def test_even_node_count_required_for_negative_sigma():
    with pytest.raises(ValueError):
        build_rule(15, SigmaParams(-0.3, 1.0))
    assert default_node_count(10, SigmaParams(-0.3, 1.0)) % 2 == 0


def test_analyze_eigenfunction_gives_unit_vector():
    p = SigmaParams(1.7, 2.0)
    c = analyze(lambda x: eval_phi(3, x, p), 10, p)
    want = np.zeros(11)
    want[3] = 1.0
    assert np.max(np.abs(c.coeffs - want)) < 1e-11
    assert c.parity is Parity.ODD


def test_analyze_x_gaussian_single_coefficient():
    # f = x e^(-s x^2/2): c_1 = sqrt(2s/(1+2 sigma)) p_0 * integral x^2 dmu
    sigma, s = 0.5, 1.0
    p = SigmaParams(sigma, s)
    c = analyze(lambda x: x * np.exp(-0.5 * s * np.asarray(x) ** 2), 8, p)
    want = (
        math.sqrt(2 * s / (1 + 2 * sigma))
        * math.exp(log_p0(p))
        * math.gamma(sigma + 1.5)
        * s ** -(sigma + 1.5)
    )
    assert c.coeffs[1] == pytest.approx(want, rel=1e-12)
    assert c.coeffs[1] == pytest.approx(1.0, rel=1e-12)
    others = np.delete(c.coeffs, 1)
    assert np.max(np.abs(others)) < 1e-12


@pytest.mark.parametrize("sigma", SIGMAS)
def test_round_trip_both_ways(sigma):
    p = SigmaParams(sigma, 1.0)
    rng = np.random.default_rng(17)
    coeffs = rng.uniform(-1.0, 1.0, 41) * 2.0 ** -np.arange(41)
    cv = CoeffVector(coeffs, p)
    back = analyze(lambda x: synthesize_values(cv, x), 40, p)
    assert np.max(np.abs(back.coeffs - coeffs)) < 1e-10


def test_synthesize_basics():
    p = SigmaParams(0.5, 1.0)
    nodes = np.linspace(-3, 3, 21)
    out = synthesize(CoeffVector.unit(0, 5, p), nodes)
    assert np.allclose(out.values, eval_phi(0, nodes, p), rtol=0, atol=1e-14)
    zero = synthesize(CoeffVector.zeros(5, p), nodes)
    assert np.array_equal(zero.values, np.zeros(21))


def test_parseval():
    p = SigmaParams(-0.4, 1.0)
    rng = np.random.default_rng(23)
    coeffs = rng.uniform(-1.0, 1.0, 33) * 2.0 ** -np.arange(33)
    cv = CoeffVector(coeffs, p)
    rule = build_rule(64, p)
    vals = synthesize_values(cv, rule.nodes)
    norm_sq = rule.inner(vals, vals)
    assert norm_sq == pytest.approx(float(np.sum(coeffs**2)), rel=1e-9)


def test_truncation_warning_for_unresolved_spectrum():
    p = SigmaParams(0.0, 1.0)
    with pytest.warns(TruncationWarning):
        analyze(lambda x: np.exp(-np.abs(x)), 10, p)


def test_analyze_from_grid_function():
    p = SigmaParams(0.5, 1.0)
    xs = np.linspace(-12.0, 12.0, 4001)
    g = GridFunction(xs, eval_phi(2, xs, p))
    c = analyze(g, 8, p)
    want = np.zeros(9)
    want[2] = 1.0
    assert np.max(np.abs(c.coeffs - want)) < 1e-10


def test_parity_detection_zeroes_complement():
    p = SigmaParams(0.0, 1.0)
    c = analyze(lambda x: np.exp(-0.5 * np.asarray(x) ** 2), 9, p)
    assert c.parity is Parity.EVEN
    assert np.all(c.coeffs[1::2] == 0.0)


def test_coeff_vector_validation_and_helpers():
    p = SigmaParams(0.0, 1.0)
    with pytest.raises(ValueError):
        CoeffVector(np.array([1.0, 2.0]), p, Parity.EVEN)
    cv = CoeffVector.unit(2, 6, p)
    assert cv.parity is Parity.EVEN and cv.order == 6
    assert cv.padded(3).order == 9
    total = 2.0 * cv + CoeffVector.unit(3, 6, p)
    assert total.parity is None
    assert total.coeffs[2] == 2.0 and total.coeffs[3] == 1.0
    assert cv.even_part().coeffs[2] == 1.0
    assert np.all(cv.odd_part().coeffs == 0.0)


def test_json_round_trip_and_csv():
    p = SigmaParams(-0.4, 2.0)
    cv = CoeffVector(np.array([0.0, 0.25, 0.0, -1.0 / 3.0]), p, Parity.ODD)
    text = cv.to_json()
    obj = json.loads(text)
    assert obj["parity"] == "odd" and obj["sigma"] == -0.4 and obj["s"] == 2.0
    back = CoeffVector.from_json(text)
    assert np.array_equal(back.coeffs, cv.coeffs)
    assert back.params == cv.params and back.parity is Parity.ODD
    lines = cv.to_csv().strip().splitlines()
    assert lines[0] == "k,c_k"
    assert lines[2].startswith("1,0.25")
    assert len(lines) == 5
