"""Runtime self-check suites behind `dunkl-spectral verify`.

Each suite returns {"suite": name, "checks": [...], "all_passed": bool} with
one entry per invariant: a name, a pass flag, and the measured numbers
(residuals or empirical constants).  All randomness is seeded, so a fixed
config reproduces the report byte for byte.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .basis import eval_phi, phi_matrix
from .errors import HypothesisViolationError
from .halfline import (
    PowerLawProblem,
    apply_power_law,
    eigenvalue,
    extensions,
    halfline_rule,
    solve_coefficients,
)
from .norms import (
    SeminormFamily,
    SeminormSpec,
    decay_check,
    embedding_harness,
    schwartz_to_sobolev_order,
    seq_norm,
    sobolev_to_schwartz_threshold,
)
from .operators import OperatorKind, operator_matrix, xi_matrix
from .params import Parity, SigmaParams
from .quadrature import CoeffVector, build_rule, synthesize_values

SIGMA_SET = (-0.4, 0.0, 0.5, 1.7)


def _c(name: str, passed: bool, **detail) -> dict:
    out = {"name": name, "passed": bool(passed)}
    out.update(detail)
    return out


def _interior(mat: np.ndarray) -> np.ndarray:
    """Drop the truncation-edge row and column before asserting an identity."""
    return mat[:-1, :-1]


def algebra_suite(order: int = 40, seed: int = 0, tol: float = 1e-12) -> dict:
    checks = []
    rng = np.random.default_rng(seed)
    for sigma in SIGMA_SET:
        params = SigmaParams(sigma, 1.0)
        s = params.s
        B = operator_matrix(OperatorKind.ANNIHILATE_B, order, params)
        Bp = operator_matrix(OperatorKind.CREATE_BPRIME, order, params)
        L = operator_matrix(OperatorKind.OSCILLATOR_L, order, params)
        Sg = operator_matrix(OperatorKind.REFLECTIONWEIGHT_SIGMA, order, params)
        X = operator_matrix(OperatorKind.MULT_X, order, params)
        T = operator_matrix(OperatorKind.DUNKL_T, order, params)
        eye = np.eye(order + 1)
        idents = {
            "L = BB' - (1+2S)s": L - (B @ Bp - (eye + 2 * Sg) * s),
            "L = B'B + (1+2S)s": L - (Bp @ B + (eye + 2 * Sg) * s),
            "[L,B] = -2sB": (L @ B - B @ L) - (-2 * s * B),
            "[L,B'] = 2sB'": (L @ Bp - Bp @ L) - (2 * s * Bp),
            "[B,B'] = 2s(1+2S)": (B @ Bp - Bp @ B) - 2 * s * (eye + 2 * Sg),
            "[T,x] = 1+2S": (T @ X - X @ T) - (eye + 2 * Sg),
            "[L,S] = 0": L @ Sg - Sg @ L,
            "BS + SB = 0": B @ Sg + Sg @ B,
            "B'S + SB' = 0": Bp @ Sg + Sg @ Bp,
            "xS + Sx = 0": X @ Sg + Sg @ X,
            "TS + ST = 0": T @ Sg + Sg @ T,
        }
        for name, resid in idents.items():
            worst = float(np.max(np.abs(_interior(resid))))
            checks.append(
                _c(f"{name} (sigma={sigma})", worst <= tol, max_residual=worst)
            )
        checks.append(
            _c(
                f"B' is the transpose of B (sigma={sigma})",
                bool(np.array_equal(B.T, Bp)),
            )
        )
        # parity is preserved exactly: flipping operators leave exact zeros
        c_even = np.zeros(order + 1)
        n_even = order // 2 + 1
        c_even[0::2] = rng.standard_normal(n_even) * 0.3 ** np.arange(n_even)
        ce = CoeffVector(c_even, params, Parity.EVEN)
        from .operators import apply_Bprime, apply_T, apply_x

        flipped_ok = all(
            np.all(op(ce).coeffs[0::2] == 0.0) for op in (apply_Bprime, apply_T, apply_x)
        )
        checks.append(_c(f"parity flips exactly (sigma={sigma})", flipped_ok))

        # division-by-x closed forms on e_1 and e_3
        xi = xi_matrix(order, params)
        d1 = xi[:, 1]
        want = math.sqrt(2 * s / (1 + 2 * sigma))
        err1 = abs(d1[0] - want) + float(np.max(np.abs(d1[1:])))
        d3 = xi[:, 3]
        want0 = -math.sqrt(4 * s / ((3 + 2 * sigma) * (1 + 2 * sigma)))
        want2 = math.sqrt(2 * s / (3 + 2 * sigma))
        err3 = abs(d3[0] - want0) + abs(d3[2] - want2)
        checks.append(
            _c(f"x^-1 closed forms e1, e3 (sigma={sigma})", max(err1, err3) <= tol,
               max_residual=max(err1, err3))
        )

        # pointwise oracle: synthesized Xi c equals synthesized c divided by x
        c_odd = np.zeros(order + 1)
        c_odd[1::2] = rng.uniform(-1, 1, (order + 1) // 2) * (
            3.0 ** -np.arange(1, order + 1, 2)
        )
        co = CoeffVector(c_odd, params, Parity.ODD)
        from .operators import apply_Xi

        div = apply_Xi(co)
        grid = np.linspace(0.1, 6.0, 400)
        err = float(
            np.max(
                np.abs(
                    synthesize_values(div, grid) - synthesize_values(co, grid) / grid
                )
            )
        )
        checks.append(
            _c(f"x^-1 matches pointwise division (sigma={sigma})", err <= 1e-8,
               max_residual=err)
        )

        # boundedness surrogate with the explicit sqrt(2s) constant, m' - m = 2
        viol = 0
        worst_margin = 0.0
        for m in (0, 1, 2):
            for _ in range(50):
                c = np.zeros(order + 1)
                c[1::2] = rng.standard_normal(
                    (order + 1) // 2
                ) * 0.8 ** np.arange(1, order + 1, 2)
                cv = CoeffVector(c, params, Parity.ODD)
                lhs = seq_norm(apply_Xi(cv), SeminormFamily.CMAX, m)
                tail = np.sum((1.0 + np.arange(order + 1)) ** (-2.0))
                rhs = (
                    math.sqrt(2 * s)
                    * seq_norm(cv, SeminormFamily.ELL2, m + 2)
                    * math.sqrt(tail)
                )
                worst_margin = max(worst_margin, lhs / rhs if rhs else 0.0)
                if lhs > rhs:
                    viol += 1
        checks.append(
            _c(f"x^-1 bound surrogate (sigma={sigma})", viol == 0,
               violations=viol, worst_ratio_of_bound=worst_margin)
        )
    return {"suite": "algebra", "checks": checks, "all_passed": all(c["passed"] for c in checks)}


def embeddings_suite(trials: int = 50, seed: int = 0) -> dict:
    checks = []
    for sigma in (-0.4, 0.5, 1.7):
        params = SigmaParams(sigma, 1.0)
        for parity in (Parity.EVEN, Parity.ODD):
            for m in range(4):
                runs = [
                    (
                        "schwartz->sobolev",
                        SeminormSpec(
                            SeminormFamily.SCHWARTZ,
                            schwartz_to_sobolev_order(m, sigma, parity),
                            parity,
                        ),
                        SeminormSpec(SeminormFamily.SOBOLEV, m, parity),
                    ),
                    (
                        "sobolev->schwartz",
                        SeminormSpec(
                            SeminormFamily.SOBOLEV,
                            sobolev_to_schwartz_threshold(m, sigma, parity) + 1,
                            parity,
                        ),
                        SeminormSpec(SeminormFamily.SCHWARTZ, m, parity),
                    ),
                    (
                        "perturbed->sobolev",
                        SeminormSpec(SeminormFamily.PERTURBED, m + 1, parity),
                        SeminormSpec(SeminormFamily.SOBOLEV, m, parity),
                    ),
                    (
                        "sobolev->perturbed",
                        SeminormSpec(SeminormFamily.SOBOLEV, m + 2, parity),
                        SeminormSpec(SeminormFamily.PERTURBED, m, parity),
                    ),
                ]
                for label, f, t in runs:
                    rep = embedding_harness(f, t, params, trials=trials, seed=seed)
                    checks.append(
                        _c(
                            f"{label} m={m} sigma={sigma} {parity.value}",
                            rep.violations == 0
                            and math.isfinite(rep.empirical_constant),
                            empirical_constant=rep.empirical_constant,
                            violations=rep.violations,
                        )
                    )
    # refusal guard: an exponent pair below the threshold must be rejected
    params = SigmaParams(0.5, 1.0)
    try:
        embedding_harness(
            SeminormSpec(SeminormFamily.SOBOLEV, 3.0, Parity.EVEN),
            SeminormSpec(SeminormFamily.PERTURBED, 2.0, Parity.EVEN),
            params,
            trials=1,
        )
        refused = False
    except HypothesisViolationError:
        refused = True
    checks.append(_c("hypothesis violation refused", refused))
    return {
        "suite": "embeddings",
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }


def decay_suite(params: SigmaParams, factor: float = 4.0) -> dict:
    ks = sorted({2**j for j in range(3, 10)} | {2**j + 1 for j in range(3, 10)})
    checks = []
    tables = {}

    def flat(rows, col):
        vals = np.array([r[col] for r in rows])
        med = float(np.median(vals))
        return bool(np.all(vals <= factor * med) and np.all(vals >= med / factor)), med

    if params.sigma >= 0.0:
        rows = decay_check(params, ks, region="full")
        tables["full"] = rows
        ok, med = flat(rows, 2)
        checks.append(_c("sup xi^2 * k^(1/6) flat (full line)", ok, median=med))
    else:
        odd = [k for k in ks if k % 2 == 1]
        even = [k for k in ks if k % 2 == 0]
        rows = decay_check(params, odd, region="full")
        tables["full_odd"] = rows
        ok, med = flat(rows, 2)
        checks.append(_c("sup xi^2 * k^(1/6) flat (odd k)", ok, median=med))
        rows = decay_check(params, even, region="tail")
        tables["tail_even"] = rows
        ok, med = flat(rows, 2)
        checks.append(_c("sup xi^2 * k^(1/6) flat (even k, |x|>=1)", ok, median=med))
        rows = decay_check(params, even, region="core")
        tables["core_even"] = rows
        ok, med = flat(rows, 1)
        checks.append(_c("sup phi^2 bounded (even k, |x|<=1)", ok, median=med))
    return {
        "suite": "decay",
        "sigma": params.sigma,
        "s": params.s,
        "tables": {
            name: [{"k": k, "sup_sq": a, "normalized": b} for k, a, b in rows]
            for name, rows in tables.items()
        },
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }


def halfline_suite(seed: int = 0, s: float = 1.0) -> dict:
    checks = []
    prob = PowerLawProblem(0.0, 0.0, s)
    exts = extensions(prob)
    checks.append(_c("c1=0, c2=0 has two extensions", len(exts) == 2,
                     roots=[e.a for e in exts]))
    spacing_ok = all(
        abs((eigenvalue(e, k + 1) - eigenvalue(e, k)) - 4 * s) == 0.0
        for e in exts
        for k in range(6)
    )
    checks.append(_c("eigenvalue spacing exactly 4s", spacing_ok))

    for ext in exts:
        nodes, _, scaled = halfline_rule(40, ext.params)
        basis = phi_matrix(24, nodes, ext.params)[0::2]
        gram = 2.0 * basis @ (scaled[:, None] * basis.T)
        worst = float(np.max(np.abs(gram - np.eye(13))))
        checks.append(
            _c(f"half-line Gram identity (a={ext.a:g})", worst <= 1e-9,
               max_residual=worst)
        )

    rng = np.random.default_rng(seed)
    ext = exts[1]
    window = np.linspace(0.2, 4.0, 60)
    worst = 0.0
    for _ in range(20):
        c = np.zeros(17)
        c[0::2] = rng.standard_normal(9) * 0.6 ** np.arange(0, 17, 2)
        cv = CoeffVector(c, ext.params, Parity.EVEN)
        lam = (2 * np.arange(17) + 1 + 2 * ext.sigma) * s

        def hpsi(x, cv=cv):
            return x**ext.a * synthesize_values(cv, x)

        lhs = apply_power_law(prob, hpsi, window)
        spectral = CoeffVector(lam * c, ext.params, Parity.EVEN)
        rhs = window**ext.a * synthesize_values(spectral, window)
        worst = max(worst, float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))))
    checks.append(_c("conjugation identity P(h psi) = h(L psi)", worst <= 1e-5,
                     max_relative_residual=worst))

    def g_fn(x):
        return x**ext.a * eval_phi(2, x, ext.params) * math.sqrt(2.0)

    c_u = solve_coefficients(ext, g_fn, 12, shift=0.0)

    def u_fn(x):
        return x**ext.a * synthesize_values(c_u, x)

    resid = apply_power_law(prob, u_fn, window) - g_fn(window)
    rel = float(np.max(np.abs(resid)) / np.max(np.abs(g_fn(window))))
    checks.append(_c("solve residual (P - 0)u = g", rel <= 1e-5,
                     max_relative_residual=rel))
    return {
        "suite": "halfline",
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }


def run_suite(
    name: str,
    params: Optional[SigmaParams] = None,
    trials: int = 50,
    seed: int = 0,
) -> dict:
    if name == "algebra":
        return algebra_suite(seed=seed)
    if name == "embeddings":
        return embeddings_suite(trials=trials, seed=seed)
    if name == "decay":
        return decay_suite(params or SigmaParams(0.0, 1.0))
    if name == "halfline":
        return halfline_suite(seed=seed, s=(params.s if params else 1.0))
    if name == "all":
        reports = [
            algebra_suite(seed=seed),
            embeddings_suite(trials=trials, seed=seed),
            decay_suite(params or SigmaParams(0.0, 1.0)),
            halfline_suite(seed=seed, s=(params.s if params else 1.0)),
        ]
        return {
            "suite": "all",
            "reports": reports,
            "all_passed": all(r["all_passed"] for r in reports),
        }
    raise ValueError(f"unknown suite {name!r}")
