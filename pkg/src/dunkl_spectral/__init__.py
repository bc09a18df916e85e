"""Spectral toolkit for the Dunkl harmonic oscillator on the line.

Evaluate the generalized Hermite eigenbasis, move functions between point
samples and eigen-coefficients, act with the ladder/oscillator algebra
exactly in coefficient space, compute perturbed Schwartz and Sobolev norms,
exercise the embedding inequalities empirically, and solve the associated
half-line operators with their self-adjoint extensions.

Submodules are imported lazily so the command-line thread cap can take
effect before numpy loads.
"""

__version__ = "0.1.0"

_EXPORTS = {
    "SigmaParams": "params",
    "Parity": "params",
    "perturbed_factorial": "params",
    "perturbed_factorial_ratio": "params",
    "sigma_action": "params",
    "GridFunction": "basis",
    "eval_p": "basis",
    "eval_phi": "basis",
    "eval_xi": "basis",
    "turning_point": "basis",
    "phi_matrix": "basis",
    "QuadratureRule": "quadrature",
    "CoeffVector": "quadrature",
    "build_rule": "quadrature",
    "analyze": "quadrature",
    "synthesize": "quadrature",
    "synthesize_values": "quadrature",
    "OperatorKind": "operators",
    "CoeffOperator": "operators",
    "apply_B": "operators",
    "apply_Bprime": "operators",
    "apply_L": "operators",
    "apply_Sigma": "operators",
    "apply_T": "operators",
    "apply_T_pointwise": "operators",
    "apply_Xi": "operators",
    "apply_x": "operators",
    "apply_derivative": "operators",
    "operator_matrix": "operators",
    "SeminormFamily": "norms",
    "SeminormSpec": "norms",
    "EmbeddingReport": "norms",
    "sobolev_norm": "norms",
    "seq_norm": "norms",
    "schwartz_seminorm": "norms",
    "embedding_harness": "norms",
    "decay_check": "norms",
    "standard_grid": "norms",
    "PowerLawProblem": "halfline",
    "HalfLineExtension": "halfline",
    "GeneralProblem": "halfline",
    "extensions": "halfline",
    "eigenpair": "halfline",
    "solve": "halfline",
    "validate_general": "halfline",
    "HermiteCoefficientTransform": "transformer",
}


def __getattr__(name):
    if name in _EXPORTS:
        import importlib

        module = importlib.import_module(f".{_EXPORTS[name]}", __name__)
        return getattr(module, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(list(globals()) + list(_EXPORTS))
