"""scikit-learn adapter around the spectral transform.

The transform pair (sample values at quadrature nodes) <-> (eigen-expansion
coefficients) is a fixed linear featurizer, so it slots into sklearn
pipelines: rows of X are functions sampled at `nodes_`, columns of the
transformed matrix are the coefficients c_0 .. c_{n_coeffs-1}.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .basis import phi_matrix
from .params import SigmaParams
from .quadrature import build_rule, default_node_count


class HermiteCoefficientTransform(BaseEstimator, TransformerMixin):
    """Project functions sampled at Gauss nodes onto the generalized Hermite basis.

    Parameters
    ----------
    sigma : float, weight exponent (> -1/2)
    s : float, oscillator scale (> 0)
    n_coeffs : int, number of retained coefficients (truncation order + 1)
    n_nodes : int or None, quadrature size; default max(K + 8, 1.5 K) rounded
        even for sigma < 0

    After `fit`, sample the inputs at `nodes_`: `transform` integrates them
    against the basis, `inverse_transform` synthesizes node values back.  The
    round trip is the identity on functions band-limited to n_coeffs modes.
    """

    def __init__(self, sigma: float = 0.0, s: float = 1.0, n_coeffs: int = 33, n_nodes=None):
        self.sigma = sigma
        self.s = s
        self.n_coeffs = n_coeffs
        self.n_nodes = n_nodes

    def fit(self, X=None, y=None):
        if int(self.n_coeffs) < 1:
            raise ValueError("n_coeffs must be at least 1")
        params = SigmaParams(float(self.sigma), float(self.s))
        order = int(self.n_coeffs) - 1
        n = int(self.n_nodes) if self.n_nodes else default_node_count(order, params)
        self.params_ = params
        self.rule_ = build_rule(n, params)
        self.nodes_ = self.rule_.nodes
        self.basis_ = phi_matrix(order, self.nodes_, params)
        self.n_features_in_ = self.nodes_.size
        if X is not None:
            self._validate_samples(X)
        return self

    def _validate_samples(self, X) -> np.ndarray:
        X = check_array(X, dtype=float, ensure_2d=False)
        if X.ndim == 1:
            X = X[np.newaxis, :]
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} columns but the rule has "
                f"{self.n_features_in_} nodes; sample at `nodes_`"
            )
        return X

    def transform(self, X) -> np.ndarray:
        """(n_samples, n_nodes) values at `nodes_` -> (n_samples, n_coeffs)."""
        check_is_fitted(self, "rule_")
        X = self._validate_samples(X)
        return (X * self.rule_.scaled_weights) @ self.basis_.T

    def inverse_transform(self, C) -> np.ndarray:
        """(n_samples, n_coeffs) -> synthesized values at `nodes_`."""
        check_is_fitted(self, "rule_")
        C = check_array(C, dtype=float, ensure_2d=False)
        if C.ndim == 1:
            C = C[np.newaxis, :]
        if C.shape[1] != self.basis_.shape[0]:
            raise ValueError(
                f"C has {C.shape[1]} columns but the basis holds "
                f"{self.basis_.shape[0]} modes"
            )
        return C @ self.basis_
