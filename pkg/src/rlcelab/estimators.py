"""Scikit-learn style front ends for the distinguisher and the key recovery."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_field, check_field_matrix, check_seed
from .attack import full_attack, verify_equivalence
from .codes import LinearCode
from .distinguisher import is_rlce_like
from .rlce import RlceParams, RlcePublicKey, decrypt


class SquareCodeDistinguisher(ClassifierMixin, BaseEstimator):
    """Labels generator matrices as RLCE-like (1) or random (0).

    Each sample passed to :meth:`predict` is one ``k x (n + w)`` generator
    matrix.  Nothing is learned; :meth:`fit` only validates the settings.
    """

    def __init__(self, w=0, m=10, reduction_poly=None, n_trials=5, shortening_size=None,
                 random_state=None, n_jobs=1):
        self.w = w
        self.m = m
        self.reduction_poly = reduction_poly
        self.n_trials = n_trials
        self.shortening_size = shortening_size
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        self.field_ = check_field(self.m, self.reduction_poly)
        if self.n_trials < 1:
            raise ValueError("n_trials must be positive")
        self.classes_ = np.array([0, 1])
        return self

    def _params(self, G: np.ndarray) -> RlceParams:
        k, length = G.shape
        return RlceParams(length - self.w, k, self.w, 0, self.m, self.field_.reduction_poly)

    def decision_function(self, X) -> np.ndarray:
        """Fraction of shortenings that flagged each matrix."""
        check_is_fitted(self, "field_")
        seed = check_seed(self.random_state)
        out = []
        for G in X:
            G = check_field_matrix(G, self.field_, name="generator")
            verdict = is_rlce_like(
                LinearCode(self.field_, G), self._params(G), self.n_trials, seed,
                self.shortening_size, self.n_jobs,
            )
            out.append(verdict.votes / len(verdict.reports))
        return np.array(out)

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) > 0.5).astype(int)


class RLCEKeyRecovery(BaseEstimator):
    """Recovers an equivalent secret key from a public matrix, then decrypts.

    ``fit(G)`` runs the attack on the public generator ``G``;
    ``predict(C)`` decrypts one ciphertext per row of ``C``.
    """

    def __init__(self, w, t=None, m=10, reduction_poly=None, max_shortenings=16, random_state=None):
        self.w = w
        self.t = t
        self.m = m
        self.reduction_poly = reduction_poly
        self.max_shortenings = max_shortenings
        self.random_state = random_state

    def fit(self, X, y=None):
        F = check_field(self.m, self.reduction_poly)
        G = check_field_matrix(X, F, name="public matrix")
        k, length = G.shape
        params = RlceParams(length - self.w, k, self.w, self.t, self.m, F.reduction_poly)
        self.public_key_ = RlcePublicKey(params, G)
        self.recovered_key_ = full_attack(
            self.public_key_, check_seed(self.random_state), self.max_shortenings
        )
        self.pairing_ = self.recovered_key_.pairing
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "recovered_key_")
        p = self.public_key_.params
        C = check_field_matrix(X, p.field, p.length, name="ciphertexts")
        sk = self.recovered_key_.secret_key
        return np.vstack([decrypt(sk, c) for c in C]) if len(C) else np.zeros((0, p.k), np.int64)

    def score(self, X, y) -> float:
        """Fraction of ciphertexts decrypted to exactly the given message."""
        y = np.asarray(y, dtype=np.int64)
        return float(np.mean(np.all(self.predict(X) == y, axis=1)))

    def verify(self, trials=100):
        check_is_fitted(self, "recovered_key_")
        return verify_equivalence(self.public_key_, self.recovered_key_, trials, check_seed(self.random_state))
