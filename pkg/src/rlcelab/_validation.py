"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .gf import GF, gf_new


def check_field(m: int, reduction_poly: int | None = None) -> GF:
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= 16:
        raise ValueError(f"m must be an integer in [1, 16], got {m!r}")
    return gf_new(int(m), reduction_poly)


def check_field_matrix(X, F: GF, n_columns: int | None = None, name: str = "X") -> np.ndarray:
    """2-D integer array whose entries are elements of ``F``."""
    X = check_array(X, dtype=np.int64, ensure_2d=True, input_name=name)
    if X.min() < 0 or X.max() >= F.order:
        raise ValueError(f"{name} has entries outside GF(2^{F.m})")
    if n_columns is not None and X.shape[1] != n_columns:
        raise ValueError(f"{name} has {X.shape[1]} columns, expected {n_columns}")
    return X


def check_seed(random_state) -> bytes:
    """Seed bytes for the package's hash-derived generators.

    ``None`` maps to the empty seed so results stay reproducible; integers
    and bytes pass through.  ``np.random.RandomState`` instances contribute
    one draw.
    """
    if random_state is None:
        return b""
    if isinstance(random_state, (bytes, bytearray)):
        return bytes(random_state)
    if isinstance(random_state, (int, np.integer)):
        v = int(random_state)
        return v.to_bytes(max(1, (v.bit_length() + 7) // 8), "big")
    if isinstance(random_state, np.random.RandomState):
        return int(random_state.randint(0, 2**31 - 1)).to_bytes(4, "big")
    raise ValueError(f"cannot use {random_state!r} as a seed")
