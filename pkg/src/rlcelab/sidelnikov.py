"""Sidelnikov-Shestakov recovery of a GRS support and multiplier from a generator matrix.

Let ``E = [I_k | R]`` be the systematic generator of ``GRS_k(a, b)``.  Row
``i`` is the codeword of ``f_i = kappa_i * prod_{l < k, l != i} (X - a_l)``,
so for a non-pivot column ``p``

    E[i, p] / E[i', p] = (kappa_i / kappa_i') * (a_p - a_i') / (a_p - a_i).

The support is only defined up to a fractional-linear map, which is pinned
by setting ``a_0 = 0``, ``a_1 = 1`` and ``a_k = t``.  A choice of ``t`` that
sends some point to infinity is rejected and the next value is tried.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .codes import LinearCode
from .errors import InvalidSupport, NotGRS
from .gf import GF
from .grs import GrsParams, grs_generator


def _support(F: GF, E: np.ndarray, t: int) -> np.ndarray | None:
    k, N = E.shape
    a = np.zeros(N, dtype=np.int64)
    a[1], a[k] = 1, t
    rho = F.divide(E[0, k:], E[1, k:])
    kappa = F.div(F.mul(int(rho[0]), t), t ^ 1)
    den = kappa ^ rho[1:]
    if np.any(den == 0):
        return None
    a[k + 1 :] = F.divide(kappa, den)
    if k > 2:
        rows = np.arange(2, k)
        s0 = F.divide(E[0, k], E[rows, k])
        s1 = F.divide(E[0, k + 1], E[rows, k + 1])
        R = F.divide(F.multiply(s0, a[k]), F.multiply(s1, a[k + 1]))
        den = R ^ 1
        if np.any(den == 0):
            return None
        a[rows] = F.divide(F.multiply(R, a[k + 1]) ^ a[k], den)
    if np.unique(a).size != N:
        return None
    return a


def _multipliers(F: GF, E: np.ndarray, a: np.ndarray) -> np.ndarray:
    k, N = E.shape
    b = np.zeros(N, dtype=np.int64)
    piv = a[:k]
    # f_0 = prod_{l=1}^{k-1} (X - a_l) with kappa_0 = 1 fixes the global scale
    f0 = F.prod(a[k:, None] ^ piv[None, 1:], axis=1)
    b[k:] = F.divide(E[0, k:], f0)
    diff = piv[:, None] ^ piv[None, :]
    np.fill_diagonal(diff, 1)
    at_own = F.prod(diff, axis=1)  # prod_{l != i} (a_i - a_l)
    at_k = F.divide(F.prod(a[k] ^ piv), a[k] ^ piv)  # prod_{l != i} (a_k - a_l)
    kappa = F.divide(E[:, k], F.multiply(b[k], at_k))
    b[:k] = F.inverse(F.multiply(kappa, at_own))
    return b


def sidelnikov_shestakov(F: GF, G) -> GrsParams:
    """Support and multiplier ``(a, b)`` with ``GRS_k(a, b)`` equal to the row space of ``G``.

    The output is one representative of the equivalence class; callers
    should compare codes, not parameters.  Raises :class:`NotGRS` when the
    input is not a GRS code.
    """
    B = linalg.row_basis(F, G)
    k, N = B.shape
    if k == 0:
        raise NotGRS("zero code")
    if N < k + 2:
        raise NotGRS(f"need length >= k + 2, got k={k}, length={N}")
    if 2 * k - 1 < N and LinearCode(F, B).square_dim() != 2 * k - 1:
        raise NotGRS("square dimension differs from 2k - 1")
    E, pivots = linalg.rref(F, B)
    if pivots != list(range(k)) or np.any(E[:, k:] == 0):
        raise NotGRS("not an MDS code in systematic form")

    if k == 1:
        params = GrsParams(F, np.arange(N, dtype=np.int64), E[0], 1)
    else:
        a = None
        for t in range(2, F.order):
            a = _support(F, E, t)
            if a is not None:
                break
        if a is None:
            raise NotGRS("no consistent support")
        try:
            params = GrsParams(F, a, _multipliers(F, E, a), k)
        except InvalidSupport as exc:
            raise NotGRS(str(exc)) from None
    if not linalg.same_row_space(F, grs_generator(params), B):
        raise NotGRS("recovered parameters do not generate the code")
    return params
