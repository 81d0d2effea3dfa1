"""Dense matrix algebra over one binary extension field.

Matrices are 2-D ``np.int64`` arrays whose entries are field elements; the
field is passed explicitly as the first argument.  Addition is XOR, so row
operations reduce to ``row ^= factor * pivot_row``.
"""

from __future__ import annotations

import numpy as np

from .errors import LengthMismatch, NoSolution
from .gf import GF

MatrixGF = np.ndarray


def _echelon(F: GF, M, reduced: bool) -> tuple[np.ndarray, list[int]]:
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = R.shape
    log, exp = F.log, F.exp
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r, c:] = exp[log[R[r, c:]] + log[F.inv(lead)]]
        if reduced:
            targets = np.flatnonzero(R[:, c])
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(R[r + 1 :, c])
        if targets.size:
            pivot_row = log[R[r, c:]]
            R[targets, c:] ^= exp[log[R[targets, c]][:, None] + pivot_row[None, :]]
        pivots.append(c)
        r += 1
    return R, pivots


def rref(F: GF, M) -> tuple[MatrixGF, list[int]]:
    """Reduced row-echelon form and the (strictly increasing) pivot columns."""
    return _echelon(F, M, reduced=True)


def row_echelon(F: GF, M) -> tuple[MatrixGF, list[int]]:
    """Forward elimination only; cheaper than :func:`rref` when only pivots matter."""
    return _echelon(F, M, reduced=False)


def rank(F: GF, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    # eliminate along the shorter side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(row_echelon(F, M)[1])


def row_basis(F: GF, M) -> MatrixGF:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return M.reshape(0, M.shape[1])
    R, pivots = rref(F, M)
    return R[: len(pivots)]


def right_kernel(F: GF, M) -> MatrixGF:
    """Basis (as rows) of ``{v : M v^T = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    if M.shape[0] > cols:
        # squash a tall matrix to its echelon rows before the full reduction
        E, piv = row_echelon(F, M)
        M = E[: len(piv)]
    R, pivots = rref(F, M)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if pivots:
            # characteristic 2: -R[j, f] == R[j, f]
            K[:, pivots] = R[: len(pivots)][:, free].T
    return K


def left_kernel(F: GF, M) -> MatrixGF:
    return right_kernel(F, np.asarray(M).T)


def solve(F: GF, M, b) -> np.ndarray:
    """Some ``x`` with ``M x = b``; ``b`` may be a vector or a matrix of right-hand sides.

    Raises :class:`NoSolution` when the system is inconsistent.
    """
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    B = b[:, None] if vector else b
    if B.shape[0] != M.shape[0]:
        raise LengthMismatch(f"right-hand side has {B.shape[0]} rows, matrix has {M.shape[0]}")
    cols = M.shape[1]
    R, pivots = rref(F, np.hstack([M, B]))
    if pivots and pivots[-1] >= cols:
        raise NoSolution("inconsistent linear system")
    X = np.zeros((cols, B.shape[1]), dtype=np.int64)
    X[pivots] = R[: len(pivots), cols:]
    return X[:, 0] if vector else X


def inverse(F: GF, M) -> MatrixGF:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise LengthMismatch("inverse of a non-square matrix")
    R, pivots = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise NoSolution("singular matrix")
    return R[:, n:]


def matmul(F: GF, A, B) -> MatrixGF:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec_left, vec_right = A.ndim == 1, B.ndim == 1
    A2 = A[None, :] if vec_left else A
    B2 = B[:, None] if vec_right else B
    if A2.shape[1] != B2.shape[0]:
        raise LengthMismatch(f"cannot multiply {A2.shape} by {B2.shape}")
    log, exp = F.log, F.exp
    LA, LB = log[A2], log[B2]
    C = np.zeros((A2.shape[0], B2.shape[1]), dtype=np.int64)
    for t in range(A2.shape[1]):
        C ^= exp[LA[:, t, None] + LB[None, t, :]]
    if vec_left and vec_right:
        return C[0, 0]
    if vec_left:
        return C[0]
    if vec_right:
        return C[:, 0]
    return C


def same_row_space(F: GF, A, B) -> bool:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[1]:
        return False
    RA, RB = row_basis(F, A), row_basis(F, B)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))
