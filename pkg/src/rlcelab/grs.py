"""Generalised Reed-Solomon codes: construction, encoding, interpolation, decoding.

Polynomials are coefficient vectors, lowest degree first.  The GRS code with
support ``x``, multiplier ``y`` and dimension ``k`` is
``{(y_1 f(x_1), ..., y_n f(x_n)) : deg f < k}``; its canonical generator has
rows ``y * x**i`` so that encoding a message is evaluating the polynomial
whose coefficients are the message symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    DecodeFailure,
    DegreeTooLarge,
    Inconsistent,
    InvalidSupport,
    NoSolution,
    ZeroMultiplier,
)
from .gf import GF


# polynomial helpers -----------------------------------------------------


def poly_trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    return f[: nz[-1] + 1] if nz.size else f[:0]


def poly_degree(f) -> int:
    """Degree of ``f``; ``-1`` for the zero polynomial."""
    return poly_trim(f).size - 1


def poly_eval(F: GF, f, points) -> np.ndarray:
    """Horner evaluation of one polynomial (1-D) or a stack of them (2-D, one per row)."""
    f = np.asarray(f, dtype=np.int64)
    points = np.asarray(points, dtype=np.int64)
    if f.ndim == 1:
        acc = np.zeros(points.shape, dtype=np.int64)
        for c in f[::-1]:
            acc = F.multiply(acc, points) ^ c
        return acc
    acc = np.zeros((f.shape[0],) + points.shape, dtype=np.int64)
    for j in range(f.shape[1] - 1, -1, -1):
        acc = F.multiply(acc, points) ^ f[:, j].reshape((-1,) + (1,) * points.ndim)
    return acc


def poly_mul(F: GF, f, g) -> np.ndarray:
    f, g = poly_trim(f), poly_trim(g)
    if not f.size or not g.size:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(f.size + g.size - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            out[i : i + g.size] ^= F.multiply(c, g)
    return out


def poly_divmod(F: GF, f, g) -> tuple[np.ndarray, np.ndarray]:
    f, g = poly_trim(f).copy(), poly_trim(g)
    if not g.size:
        raise ZeroDivisionError("polynomial division by zero")
    dg = g.size - 1
    if f.size - 1 < dg:
        return np.zeros(0, dtype=np.int64), f
    inv_lead = F.inv(int(g[-1]))
    q = np.zeros(f.size - dg, dtype=np.int64)
    for i in range(f.size - 1, dg - 1, -1):
        coef = f[i]
        if coef:
            c = F.mul(int(coef), inv_lead)
            q[i - dg] = c
            f[i - dg : i + 1] ^= F.multiply(c, g)
    return poly_trim(q), poly_trim(f[:dg])


def pad(f, length: int) -> np.ndarray:
    f = poly_trim(f)
    if f.size > length:
        raise DegreeTooLarge(f"degree {f.size - 1} does not fit in {length} coefficients")
    out = np.zeros(length, dtype=np.int64)
    out[: f.size] = f
    return out


# GRS codes --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GrsParams:
    field: GF
    x: np.ndarray
    y: np.ndarray
    k: int

    def __post_init__(self):
        x = self.field.asarray(self.x).ravel()
        y = self.field.asarray(self.y).ravel()
        if x.size != y.size:
            raise InvalidSupport(f"support has {x.size} points, multiplier {y.size}")
        if np.unique(x).size != x.size:
            raise InvalidSupport("support entries are not pairwise distinct")
        if np.any(y == 0):
            raise ZeroMultiplier("multiplier has a zero entry")
        if not 1 <= self.k <= x.size <= self.field.order:
            raise InvalidSupport(f"need 1 <= k <= n <= q, got k={self.k}, n={x.size}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return self.x.size

    def subset(self, positions) -> "GrsParams":
        positions = np.asarray(positions, dtype=np.int64)
        return GrsParams(self.field, self.x[positions], self.y[positions], self.k)

    def __repr__(self) -> str:
        return f"GrsParams(n={self.n}, k={self.k}, field={self.field!r})"


def grs_generator(p: GrsParams) -> np.ndarray:
    """``k x n`` generator with rows ``y * x**i``."""
    return p.field.multiply(p.field.vandermonde(p.x, p.k), p.y[None, :])


def grs_encode(p: GrsParams, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    if poly_degree(f) >= p.k:
        raise DegreeTooLarge(f"deg f = {poly_degree(f)} >= k = {p.k}")
    return p.field.multiply(p.y, poly_eval(p.field, f, p.x))


def grs_interpolate(p: GrsParams, values, positions=None) -> np.ndarray:
    """The polynomial(s) of degree < k whose GRS evaluation matches ``values``.

    ``positions`` indexes the support entries the values belong to (all of
    them by default).  ``values`` may be 2-D with one word per row, in which
    case one coefficient vector per row is returned.
    """
    F = p.field
    values = np.asarray(values, dtype=np.int64)
    positions = np.arange(p.n) if positions is None else np.asarray(positions, dtype=np.int64)
    if values.shape[-1] != positions.size:
        raise ValueError(f"{values.shape[-1]} values for {positions.size} positions")
    if positions.size < p.k:
        raise ValueError(f"need at least k={p.k} positions, got {positions.size}")
    V = F.vandermonde(p.x[positions], p.k).T
    rhs = F.divide(values, p.y[positions])
    try:
        coeffs = linalg.solve(F, V, rhs.T)
    except NoSolution:
        raise Inconsistent("values are not the evaluation of a polynomial of degree < k") from None
    return coeffs.T


class DecodeResult(NamedTuple):
    poly: np.ndarray
    error_positions: tuple[int, ...]


def grs_decode(p: GrsParams, r, t: int) -> DecodeResult:
    """Berlekamp-Welch decoding up to ``t`` errors.

    Solves ``N(x_i) = (r_i / y_i) E(x_i)`` with ``E`` monic of degree ``t`` and
    ``deg N < k + t`` as one linear system, then divides.
    """
    F = p.field
    n, k = p.n, p.k
    if t < 0 or 2 * t > n - k:
        raise ValueError(f"t={t} exceeds the unique-decoding radius {(n - k) // 2}")
    r = F.asarray(r)
    if r.size != n:
        raise ValueError(f"received word has length {r.size}, expected {n}")
    rr = F.divide(r, p.y)
    V = F.vandermonde(p.x, k + t + 1)  # rows x**i
    A = np.hstack([V[: k + t].T, F.multiply(rr[:, None], V[:t].T)])
    rhs = F.multiply(rr, V[t])
    try:
        sol = linalg.solve(F, A, rhs)
    except NoSolution:
        raise DecodeFailure("no error locator of degree t") from None
    N = sol[: k + t]
    E = np.concatenate([sol[k + t :], [1]])
    f, rem = poly_divmod(F, N, E)
    if poly_trim(rem).size or f.size > k:
        raise DecodeFailure("error locator does not divide the numerator")
    f = pad(f, k)
    errors = np.flatnonzero(grs_encode(p, f) != r)
    if errors.size > t:
        raise DecodeFailure(f"closest candidate is {errors.size} > t={t} errors away")
    return DecodeResult(f, tuple(int(e) for e in errors))


def reparameterize(p: GrsParams, alpha: int, beta: int, gamma: int, delta: int) -> GrsParams:
    """Same code under the support map ``x -> (alpha x + beta) / (gamma x + delta)``.

    ``GRS_k(x, y) = GRS_k(phi(x), y * (gamma x + delta)**(k-1))``.
    """
    F = p.field
    if F.mul(alpha, delta) ^ F.mul(beta, gamma) == 0:
        raise ValueError("singular fractional-linear map")
    den = F.multiply(gamma, p.x) ^ delta
    if np.any(den == 0):
        raise InvalidSupport("a support point maps to infinity")
    x_new = F.divide(F.multiply(alpha, p.x) ^ beta, den)
    y_new = F.multiply(p.y, F.power(den, p.k - 1))
    return GrsParams(F, x_new, y_new, p.k)


def random_grs(F: GF, n: int, k: int, rng: np.random.Generator) -> GrsParams:
    """Uniform distinct support and uniform nonzero multiplier."""
    x = rng.choice(F.order, size=n, replace=False).astype(np.int64)
    y = F.random(rng, n, nonzero=True)
    return GrsParams(F, x, y, k)
