"""Arithmetic in binary extension fields GF(2^m), 2 <= m <= 16.

Elements are plain integers in ``[0, 2^m)``; bit ``i`` is the coefficient of
``x^i`` in the polynomial basis.  :class:`GF` holds the reduction polynomial
and the log/antilog tables, and offers both scalar and vectorised (numpy)
operations.  :class:`FieldElement` wraps a single value for operator-style
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContextMismatch, DegreeMismatch, DivisionByZero, ReduciblePolynomial

MIN_DEGREE = 2
MAX_DEGREE = 16

# Any irreducible polynomial works for the scheme; these two are primitive.
DEFAULT_POLYS = {10: 0x409, 11: 0x805}


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division of a GF(2)[x] polynomial by every polynomial of degree <= m/2."""
    m = poly_degree(poly)
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _gf2_mod(poly, f) == 0:
                return False
    return True


def clmul_mod(a: int, b: int, poly: int) -> int:
    """Carry-less shift-and-reduce product of ``a`` and ``b`` modulo ``poly``."""
    m = poly_degree(poly)
    top = 1 << m
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return result


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _clpow(a: int, e: int, poly: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = clmul_mod(result, a, poly)
        a = clmul_mod(a, a, poly)
        e >>= 1
    return result


def default_poly(m: int) -> int:
    """Default reduction polynomial: the table entry, else the smallest primitive one."""
    if m in DEFAULT_POLYS:
        return DEFAULT_POLYS[m]
    order = (1 << m) - 1
    factors = _prime_factors(order)
    for poly in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(poly) and all(_clpow(2, order // p, poly) != 1 for p in factors):
            return poly
    raise AssertionError(f"no primitive polynomial of degree {m}")  # pragma: no cover


class GF:
    """The field GF(2^m) defined by ``reduction_poly`` (bit i = coefficient of x^i).

    Instances are immutable once built; use :func:`gf_new` to share them.

    Multiplication goes through log/antilog tables.  ``log[0]`` is a sentinel
    large enough that any sum involving it lands in the zero tail of ``exp``,
    so vectorised products need no masking.
    """

    def __init__(self, m: int, reduction_poly: int | None = None):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise DegreeMismatch(f"extension degree {m} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
        if reduction_poly is None:
            reduction_poly = default_poly(m)
        reduction_poly = int(reduction_poly)
        if poly_degree(reduction_poly) != m:
            raise DegreeMismatch(
                f"polynomial {reduction_poly:#x} has degree {poly_degree(reduction_poly)}, expected {m}"
            )
        if not is_irreducible(reduction_poly):
            raise ReduciblePolynomial(f"{reduction_poly:#x} is reducible over GF(2)")

        self.m = m
        self.reduction_poly = reduction_poly
        self.order = 1 << m
        self.generator = self._find_generator()
        self._build_tables()

    def _find_generator(self) -> int:
        n = self.order - 1
        factors = _prime_factors(n)
        for g in range(2, self.order):
            if all(_clpow(g, n // p, self.reduction_poly) != 1 for p in factors):
                return g
        return 1  # GF(2) only; unreachable for m >= 2

    def _build_tables(self) -> None:
        n = self.order - 1
        powers = np.empty(n, dtype=np.int64)
        value = 1
        poly, g = self.reduction_poly, self.generator
        top = self.order
        for i in range(n):
            powers[i] = value
            if g == 2:
                value <<= 1
                if value & top:
                    value ^= poly
            else:
                value = clmul_mod(value, g, poly)
        log = np.zeros(self.order, dtype=np.int64)
        log[powers] = np.arange(n, dtype=np.int64)
        log[0] = 2 * n
        exp = np.zeros(4 * n + 1, dtype=np.int64)
        exp[:n] = powers
        exp[n : 2 * n] = powers
        self.log = log
        self.exp = exp
        self.log.setflags(write=False)
        self.exp.setflags(write=False)

    # identity -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF(2^{self.m}, poly={self.reduction_poly:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.m, self.reduction_poly) == (other.m, other.reduction_poly)

    def __hash__(self) -> int:
        return hash((self.m, self.reduction_poly))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(int(value), self)

    # scalar arithmetic --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        n = self.order - 1
        return int(self.exp[(n - self.log[a]) % n])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        n = self.order - 1
        return int(self.exp[(int(self.log[a]) * e) % n])

    # vectorised arithmetic ----------------------------------------------

    def asarray(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise ValueError(f"entries outside [0, {self.order})")
        return arr

    def multiply(self, a, b) -> np.ndarray:
        """Elementwise product with numpy broadcasting."""
        return self.exp[self.log[a] + self.log[b]]

    def outer(self, u, v) -> np.ndarray:
        return self.exp[self.log[u][:, None] + self.log[v][None, :]]

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        n = self.order - 1
        return self.exp[(n - self.log[a]) % n]

    def divide(self, a, b) -> np.ndarray:
        return self.multiply(a, self.inverse(b))

    def power(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = self.order - 1
        out = self.exp[(self.log[a] % n * e) % n]
        zero = a == 0
        if np.any(zero):
            out = np.where(zero, 1 if e == 0 else 0, out)
        return out

    def prod(self, a, axis=None) -> np.ndarray:
        """Product of entries along ``axis`` (computed in the log domain)."""
        a = np.asarray(a, dtype=np.int64)
        n = self.order - 1
        logs = self.log[a] % n
        out = self.exp[logs.sum(axis=axis) % n]
        has_zero = np.any(a == 0, axis=axis)
        return np.where(has_zero, 0, out)

    def dot(self, u, v) -> int:
        return int(np.bitwise_xor.reduce(self.multiply(u, v), axis=None)) if len(u) else 0

    def vandermonde(self, points, k: int) -> np.ndarray:
        """``k x len(points)`` matrix with rows ``points**i``, i = 0..k-1."""
        points = np.asarray(points, dtype=np.int64)
        out = np.empty((k, points.size), dtype=np.int64)
        if k:
            out[0] = 1
        for i in range(1, k):
            out[i] = self.multiply(out[i - 1], points)
        return out

    def random(self, rng: np.random.Generator, shape=None, nonzero: bool = False) -> np.ndarray:
        low = 1 if nonzero else 0
        return rng.integers(low, self.order, size=shape, dtype=np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


@lru_cache(maxsize=None)
def gf_new(m: int, reduction_poly: int | None = None) -> GF:
    """Shared, cached field context."""
    return GF(m, reduction_poly)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: GF

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ContextMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value ^ v, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.mul(self.value, v), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._check(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field.div(self.value, v), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def __neg__(self):
        return self

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value:#x})"
