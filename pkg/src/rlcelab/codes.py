"""Linear codes and the code operators used by the distinguisher and the attack.

A :class:`LinearCode` carries its generator matrix together with position
labels.  Labels always name positions of the *original* code, so after
puncturing ``{1, 3}`` out of a length-5 code the survivors are still called
``0, 2, 4``-style labels rather than being renumbered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import LengthMismatch, UnknownPosition
from .gf import GF


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A code spanned by the rows of ``generator`` (rows may be dependent)."""

    field: GF
    generator: np.ndarray
    labels: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        G = np.asarray(self.generator, dtype=np.int64)
        if G.ndim != 2:
            raise ValueError("generator must be 2-D")
        object.__setattr__(self, "generator", G)
        labels = tuple(range(G.shape[1])) if self.labels is None else tuple(int(i) for i in self.labels)
        if len(labels) != G.shape[1]:
            raise LengthMismatch(f"{len(labels)} labels for {G.shape[1]} columns")
        if len(set(labels)) != len(labels):
            raise ValueError("position labels must be pairwise distinct")
        object.__setattr__(self, "labels", labels)

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @cached_property
    def _index(self) -> dict[int, int]:
        return {label: col for col, label in enumerate(self.labels)}

    @cached_property
    def basis(self) -> np.ndarray:
        """RREF basis of the code (``dimension`` rows)."""
        return linalg.row_basis(self.field, self.generator)

    @cached_property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def columns(self, positions: Iterable[int]) -> list[int]:
        index = self._index
        try:
            return [index[int(p)] for p in positions]
        except KeyError as exc:
            raise UnknownPosition(f"position {exc.args[0]} not in code labels") from None

    def column(self, position: int) -> np.ndarray:
        return self.generator[:, self.columns([position])[0]]

    def _with(self, generator, labels) -> "LinearCode":
        return LinearCode(self.field, generator, labels)

    # code operators -----------------------------------------------------

    def puncture(self, positions: Iterable[int]) -> "LinearCode":
        drop = set(self.columns(positions))
        keep = [c for c in range(self.length) if c not in drop]
        return self._with(self.generator[:, keep], [self.labels[c] for c in keep])

    def restrict(self, positions: Iterable[int]) -> "LinearCode":
        keep_labels = set(int(p) for p in positions)
        self.columns(keep_labels)
        return self.puncture([p for p in self.labels if p not in keep_labels])

    def shorten(self, positions: Iterable[int]) -> "LinearCode":
        """Puncture at ``positions`` of the subcode vanishing on ``positions``."""
        cols = list(dict.fromkeys(self.columns(positions)))
        if not cols:
            return self
        dropped = set(cols)
        rest = [c for c in range(self.length) if c not in dropped]
        B = self.basis
        if B.shape[0] == 0:
            return self._with(B[:, rest], [self.labels[c] for c in rest])
        # eliminate on the shortened columns first; rows whose pivot lies
        # beyond them vanish on every shortened position
        R, pivots = linalg.row_echelon(self.field, B[:, cols + rest])
        keep = [r for r, p in enumerate(pivots) if p >= len(cols)]
        sub = R[keep][:, len(cols) :]
        return self._with(sub, [self.labels[c] for c in rest])

    def dual(self) -> "LinearCode":
        return self._with(linalg.right_kernel(self.field, self.basis), self.labels)

    def parity_check(self) -> np.ndarray:
        return self.dual().generator

    def permute(self, sigma: Sequence[int]) -> "LinearCode":
        """Code with ``c^sigma_i = c_{sigma(i)}``; labels are reset to ``0..n-1``."""
        return self._with(self.generator[:, list(sigma)], None)

    def relabel(self, labels: Sequence[int]) -> "LinearCode":
        return self._with(self.generator, labels)

    def star(self, other: "LinearCode") -> "LinearCode":
        return star_product(self, other)

    def square(self) -> "LinearCode":
        return star_product(self, self)

    def square_dim(self) -> int:
        return square_dim(self)

    # comparisons --------------------------------------------------------

    def same_code(self, other: "LinearCode") -> bool:
        """Equal as row spaces on the same labelled positions."""
        if set(self.labels) != set(other.labels) or self.length != other.length:
            return False
        B = other.generator[:, other.columns(self.labels)]
        return linalg.same_row_space(self.field, self.generator, B)

    def contains(self, word) -> bool:
        word = np.asarray(word, dtype=np.int64)
        H = self.parity_check()
        return not np.any(linalg.matmul(self.field, H, word)) if H.shape[0] else True

    def __repr__(self) -> str:
        return f"LinearCode(length={self.length}, rows={self.generator.shape[0]}, field={self.field!r})"


def _pairwise_products(F: GF, A: np.ndarray, B: np.ndarray, symmetric: bool) -> np.ndarray:
    n = A.shape[1]
    blocks = []
    if symmetric:
        for i in range(A.shape[0]):
            blocks.append(F.multiply(A[i][None, :], A[i:]))
    else:
        for i in range(A.shape[0]):
            blocks.append(F.multiply(A[i][None, :], B))
    if not blocks:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(blocks)


def star_product(A: LinearCode, B: LinearCode) -> LinearCode:
    """Span of all componentwise products ``a * b`` (Schur product of codes)."""
    if A.field != B.field:
        raise LengthMismatch("codes over different fields")
    if A.labels != B.labels:
        if set(A.labels) != set(B.labels) or A.length != B.length:
            raise LengthMismatch("codes on different positions")
        B = B._with(B.generator[:, B.columns(A.labels)], A.labels)
    symmetric = A is B
    products = _pairwise_products(A.field, A.basis, A.basis if symmetric else B.basis, symmetric)
    return A._with(products, A.labels)


def square_dim(C: LinearCode) -> int:
    """Dimension of the square code from the ``d(d+1)/2`` basis products."""
    if C.dimension == 0:
        return 0
    products = _pairwise_products(C.field, C.basis, C.basis, symmetric=True)
    return linalg.rank(C.field, products)


def puncture(C: LinearCode, positions) -> LinearCode:
    return C.puncture(positions)


def restrict(C: LinearCode, positions) -> LinearCode:
    return C.restrict(positions)


def shorten(C: LinearCode, positions) -> LinearCode:
    return C.shorten(positions)


def dual(C: LinearCode) -> LinearCode:
    return C.dual()


def full_space(F: GF, n: int) -> LinearCode:
    return LinearCode(F, np.eye(n, dtype=np.int64))


def random_code(F: GF, k: int, n: int, rng: np.random.Generator) -> LinearCode:
    return LinearCode(F, F.random(rng, (k, n)))
