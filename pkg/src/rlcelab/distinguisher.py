"""Square-of-shortened-code distinguisher for RLCE public codes.

For an RLCE public code ``C`` and a shortening set ``L``,

    dim Sh_L(C)^2 <= min(n + w - |L|, 2 (k + w - |L|) - 1)

whereas a random code of the same shape typically reaches
``min(n + w - |L|, binom(k - |L| + 1, 2))``.  The two differ exactly when
``|L|`` lies in ``[ell_min, ell_max]``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, isqrt
from typing import Sequence

import numpy as np

from .codes import LinearCode
from .errors import NotDistinguishable
from .rlce import RlceParams, rng_from_seed


def theorem_bound(params: RlceParams, ell: int) -> int:
    """Upper bound on ``dim Sh_L(C)^2`` for ``|L| = ell``, clamped at zero."""
    n, k, w = params.n, params.k, params.w
    return max(0, min(n + w - ell, 2 * (k + w - ell) - 1))


def random_baseline(length: int, dimension: int) -> int:
    """Typical square dimension of a random ``[length, dimension]`` code."""
    if dimension <= 0:
        return 0
    return min(length, comb(dimension + 1, 2))


@dataclass(frozen=True)
class DistinguisherInterval:
    ell_min: int
    ell_max: int
    params: RlceParams

    def __contains__(self, ell: int) -> bool:
        return self.ell_min <= ell <= self.ell_max

    def default_size(self) -> int:
        """Middle of the interval, kept strictly below ``ell_max`` when possible."""
        ell = (self.ell_min + self.ell_max) // 2
        if ell >= self.ell_max and self.ell_max > self.ell_min:
            ell = self.ell_max - 1
        return ell

    def __iter__(self):
        return iter((self.ell_min, self.ell_max))


def interval_bounds(params: RlceParams) -> tuple[int, int]:
    """``(ell_min, ell_max)``; empty when ``ell_min > ell_max``.

    ``ell_max = ceil(k - (3 + sqrt(16w + 1)) / 2 - 1)`` evaluated exactly:
    with ``s = isqrt(16w + 1)`` it equals ``k - 1 - (3 + s) // 2`` whether or
    not ``16w + 1`` is a perfect square.
    """
    n, k, w = params.n, params.k, params.w
    ell_min = max(0, w + 2 * k - n)
    ell_max = k - 1 - (3 + isqrt(16 * w + 1)) // 2
    return ell_min, ell_max


def interval(params: RlceParams) -> DistinguisherInterval:
    ell_min, ell_max = interval_bounds(params)
    if ell_min > ell_max:
        raise NotDistinguishable(
            f"empty shortening interval for n={params.n}, k={params.k}, w={params.w} "
            f"(ell_min={ell_min} > ell_max={ell_max})"
        )
    return DistinguisherInterval(ell_min, ell_max, params)


@dataclass(frozen=True)
class ShorteningReport:
    L: tuple[int, ...]
    observed_dim: int
    theorem_bound: int
    random_baseline: int
    distinguished: bool

    @property
    def size(self) -> int:
        return len(self.L)

    def as_row(self) -> dict:
        return {
            "size": self.size,
            "observed_dim": self.observed_dim,
            "theorem_bound": self.theorem_bound,
            "random_baseline": self.random_baseline,
            "distinguished": self.distinguished,
        }


def shortened_square_dim(C: LinearCode, L: Sequence[int], params: RlceParams) -> ShorteningReport:
    L = tuple(sorted(int(i) for i in L))
    observed = C.shorten(L).square_dim()
    ell = len(L)
    baseline = random_baseline(C.length - ell, params.k - ell)
    return ShorteningReport(L, observed, theorem_bound(params, ell), baseline, observed < baseline)


def sample_shortening(labels: Sequence[int], size: int, rng: np.random.Generator) -> tuple[int, ...]:
    chosen = rng.choice(np.asarray(labels), size=size, replace=False)
    return tuple(sorted(int(i) for i in chosen))


@dataclass(frozen=True)
class Verdict:
    rlce_like: bool
    reports: tuple[ShorteningReport, ...]

    @property
    def votes(self) -> int:
        return sum(r.distinguished for r in self.reports)


def is_rlce_like(
    C: LinearCode,
    params: RlceParams,
    trials: int = 5,
    seed=b"",
    size: int | None = None,
    threads: int = 1,
) -> Verdict:
    """Majority vote of ``trials`` random shortenings of size ``size``."""
    iv = interval(params)
    size = iv.default_size() if size is None else size
    rng = rng_from_seed(seed, "distinguish")
    sets = [sample_shortening(C.labels, size, rng) for _ in range(trials)]

    def run(L):
        return shortened_square_dim(C, L, params)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = tuple(pool.map(run, sets))
    else:
        reports = tuple(run(L) for L in sets)
    votes = sum(r.distinguished for r in reports)
    return Verdict(2 * votes > trials, reports)
