"""The simplified RLCE scheme: key generation, encryption, decryption.

Construction (0-based positions)::

    G0 = GRS generator, columns g_0..g_{n-1}
    G1 = [g_0, ..., g_{n-w-1}, g_{n-w}, r_0, g_{n-w+1}, r_1, ..., g_{n-1}, r_{w-1}]
    A  = diag(I_{n-w}, A_0, ..., A_{w-1}),   A_s = [[a_s, b_s], [c_s, d_s]]
    G  = G1 A P

Column ``i`` of ``G1 A`` lands at public position ``permutation[i]``.  A twin
pair ``s`` therefore occupies public positions ``permutation[n-w+2s]`` and
``permutation[n-w+2s+1]`` with entries ``a_s g + c_s r`` and ``b_s g + d_s r``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import linalg
from .errors import DecodeFailure, DecryptFailure, InvalidParams
from .gf import GF, gf_new
from .grs import GrsParams, grs_decode, grs_generator, pad


@dataclass(frozen=True)
class RlceParams:
    n: int
    k: int
    w: int
    t: int | None = None
    m: int = 10
    reduction_poly: int | None = None

    def __post_init__(self):
        for name in ("n", "k", "w", "m"):
            if int(getattr(self, name)) != getattr(self, name) or getattr(self, name) < 0:
                raise InvalidParams(f"{name} must be a non-negative integer")
        if self.t is None:
            object.__setattr__(self, "t", (self.n - self.k) // 2)
        if not 1 <= self.k < self.n:
            raise InvalidParams(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.w > self.n:
            raise InvalidParams(f"w={self.w} exceeds n={self.n}")
        if not 0 <= self.t <= (self.n - self.k) // 2:
            raise InvalidParams(f"t={self.t} outside [0, {(self.n - self.k) // 2}]")
        if self.n > 1 << self.m:
            raise InvalidParams(f"n={self.n} exceeds q=2^{self.m}")
        if self.reduction_poly is None:
            object.__setattr__(self, "reduction_poly", self.field.reduction_poly)

    @property
    def field(self) -> GF:
        return gf_new(self.m, self.reduction_poly)

    @property
    def length(self) -> int:
        return self.n + self.w

    def with_t(self, t: int) -> "RlceParams":
        return RlceParams(self.n, self.k, self.w, t, self.m, self.reduction_poly)


#: Parameter sets of the RLCE-KEM submission; odd IDs have w < n - k, even IDs w = n - k.
PRESETS: dict[str, RlceParams] = {
    "id0": RlceParams(n=630, k=470, w=160, t=80, m=10),
    "id1": RlceParams(n=532, k=376, w=96, t=78, m=10),
    "id2": RlceParams(n=1000, k=764, w=236, t=118, m=10),
    "id3": RlceParams(n=846, k=618, w=144, t=114, m=10),
    "id4": RlceParams(n=1360, k=800, w=560, t=280, m=11),
    "id5": RlceParams(n=1160, k=700, w=311, t=230, m=11),
}

#: Small parameters used for fast end-to-end experiments.
DESK = RlceParams(n=60, k=30, w=12, t=15, m=10)


@dataclass(frozen=True)
class TwinMixer:
    a: int
    b: int
    c: int
    d: int

    def det(self, F: GF) -> int:
        return F.mul(self.a, self.d) ^ F.mul(self.b, self.c)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def degenerate(self) -> bool:
        return self.c == 0 or self.d == 0


@dataclass(frozen=True, eq=False)
class RlcePublicKey:
    params: RlceParams
    G: np.ndarray

    @property
    def field(self) -> GF:
        return self.params.field


@dataclass(frozen=True, eq=False)
class RlceSecretKey:
    """``(x, y, A, P)`` plus the random columns that complete ``G1``.

    ``message_map`` is ``None`` for keys made by :func:`keygen`.  Equivalent
    keys recovered by the attack generate the public code through a
    different basis; their ``message_map`` turns the decoded polynomial
    coefficients back into the message for the public matrix.
    """

    params: RlceParams
    x: np.ndarray
    y: np.ndarray
    mixers: tuple[TwinMixer, ...]
    permutation: np.ndarray
    random_columns: np.ndarray
    seed: bytes = b""
    message_map: np.ndarray | None = None

    @property
    def field(self) -> GF:
        return self.params.field

    @cached_property
    def grs(self) -> GrsParams:
        return GrsParams(self.field, self.x, self.y, self.params.k)

    @cached_property
    def inverse_permutation(self) -> np.ndarray:
        inv = np.empty_like(self.permutation)
        inv[self.permutation] = np.arange(self.permutation.size)
        return inv

    def pair_positions(self, s: int) -> tuple[int, int]:
        base = self.params.n - self.params.w + 2 * s
        return int(self.permutation[base]), int(self.permutation[base + 1])

    def public_key(self) -> RlcePublicKey:
        return RlcePublicKey(self.params, build_public_matrix(self))


# randomness ---------------------------------------------------------------

_STREAMS = ("support", "multiplier", "columns", "mixers", "permutation")


def seed_bytes(seed) -> bytes:
    """Accept bytes, a hex string or an integer as a seed."""
    if seed is None:
        return b""
    if isinstance(seed, (bytes, bytearray)):
        return bytes(seed)
    if isinstance(seed, str):
        s = seed[2:] if seed.lower().startswith("0x") else seed
        if len(s) % 2:
            s = "0" + s
        return bytes.fromhex(s)
    if isinstance(seed, (int, np.integer)):
        seed = int(seed)
        return seed.to_bytes(max(1, (seed.bit_length() + 7) // 8), "big")
    raise TypeError(f"unsupported seed type {type(seed).__name__}")


def rng_from_seed(seed, *labels: str) -> np.random.Generator:
    """Deterministic generator for ``seed`` and a domain-separation label path."""
    h = hashlib.sha256(seed_bytes(seed))
    for label in labels:
        h.update(b"/" + label.encode())
    return np.random.default_rng(int.from_bytes(h.digest(), "big"))


def _key_streams(seed: bytes) -> dict[str, np.random.Generator]:
    return {name: rng_from_seed(seed, "keygen", name) for name in _STREAMS}


def _sample_mixer(F: GF, rng, nondegenerate: bool, zero: str | None) -> TwinMixer:
    while True:
        a, b, c, d = (int(v) for v in F.random(rng, 4))
        if zero == "c":
            c = 0
        elif zero == "d":
            d = 0
        mixer = TwinMixer(a, b, c, d)
        if mixer.det(F) == 0:
            continue
        if nondegenerate and zero is None and mixer.degenerate:
            continue
        return mixer


# key generation -----------------------------------------------------------


def build_public_matrix(sk: RlceSecretKey) -> np.ndarray:
    """``G1 A P`` for a secret key (monomial basis rows)."""
    p = sk.params
    F = sk.field
    n, w = p.n, p.w
    G0 = grs_generator(sk.grs)
    G1A = np.empty((p.k, n + w), dtype=np.int64)
    G1A[:, : n - w] = G0[:, : n - w]
    for s, mx in enumerate(sk.mixers):
        g = G0[:, n - w + s]
        r = sk.random_columns[:, s]
        G1A[:, n - w + 2 * s] = F.multiply(mx.a, g) ^ F.multiply(mx.c, r)
        G1A[:, n - w + 2 * s + 1] = F.multiply(mx.b, g) ^ F.multiply(mx.d, r)
    G = np.empty_like(G1A)
    G[:, sk.permutation] = G1A
    return G


def keygen(
    params: RlceParams,
    seed=b"",
    force_nondegenerate: bool = True,
    force_zero: Mapping[int, str] | None = None,
) -> tuple[RlcePublicKey, RlceSecretKey]:
    """Seeded key generation.

    ``force_nondegenerate`` resamples any mixer with ``c_s d_s = 0``.
    ``force_zero`` maps pair indices to ``"c"`` or ``"d"`` to plant a
    degenerate pair with that entry set to zero (test hook).
    """
    F = params.field
    n, k, w = params.n, params.k, params.w
    force_zero = dict(force_zero or {})
    for s, which in force_zero.items():
        if not 0 <= s < w or which not in ("c", "d"):
            raise InvalidParams(f"bad force_zero entry {s!r}: {which!r}")
    seed = seed_bytes(seed)
    streams = _key_streams(seed)

    x = streams["support"].choice(F.order, size=n, replace=False).astype(np.int64)
    y = F.random(streams["multiplier"], n, nonzero=True)
    R = F.random(streams["columns"], (k, w))
    mixers = tuple(
        _sample_mixer(F, streams["mixers"], force_nondegenerate, force_zero.get(s)) for s in range(w)
    )
    perm = streams["permutation"].permutation(n + w).astype(np.int64)

    sk = RlceSecretKey(params, x, y, mixers, perm, R, seed)
    return sk.public_key(), sk


# encryption / decryption ----------------------------------------------------


def random_message(params: RlceParams, rng: np.random.Generator) -> np.ndarray:
    return params.field.random(rng, params.k)


def random_error(params: RlceParams, rng: np.random.Generator, weight: int | None = None) -> np.ndarray:
    weight = params.t if weight is None else weight
    e = np.zeros(params.length, dtype=np.int64)
    support = rng.choice(params.length, size=weight, replace=False)
    e[support] = params.field.random(rng, weight, nonzero=True)
    return e


def encrypt(pk: RlcePublicKey, msg, seed=b"", weight: int | None = None) -> np.ndarray:
    """``c = m G + e`` with ``wt(e) = t`` (or ``weight``) drawn from ``seed``."""
    F = pk.field
    msg = F.asarray(msg)
    if msg.shape != (pk.params.k,):
        raise ValueError(f"message must have {pk.params.k} symbols")
    e = random_error(pk.params, rng_from_seed(seed, "encrypt"), weight)
    return linalg.matmul(F, msg, pk.G) ^ e


def unmix(sk: RlceSecretKey, c) -> np.ndarray:
    """The ``n`` GRS coordinates of a received word (undo ``P``, then each ``A_s``)."""
    F = sk.field
    n, w = sk.params.n, sk.params.w
    c = F.asarray(c)
    cc = c[sk.permutation]
    out = np.empty(n, dtype=np.int64)
    out[: n - w] = cc[: n - w]
    for s, mx in enumerate(sk.mixers):
        u1, u2 = int(cc[n - w + 2 * s]), int(cc[n - w + 2 * s + 1])
        # [u1 u2] = [g r] A_s  =>  g = (d u1 + c u2) / det   (characteristic 2)
        num = F.mul(mx.d, u1) ^ F.mul(mx.c, u2)
        out[n - w + s] = F.div(num, mx.det(F))
    return out


def decrypt(sk: RlceSecretKey, c) -> np.ndarray:
    coords = unmix(sk, c)
    try:
        f, _ = grs_decode(sk.grs, coords, sk.params.t)
    except DecodeFailure as exc:
        raise DecryptFailure(str(exc)) from exc
    f = pad(f, sk.params.k)
    if sk.message_map is not None:
        f = linalg.matmul(sk.field, f, sk.message_map)
    return f


# ground truth -------------------------------------------------------------


@dataclass(frozen=True)
class PositionClassification:
    """Partition of the public positions into the four kinds plus the twin map."""

    grs1: frozenset[int]
    grs2: frozenset[int]
    random: frozenset[int]
    pseudo_random: frozenset[int]
    twin: Mapping[int, int] = field(repr=False)
    grs_index: Mapping[int, int] = field(repr=False)

    @property
    def grs(self) -> frozenset[int]:
        return self.grs1 | self.grs2

    @property
    def twins(self) -> frozenset[int]:
        return frozenset(self.twin)

    def pr_pairs(self) -> set[frozenset[int]]:
        return {frozenset((i, self.twin[i])) for i in self.pseudo_random}


def classify_positions(sk: RlceSecretKey) -> PositionClassification:
    n, w = sk.params.n, sk.params.w
    perm = sk.permutation
    grs1 = frozenset(int(perm[i]) for i in range(n - w))
    grs2, rand, pr = set(), set(), set()
    twin, grs_index = {}, {}
    for i in range(n - w):
        grs_index[int(perm[i])] = i
    for s, mx in enumerate(sk.mixers):
        first, second = sk.pair_positions(s)
        twin[first], twin[second] = second, first
        grs_index[first] = grs_index[second] = n - w + s
        if mx.c != 0 and mx.d != 0:
            pr.update((first, second))
        if mx.c == 0:
            grs2.add(first)
            rand.add(second)
        if mx.d == 0:
            grs2.add(second)
            rand.add(first)
    return PositionClassification(
        grs1, frozenset(grs2), frozenset(rand), frozenset(pr), twin, grs_index
    )
