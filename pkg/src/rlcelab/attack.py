"""Polynomial-time key recovery for RLCE parameters with a nonempty shortening interval.

Pipeline:

1. shorten the public code at a random ``L`` of mid-interval size and read
   the twin positions off the zero columns of a parity-check matrix of the
   squared shortened code;
2. pair them up by shortening one more position and watching which other
   zero column disappears; resample ``L`` until all ``w`` pairs are known;
3. repair degenerate pairs (one GRS member, one random member) by mixing a
   GRS column into the lone random position;
4. run Sidelnikov-Shestakov on the remaining GRS positions;
5. per pair, recover the hidden evaluation point, the mixer determinant and
   the mixer itself, then assemble an equivalent secret key.

Pairs are stored as ordered tuples ``(first, second)``: recovery writes the
``first`` column as ``a f(x_j) + c psi`` and the ``second`` one as
``b f(x_j) + psi`` with ``psi`` absorbing the ``d`` coefficient.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .codes import LinearCode
from .distinguisher import interval, sample_shortening
from .errors import (
    AmbiguousTwin,
    AttackFailed,
    BudgetExceeded,
    DecryptFailure,
    DegeneratePair,
    Inconsistent,
    InconsistentPair,
    IntervalViolation,
    InvalidSupport,
    NoSolution,
    NotExposed,
    PointAtInfinity,
    RepairFailed,
)
from .grs import GrsParams, grs_interpolate, poly_eval, reparameterize
from .rlce import (
    RlceParams,
    RlcePublicKey,
    RlceSecretKey,
    TwinMixer,
    build_public_matrix,
    decrypt,
    encrypt,
    random_message,
    rng_from_seed,
    seed_bytes,
)
from .sidelnikov import sidelnikov_shestakov

REPAIR = "appendix-repair"


# twin identification ------------------------------------------------------


@dataclass(frozen=True)
class TwinPairing:
    pairs: tuple[tuple[int, int], ...]
    discovered_by: tuple[str, ...]
    unmatched: tuple[int, ...] = ()

    def __post_init__(self):
        seen = [p for pair in self.pairs for p in pair]
        if len(seen) != len(set(seen)):
            raise ValueError("twin pairs overlap")

    @property
    def positions(self) -> frozenset[int]:
        return frozenset(p for pair in self.pairs for p in pair)

    def partner(self, i: int) -> int:
        for a, b in self.pairs:
            if a == i:
                return b
            if b == i:
                return a
        raise KeyError(i)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(p) for p in self.pairs}


def _zero_columns(S: LinearCode) -> tuple[frozenset[int], int]:
    """Labels of the zero columns of a parity-check matrix of ``S``, and ``dim S``."""
    H = linalg.right_kernel(S.field, S.generator)
    if H.shape[0] == 0:
        # the square fills the ambient space, nothing can be read off
        return frozenset(), S.length
    zeros = frozenset(S.labels[c] for c in np.flatnonzero(~H.any(axis=0)))
    return zeros, S.length - H.shape[0]


def _exposed(SL: LinearCode) -> frozenset[int]:
    return _zero_columns(SL.square())[0]


def _check_size(params: RlceParams, size: int) -> None:
    iv = interval(params)
    if size not in iv or size + 1 not in iv:
        raise IntervalViolation(
            f"|L|={size} and |L|+1 must lie in [{iv.ell_min}, {iv.ell_max}]"
        )


def find_twin_exposed(C: LinearCode, L: Iterable[int], params: RlceParams | None = None) -> frozenset[int]:
    """Positions outside ``L`` whose puncturing drops ``dim Sh_L(C)^2`` by one."""
    L = tuple(L)
    if params is not None:
        _check_size(params, len(L))
    return _exposed(C.shorten(L))


def _match(SL: LinearCode, exposed: frozenset[int], i: int) -> int:
    if i not in exposed:
        raise NotExposed(f"position {i} is not exposed by this shortening")
    rest = exposed - {i}
    after = _exposed(SL.shorten([i]))
    leavers = rest - after
    if len(leavers) == 1 and after == rest - leavers:
        return next(iter(leavers))
    raise AmbiguousTwin(i, leavers)


def match_twin(C: LinearCode, L: Iterable[int], i: int, exposed: frozenset[int] | None = None) -> int:
    SL = C.shorten(tuple(L))
    if exposed is None:
        exposed = _exposed(SL)
    return _match(SL, exposed, int(i))


def _emit(trace, event: dict) -> None:
    if trace is not None:
        trace.append(event)


def collect_all_pairs(
    C: LinearCode,
    params: RlceParams,
    seed=b"",
    max_shortenings: int = 16,
    size: int | None = None,
    trace: list | None = None,
) -> TwinPairing:
    """Accumulate twin pairs over fresh shortening sets until all ``w`` are accounted for.

    A position that is exposed but has no twin candidate in two different
    shortenings is reported in ``unmatched`` (the random member of a
    degenerate pair).  Raises :class:`BudgetExceeded` when ``max_shortenings``
    sets do not account for ``w`` pairs.
    """
    w = params.w
    if w == 0:
        return TwinPairing((), ())
    iv = interval(params)
    size = iv.default_size() if size is None else size
    _check_size(params, size)
    rng = rng_from_seed(seed, "pairs")

    partner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    provenance: list[str] = []
    lonely: Counter[int] = Counter()
    unmatched: list[int] = []
    for attempt in range(max_shortenings):
        t0 = time.perf_counter()
        L = sample_shortening(C.labels, size, rng)
        SL = C.shorten(L)
        exposed, sq_dim = _zero_columns(SL.square())
        found = []
        for i in sorted(exposed):
            if i in partner:
                continue
            try:
                j = _match(SL, exposed, i)
            except AmbiguousTwin as exc:
                if not exc.candidates:
                    lonely[i] += 1
                continue
            if j in partner:
                continue
            partner[i], partner[j] = j, i
            pair = (min(i, j), max(i, j))
            pairs.append(pair)
            provenance.append(f"L{attempt}")
            found.append(pair)
        unmatched = sorted(p for p, hits in lonely.items() if hits >= 2 and p not in partner)
        _emit(
            trace,
            {
                "step": "twins",
                "attempt": attempt,
                "L": list(L),
                "shortened_dim": SL.dimension,
                "square_dim": sq_dim,
                "exposed": sorted(exposed),
                "pairs_found": [list(p) for p in found],
                "pairs_total": len(pairs),
                "unmatched": unmatched,
                "seconds": round(time.perf_counter() - t0, 6),
            },
        )
        if len(pairs) + len(unmatched) == w:
            order = sorted(range(len(pairs)), key=lambda s: pairs[s])
            return TwinPairing(
                tuple(pairs[s] for s in order), tuple(provenance[s] for s in order), tuple(unmatched)
            )
    raise BudgetExceeded(
        f"{len(pairs)} pairs and {len(unmatched)} unmatched positions after "
        f"{max_shortenings} shortenings; expected {w}"
    )


def repair_degenerate(
    C: LinearCode,
    unmatched: int,
    pairing: TwinPairing,
    params: RlceParams,
    seed=b"",
    size: int | None = None,
    shortenings_per_candidate: int = 4,
) -> TwinPairing:
    """Find a GRS partner for a lone random position.

    Each candidate column ``v_j`` is replaced by ``alpha v_j + beta v_u``;
    when the modified code shows ``(j, u)`` as an exposed twin pair the
    candidate is accepted and the pair is recorded as ``(j, u)``.
    """
    u = int(unmatched)
    F = C.field
    iv = interval(params)
    size = iv.default_size() if size is None else size
    rng = rng_from_seed(seed, "repair", str(u))
    taken = set(pairing.positions) | set(pairing.unmatched)
    candidates = [p for p in C.labels if p not in taken]
    rng.shuffle(candidates)
    v_u = C.column(u)
    for j in candidates:
        alpha, beta = (int(v) for v in F.random(rng, 2, nonzero=True))
        G = C.generator.copy()
        cj = C.columns([j])[0]
        G[:, cj] = F.multiply(alpha, G[:, cj]) ^ F.multiply(beta, v_u)
        modified = LinearCode(F, G, C.labels)
        others = [p for p in C.labels if p not in (j, u)]
        for _ in range(shortenings_per_candidate):
            SL = modified.shorten(sample_shortening(others, size, rng))
            exposed = _exposed(SL)
            if u not in exposed or j not in exposed:
                continue
            try:
                twin = _match(SL, exposed, u)
            except AmbiguousTwin:
                continue
            if twin == j:
                return TwinPairing(
                    pairing.pairs + ((int(j), u),),
                    pairing.discovered_by + (REPAIR,),
                    tuple(p for p in pairing.unmatched if p != u),
                )
            break
    raise RepairFailed(f"no GRS column pairs with position {u}")


# per-pair recovery --------------------------------------------------------


def _grs_polys(C: LinearCode, grs: GrsParams, grs_labels: Sequence[int], rows=None) -> np.ndarray:
    M = C.generator if rows is None else rows
    try:
        return grs_interpolate(grs, M[:, C.columns(grs_labels)])
    except Inconsistent:
        raise InconsistentPair("rows do not restrict to the GRS code on the known positions") from None


def _shortened_rows(M: np.ndarray, F, v: np.ndarray) -> np.ndarray:
    """Row combinations ``m M`` spanning ``{m : m v = 0}`` (one per row but the pivot)."""
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return M
    r0 = int(nz[0])
    coef = F.divide(v, int(v[r0]))
    rows = np.array([r for r in range(M.shape[0]) if r != r0], dtype=np.int64)
    return M[rows] ^ F.multiply(coef[rows, None], M[r0][None, :])


def recover_point_and_det(
    C_i: LinearCode,
    grs: GrsParams,
    grs_labels: Sequence[int],
    pair: tuple[int, int],
    avoid: Iterable[int] = (),
    seed=b"",
    polys: np.ndarray | None = None,
) -> tuple[int, int]:
    """Hidden evaluation point ``x_j`` and ``a - b c`` for the pair ``(first, second)``.

    After shortening at ``second`` every codeword has ``first`` entry
    ``(a - b c) f(x_j)`` where ``f`` is its interpolant on the GRS positions.
    The shortening is done on message vectors: with ``polys`` the
    interpolants of the rows of ``C_i``, the subcode vanishing at ``second``
    is spanned by row combinations orthogonal to that column.
    """
    F = C_i.field
    first, second = (int(p) for p in pair)
    if polys is None:
        polys = _grs_polys(C_i, grs, grs_labels)
    both = np.hstack([polys, C_i.column(first)[:, None]])
    sh = _shortened_rows(both, F, C_i.column(second))
    polys, target = sh[:, :-1], sh[:, -1]
    if polys.shape[0] == 0 or not target.any():
        raise DegeneratePair(f"position {first} vanishes on the shortened code")

    rng = rng_from_seed(seed, "point", str(first), str(second))
    W = F.random(rng, (3, polys.shape[0]))
    g = linalg.matmul(F, W, polys)
    tv = linalg.matmul(F, W, target)
    pts = F.elements()
    ev = poly_eval(F, g, pts)
    mask = ev.any(axis=0)
    for r, s in ((0, 1), (0, 2), (1, 2)):
        mask &= F.multiply(tv[r], ev[s]) == F.multiply(tv[s], ev[r])
    banned = set(int(x) for x in grs.x) | set(int(x) for x in avoid)
    found = []
    for x in np.flatnonzero(mask):
        if int(x) in banned:
            continue
        v = poly_eval(F, polys, int(x))
        if not v.any():
            continue
        r0 = int(np.flatnonzero(v)[0])
        det = F.div(int(target[r0]), int(v[r0]))
        if np.array_equal(F.multiply(det, v), target):
            found.append((int(x), det))
    if len(found) == 1:
        return found[0]
    if len(found) > 1:
        raise InconsistentPair(f"pair {pair}: {len(found)} candidate points")
    lead = polys[:, -1]
    if lead.any():
        r0 = int(np.flatnonzero(lead)[0])
        if np.array_equal(F.multiply(F.div(int(target[r0]), int(lead[r0])), lead), target):
            raise PointAtInfinity(f"pair {pair} sits at infinity for this support")
    raise DegeneratePair(f"pair {pair}: no evaluation point explains position {first}")


def recover_mixer(
    C_i: LinearCode,
    grs: GrsParams,
    grs_labels: Sequence[int],
    pair: tuple[int, int],
    x_j: int,
    det: int,
    polys: np.ndarray | None = None,
) -> TwinMixer:
    """Mixer ``(a, b, c, 1)`` with ``v_first = a v + c psi`` and ``v_second = b v + psi``.

    ``c`` is the unique ``lambda`` making ``v_first - lambda v_second``
    collinear with the evaluation column ``v``.  The remaining ``(a, b)``
    form a one-parameter family (shifting ``psi`` by a multiple of ``v``);
    ``b = 0`` is returned, which makes ``psi = v_second``.
    """
    F = C_i.field
    first, second = (int(p) for p in pair)
    if polys is None:
        polys = _grs_polys(C_i, grs, grs_labels)
    v = poly_eval(F, polys, int(x_j))
    vi, vt = C_i.column(first), C_i.column(second)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise InconsistentPair("evaluation column is zero")
    r0 = int(nz[0])
    # 2x2 minors of [v_first - lambda v_second | v] are degree one in lambda
    alpha = F.multiply(vt, v[r0]) ^ F.multiply(vt[r0], v)
    beta = F.multiply(vi, v[r0]) ^ F.multiply(vi[r0], v)
    live = alpha != 0
    if not live.any():
        raise InconsistentPair("second column is collinear with the evaluation column")
    lam = F.divide(beta[live], alpha[live])
    if np.any(lam != lam[0]) or np.any(beta[~live]):
        raise InconsistentPair("collinearity equations have no common root")
    c = int(lam[0])
    if not np.array_equal(vi ^ F.multiply(c, vt), F.multiply(det, v)):
        raise InconsistentPair("determinant check failed")
    return TwinMixer(a=int(det), b=0, c=c, d=1)


# full pipeline --------------------------------------------------------------


@dataclass(frozen=True)
class PairRecovery:
    first: int
    second: int
    point: int
    det: int
    mixer: TwinMixer


@dataclass(frozen=True, eq=False)
class RecoveredKey:
    support: np.ndarray
    multiplier: np.ndarray
    grs_positions: tuple[int, ...]
    pairs: tuple[PairRecovery, ...]
    pairing: TwinPairing
    secret_key: RlceSecretKey
    trace: list = field(default_factory=list, repr=False)

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(p.point for p in self.pairs)


def _assemble(
    pk: RlcePublicKey,
    C: LinearCode,
    grs: GrsParams,
    grs_labels: list[int],
    pairing: TwinPairing,
    seed,
) -> tuple[list[PairRecovery], RlceSecretKey]:
    F = pk.field
    params = pk.params
    polys = _grs_polys(C, grs, grs_labels)
    try:
        message_map = linalg.inverse(F, polys)
    except NoSolution:
        raise AttackFailed("public rows are not independent on the GRS positions") from None
    used: set[int] = set()
    recs = []
    for first, second in pairing.pairs:
        C_i = C.restrict(list(grs_labels) + [first, second])
        x_j, det = recover_point_and_det(C_i, grs, grs_labels, (first, second), used, seed, polys)
        used.add(x_j)
        mixer = recover_mixer(C_i, grs, grs_labels, (first, second), x_j, det, polys)
        recs.append(PairRecovery(first, second, x_j, det, mixer))

    psi = pk.G[:, C.columns([r.second for r in recs])]
    x = np.concatenate([grs.x, np.array([r.point for r in recs], dtype=np.int64)])
    y = np.concatenate([grs.y, np.ones(len(recs), dtype=np.int64)])
    perm = np.array(list(grs_labels) + [p for r in recs for p in (r.first, r.second)], dtype=np.int64)
    sk = RlceSecretKey(
        params,
        x,
        y,
        tuple(r.mixer for r in recs),
        perm,
        linalg.matmul(F, message_map, psi),
        b"",
        message_map,
    )
    if not np.array_equal(linalg.matmul(F, polys, build_public_matrix(sk)), pk.G):
        raise AttackFailed("assembled key does not regenerate the public matrix")
    return recs, sk


def _random_reparameterization(grs: GrsParams, rng) -> GrsParams:
    F = grs.field
    while True:
        alpha, beta, delta = (int(v) for v in F.random(rng, 3))
        if F.mul(alpha, delta) ^ beta == 0:
            continue
        try:
            return reparameterize(grs, alpha, beta, 1, delta)
        except InvalidSupport:
            continue


def full_attack(
    pk: RlcePublicKey,
    seed=b"",
    max_shortenings: int = 16,
    size: int | None = None,
    trace: list | None = None,
    max_reparameterizations: int = 8,
) -> RecoveredKey:
    """Recover an equivalent secret key from a public key alone.

    Raises :class:`~rlcelab.errors.NotDistinguishable` before doing any work
    when the shortening interval is empty.
    """
    params = pk.params
    F = pk.field
    events = trace if trace is not None else []
    iv = interval(params)
    size = iv.default_size() if size is None else size
    _emit(events, {"step": "interval", "ell_min": iv.ell_min, "ell_max": iv.ell_max, "size": size})
    C = LinearCode(F, pk.G)

    t0 = time.perf_counter()
    pairing = collect_all_pairs(C, params, seed, max_shortenings, size, events)
    _emit(events, {"step": "twins_done", "pairs": len(pairing.pairs),
                   "unmatched": list(pairing.unmatched), "seconds": round(time.perf_counter() - t0, 6)})

    for u in pairing.unmatched:
        t0 = time.perf_counter()
        pairing = repair_degenerate(C, u, pairing, params, seed, size)
        _emit(events, {"step": "repair", "position": u, "partner": pairing.pairs[-1][0],
                       "seconds": round(time.perf_counter() - t0, 6)})
    if len(pairing.pairs) != params.w:
        raise AttackFailed(f"found {len(pairing.pairs)} twin pairs, expected {params.w}")

    twins = pairing.positions
    grs_labels = [p for p in C.labels if p not in twins]
    t0 = time.perf_counter()
    grs = sidelnikov_shestakov(F, C.restrict(grs_labels).generator)
    _emit(events, {"step": "sidelnikov_shestakov", "positions": len(grs_labels),
                   "seconds": round(time.perf_counter() - t0, 6)})

    rng = rng_from_seed(seed, "reparameterize")
    for attempt in range(max_reparameterizations + 1):
        t0 = time.perf_counter()
        try:
            recs, sk = _assemble(pk, C, grs, grs_labels, pairing, seed)
        except PointAtInfinity:
            _emit(events, {"step": "reparameterize", "attempt": attempt})
            grs = _random_reparameterization(grs, rng)
            continue
        _emit(events, {"step": "mixers", "pairs": len(recs), "seconds": round(time.perf_counter() - t0, 6)})
        return RecoveredKey(grs.x, grs.y, tuple(grs_labels), tuple(recs), pairing, sk, events)
    raise AttackFailed("every support parameterization sent a twin point to infinity")


# verification ---------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
    row_space_equal: bool
    trials: int
    successes: int

    @property
    def passed(self) -> bool:
        return self.row_space_equal and self.successes == self.trials

    def as_dict(self) -> dict:
        return {
            "row_space_equal": self.row_space_equal,
            "trials": self.trials,
            "successes": self.successes,
            "passed": self.passed,
        }


def verify_equivalence(pk: RlcePublicKey, rk, trials: int = 100, seed=b"") -> EquivalenceReport:
    """Row-space check plus ``trials`` encrypt-then-decrypt round trips.

    ``rk`` may be a :class:`RecoveredKey` or any :class:`RlceSecretKey`.
    """
    sk = rk.secret_key if isinstance(rk, RecoveredKey) else rk
    F = pk.field
    try:
        same = linalg.same_row_space(F, build_public_matrix(sk), pk.G)
    except (ValueError, IndexError):
        same = False
    rng = rng_from_seed(seed, "verify")
    ok = 0
    for trial in range(trials):
        msg = random_message(pk.params, rng)
        c = encrypt(pk, msg, seed=seed_for_trial(seed, trial))
        try:
            ok += bool(np.array_equal(decrypt(sk, c), msg))
        except (DecryptFailure, ValueError, IndexError):
            pass
    return EquivalenceReport(bool(same), trials, ok)


def seed_for_trial(seed, trial: int) -> bytes:
    return seed_bytes(seed) + b"/" + str(trial).encode()
