import numpy as np
import pytest

from rlcelab import linalg
from rlcelab.codes import LinearCode
from rlcelab.errors import DecodeFailure, DegreeTooLarge, Inconsistent, InvalidSupport, ZeroMultiplier
from rlcelab.gf import gf_new
from rlcelab.grs import (
    GrsParams,
    grs_decode,
    grs_encode,
    grs_generator,
    grs_interpolate,
    pad,
    poly_divmod,
    poly_eval,
    poly_mul,
    random_grs,
    reparameterize,
)

import oracles

F10 = gf_new(10)


def test_params_validation():
    with pytest.raises(InvalidSupport):
        GrsParams(F10, [1, 1, 2], [1, 1, 1], 2)
    with pytest.raises(ZeroMultiplier):
        GrsParams(F10, [1, 2, 3], [1, 0, 1], 2)
    with pytest.raises(InvalidSupport):
        GrsParams(F10, [1, 2, 3], [1, 1, 1], 4)
    with pytest.raises(InvalidSupport):
        GrsParams(F10, [1, 2], [1, 1, 1], 1)


def test_generator_examples():
    p = GrsParams(F10, [3, 5, 9, 11], [1, 1, 1, 1], 1)
    assert np.array_equal(grs_generator(p), np.ones((1, 4)))
    p = random_grs(F10, 6, 6, np.random.default_rng(0))
    assert linalg.rank(F10, grs_generator(p)) == 6
    F4 = gf_new(4)
    p = random_grs(F4, 8, 3, np.random.default_rng(1))
    C = LinearCode(F4, grs_generator(p))
    assert C.dimension == 3 and C.square_dim() == 5


def test_generator_rows_against_oracle():
    F = gf_new(5)
    O = oracles.Field(5, F.reduction_poly)
    p = random_grs(F, 9, 4, np.random.default_rng(2))
    G = grs_generator(p)
    for i in range(4):
        for j in range(9):
            v = int(p.y[j])
            for _ in range(i):
                v = O.mul(v, int(p.x[j]))
            assert G[i, j] == v


def test_encode_examples():
    p = random_grs(F10, 10, 4, np.random.default_rng(3))
    assert not grs_encode(p, np.zeros(4, dtype=np.int64)).any()
    ones = GrsParams(F10, p.x, np.ones(10, dtype=np.int64), 4)
    assert np.all(grs_encode(ones, [1]) == 1)
    with pytest.raises(DegreeTooLarge):
        grs_encode(p, [0, 0, 0, 0, 1])
    f = np.array([4, 5, 6, 7])
    assert np.array_equal(grs_encode(p, f), linalg.matmul(F10, f, grs_generator(p)))


def test_encode_interpolate_round_trip():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(2, 30))
        k = int(rng.integers(1, n + 1))
        p = random_grs(F10, n, k, rng)
        f = F10.random(rng, k)
        c = grs_encode(p, f)
        assert np.array_equal(grs_interpolate(p, c), f)
        pos = np.sort(rng.choice(n, size=k, replace=False))
        assert np.array_equal(grs_interpolate(p, c[pos], pos), f)


def test_interpolate_constant_and_batch():
    p = random_grs(F10, 7, 3, np.random.default_rng(5))
    assert np.array_equal(grs_interpolate(p, F10.multiply(p.y, 9)), [9, 0, 0])
    fs = F10.random(np.random.default_rng(6), (4, 3))
    words = np.vstack([grs_encode(p, f) for f in fs])
    assert np.array_equal(grs_interpolate(p, words), fs)


def test_interpolate_detects_corruption():
    p = random_grs(F10, 6, 3, np.random.default_rng(7))
    c = grs_encode(p, [1, 2, 3])
    pos = np.arange(4)  # k + 1 positions
    bad = c[pos].copy()
    bad[2] ^= 1
    with pytest.raises(Inconsistent):
        grs_interpolate(p, bad, pos)


def test_polynomial_helpers():
    rng = np.random.default_rng(8)
    f, g = F10.random(rng, 5), F10.random(rng, 3, nonzero=True)
    prod = poly_mul(F10, f, g)
    q, r = poly_divmod(F10, prod, g)
    assert np.array_equal(pad(q, 5), f) and r.size == 0
    pts = F10.random(rng, 10)
    assert np.array_equal(
        poly_eval(F10, prod, pts), F10.multiply(poly_eval(F10, f, pts), poly_eval(F10, g, pts))
    )
    stacked = np.vstack([f, f ^ 1])
    ev = poly_eval(F10, stacked, pts)
    assert np.array_equal(ev[1], poly_eval(F10, f ^ 1, pts))
    with pytest.raises(DegreeTooLarge):
        pad([1, 2, 3], 2)


def test_decode_clean_and_errors():
    rng = np.random.default_rng(9)
    p = random_grs(F10, 16, 8, rng)
    f = F10.random(rng, 8)
    c = grs_encode(p, f)
    res = grs_decode(p, c, 4)
    assert np.array_equal(res.poly, f) and res.error_positions == ()
    e = np.zeros(16, dtype=np.int64)
    e[5] = 77
    res = grs_decode(p, c ^ e, 4)
    assert np.array_equal(res.poly, f) and res.error_positions == (5,)


def test_decode_monte_carlo_full_weight():
    rng = np.random.default_rng(10)
    for _ in range(100):
        p = random_grs(F10, 16, 8, rng)
        f = F10.random(rng, 8)
        e = np.zeros(16, dtype=np.int64)
        pos = rng.choice(16, size=4, replace=False)
        e[pos] = F10.random(rng, 4, nonzero=True)
        res = grs_decode(p, grs_encode(p, f) ^ e, 4)
        assert np.array_equal(res.poly, f)
        assert res.error_positions == tuple(sorted(int(i) for i in pos))


def test_decode_beyond_radius_fails_or_differs():
    rng = np.random.default_rng(11)
    failures = 0
    for _ in range(50):
        p = random_grs(F10, 16, 8, rng)
        f = F10.random(rng, 8)
        e = np.zeros(16, dtype=np.int64)
        e[rng.choice(16, size=6, replace=False)] = F10.random(rng, 6, nonzero=True)
        try:
            res = grs_decode(p, grs_encode(p, f) ^ e, 4)
            failures += not np.array_equal(res.poly, f)
        except DecodeFailure:
            failures += 1
    assert failures == 50
    with pytest.raises(ValueError):
        grs_decode(p, grs_encode(p, f), 5)


@pytest.mark.parametrize("m,n,k", [(3, 7, 3), (3, 8, 2), (3, 6, 2), (3, 5, 1)])
def test_decoder_equals_codebook_search(m, n, k):
    """Every error pattern up to the radius, against a full codebook scan."""
    F = gf_new(m)
    O = oracles.Field(m, F.reduction_poly)
    t = (n - k) // 2
    rng = np.random.default_rng(100 + n)
    p = random_grs(F, n, k, rng)
    book = oracles.grs_codewords(O, [int(v) for v in p.x], [int(v) for v in p.y], k)
    words = np.array(list(book), dtype=np.int64)
    msgs = np.array(list(book.values()), dtype=np.int64)
    c_idx = int(rng.integers(len(words)))
    c = words[c_idx]
    for e in oracles.error_patterns(n, F.order, t):
        r = c ^ np.array(e)
        dist = (words != r).sum(axis=1)
        best = int(np.argmin(dist))
        assert (dist == dist[best]).sum() == 1
        res = grs_decode(p, r, t)
        assert np.array_equal(res.poly, msgs[best])
        assert res.error_positions == tuple(np.flatnonzero(words[best] != r))


@pytest.mark.parametrize("n,k", [(12, 8), (12, 10), (11, 7)])
def test_decoder_equals_ball_search_gf16(n, k):
    """Nearest codeword found by scanning the radius-t ball through an independent parity check."""
    F = gf_new(4)
    O = oracles.Field(4, F.reduction_poly)
    t = (n - k) // 2
    rng = np.random.default_rng(200 + n + k)
    p = random_grs(F, n, k, rng)
    x, y = [int(v) for v in p.x], [int(v) for v in p.y]
    H = oracles.dual_parity_check(O, x, y, k)
    leaders = {}
    for e in oracles.error_patterns(n, F.order, t):
        s = oracles.syndrome(O, H, e)
        assert s not in leaders  # the radius-t ball has unique syndromes
        leaders[s] = e
    f = F.random(rng, k)
    c = grs_encode(p, f)
    assert oracles.syndrome(O, H, c.tolist()) == (0,) * (n - k)
    for e in oracles.error_patterns(n, F.order, t):
        r = c ^ np.array(e)
        lead = leaders[oracles.syndrome(O, H, r.tolist())]
        nearest = r ^ np.array(lead)
        res = grs_decode(p, r, t)
        assert np.array_equal(grs_encode(p, res.poly), nearest)
        assert res.error_positions == tuple(i for i, v in enumerate(lead) if v)


def test_square_law_and_shortening_law():
    rng = np.random.default_rng(12)
    p = random_grs(F10, 15, 5, rng)
    C = LinearCode(F10, grs_generator(p))
    sq = GrsParams(F10, p.x, F10.multiply(p.y, p.y), 9)
    assert C.square().same_code(LinearCode(F10, grs_generator(sq)))
    i = 4
    rest = [j for j in range(15) if j != i]
    y2 = F10.multiply(p.y[rest], p.x[rest] ^ p.x[i])
    short = GrsParams(F10, p.x[rest], y2, 4)
    assert C.shorten([i]).same_code(LinearCode(F10, grs_generator(short), rest))


def test_reparameterize_preserves_code():
    rng = np.random.default_rng(13)
    p = random_grs(F10, 20, 6, rng)
    C = LinearCode(F10, grs_generator(p))
    delta = next(d for d in range(1, 1024) if d not in set(p.x.tolist()))
    q = reparameterize(p, 5, 7, 1, delta)
    assert C.same_code(LinearCode(F10, grs_generator(q)))
    with pytest.raises(InvalidSupport):
        reparameterize(p, 1, 0, 1, int(p.x[0]))
    with pytest.raises(ValueError):
        reparameterize(p, 1, 1, 1, 1)
