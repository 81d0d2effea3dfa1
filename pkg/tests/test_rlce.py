import numpy as np
import pytest

from rlcelab import linalg
from rlcelab.errors import DecryptFailure, InvalidParams
from rlcelab.grs import grs_encode, grs_interpolate
from rlcelab.rlce import (
    DESK,
    PRESETS,
    RlceParams,
    build_public_matrix,
    classify_positions,
    decrypt,
    encrypt,
    keygen,
    random_message,
    rng_from_seed,
    seed_bytes,
    unmix,
)


def test_presets_match_published_tables():
    rows = {
        "id0": (630, 470, 80, 160, 10),
        "id1": (532, 376, 78, 96, 10),
        "id2": (1000, 764, 118, 236, 10),
        "id3": (846, 618, 114, 144, 10),
        "id4": (1360, 800, 280, 560, 11),
        "id5": (1160, 700, 230, 311, 11),
    }
    for name, (n, k, t, w, m) in rows.items():
        p = PRESETS[name]
        assert (p.n, p.k, p.t, p.w, p.m) == (n, k, t, w, m)


def test_params_validation_and_defaults():
    assert RlceParams(60, 30, 12).t == 15
    assert RlceParams(60, 30, 12).reduction_poly == 0x409
    assert RlceParams(60, 30, 12, m=11).reduction_poly == 0x805
    for bad in [dict(n=10, k=10, w=1), dict(n=10, k=4, w=11), dict(n=10, k=4, w=2, t=4),
                dict(n=2000, k=4, w=2, m=10), dict(n=10, k=4, w=-1)]:
        with pytest.raises(InvalidParams):
            RlceParams(**bad)


def test_seed_forms():
    assert seed_bytes("0x0102") == b"\x01\x02" == seed_bytes("102") == seed_bytes(258)
    assert seed_bytes(None) == b""
    with pytest.raises(TypeError):
        seed_bytes(1.5)
    a = rng_from_seed(b"x", "a").integers(1 << 30)
    assert a == rng_from_seed(b"x", "a").integers(1 << 30)
    assert a != rng_from_seed(b"x", "b").integers(1 << 30)


def test_keygen_is_deterministic():
    pk1, sk1 = keygen(DESK, seed=b"\x07")
    pk2, sk2 = keygen(DESK, seed=b"\x07")
    pk3, _ = keygen(DESK, seed=b"\x08")
    assert np.array_equal(pk1.G, pk2.G) and np.array_equal(sk1.permutation, sk2.permutation)
    assert not np.array_equal(pk1.G, pk3.G)


def test_id1_public_key_shape_and_rank():
    pk, sk = keygen(PRESETS["id1"], seed=b"\x00")
    assert pk.G.shape == (376, 628)
    assert linalg.rank(pk.field, pk.G) == 376


def test_construction_layout():
    pk, sk = keygen(DESK, seed=3)
    F = sk.field
    n, w = DESK.n, DESK.w
    G0 = F.multiply(F.vandermonde(sk.x, DESK.k), sk.y)
    G1A = pk.G[:, sk.permutation]
    assert np.array_equal(G1A[:, : n - w], G0[:, : n - w])
    for s, mx in enumerate(sk.mixers):
        g, r = G0[:, n - w + s], sk.random_columns[:, s]
        assert np.array_equal(G1A[:, n - w + 2 * s], F.multiply(mx.a, g) ^ F.multiply(mx.c, r))
        assert np.array_equal(G1A[:, n - w + 2 * s + 1], F.multiply(mx.b, g) ^ F.multiply(mx.d, r))
        assert mx.det(F) != 0 and not mx.degenerate
    assert np.array_equal(build_public_matrix(sk), pk.G)


def test_zero_w_gives_permuted_grs():
    p = RlceParams(20, 8, 0, m=6)
    pk, sk = keygen(p, seed=1)
    F = sk.field
    assert np.array_equal(pk.G[:, sk.permutation], F.multiply(F.vandermonde(sk.x, 8), sk.y))


def test_round_trips():
    pk, sk = keygen(DESK, seed=4)
    rng = np.random.default_rng(0)
    for trial in range(100):
        m = random_message(DESK, rng)
        assert np.array_equal(decrypt(sk, encrypt(pk, m, seed=trial)), m)
    m = random_message(DESK, rng)
    assert np.array_equal(encrypt(pk, m, weight=0), linalg.matmul(pk.field, m, pk.G))
    assert np.array_equal(decrypt(sk, encrypt(pk, m, weight=0)), m)


def test_error_touches_at_most_t_unmixed_coordinates():
    pk, sk = keygen(DESK, seed=5)
    rng = np.random.default_rng(1)
    for trial in range(20):
        m = random_message(DESK, rng)
        c = encrypt(pk, m, seed=trial)
        clean = linalg.matmul(pk.field, m, pk.G)
        diff = unmix(sk, c) ^ unmix(sk, clean)
        assert np.count_nonzero(diff) <= DESK.t


def test_overweight_errors_on_distinct_pairs_usually_fail():
    pk, sk = keygen(DESK, seed=6)
    F = pk.field
    rng = np.random.default_rng(2)
    n, w, t = DESK.n, DESK.w, DESK.t
    failures = 0
    for trial in range(40):
        m = random_message(DESK, rng)
        e = np.zeros(DESK.length, dtype=np.int64)
        # one error per twin pair plus GRS positions: t + 1 corrupted unmixed coordinates
        pairs = rng.choice(w, size=min(w, t + 1), replace=False)
        hit = [sk.pair_positions(int(s))[0] for s in pairs]
        extra = t + 1 - len(hit)
        hit += [int(sk.permutation[i]) for i in rng.choice(n - w, size=extra, replace=False)]
        e[hit] = F.random(rng, len(hit), nonzero=True)
        c = linalg.matmul(F, m, pk.G) ^ e
        try:
            failures += not np.array_equal(decrypt(sk, c), m)
        except DecryptFailure:
            failures += 1
    assert failures / 40 > 0.5


def test_classification_nondegenerate():
    pk, sk = keygen(DESK, seed=7)
    cl = classify_positions(sk)
    n, w = DESK.n, DESK.w
    assert not cl.grs2 and not cl.random
    assert len(cl.pseudo_random) == 2 * w and len(cl.grs1) == n - w
    assert cl.grs1 | cl.pseudo_random == frozenset(range(n + w))
    assert all(cl.twin[cl.twin[i]] == i and cl.twin[i] != i for i in cl.twin)


@pytest.mark.parametrize("which", ["c", "d"])
def test_classification_with_forced_degenerate_pair(which):
    pk, sk = keygen(DESK, seed=8, force_zero={3: which})
    cl = classify_positions(sk)
    w = DESK.w
    assert len(cl.grs2) == len(cl.random) == 1
    assert len(cl.pseudo_random) == 2 * w - 2 == 2 * (w - len(cl.random))
    parts = [cl.grs1, cl.grs2, cl.random, cl.pseudo_random]
    assert sum(map(len, parts)) == DESK.length
    assert frozenset().union(*parts) == frozenset(range(DESK.length))
    first, second = sk.pair_positions(3)
    grs_member = first if which == "c" else second
    assert cl.grs2 == {grs_member} and cl.twin[grs_member] in cl.random


def test_grs_positions_follow_interpolated_polynomial():
    pk, sk = keygen(DESK, seed=9)
    cl = classify_positions(sk)
    F = sk.field
    word = linalg.matmul(F, random_message(DESK, np.random.default_rng(3)), pk.G)
    grs1 = sorted(cl.grs1)
    idx = np.array([cl.grs_index[i] for i in grs1])
    f = grs_interpolate(sk.grs, word[grs1], idx)
    assert np.array_equal(grs_encode(sk.grs.subset(idx), f), word[grs1])


def test_unmixing_pairs_gives_grs_and_random_columns():
    pk, sk = keygen(DESK, seed=10)
    F = sk.field
    G1A = pk.G[:, sk.permutation]
    n, w = DESK.n, DESK.w
    G0 = F.multiply(F.vandermonde(sk.x, DESK.k), sk.y)
    for s, mx in enumerate(sk.mixers):
        u1, u2 = G1A[:, n - w + 2 * s], G1A[:, n - w + 2 * s + 1]
        inv_det = F.inv(mx.det(F))
        g = F.multiply(inv_det, F.multiply(mx.d, u1) ^ F.multiply(mx.c, u2))
        r = F.multiply(inv_det, F.multiply(mx.b, u1) ^ F.multiply(mx.a, u2))
        assert np.array_equal(g, G0[:, n - w + s])
        assert np.array_equal(r, sk.random_columns[:, s])


def test_force_zero_validation():
    with pytest.raises(InvalidParams):
        keygen(DESK, force_zero={99: "c"})
    with pytest.raises(InvalidParams):
        keygen(DESK, force_zero={0: "a"})
