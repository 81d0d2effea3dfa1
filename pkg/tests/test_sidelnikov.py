import numpy as np
import pytest

from rlcelab import linalg
from rlcelab.codes import LinearCode
from rlcelab.errors import NotGRS
from rlcelab.gf import gf_new
from rlcelab.grs import grs_generator, random_grs, reparameterize
from rlcelab.sidelnikov import sidelnikov_shestakov

F = gf_new(10)


@pytest.mark.parametrize("n,k", [(12, 1), (12, 2), (12, 3), (20, 8), (30, 28), (60, 30), (100, 40)])
def test_recovers_an_equivalent_grs_code(n, k):
    rng = np.random.default_rng(n * 100 + k)
    for _ in range(3):
        p = random_grs(F, n, k, rng)
        G = grs_generator(p)
        # hide the canonical basis
        S = F.random(rng, (k, k))
        while linalg.rank(F, S) < k:
            S = F.random(rng, (k, k))
        q = sidelnikov_shestakov(F, linalg.matmul(F, S, G))
        assert q.k == k and q.n == n
        assert linalg.same_row_space(F, grs_generator(q), G)


def test_accepts_redundant_rows():
    rng = np.random.default_rng(1)
    p = random_grs(F, 25, 6, rng)
    G = grs_generator(p)
    G = np.vstack([G, linalg.matmul(F, F.random(rng, (3, 6)), G)])
    assert linalg.same_row_space(F, grs_generator(sidelnikov_shestakov(F, G)), G)


def test_output_is_a_representative_not_the_original():
    rng = np.random.default_rng(2)
    p = random_grs(F, 20, 5, rng)
    q = sidelnikov_shestakov(F, grs_generator(p))
    assert LinearCode(F, grs_generator(q)).same_code(LinearCode(F, grs_generator(p)))
    # the normalisation pins three support points
    assert q.x[0] == 0 and q.x[1] == 1


def test_reparameterized_input():
    rng = np.random.default_rng(3)
    p = random_grs(F, 30, 7, rng)
    delta = next(d for d in range(1, 1024) if d not in set(p.x.tolist()))
    r = reparameterize(p, 3, 1, 1, delta)
    q = sidelnikov_shestakov(F, grs_generator(r))
    assert linalg.same_row_space(F, grs_generator(q), grs_generator(p))


def test_random_matrix_is_rejected():
    rng = np.random.default_rng(4)
    with pytest.raises(NotGRS):
        sidelnikov_shestakov(F, F.random(rng, (5, 30)))  # square check: 2k - 1 < n
    for _ in range(5):
        with pytest.raises(NotGRS):
            sidelnikov_shestakov(F, F.random(rng, (6, 10)))  # consistency checks


def test_too_short_or_empty_input():
    rng = np.random.default_rng(5)
    p = random_grs(F, 6, 5, rng)
    with pytest.raises(NotGRS):
        sidelnikov_shestakov(F, grs_generator(p))
    with pytest.raises(NotGRS):
        sidelnikov_shestakov(F, np.zeros((2, 8), dtype=np.int64))


def test_non_mds_code_is_rejected():
    rng = np.random.default_rng(6)
    p = random_grs(F, 12, 4, rng)
    G = grs_generator(p)
    G[:, 0] = 0
    with pytest.raises(NotGRS):
        sidelnikov_shestakov(F, G)


def test_one_corrupted_column_is_rejected():
    rng = np.random.default_rng(7)
    p = random_grs(F, 40, 10, rng)
    G = grs_generator(p)
    G[:, 17] = F.random(rng, 10, nonzero=True)
    with pytest.raises(NotGRS):
        sidelnikov_shestakov(F, G)
