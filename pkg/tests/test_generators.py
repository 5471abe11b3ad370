import numpy as np
import pytest

from zbrng.generators import (exterior_square, fixture_ds3, gen_kronecker,
                              gen_paley, gen_sylvester, group_ring_smatrix,
                              kac_peterson_a1)
from zbrng.hadamard import HadamardError, normalize_hadamard
from zbrng.spectra import SMatrix, row_orthogonality_check, verlinde_tensor

from conftest import a1_fusion_oracle

EXT2_T4_ROWS = sorted([
    (-2, 0, -2, 2, 0, -2),
    (0, -2, -2, -2, -2, 0),
    (-2, -2, 0, 0, 2, 2),
    (2, -2, 0, 0, 2, -2),
    (0, -2, 2, 2, -2, 0),
    (-2, 0, 2, -2, 0, -2),
])

DS3_ROWS = [
    (1, 2, 3, 2, 2, 2),
    (1, 2, -3, 2, 2, 2),
    (1, 2, 0, -1, -1, -1),
    (1, -1, 0, -1, -1, 2),
    (1, -1, 0, -1, 2, -1),
    (1, -1, 0, 2, -1, -1),
]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_sylvester(m):
    H = gen_sylvester(m)
    assert H.n == 2 ** m
    a = H.array
    assert np.array_equal(a @ a.T, H.n * np.eye(H.n, dtype=np.int64))
    assert (a[:, 0] == 1).all() and (a[0] == 1).all()


def test_sylvester_rejects():
    with pytest.raises(HadamardError, match=">= 2"):
        gen_sylvester(1)


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23])
def test_paley(q):
    H = gen_paley(q)
    assert H.n == q + 1
    a = H.array
    assert np.array_equal(a @ a.T, H.n * np.eye(H.n, dtype=np.int64))


@pytest.mark.parametrize("q", [2, 9, 13, 15])
def test_paley_rejects(q):
    with pytest.raises(HadamardError, match="prime congruent to 3"):
        gen_paley(q)


def test_kronecker(paley12):
    h2 = np.array([[1, 1], [1, -1]])
    H = gen_kronecker(h2, paley12)
    assert H.n == 24
    a = H.array
    assert np.array_equal(a @ a.T, 24 * np.eye(24, dtype=np.int64))


def test_group_ring_smatrix_orthogonal():
    for orders in ([2], [3], [4], [2, 2], [2, 3]):
        s = group_ring_smatrix(orders)
        a = s.to_numeric()
        n = s.n
        assert np.allclose(a @ a.conj().T, n * np.eye(n), atol=1e-12)


def test_group_ring_rejects():
    with pytest.raises(ValueError, match=">= 2"):
        group_ring_smatrix([1, 3])


def test_group_ring_verlinde_is_permutation():
    res = verlinde_tensor(group_ring_smatrix([2, 2]))
    N = res.tensor
    assert res.integral
    for i in range(4):
        for j in range(4):
            assert N[i, j].sum() == 1 and set(np.unique(N[i, j])) <= {0, 1}


def test_exterior_square_exact_rows():
    e6 = exterior_square(group_ring_smatrix([2, 2]))
    assert e6.mode == "exact" and e6.n == 6
    rows = sorted(tuple(int(x.rational_value()) for x in row)
                  for row in e6.rows)
    assert rows == EXT2_T4_ROWS


def test_exterior_square_numeric_and_array(paley12):
    s = SMatrix.numeric(group_ring_smatrix([2, 2]).to_numeric())
    e = exterior_square(s)
    assert e.mode == "numeric"
    got = sorted(map(tuple, np.round(e.array.real).astype(int).tolist()))
    assert got == EXT2_T4_ROWS
    arr = exterior_square(paley12)
    assert isinstance(arr, np.ndarray) and arr.shape == (66, 66)


def test_exterior_square_rank28():
    e28 = exterior_square(group_ring_smatrix([2, 2, 2]))
    assert e28.n == 28


@pytest.mark.parametrize("level", range(1, 9))
def test_kac_peterson_levels(level):
    s = kac_peterson_a1(level)
    res = verlinde_tensor(s, tol=1e-6)
    assert res.max_deviation < 1e-6
    assert np.array_equal(res.tensor, a1_fusion_oracle(level))


def test_ds3_rows_frozen():
    s = fixture_ds3()
    rows = [tuple(int(x.rational_value()) for x in row) for row in s.rows]
    assert rows == DS3_ROWS


def test_ds3_not_an_rng_smatrix():
    s = fixture_ds3()
    assert sum(a * b for a, b in zip(DS3_ROWS[0], DS3_ROWS[1])) == 8
    ok, _ = row_orthogonality_check(SMatrix.numeric(s.to_numeric()),
                                    tuple(range(6)))
    assert not ok


def test_ds3_verlinde_nonnegative():
    res = verlinde_tensor(fixture_ds3())
    assert res.integral and res.nonnegative


def test_generated_matrices_normalized(paley12, sylvester16):
    for H in (paley12, sylvester16, gen_paley(19)):
        again = normalize_hadamard(H.array)
        assert np.array_equal(again.array, H.array)
