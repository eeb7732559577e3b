import random

import pytest

from starpir.gf import field_create
from starpir.matrix import Matrix

F2 = field_create(2)
F5 = field_create(5)
F8 = field_create(2, 3)


def test_rref_identity():
    m = Matrix.identity(F5, 4)
    red, piv = m.rref()
    assert red == m
    assert piv == (0, 1, 2, 3)


def test_rref_zero_matrix():
    red, piv = Matrix.zeros(F2, 3, 4).rref()
    assert red.nrows == 0 and red.ncols == 4
    assert piv == ()


def test_rref_dependent_rows():
    # zero rows are dropped from the canonical form; row space is preserved
    red, piv = Matrix(F2, [[1, 1], [1, 1]]).rref()
    assert red.rows == ((1, 1),)
    assert piv == (0,)


def test_kernel_parity():
    k = Matrix(F2, [[1, 1, 1]]).kernel()
    assert k.nrows == 2
    for row in k.rows:
        assert sum(row) % 2 == 0


def test_rank_and_solve():
    assert Matrix.identity(F5, 6).rank() == 6
    sol = Matrix.identity(F5, 2).solve([3, 4])
    assert sol == [3, 4]
    # inconsistent system
    assert Matrix(F2, [[1, 0], [1, 0]]).solve([1, 0]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        Matrix.identity(F5, 2).solve([1, 2, 3])


@pytest.mark.parametrize("F", [F2, F5, F8])
def test_kernel_and_rref_properties(F):
    rng = random.Random(hash((F.p, F.e)) & 0xFFFF)
    for _ in range(25):
        rows = [[rng.randrange(F.order) for _ in range(6)]
                for _ in range(rng.randrange(1, 6))]
        m = Matrix(F, rows)
        red, piv = m.rref()
        assert red.rank() == m.rank() == len(piv)
        assert red.rref()[0] == red  # idempotent
        assert list(piv) == sorted(piv)
        ker = m.kernel()
        assert m.rank() + ker.nrows == m.ncols
        for v in ker.rows:
            assert all(x == 0 for x in m.mat_vec(v))
        # every original row is in the reduced row space
        for r in rows:
            assert red.row_span_contains(r)


@pytest.mark.parametrize("F", [F2, F5])
def test_solve_random(F):
    rng = random.Random(7 * F.p)
    for _ in range(25):
        rows = [[rng.randrange(F.order) for _ in range(4)] for _ in range(3)]
        m = Matrix(F, rows)
        x = [rng.randrange(F.order) for _ in range(4)]
        b = m.mat_vec(x)
        sol = m.solve(b)
        assert sol is not None
        assert m.mat_vec(sol) == b


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Matrix(F2, [[1, 0], [1]])


def test_entry_validation():
    with pytest.raises(ValueError):
        Matrix(F2, [[2, 0]])
