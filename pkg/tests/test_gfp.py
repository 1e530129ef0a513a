import itertools

import pytest
from hypothesis import given, strategies as st

from perihall.gfp import FieldSpec, MatrixFp, Subspace

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def mats(p, max_rows=4, max_cols=4):
    def build(draw_data):
        nrows, ncols, flat = draw_data
        return MatrixFp.from_flat(FieldSpec(p), flat[: nrows * ncols], nrows, ncols)

    return st.tuples(
        st.integers(1, max_rows),
        st.integers(1, max_cols),
        st.lists(st.integers(0, p - 1), min_size=max_rows * max_cols, max_size=max_rows * max_cols),
    ).map(build)


def test_field_validation():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(1)
    f = FieldSpec(7)
    for a in range(1, 7):
        assert (a * f.inv(a)) % 7 == 1


def test_mul_identity_and_assoc():
    a = MatrixFp(F3, [[1, 2], [0, 1], [2, 2]])
    i3 = MatrixFp.identity(F3, 3)
    i2 = MatrixFp.identity(F3, 2)
    assert i3.mul(a) == a
    assert a.mul(i2) == a
    b = MatrixFp(F3, [[2, 1, 0], [1, 1, 1]])
    c = MatrixFp(F3, [[0, 1], [1, 2], [2, 0]])
    assert a.mul(b).mul(c) == a.mul(b.mul(c))


@given(mats(3))
def test_rref_idempotent(m):
    red, pivots = m.rref()
    again, pivots2 = red.rref()
    assert again == red
    assert pivots2 == pivots
    assert len(pivots) == m.rank()


@given(mats(2))
def test_rank_nullity_rows(m):
    # left kernel: rank + dim ker == number of rows
    ker = m.kernel_basis()
    assert m.rank() + ker.nrows == m.nrows
    if ker.nrows:
        assert ker.mul(m).is_zero()


@given(mats(5, max_rows=3, max_cols=3))
def test_transform_reproduces_rref(m):
    red, pivots, t = m.rref_with_transform()
    assert t.is_invertible()
    assert t.mul(m) == red


def test_solve_against_brute_force():
    # every row vector space with at most 5^3 = 125 points, checked exactly
    field = F5
    m = MatrixFp(field, [[1, 2, 0], [0, 1, 1], [1, 3, 1]])
    for b in itertools.product(range(5), repeat=3):
        got = m.solve(list(b))
        brute = None
        for v in itertools.product(range(5), repeat=3):
            vm = MatrixFp(field, [list(v)]).mul(m).rows[0]
            if vm == list(b):
                brute = v
                break
        if brute is None:
            assert got is None
        else:
            assert got is not None
            assert MatrixFp(field, [got]).mul(m).rows[0] == list(b)


@given(mats(2, max_rows=4, max_cols=3))
def test_solve_consistency(m):
    # anything in the row space must be solvable, anything solved must check out
    for row in m.rows:
        got = m.solve(row)
        assert got is not None
        assert MatrixFp(m.field, [got]).mul(m).rows[0] == [x % 2 for x in row]


def test_inverse_round_trip():
    m = MatrixFp(F3, [[1, 2, 0], [0, 1, 0], [1, 0, 1]])
    inv = m.inverse()
    assert m.mul(inv) == MatrixFp.identity(F3, 3)
    assert inv.mul(m) == MatrixFp.identity(F3, 3)


def test_singular_detection():
    m = MatrixFp(F3, [[1, 2], [2, 1]])  # det = 1 - 4 = 0 mod 3
    assert not m.is_invertible()
    with pytest.raises(ValueError):
        m.inverse()


def test_block_and_stack():
    a = MatrixFp.identity(F2, 2)
    b = MatrixFp.zeros(F2, 2, 1)
    c = MatrixFp.zeros(F2, 1, 2)
    d = MatrixFp.identity(F2, 1)
    m = MatrixFp.block(F2, [[a, b], [c, d]])
    assert m == MatrixFp.identity(F2, 3)
    assert m.submatrix((0, 2), (0, 2)) == a


def test_empty_shapes():
    e = MatrixFp.zeros(F2, 0, 3)
    m = MatrixFp(F2, [[1, 0, 1]])
    prod = m.mul(MatrixFp.zeros(F2, 3, 0))
    assert prod.nrows == 1 and prod.ncols == 0
    assert e.rank() == 0
    assert e.kernel_basis().nrows == 0


def test_subspace_quotient_coords():
    s = Subspace(F2, 3, [[1, 0, 1]])
    assert s.dim == 1 and s.codim == 2
    assert s.contains([1, 0, 1])
    assert not s.contains([1, 1, 1])
    # quotient coordinates are at the free columns, here 1 and 2
    assert s.free_columns == (1, 2)
    assert s.quotient_coords([1, 0, 1]) == (0, 0)
    assert s.quotient_coords([1, 1, 0]) == (1, 1)
    lifted = s.lift_quotient_coords((1, 1))
    assert s.quotient_coords(lifted) == (1, 1)


@given(mats(3, max_rows=3, max_cols=4))
def test_row_space_membership(m):
    s = Subspace(m.field, m.ncols, m.rows)
    for row in m.rows:
        assert s.contains(row)
    assert s.dim == m.rank()
