import pytest
from hypothesis import given, settings, strategies as st

from hopfcross.fields import FieldSpec
from hopfcross.linalg import ExactMatrix, SpanSolver, span_intersection, span_sum

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)
F2 = FieldSpec.prime(2)


def test_field_parse_roundtrip():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("fp:5") == F5
    assert FieldSpec.parse(Q.spec_string()) == Q
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:6")
    with pytest.raises(ValueError):
        FieldSpec.prime(9)


def test_scalar_formatting():
    assert Q.fmt(Q.scalar("3/4")) == "3/4"
    assert F5.fmt(F5.scalar(7)) == 2
    assert Q.scalar(-2) == Q.from_int(-2)


def test_rank_identity_and_zero():
    assert ExactMatrix.identity(Q, 2).rank() == 2
    assert ExactMatrix.zeros(Q, 3, 4).rank() == 0


def test_rank_proportional_rows():
    m = ExactMatrix.from_rows(Q, [[1, 2], [2, 4]])
    assert m.rank() == 1


def test_kernel_identity_empty():
    k = ExactMatrix.identity(Q, 3).kernel_basis()
    assert k.ncols == 0


def test_kernel_zero_matrix_full():
    k = ExactMatrix.zeros(Q, 2, 2).kernel_basis()
    assert k.ncols == 2
    assert ExactMatrix.zeros(Q, 2, 2) @ k == ExactMatrix.zeros(Q, 2, 2)


def test_kernel_line():
    m = ExactMatrix.from_rows(Q, [[1, 1]])
    k = m.kernel_basis()
    assert k.ncols == 1
    col = k.column(0)
    assert col[0] == -col[1] and col[0] != 0
    assert m @ k == ExactMatrix.zeros(Q, 1, 1)


def test_solve_identity():
    m = ExactMatrix.identity(Q, 3)
    assert m.solve([1, 0, 0]) == [Q.one, Q.zero, Q.zero]


def test_solve_no_solution():
    m = ExactMatrix.zeros(Q, 2, 2)
    assert m.solve([1, 0]) is None


def test_solve_mod5():
    m = ExactMatrix.from_rows(F5, [[2]])
    assert m.solve([1]) == [3]


def test_matmul_and_transpose():
    a = ExactMatrix.from_rows(Q, [[1, 2], [3, 4]])
    b = ExactMatrix.from_rows(Q, [[0, 1], [1, 0]])
    assert (a @ b).to_rows() == ExactMatrix.from_rows(Q, [[2, 1], [4, 3]]).to_rows()
    assert a.transpose().to_rows() == ExactMatrix.from_rows(Q, [[1, 3], [2, 4]]).to_rows()


def test_stacking():
    a = ExactMatrix.from_rows(Q, [[1], [2]])
    b = ExactMatrix.from_rows(Q, [[3], [4]])
    assert ExactMatrix.hstack([a, b]).to_rows() == ExactMatrix.from_rows(Q, [[1, 3], [2, 4]]).to_rows()
    assert ExactMatrix.vstack([a, b]).to_rows() == ExactMatrix.from_rows(Q, [[1], [2], [3], [4]]).to_rows()


def test_span_ops():
    e1 = ExactMatrix.from_rows(Q, [[1], [0], [0]])
    e12 = ExactMatrix.from_rows(Q, [[1, 0], [0, 1], [0, 0]])
    e23 = ExactMatrix.from_rows(Q, [[0, 0], [1, 0], [0, 1]])
    assert span_sum([e12, e23]).ncols == 3
    inter = span_intersection(e12, e23)
    assert inter.ncols == 1
    col = inter.column(0)
    assert set(col) == {1}
    solver = SpanSolver(e12)
    assert solver.contains({0: Q.one, 1: Q.from_int(5)})
    assert not solver.contains({2: Q.one})
    assert solver.contains(e1.column(0))


matrix_strategy = st.integers(min_value=1, max_value=5).flatmap(
    lambda r: st.integers(min_value=1, max_value=5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-4, max_value=4), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=120, deadline=None)
@given(rows=matrix_strategy, field_idx=st.integers(min_value=0, max_value=2))
def test_rank_nullity_and_transpose(rows, field_idx):
    field = [Q, F5, F2][field_idx]
    m = ExactMatrix.from_rows(field, rows)
    k = m.kernel_basis()
    assert m.rank() + k.ncols == m.ncols
    assert m.rank() == m.transpose().rank()
    if k.ncols:
        prod = m @ k
        assert prod.is_zero()
    # kernel columns are linearly independent
    assert k.ncols == k.rank()


@settings(max_examples=80, deadline=None)
@given(rows=matrix_strategy, data=st.data())
def test_solve_consistency(rows, data):
    m = ExactMatrix.from_rows(Q, rows)
    coeffs = data.draw(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=m.ncols, max_size=m.ncols)
    )
    rhs_vec = m.apply({j: Q.from_int(c) for j, c in enumerate(coeffs) if c})
    x = m.solve(rhs_vec)
    assert x is not None
    back = m.apply({j: v for j, v in enumerate(x) if not Q.is_zero(v)})
    assert back == rhs_vec


@settings(max_examples=60, deadline=None)
@given(rows=matrix_strategy)
def test_column_space_basis_spans(rows):
    m = ExactMatrix.from_rows(Q, rows)
    basis = m.column_space_basis()
    assert basis.ncols == m.rank()
    solver = SpanSolver(basis)
    for col in m.cols:
        assert solver.contains(col)


def test_arbitrary_precision_rationals():
    # Hilbert-type matrices have denominators that explode under elimination;
    # exactness must survive with no precision loss
    n = 7
    rows = [[Q.scalar(f"1/{i + j + 1}") for j in range(n)] for i in range(n)]
    m = ExactMatrix.from_rows(Q, rows)
    assert m.rank() == n
    assert m.kernel_basis().ncols == 0
    rhs = [Q.one] * n
    x = m.solve(rhs)
    assert x is not None
    back = m.apply({j: v for j, v in enumerate(x) if not Q.is_zero(v)})
    assert back == {i: Q.one for i in range(n)}
