import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cellstrat.errors import DimensionError
from cellstrat.linalg import RationalMatrix, SparseEliminator, quotient_action

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(small) if draw(st.booleans()) else Fraction(0) for _ in range(n)] for _ in range(m)]


@settings(max_examples=80)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert RationalMatrix(rows).rank() == sympy.Matrix(rows).rank()


@settings(max_examples=80)
@given(matrices())
def test_rref_matches_sympy(rows):
    ours, pivots = RationalMatrix(rows).rref()
    theirs, sp = sympy.Matrix(rows).rref()
    assert tuple(pivots) == sp
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in ours.rows] == theirs.tolist()


@given(matrices(4), st.data())
def test_matmul_and_trace(rows, data):
    a = RationalMatrix(rows)
    k = data.draw(st.integers(1, 4))
    b = RationalMatrix([[data.draw(small) for _ in range(k)] for _ in range(a.ncols)])
    got = a @ b
    want = sympy.Matrix(rows) * sympy.Matrix(b.rows)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in got.rows] == want.tolist()
    sq = RationalMatrix([[x for x in row[: len(rows)]] + [Fraction(0)] * max(0, len(rows) - len(row)) for row in rows])
    assert sq.trace() == sum(sq.rows[i][i] for i in range(len(rows)))


def test_shape_errors():
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2]]) @ RationalMatrix([[1, 2]])
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2]]).trace()
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2], [3]])


@settings(max_examples=60)
@given(st.lists(st.dictionaries(st.integers(0, 9), small, max_size=4), max_size=12))
def test_sparse_eliminator_rank(vectors):
    e = SparseEliminator(10)
    for v in vectors:
        e.add(v)
    dense = [[v.get(c, Fraction(0)) for c in range(10)] for v in vectors] or [[0] * 10]
    assert e.rank == sympy.Matrix(dense).rank()
    assert len(e.free_columns()) == 10 - e.rank
    # every relation reduces to zero
    for v in vectors:
        assert e.reduce(v) == {}
    # reduced rows mention no foreign pivot
    for p, row in e.pivot_rows.items():
        assert row[p] == 1 and max(row) == p
        assert not any(c in e.pivot_rows for c in row if c != p)


def test_quotient_of_a_permutation_action():
    # identify 0~1 and 3~4; the swap 0<->3, 1<->4, 2<->5 respects this
    e = SparseEliminator(6)
    for a, b in [(0, 1), (3, 4)]:
        e.add({a: Fraction(1), b: Fraction(-1)})
    assert e.free_columns() == [0, 2, 3, 5]
    m = quotient_action(e, [3, 4, 5, 0, 1, 2])
    assert m.is_monomial_01()
    assert m.trace() == 0
    assert m @ m == RationalMatrix.identity(4)


def test_random_sparse_consistency():
    rng = random.Random(3)
    e = SparseEliminator(40)
    rows = []
    for _ in range(60):
        v = {rng.randrange(40): Fraction(rng.randint(-2, 2)) for _ in range(2)}
        rows.append(v)
        e.add(v)
    dense = [[v.get(c, Fraction(0)) for c in range(40)] for v in rows]
    assert e.rank == sympy.Matrix(dense).rank()
