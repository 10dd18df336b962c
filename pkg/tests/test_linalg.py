from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie import linalg as la
from homlie.errors import DimensionMismatch, WellDefinednessFailure
from homlie.linalg import Matrix, Subspace

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(Matrix.from_rows)


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), ("0/7", 0)])
def test_parse_rational(text, value):
    assert la.parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", " 2", "a", "--1", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        la.parse_rational(text)


def test_format_rational_lowest_terms():
    assert la.format_rational(Fraction(2, 4)) == "1/2"
    assert la.format_rational(Fraction(-6, 3)) == "-2"


def test_vector_length_mismatch():
    with pytest.raises(DimensionMismatch):
        la.add((1, 2), (1, 2, 3))


def test_kernel_and_image_of_projection():
    A = Matrix.from_rows([[1, 0, 0], [0, 1, 0]])
    assert A.kernel() == la.canonicalize([(0, 0, 1)], 3)
    assert A.is_surjective() and not A.is_injective()
    assert A.rank == 2


def test_canonical_basis_is_rref():
    S = la.canonicalize([(2, 4, 0), (1, 2, 1)], 3)
    assert S.basis == ((1, 2, 0), (0, 0, 1))


def test_intersection_and_sum():
    S = la.canonicalize([(1, 0, 0), (0, 1, 0)], 3)
    T = la.canonicalize([(0, 1, 0), (0, 0, 1)], 3)
    assert (S & T) == la.canonicalize([(0, 1, 0)], 3)
    assert (S + T).is_full()


def test_quotient_projection_and_lift():
    K = la.canonicalize([(1, 1, 0)], 3)
    q = la.quotient_of(3, K)
    assert q.dim == 2
    assert la.is_zero(q.project((1, 1, 0)))
    v = (3, -1, 2)
    assert q.project(q.lift(q.project(v))) == q.project(v)


def test_induce_map_detects_ill_defined_map():
    src = la.quotient_of(2, la.canonicalize([(1, 0)], 2))
    dst = la.trivial_quotient(2)
    with pytest.raises(WellDefinednessFailure):
        la.induce_map(Matrix.identity(2), src, dst)


def test_preimage_solves_exactly():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    x = la.preimage(A, (5, 6))
    assert A.apply(x) == (5, 6)
    assert la.preimage(Matrix.from_rows([[1, 1], [1, 1]]), (1, 0)) is None


@given(matrices())
def test_rank_nullity(A):
    assert A.rank + A.kernel().rank == A.ncols
    for v in A.kernel().basis:
        assert la.is_zero(A.apply(v))


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=5))
def test_canonicalize_ignores_order_and_repeats(vectors):
    S = la.canonicalize(vectors, 3)
    assert la.canonicalize(reversed(vectors), 3) == S
    assert la.canonicalize(list(S.basis) + vectors, 3) == S
    assert all(S.contains(v) for v in vectors)


@settings(max_examples=40)
@given(matrices(3, 3), matrices(3, 3))
def test_matmul_matches_composition(A, B):
    if A.ncols != B.nrows:
        return
    v = tuple(Fraction(i + 1, 2) for i in range(B.ncols))
    assert (A @ B).apply(v) == A.apply(B.apply(v))


@given(st.fractions(max_denominator=50))
def test_rational_round_trip(q):
    assert la.parse_rational(la.format_rational(q)) == q


def test_subspace_zero_and_full():
    assert Subspace.zero(3).is_zero()
    assert Subspace.full(0).is_full()
    assert Subspace.full(3).contains_subspace(la.canonicalize([(1, 2, 3)], 3))
