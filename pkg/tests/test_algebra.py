import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie import linalg as la
from homlie.algebra import (
    HomLieAlgebra,
    abelian,
    alpha_props,
    center,
    classify,
    derived_subalgebra,
    direct_product,
    is_homomorphism,
    quotient_algebra,
    restrict_algebra,
    validate,
    yau_twist,
)
from homlie.catalog import catalog_get
from homlie.errors import NotAnIdeal
from homlie.linalg import Matrix, Subspace


def sl2():
    return catalog_get("F.sl2").document.algebra("sl2")


def heis():
    return catalog_get("F.heis3").document.algebra("Q")


def test_sl2_validates_and_is_centerless():
    L = sl2()
    assert validate(L).passed
    assert center(L).space.is_zero()
    assert derived_subalgebra(L).space.is_full()


def test_jacobi_failure_is_reported_with_witness():
    # [e1,e2]=e3, [e2,e3]=e1 with identity twist breaks Jacobi
    L = HomLieAlgebra.from_brackets("bad", 3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, 1, 1)},
                                    Matrix.identity(3))
    rep = validate(L)
    assert not rep.passed
    assert "hom_jacobi" in rep.axioms_failed()
    assert rep.failures[0].witness


def test_multiplicativity_failure():
    alpha = Matrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    rep = validate(HomLieAlgebra.from_brackets("h", 3, {(0, 1): (0, 0, 1)}, alpha))
    assert "multiplicativity" not in rep.axioms_failed()
    alpha2 = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    rep2 = validate(HomLieAlgebra.from_brackets("h", 3, {(0, 1): (0, 0, 1)}, alpha2))
    assert "multiplicativity" in rep2.axioms_failed()


def test_classify_kinds():
    Q = heis()
    assert classify(Q, la.canonicalize([(0, 0, 1)], 3)).kind == "hom_ideal"
    assert classify(Q, la.canonicalize([(1, 0, 0)], 3)).kind == "subalgebra"  # [a1, a2] = a3 escapes
    assert classify(sl2(), la.canonicalize([(1, 0, 0)], 3)).kind == "subalgebra"
    assert classify(sl2(), la.canonicalize([(0, 1, 0), (0, 0, 1)], 3)).kind == "subspace"


def test_quotient_by_center():
    Q, pi = quotient_algebra(heis(), la.canonicalize([(0, 0, 1)], 3))
    assert Q.dim == 2 and Q.is_abelian()
    assert is_homomorphism(pi, heis(), Q).passed


def test_quotient_by_non_ideal_raises():
    with pytest.raises(NotAnIdeal):
        quotient_algebra(sl2(), la.canonicalize([(1, 0, 0)], 3))


def test_restrict_uses_rref_coordinates():
    L = sl2()
    B = restrict_algebra(L, la.canonicalize([(1, 0, 0), (0, 1, 0)], 3), "borel")
    assert B.dim == 2
    assert B.bracket((1, 0), (0, 1)) == (0, 2)


def test_direct_product_center_and_twist():
    P = direct_product(heis(), sl2())
    assert P.dim == 6
    assert center(P).space == la.canonicalize([(0, 0, 1, 0, 0, 0)], 6)
    assert validate(P).passed


def test_yau_twist_by_automorphism():
    beta = Matrix.from_rows([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    L = yau_twist(sl2(), beta)
    assert validate(L).passed
    assert L.alpha == beta


def test_alpha_props_of_identity_twist():
    p = alpha_props(sl2())
    assert p.surjective and p.alpha_identity and p.weak_alpha_identity


def test_abelian_constructor():
    A = abelian("A", 3)
    assert A.is_abelian() and center(A).space.is_full()


brackets3 = st.fixed_dictionaries({
    (0, 1): st.tuples(*[st.integers(-2, 2)] * 3),
    (0, 2): st.tuples(*[st.integers(-2, 2)] * 3),
    (1, 2): st.tuples(*[st.integers(-2, 2)] * 3),
})


@settings(max_examples=60)
@given(brackets3)
def test_zero_twist_always_validates(br):
    # with alpha = 0 every axiom reduces to skew-symmetry
    assert validate(HomLieAlgebra.from_brackets("r", 3, br)).passed


@settings(max_examples=40)
@given(brackets3)
def test_commutator_of_random_algebra_is_ideal(br):
    L = HomLieAlgebra.from_brackets("r", 3, br)
    assert derived_subalgebra(L).is_hom_ideal
    assert center(L).is_hom_ideal


def test_homomorphism_check_rejects_swap():
    f = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert not is_homomorphism(f, sl2(), sl2()).passed
    assert is_homomorphism(Matrix.identity(3), sl2(), sl2()).passed


def test_zero_dimensional_algebra():
    Z = HomLieAlgebra.from_brackets("zero", 0, {})
    assert validate(Z).passed
    assert center(Z).space == Subspace.zero(0)
