"""Tensor product construction, universal properties and exact sequences."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlie import linalg as la
from homlie import tensor as tz
from homlie.actions import bracket_pair, check_compatible, self_pair, trivial_pair
from homlie.algebra import HomLieAlgebra, classify, direct_product, is_homomorphism
from homlie.catalog import catalog_get, tensor_of
from homlie.errors import HypothesisFailure, IncompatibleActions, WellDefinednessFailure
from homlie.linalg import Matrix, Subspace
from homlie.series import nilpotency_class


def alg(fixture, name):
    return catalog_get(fixture).document.algebra(name)


def gh3_pair(n="H"):
    d = catalog_get("F.gh3").document
    M = d.algebra("M")
    return bracket_pair(M, classify(M, d.subspace("G")), classify(M, d.subspace(n)), "G", n)


def test_fast_relation_span_matches_full_enumeration():
    for p in (gh3_pair(), self_pair(alg("F.sl2", "sl2")), self_pair(alg("F.weak2", "M"))):
        full = la.canonicalize(tz.relation_generators(p.M, p.N, p), p.M.dim * p.N.dim)
        fast = la.canonicalize(tz.relation_spanning_set(p.M, p.N, p), p.M.dim * p.N.dim)
        assert full == fast


def test_incompatible_actions_rejected():
    d = catalog_get("F.perfpair").document
    p = check_compatible(d.action("M", "N"), d.action("N", "M"))
    with pytest.raises(IncompatibleActions):
        tz.tensor_product(p.M, p.N, p)


def test_sl2_square():
    T = tensor_of(self_pair(alg("F.sl2", "sl2")))
    assert (T.ambient_dim, T.relations.rank, T.dim) == (9, 6, 3)
    assert T.psiM.kernel().is_zero()


def test_star_is_bilinear_and_respects_relation_iii():
    T = tensor_of(gh3_pair())
    m, m2, n = (1, 2), (0, -1), (3, 1)
    assert T.star(la.add(m, m2), n) == la.add(T.star(m, n), T.star(m2, n))
    assert tz.relation_iii_guard(T, samples=50)


def test_a2_star_a2_vanishes_in_gh3():
    T = tensor_of(gh3_pair())
    assert la.is_zero(T.star((0, 1), (1, 0)))
    assert nilpotency_class(T.product) == 1


@pytest.mark.parametrize("p,q", [(0, 3), (1, 1), (2, 3), (4, 2)])
def test_trivial_actions_give_full_tensor(p, q):
    A = HomLieAlgebra.from_brackets(f"A{p}", p, {})
    B = HomLieAlgebra.from_brackets(f"B{q}", q, {})
    T = tz.tensor_product(A, B, trivial_pair(A, B))
    assert T.dim == p * q and T.product.is_abelian()


def test_symmetry_requires_sign():
    T = tensor_of(self_pair(alg("F.sl2", "sl2")))
    f = tz.symmetry_iso(T)
    assert f.rank == T.dim
    with pytest.raises(WellDefinednessFailure):
        tz.symmetry_iso(T, None, sign=1)


def test_induced_actions_on_tensor_are_valid():
    from homlie.actions import validate_action

    T = tensor_of(gh3_pair())
    assert validate_action(tz.induced_action_on_tensor(T, "M")).passed
    assert validate_action(tz.induced_action_on_tensor(T, "N")).passed


def test_bracket_pairing_factors_through_psi():
    S = alg("F.sl2", "sl2")
    p = self_pair(S)
    T = tensor_of(p)
    h = tz.bracket_pairing(S, Subspace.full(3), Subspace.full(3), p)
    assert tz.validate_pairing(h).passed
    assert tz.pairing_factorization(h, T) == T.psiM


def test_functor_of_identity_is_identity():
    T = tensor_of(gh3_pair())
    f = tz.tensor_functor(Matrix.identity(2), Matrix.identity(2), T, T)
    assert f == Matrix.identity(T.dim)


def test_battery_on_direct_product_square():
    S = alg("F.sl2", "sl2")
    P = direct_product(S, S)
    T = tz.tensor_product(P, P, self_pair(P))
    assert T.dim == 6
    assert all(ok for _, ok in tz.invariant_battery(T, guard_samples=20))


def test_right_exactness_against_ideal():
    d = catalog_get("F.gh3").document
    K_in_G = la.canonicalize([d.subspace("G").coordinates((0, 1, 0))], 2)
    r = tz.ideal_right_exactness(gh3_pair("K"), K_in_G, ("K", "G/K"))
    assert r.exact and r.g_surjective
    with pytest.raises(HypothesisFailure):
        tz.ideal_right_exactness(gh3_pair("H"), K_in_G, ("K", "G/K"))


def test_quotient_iso_dimensions():
    d = catalog_get("F.gh3").document
    K_in_G = la.canonicalize([d.subspace("G").coordinates((0, 1, 0))], 2)
    K_in_H = la.canonicalize([d.subspace("H").coordinates((0, 1, 0))], 2)
    r = tz.quotient_iso(gh3_pair(), K_in_G, K_in_H)
    assert r.isomorphism and r.source.dim == r.target.dim == 1


@pytest.mark.parametrize("fixture,name,i,dims", [("F.heis3", "Q", 0, (4, 1)), ("F.nil4", "M", 1, (0, 0))])
def test_lcs_epimorphism(fixture, name, i, dims):
    e = tz.lcs_quotient_epimorphism(alg(fixture, name), i)
    assert (e.source.dim, e.target.dim) == dims
    assert e.surjective and e.homomorphism


def test_product_decomposition_hypotheses():
    A = alg("F.metab", "A")
    r = tz.product_decomposition(self_pair(A), self_pair(A))
    assert r.isomorphism
    with pytest.raises(HypothesisFailure) as exc:
        tz.product_decomposition(self_pair(alg("F.metab", "B")), self_pair(alg("F.metab", "B")))
    assert exc.value.hypothesis == 3
    S = alg("F.sl2", "sl2")
    with pytest.raises(HypothesisFailure) as exc:
        tz.product_decomposition(self_pair(S), self_pair(S))
    assert exc.value.hypothesis == 2


def test_short_exact_sequence_check():
    seq = tz.ideal_sequence(alg("F.heis3", "Q"), la.canonicalize([(0, 0, 1)], 3))
    assert seq.check() is None
    assert is_homomorphism(seq.surj, seq.B, seq.C).passed


vec3 = st.tuples(*[st.integers(-2, 2)] * 3)


@settings(max_examples=15, deadline=None)
@given(st.fixed_dictionaries({(0, 1): vec3, (0, 2): vec3, (1, 2): vec3}))
def test_battery_holds_for_random_zero_twist_algebras(br):
    L = HomLieAlgebra.from_brackets("r", 3, br)
    T = tz.tensor_product(L, L, self_pair(L))
    assert T.dim >= 3 * 3 - 6
    assert all(ok for _, ok in tz.invariant_battery(T, guard_samples=10))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_psi_images_are_induced_subspaces(p, q):
    A = HomLieAlgebra.from_brackets("A", p, {})
    B = HomLieAlgebra.from_brackets("B", q, {})
    T = tz.tensor_product(A, B, trivial_pair(A, B))
    assert T.psiM.image().is_zero() and T.psiN.image().is_zero()
