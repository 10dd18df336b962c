import pytest

from homlie import linalg as la
from homlie.actions import (
    HomAction,
    bracket_pair,
    check_compatible,
    descend_action,
    induced_subspace,
    quotient_action,
    restrict_action,
    self_pair,
    semidirect,
    trivial_pair,
    validate_action,
)
from homlie.algebra import classify, restrict_algebra
from homlie.catalog import catalog_get
from homlie.errors import ChainNotNested, NotAnIdeal, NotClosed, WellDefinednessFailure
from homlie.linalg import Subspace
from homlie.series import (
    acts_nilpotently,
    derived_sequence,
    engel_class,
    engel_sample_check,
    is_abelian_series,
    is_central_series,
    is_k_engel,
    lower_central_series,
    nilpotency_class,
    solvability_class,
)


def doc(name):
    return catalog_get(name).document


# actions ------------------------------------------------------------------


def test_bracket_action_is_valid_and_compatible():
    S = doc("F.sl2").algebra("sl2")
    p = self_pair(S)
    assert validate_action(p.forward).passed
    assert p.compatible


def test_trivial_pair_on_nonabelian_is_valid():
    S = doc("F.sl2").algebra("sl2")
    p = trivial_pair(S, S)
    assert p.compatible
    assert induced_subspace(p.forward).space.is_zero()


def test_invalid_action_reports_axiom():
    S = doc("F.sl2").algebra("sl2")
    # identity-like operators do not satisfy the derivation axiom
    act = HomAction.from_entries(S, S, {(0, 0): (1, 0, 0), (0, 1): (0, 1, 0), (0, 2): (0, 0, 1)})
    rep = validate_action(act)
    assert not rep.passed


def test_perfpair_compatibility_witness():
    d = doc("F.perfpair")
    p = check_compatible(d.action("M", "N"), d.action("N", "M"))
    assert not p.compatible
    w = p.witnesses[0]
    assert (w.identity, w.indices) == ("forward", (4, 1, 1))
    assert w.lhs != w.rhs


def test_semidirect_product_validates():
    Q = doc("F.heis3").algebra("Q")
    S = semidirect(Q, Q, self_pair(Q).forward)
    assert S.algebra.dim == 6


def test_restrict_and_descend():
    d = doc("F.gh3")
    M = d.algebra("M")
    p = bracket_pair(M, classify(M, d.subspace("G")), classify(M, d.subspace("H")), "G", "H")
    K_in_H = la.canonicalize([d.subspace("H").coordinates((0, 1, 0))], 2)
    with pytest.raises(WellDefinednessFailure):
        descend_action(p.forward, None, la.canonicalize([(0, 1)], 2))  # [a2, a3] = a2 leaves span{a3}
    q = descend_action(p.forward, la.canonicalize([(0, 1)], 2), K_in_H)
    assert q.target.dim == 1 and q.is_trivial()


def test_restrict_action_not_closed():
    d = doc("F.perfpair")
    with pytest.raises(NotClosed):
        restrict_action(d.action("M", "N"), Subspace.full(3), d.subspace("A3"))


def test_quotient_action_requires_ideal():
    S = doc("F.sl2").algebra("sl2")
    with pytest.raises(NotAnIdeal):
        quotient_action(self_pair(S).forward, la.canonicalize([(1, 0, 0)], 3))


# series -------------------------------------------------------------------


def test_der4_second_derived_term_not_ideal():
    ds = derived_sequence(doc("F.der4").algebra("Q"))
    assert ds.dims() == [4, 2, 1, 0]
    assert ds.each_is_ideal == (True, True, False, True)


def test_weak2_classes():
    M = doc("F.weak2").algebra("M")
    assert solvability_class(M) == 2
    assert nilpotency_class(M) == "non_nilpotent"


def test_der4_solvability_is_gated():
    v = solvability_class(doc("F.der4").algebra("Q"))
    assert v.status == "indeterminate" and v.reason


def test_sl2_non_solvable():
    S = doc("F.sl2").algebra("sl2")
    assert str(derived_sequence(S).class_verdict) == "non_solvable"
    assert str(lower_central_series(S).class_verdict) == "non_nilpotent"


def test_max_iter_caps_iteration():
    M = doc("F.nil4").algebra("M")
    T = catalog_get("F.nil4").tensor_pairs()[0][1]
    from homlie.catalog import tensor_of

    rep = lower_central_series(tensor_of(T).product, max_iter=1)
    assert rep.class_verdict.status == "not_within_bound"
    assert nilpotency_class(M) == "non_nilpotent"


def test_series_predicates():
    Q = doc("F.heis3").algebra("Q")
    Z = doc("F.heis3").subspace("Z")
    chain = [Subspace.zero(3), Z, Subspace.full(3)]
    assert is_central_series(Q, chain)
    assert is_abelian_series(Q, chain)
    with pytest.raises(ChainNotNested):
        is_central_series(Q, [Subspace.zero(3), Subspace.full(3), Z])


@pytest.mark.parametrize("name,alg,k", [("F.heis3", "Q", 2), ("F.ab(3)", "A3", 1), ("F.nil4", "M", None)])
def test_engel_class(name, alg, k):
    assert engel_class(doc(name).algebra(alg)).engel_class == k


def test_engel_polarization_agrees_with_sampling():
    Q = doc("F.heis3").algebra("Q")
    for k in (1, 2, 3):
        assert is_k_engel(Q, k) == engel_sample_check(Q, k)


def test_engel_bound_validation():
    with pytest.raises(ValueError):
        engel_class(doc("F.heis3").algebra("Q"), bound=0)


def test_nilpotent_action_chain():
    Q = doc("F.heis3").algebra("Q")
    v = acts_nilpotently(self_pair(Q).forward)
    assert v.status == "yes"
    S = doc("F.sl2").algebra("sl2")
    assert acts_nilpotently(self_pair(S).forward).status == "no"


def test_nonnil3_subalgebra_series():
    d = doc("F.nonnil3")
    M = restrict_algebra(d.algebra("Q"), d.subspace("M"))
    assert lower_central_series(M).dims() == [2, 1, 1]
