import pytest

from homlie.actions import self_pair, trivial_pair
from homlie.algebra import direct_product
from homlie.catalog import catalog_get
from homlie.errors import HypothesisFailure, NotAHomomorphism, NotPerfect
from homlie.linalg import Matrix
from homlie import uce as uc


def sl2():
    return catalog_get("F.sl2").document.algebra("sl2")


def test_perfectness():
    assert uc.is_perfect(sl2())
    assert not uc.is_perfect(catalog_get("F.heis3").document.algebra("Q"))


def test_uce_of_sl2_is_trivial_cover():
    U = uc.uce(sl2())
    assert U.algebra.dim == 3 and U.h2.rank == 0
    seq = uc.covering_sequence(U)
    assert seq.check() is None


def test_uce_rejects_non_perfect():
    with pytest.raises(NotPerfect):
        uc.uce(catalog_get("F.heis3").document.algebra("Q"))


def test_check_extension_rejects_non_homomorphism():
    S = sl2()
    with pytest.raises(NotAHomomorphism):
        uc.check_extension(Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]), S, S)


def test_perfect_tensor_check_hypotheses():
    S = sl2()
    assert uc.perfect_tensor_check(S, S, self_pair(S))
    with pytest.raises(HypothesisFailure) as exc:
        uc.perfect_tensor_check(S, S, trivial_pair(S, S))
    assert len(exc.value.hypothesis) == 2


def test_omega_requires_surjective_twist():
    M = catalog_get("F.perfpair").document.algebra("M")
    assert uc.is_perfect(M)
    with pytest.raises(HypothesisFailure):
        uc.omega(M)


@pytest.mark.parametrize("double", [False, True], ids=["sl2", "sl2xsl2"])
def test_eta_h_and_omega(double):
    G = direct_product(sl2(), sl2()) if double else sl2()
    eh = uc.eta_h_sequence(G)
    assert eh.exact and eh.central
    r = uc.omega(G)
    assert r.surjective and r.square_commutes and r.iso_flag and r.bijective
