"""Perfect algebras, central extensions and the tensor-square universal cover."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .actions import ActionPair, induced_subspace, self_pair
from .algebra import HomLieAlgebra, center, derived_subalgebra, is_homomorphism, restrict_algebra
from .errors import HypothesisFailure, InvariantViolation, NotAHomomorphism, NotPerfect
from .linalg import Matrix, Subspace
from .tensor import (
    EtaSequence,
    ShortExactSequence,
    TensorPresentation,
    eta_sequence,
    tensor_functor,
    tensor_product,
)


def is_perfect(M: HomLieAlgebra) -> bool:
    return derived_subalgebra(M).space.is_full()


@dataclass(frozen=True)
class ExtensionCheck:
    pi: Matrix = field(repr=False)
    source: HomLieAlgebra = field(repr=False)
    target: HomLieAlgebra = field(repr=False)
    kernel: Subspace
    surjective: bool
    central: bool

    @property
    def is_central_extension(self) -> bool:
        return self.surjective and self.central


def check_extension(pi: Matrix, source: HomLieAlgebra, target: HomLieAlgebra) -> ExtensionCheck:
    rep = is_homomorphism(pi, source, target)
    if not rep.passed:
        raise NotAHomomorphism("extension map is not a homomorphism", rep)
    ker = pi.kernel()
    central = all(
        la.is_zero(source.bracket(k, e)) for k in ker.basis for e in source.basis()
    )
    return ExtensionCheck(pi, source, target, ker, pi.is_surjective(), central)


@dataclass(frozen=True)
class UceResult:
    base: HomLieAlgebra
    uce: TensorPresentation = field(repr=False)
    u: Matrix = field(repr=False)
    h2: Subspace
    central: bool
    perfect: bool

    @property
    def algebra(self) -> HomLieAlgebra:
        return self.uce.product


def uce(M: HomLieAlgebra, name: str | None = None) -> UceResult:
    """Universal central extension M * M --psi--> M of a perfect algebra."""
    if not is_perfect(M):
        raise NotPerfect(f"{M.name} is not perfect", hypothesis="perfect")
    T = tensor_product(M, M, self_pair(M), name=name or f"uce({M.name})")
    ext = check_extension(T.psiM, T.product, M)
    if not ext.surjective:
        raise InvariantViolation("covering map of a perfect algebra is not surjective")
    if not ext.central:
        raise InvariantViolation("kernel of the covering map is not central")
    if not is_perfect(T.product):
        raise InvariantViolation("tensor square of a perfect algebra is not perfect")
    return UceResult(M, T, T.psiM, ext.kernel, True, True)


def perfect_tensor_check(M: HomLieAlgebra, N: HomLieAlgebra, pair: ActionPair) -> bool:
    """M * N is perfect when M, N are perfect and ^N M = M, ^M N = N."""
    failed = []
    if not is_perfect(M):
        failed.append(f"{M.name} perfect")
    if not is_perfect(N):
        failed.append(f"{N.name} perfect")
    NM = induced_subspace(pair.backward).space
    MN = induced_subspace(pair.forward).space
    if not NM.is_full():
        failed.append(f"^{N.name} {M.name} = {M.name}")
    if not MN.is_full():
        failed.append(f"^{M.name} {N.name} = {N.name}")
    if failed:
        raise HypothesisFailure("unmet: " + ", ".join(failed), hypothesis=tuple(failed))
    T = tensor_product(M, N, pair)
    if not T.star_span(NM, MN).contains_subspace(Subspace.full(T.dim)):
        raise InvariantViolation("M * N is not spanned by ^N M * ^M N")
    if not is_perfect(T.product):
        raise InvariantViolation(f"{T.product.name} is not perfect")
    return True


def _require_perfect_surjective(G: HomLieAlgebra) -> None:
    if not is_perfect(G):
        raise NotPerfect(f"{G.name} is not perfect", hypothesis="perfect")
    if not G.alpha.is_surjective():
        raise HypothesisFailure(f"twist of {G.name} is not surjective", hypothesis="alpha_surjective")


def covering_sequence(U: UceResult) -> ShortExactSequence:
    """0 -> H2 -> uce(G) -> G -> 0."""
    T = U.uce
    H2 = restrict_algebra(T.product, U.h2, f"H2({U.base.name})")
    return ShortExactSequence(H2, T.product, U.base, U.h2.embedding(), U.u)


@dataclass(frozen=True)
class EtaHSequence:
    cover: UceResult = field(repr=False)
    eta: EtaSequence = field(repr=False)
    eta_image: Subspace
    exact: bool
    central: bool  # kernel of psi * psi central in uce(G) * uce(G)


def eta_h_sequence(G: HomLieAlgebra) -> EtaHSequence:
    """H --eta--> uce(G) * uce(G) --psi*psi--> G * G -> 0."""
    _require_perfect_surjective(G)
    U = uce(G)
    seq = covering_sequence(U)
    rec = eta_sequence(seq, seq, self_pair(U.algebra), self_pair(G))
    Z = center(rec.LK.product).space
    central = Z.contains_subspace(rec.kernel_sigma) and rec.sigma_surjective
    return EtaHSequence(U, rec, rec.image_eta, rec.exact, central)


@dataclass(frozen=True)
class OmegaResult:
    omega: Matrix = field(repr=False)
    source: TensorPresentation = field(repr=False)  # uce(G * G)
    target: TensorPresentation = field(repr=False)  # uce(G) * uce(G)
    surjective: bool
    square_commutes: bool
    iso_flag: bool  # H2(G * G) matches the image of eta
    bijective: bool


def omega(G: HomLieAlgebra) -> OmegaResult:
    """uce(G * G) -> uce(G) * uce(G), x * y -> x * y, with its commuting square."""
    _require_perfect_surjective(G)
    UG = uce(G)
    GG = UG.algebra
    UGG = uce(GG)
    W1 = UGG.uce
    W2 = tensor_product(UG.algebra, UG.algebra, self_pair(UG.algebra))
    if W1.ambient_dim != W2.ambient_dim:
        raise InvariantViolation("the two covers live on different ambient spaces")
    w = la.induce_map(Matrix.identity(W1.ambient_dim), W1.quotient, W2.quotient, stage="omega")
    rep = is_homomorphism(w, W1.product, W2.product, limit=1)
    if not rep.passed:
        raise InvariantViolation("omega is not a homomorphism")
    psi_psi = tensor_functor(UG.u, UG.u, W2, UG.uce)
    square = psi_psi @ w == W1.psiM
    eh = eta_h_sequence(G)
    h2_image = la.canonicalize((w.apply(v) for v in UGG.h2.basis), W2.dim)
    iso_flag = h2_image == eh.eta_image
    bijective = w.nrows == w.ncols and w.rank == w.ncols
    if iso_flag and not bijective:
        raise InvariantViolation("omega is flagged as an isomorphism but is not bijective")
    return OmegaResult(w, W1, W2, w.is_surjective(), square, iso_flag, bijective)
