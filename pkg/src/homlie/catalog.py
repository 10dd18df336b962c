"""Built-in fixtures with tagged expected claims.

Each fixture is stored in the text definition format and carries a list of
claims ``(id, expected, tag, locus)``.  ``PAPER`` values are externally
stated, ``DERIVED`` values come from the computation named in the claim
note and ``TRIVIAL`` values follow from the definitions.
:func:`run_fixture` recomputes every claim.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Callable

from . import linalg as la
from .actions import (
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
from .algebra import (
    HomLieAlgebra,
    alpha_props,
    center,
    classify,
    commutator_subspace,
    derived_subalgebra,
    direct_product,
    is_homomorphism,
    quotient_algebra,
    restrict_algebra,
    validate,
    yau_twist,
)
from .errors import (
    HomLieError,
    HypothesisFailure,
    InvariantViolation,
    NotAnIdeal,
    NotClosed,
    NotPerfect,
    UnknownFixture,
)
from .linalg import Matrix, Subspace
from .series import (
    acts_nilpotently,
    derived_sequence,
    engel_class,
    is_abelian_series,
    is_central_series,
    is_k_engel,
    lower_central_series,
    nilpotency_class,
    solvability_class,
)
from . import tensor as tz
from . import uce as uc
from .textfmt import DefinitionDocument, parse

TAGS = ("PAPER", "DERIVED", "TRIVIAL")


@dataclass(frozen=True)
class Claim:
    id: str
    expected: str
    tag: str
    locus: str
    compute: Callable = field(repr=False, compare=False)
    note: str = ""


@dataclass(frozen=True)
class ClaimResult:
    claim: Claim
    computed: str

    @property
    def passed(self) -> bool:
        return self.computed == self.claim.expected


@dataclass(frozen=True)
class Fixture:
    name: str
    summary: str
    source: str
    claims: tuple
    pairs: Callable = field(repr=False, compare=False, default=None)

    @functools.cached_property
    def document(self) -> DefinitionDocument:
        return parse(self.source)

    def tensor_pairs(self) -> list:
        """[(label, ActionPair)] of compatible pairs used by the tensor suites."""
        return [] if self.pairs is None else self.pairs(self.document)


# --------------------------------------------------------------------------
# formatting and cached constructions


def fmt_bool(b) -> str:
    return "true" if b else "false"


def fmt_vector(v, prefix: str = "a") -> str:
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        name = f"{prefix}{i + 1}"
        if c == 1:
            term = name
        elif c == -1:
            term = f"-{name}"
        else:
            term = f"{la.format_rational(c)}*{name}"
        if parts and not term.startswith("-"):
            term = "+ " + term
        elif parts:
            term = "- " + term[1:]
        parts.append(term)
    return " ".join(parts) if parts else "0"


def fmt_span(S: Subspace, prefix: str = "a") -> str:
    if S.is_zero():
        return "0"
    return "span{" + ", ".join(fmt_vector(b, prefix) for b in S.basis) + "}"


def to_ambient(S: Subspace, parent: Subspace) -> Subspace:
    """A subspace given in the coordinates of ``parent`` as one of the ambient space."""
    E = parent.embedding()
    return la.canonicalize((E.apply(b) for b in S.basis), parent.ambient_dim)


@functools.lru_cache(maxsize=None)
def tensor_of(pair) -> tz.TensorPresentation:
    return tz.tensor_product(pair.M, pair.N, pair)


@functools.lru_cache(maxsize=None)
def swapped_tensor_of(pair) -> tz.TensorPresentation:
    return tz.tensor_product(pair.N, pair.M, pair.swapped())


@functools.lru_cache(maxsize=None)
def decomposition_of(pair) -> tz.ProductDecomposition:
    return tz.product_decomposition(pair, pair)


@functools.lru_cache(maxsize=None)
def uce_of(L: HomLieAlgebra) -> uc.UceResult:
    return uc.uce(L)


def _sub(doc, name) -> Subspace:
    return doc.subspace(name)


def _pair_in(doc, alg, a, b, na=None, nb=None):
    L = doc.algebra(alg)
    return bracket_pair(L, classify(L, _sub(doc, a)), classify(L, _sub(doc, b)), na or a, nb or b)


def _self(doc, alg):
    return self_pair(doc.algebra(alg))


def _error_name(fn, *args) -> str:
    try:
        fn(*args)
    except InvariantViolation:
        raise
    except HomLieError as exc:
        return type(exc).__name__
    return "ok"


def _c(id, expected, tag, locus, fn, note=""):
    if tag not in TAGS:
        raise ValueError(tag)
    return Claim(id, expected, tag, locus, fn, note)


# --------------------------------------------------------------------------
# fixtures


def _der4() -> Fixture:
    src = """\
# four-dimensional algebra whose second derived term is not an ideal
algebra Q {
  dim 4;
  alpha = [0,0,0,0; 0,0,0,0; 0,0,0,0; 0,0,0,0];
  bracket(1,2) = [1,0,0,0];
  bracket(1,3) = [0,1,0,0];
}
subspace I in Q { vec = [1,0,0,0]; }
"""
    Q = lambda d: d.algebra("Q")

    def swap_hom(d):
        f = Matrix.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        return is_homomorphism(f, Q(d), Q(d)).verdict

    return Fixture("F.der4", "dim 4, alpha = 0, [a1,a2]=a1, [a1,a3]=a2", src, (
        _c("validate(Q)", "pass", "TRIVIAL", "der4 example", lambda d: validate(Q(d)).verdict),
        _c("[Q,Q]", "span{a1, a2}", "DERIVED", "der4 commutator",
           lambda d: fmt_span(derived_subalgebra(Q(d)).space), "oracle: span of table entries"),
        _c("Q^(2)", "span{a1}", "PAPER", "der4 example",
           lambda d: fmt_span(derived_sequence(Q(d)).term(2))),
        _c("Q^(2) is hom ideal", "false", "PAPER", "der4 example",
           lambda d: fmt_bool(derived_sequence(Q(d)).each_is_ideal[2])),
        _c("quotient(Q, span{a1})", "NotAnIdeal", "PAPER", "der4 example",
           lambda d: _error_name(quotient_algebra, Q(d), _sub(d, "I"))),
        _c("scl(Q)", "indeterminate", "DERIVED", "der4 preconditions",
           lambda d: solvability_class(Q(d)).status, "oracle: alpha_props"),
        _c("swap a1,a2 is homomorphism", "fail", "DERIVED", "homomorphism check", swap_hom,
           "oracle: direct expansion of [a2,a1]"),
    ), lambda d: [("Q*Q", _self(d, "Q"))])


def _weak2() -> Fixture:
    src = """\
# two-dimensional algebra with the weak alpha-identity but no alpha-identity
algebra M {
  dim 2;
  alpha = [0,1; 0,1];
  bracket(1,2) = [1,0];
}
subspace D in M { vec = [1,0]; }
"""
    M = lambda d: d.algebra("M")

    def props(d):
        p = alpha_props(M(d))
        return (f"surjective={fmt_bool(p.surjective)} alpha_identity={fmt_bool(p.alpha_identity)} "
                f"weak={fmt_bool(p.weak_alpha_identity)}")

    def derived_alg(d):
        return restrict_algebra(M(d), _sub(d, "D"), "[M,M]")

    def square(d):
        return tensor_of(_self(d, "M")).product

    def chain(d):
        return [Subspace.zero(2), _sub(d, "D"), Subspace.full(2)]

    return Fixture("F.weak2", "dim 2, [a1,a2]=a1, alpha = (0 1; 0 1); also F.engel2", src, (
        _c("validate(M)", "pass", "PAPER", "weak alpha-identity", lambda d: validate(M(d)).verdict),
        _c("alpha_props(M)", "surjective=false alpha_identity=false weak=true", "PAPER",
           "weak alpha-identity", props),
        _c("scl(M)", "2", "PAPER", "series example b", lambda d: str(solvability_class(M(d)))),
        _c("ncl(M)", "non_nilpotent", "PAPER", "series example b", lambda d: str(nilpotency_class(M(d)))),
        _c("M^(1)", "span{a1}", "DERIVED", "derived sequence",
           lambda d: fmt_span(derived_sequence(M(d)).term(1)), "oracle: commutator"),
        _c("M^(2)", "0", "DERIVED", "derived sequence",
           lambda d: fmt_span(derived_sequence(M(d)).term(2)), "oracle: commutator"),
        _c("0 < span{a1} < M abelian", "true", "DERIVED", "series predicates",
           lambda d: fmt_bool(is_abelian_series(M(d), chain(d)).holds), "oracle: commutator"),
        _c("0 < span{a1} < M central", "false", "DERIVED", "series predicates",
           lambda d: fmt_bool(is_central_series(M(d), chain(d)).holds), "oracle: commutator"),
        _c("engel_class([M,M])", "1", "PAPER", "Engel example e",
           lambda d: str(engel_class(derived_alg(d)).verdict)),
        _c("M*M is 2-Engel", "true", "PAPER", "Engel example e",
           lambda d: fmt_bool(is_k_engel(square(d), 2))),
        _c("engel_class(M*M)", "1", "DERIVED", "Engel example e",
           lambda d: str(engel_class(square(d)).verdict),
           "oracle: polarization; M*M is abelian because a1*a1 lies in the relations"),
    ), lambda d: [("M*M", _self(d, "M"))])


def _heis3() -> Fixture:
    src = """\
algebra Q {
  dim 3;
  alpha = [0,0,0; 0,0,0; 0,0,0];
  bracket(1,2) = [0,0,1];
}
subspace Z in Q { vec = [0,0,1]; }
"""
    Q = lambda d: d.algebra("Q")

    def epi(d):
        e = tz.lcs_quotient_epimorphism(Q(d), 0)
        return f"source={e.source.dim} target={e.target.dim} surjective={fmt_bool(e.surjective)}"

    def semi(d):
        S = semidirect(Q(d), Q(d), self_pair(Q(d)).forward)
        return f"dim={S.algebra.dim} {validate(S.algebra).verdict}"

    return Fixture("F.heis3", "dim 3, alpha = 0, [a1,a2]=a3", src, (
        _c("validate(Q)", "pass", "PAPER", "series example c", lambda d: validate(Q(d)).verdict),
        _c("bracket(a1,a2)", "a3", "PAPER", "series example c",
           lambda d: fmt_vector(Q(d).bracket((1, 0, 0), (0, 1, 0)))),
        _c("Z(Q)", "span{a3}", "DERIVED", "center", lambda d: fmt_span(center(Q(d)).space),
           "oracle: kernel computation"),
        _c("Q^[1]", "span{a3}", "DERIVED", "lower central series",
           lambda d: fmt_span(lower_central_series(Q(d)).term(1)), "oracle: commutator"),
        _c("ncl(Q)", "2", "PAPER", "series example c", lambda d: str(nilpotency_class(Q(d)))),
        _c("0 < span{a3} < Q central", "true", "DERIVED", "series predicates",
           lambda d: fmt_bool(is_central_series(Q(d), [Subspace.zero(3), _sub(d, "Z"), Subspace.full(3)]).holds),
           "oracle: commutator"),
        _c("uce(Q)", "NotPerfect", "TRIVIAL", "perfectness gate", lambda d: _error_name(uc.uce, Q(d))),
        _c("lcs epimorphism i=0", "source=4 target=1 surjective=true", "DERIVED", "epimorphism",
           epi, "oracle: construction and rank"),
        _c("center(QxQ) dim", "2", "DERIVED", "direct product",
           lambda d: str(center(direct_product(Q(d), Q(d))).space.rank), "oracle: center"),
        _c("Q x| Q by bracket", "dim=6 pass", "DERIVED", "semidirect product", semi, "oracle: validate"),
    ), lambda d: [("Q*Q", _self(d, "Q"))])


def _gh3() -> Fixture:
    src = """\
algebra M {
  dim 3;
  alpha = [0,0,0; 0,0,0; 0,0,0];
  bracket(1,2) = [0,1,0];
  bracket(2,3) = [0,1,0];
}
subspace G in M { vec = [1,0,0]; vec = [0,1,0]; }
subspace H in M { vec = [0,1,0]; vec = [0,0,1]; }
subspace K in M { vec = [0,1,0]; }
"""
    M = lambda d: d.algebra("M")
    GH = lambda d: _pair_in(d, "M", "G", "H")
    a2 = (0, 1, 0)

    def coords(d, name):
        return _sub(d, name).coordinates(a2)

    def induced(d, side):
        pr = GH(d)
        if side == "HG":
            return to_ambient(induced_subspace(pr.backward).space, _sub(d, "G"))
        return to_ambient(induced_subspace(pr.forward).space, _sub(d, "H"))

    def ncl_induced(d, side):
        pr = GH(d)
        act = pr.backward if side == "HG" else pr.forward
        return str(nilpotency_class(restrict_algebra(act.target, induced_subspace(act).space)))

    def lcs1(d):
        T = tensor_of(GH(d))
        gen = la.canonicalize([T.star(coords(d, "G"), coords(d, "H"))], T.dim)
        return fmt_bool(lower_central_series(T.product).term(1) == gen)

    def h_on_g(d):
        act = GH(d).backward  # H acting on G; G basis (a1, a2), H basis (a2, a3)
        return (f"^a2 a1 = {fmt_vector(_sub(d, 'G').embedding().apply(act.table[0][0]))}, "
                f"^a3 a2 = {fmt_vector(_sub(d, 'G').embedding().apply(act.table[1][1]))}")

    def half_trivial(d):
        pr = GH(d)
        return fmt_bool(check_compatible(pr.forward, HomAction.trivial(pr.N, pr.M)).compatible)

    def kg(d):
        return la.canonicalize([coords(d, "G")], 2)

    def kh(d):
        return la.canonicalize([coords(d, "H")], 2)

    def rex(d, against):
        pr = _pair_in(d, "M", "G", against)
        return fmt_bool(tz.ideal_right_exactness(pr, kg(d), ("K", "G/K")).exact)

    def qiso(d):
        q = tz.quotient_iso(GH(d), kg(d), kh(d), tensor_of(GH(d)))
        return f"iso={fmt_bool(q.isomorphism)} dim={q.source.dim}"

    def functor(d):
        pr = GH(d)
        fq = descend_action(pr.forward, kg(d), kh(d), "G/K", "H/K")
        bq = descend_action(pr.backward, kh(d), kg(d), "H/K", "G/K")
        pq = check_compatible(fq, bq)
        Tq = tensor_of(pq)
        pG = la.quotient_of(2, kg(d)).projection
        pH = la.quotient_of(2, kh(d)).projection
        return fmt_bool(tz.tensor_functor(pG, pH, tensor_of(pr), Tq).is_surjective())

    def sym_dims(d):
        pr = GH(d)
        return fmt_bool(tensor_of(pr).dim == swapped_tensor_of(pr).dim)

    def gen_count(d):
        pr = GH(d)
        return str(len(tz.relation_generators(pr.M, pr.N, pr)))

    return Fixture("F.gh3", "dim 3, alpha = 0, [a1,a2]=a2, [a2,a3]=a2; G, H, K ideals", src, (
        _c("G, H, K hom ideals", "true", "PAPER", "tensor example c",
           lambda d: fmt_bool(all(classify(M(d), _sub(d, n)).is_hom_ideal for n in "GHK"))),
        _c("G, H compatible", "true", "PAPER", "tensor example c", lambda d: fmt_bool(GH(d).compatible)),
        _c("H on G", "^a2 a1 = -a2, ^a3 a2 = -a2", "DERIVED", "bracket action", h_on_g,
           "oracle: bracket table"),
        _c("bracket forward, trivial backward", "false", "DERIVED", "compatibility", half_trivial,
           "oracle: direct expansion"),
        _c("^H G", "span{a2}", "PAPER", "tensor example c", lambda d: fmt_span(induced(d, "HG"))),
        _c("ncl(^H G)", "1", "PAPER", "tensor example c", lambda d: ncl_induced(d, "HG")),
        _c("^G H", "span{a2}", "PAPER", "tensor example c", lambda d: fmt_span(induced(d, "GH"))),
        _c("ncl(^G H)", "1", "PAPER", "tensor example c", lambda d: ncl_induced(d, "GH")),
        _c("(G*H)^[1] = span{a2*a2}", "true", "PAPER", "tensor example c", lcs1),
        _c("ncl(G*H)", "2", "PAPER", "tensor example c",
           lambda d: str(nilpotency_class(tensor_of(GH(d)).product)),
           "relation iii puts a2 (x) a2 in R, so G*H is abelian"),
        _c("a2*a2 in G*H", "zero", "DERIVED", "star of a2, a2",
           lambda d: "zero" if la.is_zero(tensor_of(GH(d)).star(coords(d, "G"), coords(d, "H"))) else "nonzero",
           "oracle: membership of a2 (x) a2 in R"),
        _c("relation generator count", "100", "DERIVED", "relation families", gen_count,
           "oracle: 8 + 8 + 16 + 64 + 4"),
        _c("dim(G*H) = dim(H*G)", "true", "DERIVED", "symmetry", sym_dims, "oracle: both constructions"),
        _c("right exactness K -> G -> G/K against K", "true", "DERIVED", "right exactness",
           lambda d: rex(d, "K"), "oracle: rank and kernel"),
        _c("right exactness K -> G -> G/K against H", "HypothesisFailure", "DERIVED", "right exactness",
           lambda d: _error_name(rex, d, "H"), "a2 acts nontrivially on H, so G/K has no induced action"),
        _c("quotient iso with K", "iso=true dim=1", "DERIVED", "quotient isomorphism", qiso,
           "oracle: both constructions and rank"),
        _c("projections G->G/K, H->H/K induce surjection", "true", "DERIVED", "functoriality", functor,
           "oracle: rank"),
    ), lambda d: [("G*H", GH(d)), ("G*K", _pair_in(d, "M", "G", "K")), ("M*M", _self(d, "M"))])


def _nil4() -> Fixture:
    src = """\
algebra M {
  dim 4;
  alpha = [0,0,0,0; 0,0,0,0; 0,0,0,0; 0,0,0,0];
  bracket(1,2) = [0,0,1,0];
  bracket(1,3) = [0,0,0,1];
  bracket(2,3) = [1,0,0,0];
}
"""
    M = lambda d: d.algebra("M")

    def nine(d):
        T = tensor_of(_self(d, "M"))
        e = lambda i: la.unit_vector(4, i)
        gens = la.canonicalize([T.star(e(i), e(j)) for i in (0, 2, 3) for j in (0, 2, 3)], T.dim)
        return fmt_bool(lower_central_series(T.product).term(1) == gens)

    def epi(d):
        e = tz.lcs_quotient_epimorphism(M(d), 1)
        return f"source={e.source.dim} target={e.target.dim} surjective={fmt_bool(e.surjective)}"

    return Fixture("F.nil4", "dim 4, alpha = 0, [a1,a2]=a3, [a1,a3]=a4, [a2,a3]=a1", src, (
        _c("[M,M]", "span{a1, a3, a4}", "PAPER", "tensor example d",
           lambda d: fmt_span(derived_subalgebra(M(d)).space)),
        _c("ncl([M,M])", "2", "PAPER", "tensor example d",
           lambda d: str(nilpotency_class(restrict_algebra(M(d), derived_subalgebra(M(d)).space)))),
        _c("ncl(M*M)", "3", "PAPER", "tensor example d",
           lambda d: str(nilpotency_class(tensor_of(_self(d, "M")).product))),
        _c("(M*M)^[1] = span of nine listed generators", "true", "PAPER", "tensor example d", nine),
        _c("lcs epimorphism i=1", "source=0 target=0 surjective=true", "DERIVED", "epimorphism", epi,
           "oracle: construction and rank"),
    ), lambda d: [("M*M", _self(d, "M"))])


def _nonnil3() -> Fixture:
    src = """\
algebra Q {
  dim 3;
  alpha = [0,0,0; 0,0,0; 0,0,0];
  bracket(1,2) = [0,1,0];
  bracket(2,3) = [0,0,1];
}
subspace M in Q { vec = [0,1,0]; vec = [0,0,1]; }
subspace MM in Q { vec = [0,0,1]; }
"""
    Q = lambda d: d.algebra("Q")

    def quot(d):
        return quotient_algebra(Q(d), _sub(d, "MM"), "Q/[M,M]")[0]

    def quot_str(d):
        A = quot(d)
        return f"dim={A.dim} [a1,a2]={fmt_vector(A.structure[0][1])}"

    def Malg(d):
        return restrict_algebra(Q(d), _sub(d, "M"), "M")

    def on_abelianized(d):
        # Q acts on M/[M,M] by ^q (m + [M,M]) = [q, m] + [M,M]
        act = HomAction(Q(d), Malg(d), tuple(
            tuple(_sub(d, "M").coordinates(Q(d).bracket(q, m)) for m in _sub(d, "M").basis)
            for q in Q(d).basis()))
        inner = la.canonicalize([_sub(d, "M").coordinates(v) for v in _sub(d, "MM").basis], 2)
        return acts_nilpotently(quotient_action(act, inner, "M/[M,M]")).status

    def qa(d):
        act = self_pair(Q(d)).forward
        return validate_action(quotient_action(act, _sub(d, "MM"), "Q/[M,M]")).verdict

    return Fixture("F.nonnil3", "dim 3, alpha = 0, [a1,a2]=a2, [a2,a3]=a3", src, (
        _c("ncl(Q)", "non_nilpotent", "PAPER", "surjectivity counterexample",
           lambda d: str(nilpotency_class(Q(d)))),
        _c("[M,M]", "span{a3}", "DERIVED", "surjectivity counterexample",
           lambda d: fmt_span(to_ambient(derived_subalgebra(Malg(d)).space, _sub(d, "M"))),
           "oracle: commutator"),
        _c("Q/[M,M]", "dim=2 [a1,a2]=a2", "PAPER", "surjectivity counterexample", quot_str),
        _c("ncl(Q/[M,M])", "2", "PAPER", "surjectivity counterexample",
           lambda d: str(nilpotency_class(quot(d))),
           "the quotient has [a1,a2]=a2, so its lower central series stabilizes at span{a2}"),
        _c("ncl(M)", "non_nilpotent", "DERIVED", "surjectivity counterexample",
           lambda d: str(nilpotency_class(Malg(d))), "oracle: lower central series; the sequence stalls at span{a3}"),
        _c("M^[2]", "span{a3}", "DERIVED", "surjectivity counterexample",
           lambda d: fmt_span(to_ambient(lower_central_series(Malg(d)).term(2), _sub(d, "M"))),
           "oracle: lower central series"),
        _c("Q acts nilpotently on M/[M,M]", "no", "DERIVED", "nilpotent action", on_abelianized,
           "oracle: action chain"),
        _c("bracket action on Q/span{a3}", "pass", "DERIVED", "quotient action", qa, "oracle: validate_action"),
    ), lambda d: [("Q*Q", _self(d, "Q"))])


def _perfpair() -> Fixture:
    src = """\
# three- and four-dimensional perfect algebras with mutual actions
algebra M {
  dim 3;
  alpha = [0,0,0; 0,0,0; 0,0,0];
  bracket(1,2) = [0,0,1];
  bracket(1,3) = [0,1,0];
  bracket(2,3) = [1,0,0];
}
algebra N {
  dim 4;
  alpha = [0,0,0,0; 0,0,0,0; 0,0,0,0; 0,0,0,0];
  bracket(1,2) = [0,0,1,0];
  bracket(1,3) = [0,1,0,0];
  bracket(1,4) = [0,0,0,1];
  bracket(2,3) = [1,0,0,0];
}
# entry ^{e2}a3 = -^{e3}a2 = a1; the fourth action term is read as ^{e1}a4 = a4
action M -> N {
  act(1,2) = [0,0,1,0];
  act(2,1) = [0,0,-1,0];
  act(1,3) = [0,1,0,0];
  act(3,1) = [0,-1,0,0];
  act(1,4) = [0,0,0,1];
  act(2,3) = [1,0,0,0];
  act(3,2) = [-1,0,0,0];
}
action N -> M {
  act(1,2) = [0,0,1];
  act(2,1) = [0,0,-1];
  act(1,3) = [0,1,0];
  act(3,1) = [0,-1,0];
  act(2,3) = [1,0,0];
  act(3,2) = [-1,0,0];
}
subspace A3 in N { vec = [0,0,1,0]; }
"""
    M = lambda d: d.algebra("M")
    N = lambda d: d.algebra("N")

    def pair(d):
        return check_compatible(d.action("M", "N"), d.action("N", "M"))

    def witness(d):
        p = pair(d)
        if p.compatible:
            return "none"
        w = p.witnesses[0]
        return f"{w.identity} {w.indices}"

    def ptc(d):
        p = pair(d)
        if not p.compatible:
            return "not run"
        return fmt_bool(uc.perfect_tensor_check(M(d), N(d), p))

    def uce_m(d):
        U = uce_of(M(d))
        return f"dim={U.algebra.dim} h2={U.h2.rank} central={fmt_bool(U.central)}"

    return Fixture("F.perfpair", "perfect M (dim 3) and N (dim 4), alpha = 0, mutual actions", src, (
        _c("perfect(M)", "true", "PAPER", "perfect example", lambda d: fmt_bool(uc.is_perfect(M(d)))),
        _c("perfect(N)", "true", "PAPER", "perfect example", lambda d: fmt_bool(uc.is_perfect(N(d)))),
        _c("^N M = M", "true", "PAPER", "perfect example",
           lambda d: fmt_bool(induced_subspace(d.action("N", "M")).space.is_full())),
        _c("^M N = N", "true", "PAPER", "perfect example",
           lambda d: fmt_bool(induced_subspace(d.action("M", "N")).space.is_full())),
        _c("action M on N", "pass", "DERIVED", "perfect example",
           lambda d: validate_action(d.action("M", "N")).verdict, "oracle: validate_action"),
        _c("action N on M", "pass", "DERIVED", "perfect example",
           lambda d: validate_action(d.action("N", "M")).verdict, "oracle: validate_action"),
        _c("compatible", "false", "DERIVED", "perfect example", lambda d: fmt_bool(pair(d).compatible),
           "oracle: check_compatible; [a1, ^e1 a4] = a4 while ^(^a4 e1) a1 = 0"),
        _c("first compatibility witness", "forward (4, 1, 1)", "DERIVED", "perfect example", witness,
           "oracle: check_compatible"),
        _c("perfect_tensor_check(M, N)", "not run", "DERIVED", "perfect tensor", ptc,
           "gated on compatibility"),
        _c("uce(M)", "dim=3 h2=0 central=true", "DERIVED", "universal central extension", uce_m,
           "oracle: construction"),
        _c("omega(M)", "HypothesisFailure", "TRIVIAL", "omega preconditions",
           lambda d: _error_name(uc.omega, M(d))),
        _c("restrict M on N to target span{a3}", "NotClosed", "DERIVED", "restriction",
           lambda d: _error_name(restrict_action, d.action("M", "N"), Subspace.full(3), _sub(d, "A3")),
           "oracle: ^e2 a3 = a1 escapes"),
    ), lambda d: [("M*M", _self(d, "M")), ("N*N", _self(d, "N"))])


def _metab() -> Fixture:
    src = """\
# two-step nilpotent (hence metabelian) algebra
algebra A {
  dim 4;
  alpha = [0,0,0,0; 0,0,0,0; 0,0,0,0; 0,0,0,0];
  bracket(1,2) = [0,0,1,0];
  bracket(2,4) = [0,0,1,0];
}
# metabelian but not two-step nilpotent
algebra B {
  dim 2;
  alpha = [0,0; 0,0];
  bracket(1,2) = [1,0];
}
"""
    A = lambda d: d.algebra("A")
    B = lambda d: d.algebra("B")

    def decomp(d, name, trivial=False):
        L = d.algebra(name)
        p = trivial_pair(L, L) if trivial else self_pair(L)
        r = decomposition_of(p)
        return f"iso={fmt_bool(r.isomorphism)} dims={r.tensor.dim},{r.product.dim}"

    def hyp(d, name):
        L = d.algebra(name)
        try:
            tz.product_decomposition(self_pair(L), self_pair(L))
        except HypothesisFailure as exc:
            return f"HypothesisFailure({exc.hypothesis})"
        return "ok"

    return Fixture("F.metab", "metabelian algebras with zero twist acting on themselves", src, (
        _c("validate(A)", "pass", "TRIVIAL", "zero twist", lambda d: validate(A(d)).verdict),
        _c("product decomposition, A = B = C = A", "iso=true", "PAPER", "product example a",
           lambda d: decomp(d, "A").split()[0]),
        _c("dims of both sides, A = B = C = A", "iso=true dims=30,30", "DERIVED", "product example a",
           lambda d: decomp(d, "A"), "oracle: both constructions and rank"),
        _c("product decomposition, trivial actions on A", "iso=true dims=32,32", "PAPER",
           "product example b", lambda d: decomp(d, "A", trivial=True)),
        _c("product decomposition hypotheses on B", "HypothesisFailure(3)", "DERIVED", "product example a",
           lambda d: hyp(d, "B"), "[[B,B],B] != 0, so ^B B acts nontrivially"),
    ), lambda d: [("A*A", _self(d, "A")), ("B*B", _self(d, "B")), ("A*A trivial", trivial_pair(A(d), A(d)))])


def _sl2() -> Fixture:
    src = """\
# basis h, e, f
algebra sl2 {
  dim 3;
  alpha = [1,0,0; 0,1,0; 0,0,1];
  bracket(1,2) = [0,2,0];
  bracket(1,3) = [0,0,-2];
  bracket(2,3) = [1,0,0];
}
"""
    S = lambda d: d.algebra("sl2")
    SS = lambda d: direct_product(S(d), S(d), "sl2xsl2")

    def yau(d):
        beta = Matrix.from_rows([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
        return validate(yau_twist(S(d), beta)).verdict

    def square(d):
        T = tensor_of(_self(d, "sl2"))
        return f"dim={T.dim} R={T.relations.rank}"

    def cover(d):
        U = uce_of(S(d))
        ext = uc.check_extension(U.u, U.algebra, S(d))
        return (f"h2={U.h2.rank} surjective={fmt_bool(ext.surjective)} central={fmt_bool(ext.central)} "
                f"iso={fmt_bool(U.u.is_injective() and U.u.is_surjective())}")

    def pairing(d):
        p = _self(d, "sl2")
        T = tensor_of(p)
        h = tz.bracket_pairing(S(d), Subspace.full(3), Subspace.full(3), p)
        return fmt_bool(tz.validate_pairing(h).passed and tz.pairing_factorization(h, T) == T.psiM)

    def plain_swap(d):
        return _error_name(tz.symmetry_iso, tensor_of(_self(d, "sl2")), None, 1)

    def om(d, L):
        r = uc.omega(L)
        return (f"surjective={fmt_bool(r.surjective)} square={fmt_bool(r.square_commutes)} "
                f"iso={fmt_bool(r.iso_flag and r.bijective)}")

    def eh(d, L):
        r = uc.eta_h_sequence(L)
        return f"exact={fmt_bool(r.exact)} central={fmt_bool(r.central)}"

    def hyp2(d):
        try:
            tz.product_decomposition(_self(d, "sl2"), _self(d, "sl2"))
        except HypothesisFailure as exc:
            return f"HypothesisFailure({exc.hypothesis})"
        return "ok"

    def ext_product(d):
        ab = HomLieAlgebra.from_brackets("ab1", 1, {})
        P = direct_product(ab, S(d))
        pi = Matrix.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        r = uc.check_extension(pi, P, S(d))
        return f"central={fmt_bool(r.is_central_extension)} kernel={r.kernel.rank}"

    return Fixture("F.sl2", "sl2 with basis (h, e, f) and identity twist", src, (
        _c("validate(sl2)", "pass", "DERIVED", "standard structure constants", lambda d: validate(S(d)).verdict,
           "oracle: validate"),
        _c("bracket(e,f)", "a1", "DERIVED", "standard structure constants",
           lambda d: fmt_vector(S(d).bracket((0, 1, 0), (0, 0, 1))), "oracle: hand expansion"),
        _c("Z(sl2)", "0", "DERIVED", "center", lambda d: fmt_span(center(S(d)).space), "oracle: kernel"),
        _c("perfect(sl2)", "true", "DERIVED", "perfectness", lambda d: fmt_bool(uc.is_perfect(S(d))),
           "oracle: commutator"),
        _c("Yau twist by e<->f, h->-h", "pass", "DERIVED", "Yau twist", yau, "oracle: validate"),
        _c("sl2*sl2", "dim=3 R=6", "DERIVED", "tensor square", square, "oracle: rank of R"),
        _c("uce(sl2)", "h2=0 surjective=true central=true iso=true", "DERIVED", "universal central extension",
           cover, "oracle: kernel rank"),
        _c("bracket pairing factors through psi_M", "true", "DERIVED", "pairing", pairing,
           "oracle: matrix comparison"),
        _c("plain swap m*n -> n*m", "WellDefinednessFailure", "DERIVED", "symmetry", plain_swap,
           "only the signed swap is a homomorphism"),
        _c("perfect_tensor_check(sl2, sl2)", "true", "DERIVED", "perfect tensor",
           lambda d: fmt_bool(uc.perfect_tensor_check(S(d), S(d), _self(d, "sl2"))), "oracle: commutator"),
        _c("perfect_tensor_check with trivial actions", "HypothesisFailure", "PAPER", "perfect tensor",
           lambda d: _error_name(uc.perfect_tensor_check, S(d), S(d), trivial_pair(S(d), S(d)))),
        _c("product decomposition A = B = C = sl2", "HypothesisFailure(2)", "DERIVED", "product hypotheses",
           hyp2, "oracle: [b,[c,a]] != [c,[b,a]]"),
        _c("eta_h(sl2)", "exact=true central=true", "DERIVED", "eta sequence", lambda d: eh(d, S(d)),
           "oracle: construction"),
        _c("omega(sl2)", "surjective=true square=true iso=true", "DERIVED", "omega", lambda d: om(d, S(d)),
           "oracle: ranks"),
        _c("eta_h(sl2 x sl2)", "exact=true central=true", "DERIVED", "eta sequence", lambda d: eh(d, SS(d)),
           "oracle: construction"),
        _c("omega(sl2 x sl2)", "surjective=true square=true iso=true", "DERIVED", "omega",
           lambda d: om(d, SS(d)), "oracle: ranks"),
        _c("ab1 x sl2 -> sl2", "central=true kernel=1", "TRIVIAL", "central extension", ext_product),
    ), lambda d: [("sl2*sl2", _self(d, "sl2")), ("sl2*sl2 trivial", trivial_pair(S(d), S(d)))])


def abelian_source(p: int) -> str:
    rows = "; ".join(",".join("0" for _ in range(p)) for _ in range(p))
    return f"algebra A{p} {{\n  dim {p};\n  alpha = [{rows}];\n}}\n"


def _ab(p: int) -> Fixture:
    A = lambda d: d.algebra(f"A{p}")

    def sq(d):
        T = tensor_of(_self(d, f"A{p}"))
        return f"dim={T.dim} abelian={fmt_bool(T.product.is_abelian())}"

    return Fixture(f"F.ab({p})", f"abelian algebra of dimension {p} with zero twist", abelian_source(p), (
        _c("validate", "pass", "TRIVIAL", "abelian", lambda d: validate(A(d)).verdict),
        _c("ncl", "1" if p else "0", "PAPER", "series example a", lambda d: str(nilpotency_class(A(d)))),
        _c("center is whole", "true", "TRIVIAL", "abelian", lambda d: fmt_bool(center(A(d)).space.is_full())),
        _c("engel_class", "1", "TRIVIAL", "abelian", lambda d: str(engel_class(A(d)).verdict)),
        _c("A*A", f"dim={p * p} abelian=true", "TRIVIAL", "abelian", sq),
    ), lambda d: [("A*A", _self(d, f"A{p}"))])


_BUILDERS = {
    "F.der4": _der4,
    "F.weak2": _weak2,
    "F.heis3": _heis3,
    "F.gh3": _gh3,
    "F.nil4": _nil4,
    "F.nonnil3": _nonnil3,
    "F.perfpair": _perfpair,
    "F.metab": _metab,
    "F.sl2": _sl2,
}
_ALIASES = {"F.engel2": "F.weak2"}
_AB_ROSTER = (1, 2, 3, 4)
_AB = re.compile(r"F\.ab\((\d+)\)$")


def catalog_list() -> list:
    return list(_BUILDERS) + [f"F.ab({p})" for p in _AB_ROSTER]


def catalog_get(name: str) -> Fixture:
    return _load(_ALIASES.get(name, name))


@functools.lru_cache(maxsize=None)
def _load(name: str) -> Fixture:
    if name in _BUILDERS:
        return _BUILDERS[name]()
    m = _AB.match(name)
    if m and int(m.group(1)) <= 12:
        return _ab(int(m.group(1)))
    raise UnknownFixture(f"no fixture named {name!r}")


def run_fixture(name: str) -> list:
    """Recompute every claim; HomLieErrors other than InvariantViolation become 'error:<type>'."""
    fx = catalog_get(name)
    out = []
    for c in fx.claims:
        try:
            value = c.compute(fx.document)
        except InvariantViolation:
            raise
        except HomLieError as exc:
            value = f"error:{type(exc).__name__}"
        out.append(ClaimResult(c, value))
    return out
