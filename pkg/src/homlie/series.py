"""Derived sequences, lower central series, class verdicts and Engel tests."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .actions import HomAction
from .algebra import HomLieAlgebra, HomSubspace, alpha_props, classify, commutator_subspace
from .errors import ChainNotNested
from .linalg import Subspace


@dataclass(frozen=True)
class ClassVerdict:
    """Outcome of a class computation.

    ``status`` is one of ``class``, ``non_nilpotent``, ``non_solvable``,
    ``not_within_bound`` or ``indeterminate``; ``value`` is set for ``class``.
    """

    status: str
    value: int | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.status == "class":
            return str(self.value)
        if self.reason:
            return f"{self.status}({self.reason})"
        return self.status

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.status == "class" and self.value == other
        if isinstance(other, str):
            return str(self) == other or self.status == other
        if isinstance(other, ClassVerdict):
            return (self.status, self.value, self.reason) == (other.status, other.value, other.reason)
        return NotImplemented

    def __hash__(self):
        return hash((self.status, self.value, self.reason))

    @property
    def known(self) -> bool:
        return self.status == "class"


@dataclass(frozen=True)
class SeriesReport:
    algebra: HomLieAlgebra = field(repr=False)
    kind: str  # "derived" or "lower_central"
    chain: tuple  # of HomSubspace, chain[0] = whole algebra
    each_is_ideal: tuple
    stabilized_at: int | None
    class_verdict: ClassVerdict

    def term(self, i: int) -> Subspace:
        """i-th term; terms past the recorded chain repeat the stabilized value."""
        if i < len(self.chain):
            return self.chain[i].space
        if self.stabilized_at is None:
            raise IndexError(f"term {i} was not computed")
        return self.chain[-1].space

    def dims(self) -> list:
        return [t.dim for t in self.chain]


def _iterate(Q: HomLieAlgebra, step, max_iter: int | None):
    if max_iter is None:
        max_iter = Q.dim + 1
    chain = [classify(Q, Subspace.full(Q.dim))]
    stabilized = None
    for i in range(max_iter):
        nxt = step(chain[-1])
        chain.append(nxt)
        if nxt.space == chain[-2].space:
            stabilized = i
            break
        if nxt.space.is_zero():
            break
    return chain, stabilized


def _first_zero(chain) -> int | None:
    for i, t in enumerate(chain):
        if t.space.is_zero():
            return i
    return None


def derived_sequence(Q: HomLieAlgebra, max_iter: int | None = None) -> SeriesReport:
    """Q^(0) = Q, Q^(i+1) = [Q^(i), Q^(i)]; ideal flags recorded per term.

    ``stabilized_at`` is the index i with Q^(i+1) = Q^(i) (zero terms count).
    """
    chain, stabilized = _iterate(Q, lambda S: commutator_subspace(Q, S, S), max_iter)
    stabilized = _stabilization(chain, stabilized)
    k = _first_zero(chain)
    verdict = ClassVerdict("class", k) if k is not None else (
        ClassVerdict("non_solvable") if stabilized is not None else ClassVerdict("not_within_bound")
    )
    return SeriesReport(Q, "derived", tuple(chain), tuple(t.is_hom_ideal for t in chain),
                        stabilized, verdict)


def lower_central_series(Q: HomLieAlgebra, max_iter: int | None = None) -> SeriesReport:
    """Q^[0] = Q, Q^[i+1] = [Q^[i], Q]."""
    full = Subspace.full(Q.dim)
    chain, stabilized = _iterate(Q, lambda S: commutator_subspace(Q, S, full), max_iter)
    stabilized = _stabilization(chain, stabilized)
    k = _first_zero(chain)
    verdict = ClassVerdict("class", k) if k is not None else (
        ClassVerdict("non_nilpotent") if stabilized is not None else ClassVerdict("not_within_bound")
    )
    return SeriesReport(Q, "lower_central", tuple(chain), tuple(t.is_hom_ideal for t in chain),
                        stabilized, verdict)


def _stabilization(chain, stabilized):
    if stabilized is not None:
        return stabilized
    # a zero term is a fixed point of both iterations
    k = _first_zero(chain)
    return k


def nilpotency_class(Q: HomLieAlgebra) -> ClassVerdict:
    return lower_central_series(Q).class_verdict


def solvability_class(Q: HomLieAlgebra) -> ClassVerdict:
    """Class from the derived sequence, asserted only when alpha is surjective
    or the weak alpha-identity holds; otherwise ``indeterminate``."""
    rep = derived_sequence(Q)
    props = alpha_props(Q)
    if not (props.surjective or props.weak_alpha_identity):
        return ClassVerdict(
            "indeterminate",
            reason="alpha neither surjective nor weak alpha-identity",
        )
    return rep.class_verdict


@dataclass(frozen=True)
class SeriesCheck:
    holds: bool
    witness: tuple | None = None  # (index i, vector escaping M_{i-1})

    def __bool__(self):
        return self.holds


def _check_chain(Q: HomLieAlgebra, chain: Sequence) -> list:
    spaces = [c.space if isinstance(c, HomSubspace) else c for c in chain]
    if not spaces:
        raise ChainNotNested("empty chain", index=0)
    if not spaces[-1].is_full():
        raise ChainNotNested("chain must end at the whole algebra", index=len(spaces) - 1)
    for i in range(1, len(spaces)):
        if not spaces[i].contains_subspace(spaces[i - 1]):
            raise ChainNotNested(f"term {i - 1} is not contained in term {i}", index=i)
    for i, S in enumerate(spaces):
        if not classify(Q, S).is_hom_ideal:
            raise ChainNotNested(f"term {i} is not a Hom-ideal", index=i)
    return spaces


def is_central_series(Q: HomLieAlgebra, chain: Sequence) -> SeriesCheck:
    """[Q, M_i] inside M_{i-1} for every i (ascending chain M_0 ... M_k = Q)."""
    spaces = _check_chain(Q, chain)
    for i in range(1, len(spaces)):
        for x in Q.basis():
            for m in spaces[i].basis:
                v = Q.bracket(x, m)
                if not spaces[i - 1].contains(v):
                    return SeriesCheck(False, (i, v))
    return SeriesCheck(True)


def is_abelian_series(Q: HomLieAlgebra, chain: Sequence) -> SeriesCheck:
    """[M_i, M_i] inside M_{i-1} for every i."""
    spaces = _check_chain(Q, chain)
    for i in range(1, len(spaces)):
        for a in spaces[i].basis:
            for b in spaces[i].basis:
                v = Q.bracket(a, b)
                if not spaces[i - 1].contains(v):
                    return SeriesCheck(False, (i, v))
    return SeriesCheck(True)


@dataclass(frozen=True)
class EngelReport:
    algebra: HomLieAlgebra = field(repr=False)
    bound: int
    verdicts: tuple  # verdicts[k-1] answers "is L k-Engel"
    engel_class: int | None  # None means not within the bound

    @property
    def verdict(self) -> ClassVerdict:
        if self.engel_class is None:
            return ClassVerdict("not_within_bound", reason=f"K={self.bound}")
        return ClassVerdict("class", self.engel_class)


def _right_ad(L: HomLieAlgebra):
    # R[i] maps y -> [y, e_i]
    return [la.Matrix.from_columns([L.structure[j][i] for j in range(L.dim)], L.dim)
            for i in range(L.dim)]


def is_k_engel(L: HomLieAlgebra, k: int) -> bool:
    """Decide whether R_x^k = 0 for every x, by polarization over Q.

    x -> R_x^k(y) is homogeneous of degree k in x; it vanishes identically iff
    for every multiset of basis indices the sum of T(y; i_1..i_k) over the
    distinct orderings vanishes.
    """
    n = L.dim
    if n == 0:
        return True
    R = _right_ad(L)
    for y in range(n):
        for ms in itertools.combinations_with_replacement(range(n), k):
            total = [Fraction(0)] * n
            for perm in set(itertools.permutations(ms)):
                v = la.unit_vector(n, y)
                for i in perm:
                    v = R[i].apply(v)
                    if la.is_zero(v):
                        break
                else:
                    for t, a in enumerate(v):
                        total[t] += a
            if any(total):
                return False
    return True


def engel_class(L: HomLieAlgebra, bound: int | None = None) -> EngelReport:
    """Test k-Engel for each k = 1..bound independently (default bound dim+1)."""
    if bound is None:
        bound = L.dim + 1
    if bound < 1:
        raise ValueError("Engel bound must be at least 1")
    verdicts = tuple(is_k_engel(L, k) for k in range(1, bound + 1))
    first = next((k + 1 for k, v in enumerate(verdicts) if v), None)
    return EngelReport(L, bound, verdicts, first)


def random_rational_vector(rng: random.Random, n: int, span: int = 7, den: int = 5) -> tuple:
    return tuple(Fraction(rng.randint(-span, span), rng.randint(1, den)) for _ in range(n))


def engel_sample_check(L: HomLieAlgebra, k: int, samples: int = 200, seed: int = 0) -> bool:
    """Direct evaluation of R_x^k(e_j) = 0 at deterministic pseudo-random x."""
    rng = random.Random(seed)
    for _ in range(samples):
        x = random_rational_vector(rng, L.dim)
        for j in range(L.dim):
            v = la.unit_vector(L.dim, j)
            for _ in range(k):
                v = L.bracket(v, x)
            if not la.is_zero(v):
                return False
    return True


@dataclass(frozen=True)
class NilpotentActionVerdict:
    status: str  # "yes", "no", "indeterminate"
    chain: tuple  # ascending 0 = L_k <= ... <= L_0 = M when yes; descending as computed otherwise
    failing_index: int | None = None

    def __bool__(self):
        return self.status == "yes"


def acts_nilpotently(act: HomAction) -> NilpotentActionVerdict:
    """Descending chain L_0 = M, L_{i+1} = span{^{e_q} d : d in L_i}.

    yes: the chain reaches 0 and every term is a Hom-ideal of M (chain is
    returned ascending); no: the chain stabilizes at a nonzero space;
    indeterminate: reaches 0 but some term is not a Hom-ideal.
    """
    M = act.target
    chain = [Subspace.full(M.dim)]
    for _ in range(M.dim + 1):
        cur = chain[-1]
        if cur.is_zero():
            break
        nxt = la.canonicalize(
            (act.act(x, d) for x in act.actor.basis() for d in cur.basis), M.dim
        )
        if nxt == cur:
            return NilpotentActionVerdict("no", tuple(chain))
        chain.append(nxt)
    for i, S in enumerate(chain):
        if not classify(M, S).is_hom_ideal:
            return NilpotentActionVerdict("indeterminate", tuple(chain), i)
    return NilpotentActionVerdict("yes", tuple(reversed(chain)))
