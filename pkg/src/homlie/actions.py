"""Hom-actions between Hom-Lie algebras, compatibility and semidirect products."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .algebra import (
    HomLieAlgebra,
    HomSubspace,
    ValidationReport,
    _Collector,
    classify,
    direct_product,
    restrict_algebra,
    validate,
)
from .errors import (
    ActionNotAdmissible,
    DimensionMismatch,
    NotAnIdeal,
    NotASubalgebra,
    NotClosed,
    WellDefinednessFailure,
)
from .linalg import Matrix, Subspace, Vector


@dataclass(frozen=True)
class HomAction:
    """Left action x (x) m -> ^x m, stored actor-major: table[i][j] = ^{e_i} f_j."""

    actor: HomLieAlgebra
    target: HomLieAlgebra
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.actor.dim or any(
            len(row) != self.target.dim for row in self.table
        ):
            raise DimensionMismatch("action table has the wrong shape")
        for row in self.table:
            for v in row:
                if len(v) != self.target.dim:
                    raise DimensionMismatch("action value of wrong length")

    @classmethod
    def trivial(cls, actor: HomLieAlgebra, target: HomLieAlgebra) -> "HomAction":
        z = la.zero_vector(target.dim)
        return cls(actor, target, tuple((z,) * target.dim for _ in range(actor.dim)))

    @classmethod
    def from_entries(cls, actor, target, entries) -> "HomAction":
        """Build from ``{(i, j): vector}`` with 0-based indices; omitted entries are zero."""
        z = la.zero_vector(target.dim)
        table = [[z] * target.dim for _ in range(actor.dim)]
        for (i, j), v in entries.items():
            table[i][j] = la.vec(v)
        return cls(actor, target, tuple(tuple(r) for r in table))

    def act(self, x: Sequence, m: Sequence) -> Vector:
        """^x m, bilinear in both arguments."""
        if len(x) != self.actor.dim or len(m) != self.target.dim:
            raise DimensionMismatch("action arguments have the wrong length")
        out = [Fraction(0)] * self.target.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(m):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def operator(self, x: Sequence) -> Matrix:
        """Matrix of m -> ^x m."""
        return Matrix.from_columns(
            [self.act(x, e) for e in self.target.basis()], self.target.dim
        )

    def is_trivial(self) -> bool:
        return all(la.is_zero(v) for row in self.table for v in row)


def validate_action(act: HomAction, limit: int | None = None) -> ValidationReport:
    """Axioms a), b), c) of a Hom-action on all basis tuples (1-based witnesses)."""
    L, M = act.actor, act.target
    out = _Collector(limit)
    eL, eM = L.basis(), M.basis()
    aL = [L.twist(x) for x in eL]
    aM = [M.twist(m) for m in eM]
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(M.dim):
                lhs = act.act(L.structure[i][j], aM[k])
                rhs = la.sub(
                    act.act(aL[i], act.act(eL[j], eM[k])),
                    act.act(aL[j], act.act(eL[i], eM[k])),
                )
                out.check("action_a", (i + 1, j + 1, k + 1), la.sub(lhs, rhs))
    for i in range(L.dim):
        for j in range(M.dim):
            for k in range(M.dim):
                lhs = act.act(aL[i], M.structure[j][k])
                rhs = la.add(
                    M.bracket(act.act(eL[i], eM[j]), aM[k]),
                    M.bracket(aM[j], act.act(eL[i], eM[k])),
                )
                out.check("action_b", (i + 1, j + 1, k + 1), la.sub(lhs, rhs))
    for i in range(L.dim):
        for j in range(M.dim):
            r = la.sub(M.twist(act.table[i][j]), act.act(aL[i], aM[j]))
            out.check("action_c", (i + 1, j + 1), r)
    return out.report()


@dataclass(frozen=True)
class CompatibilityWitness:
    identity: str
    indices: tuple
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class ActionPair:
    """Mutual actions: ``forward`` is M on N, ``backward`` is N on M."""

    forward: HomAction
    backward: HomAction
    compatible: bool
    witnesses: tuple = field(default=(), repr=False)

    @property
    def M(self) -> HomLieAlgebra:
        return self.forward.actor

    @property
    def N(self) -> HomLieAlgebra:
        return self.forward.target

    def m_on_n(self, m, n) -> Vector:
        return self.forward.act(m, n)

    def n_on_m(self, n, m) -> Vector:
        return self.backward.act(n, m)

    def swapped(self) -> "ActionPair":
        return ActionPair(self.backward, self.forward, self.compatible, self.witnesses)


def check_compatible(fwd: HomAction, bwd: HomAction, limit: int | None = None) -> ActionPair:
    """Verify ^(^m n) m' = [m', ^n m] and ^(^n m) n' = [n', ^m n] on basis triples.

    Witness indices are (m, n, m') resp. (n, m, n'), 1-based.
    """
    M, N = fwd.actor, fwd.target
    if bwd.actor != N or bwd.target != M:
        raise DimensionMismatch("backward action must be N acting on M")
    witnesses = []
    eM, eN = M.basis(), N.basis()
    for i, m in enumerate(eM):
        for j, n in enumerate(eN):
            mn = fwd.act(m, n)
            nm = bwd.act(n, m)
            for k, m2 in enumerate(eM):
                lhs = bwd.act(mn, m2)
                rhs = M.bracket(m2, nm)
                if lhs != rhs:
                    witnesses.append(
                        CompatibilityWitness("backward", (i + 1, j + 1, k + 1), lhs, rhs)
                    )
            for k, n2 in enumerate(eN):
                lhs = fwd.act(nm, n2)
                rhs = N.bracket(n2, mn)
                if lhs != rhs:
                    witnesses.append(
                        CompatibilityWitness("forward", (j + 1, i + 1, k + 1), lhs, rhs)
                    )
            if limit is not None and len(witnesses) >= limit:
                break
    return ActionPair(fwd, bwd, not witnesses, tuple(witnesses))


def action_by_bracket(K: HomLieAlgebra, L_sub: HomSubspace, M_sub: HomSubspace,
                      actor_name: str | None = None, target_name: str | None = None) -> HomAction:
    """^l m = [l, m] in K, for a subalgebra L_sub acting on a Hom-ideal M_sub."""
    if not (L_sub.closed and L_sub.alpha_invariant):
        raise NotASubalgebra(f"actor is not a subalgebra of {K.name}")
    if not M_sub.is_hom_ideal:
        raise NotAnIdeal(f"target is not a Hom-ideal of {K.name}")
    actor = restrict_algebra(K, L_sub.space, actor_name)
    target = restrict_algebra(K, M_sub.space, target_name)
    table = tuple(
        tuple(M_sub.space.coordinates(K.bracket(l, m)) for m in M_sub.basis)
        for l in L_sub.basis
    )
    return HomAction(actor, target, table)


def bracket_pair(K: HomLieAlgebra, M_sub: HomSubspace, N_sub: HomSubspace,
                 m_name: str | None = None, n_name: str | None = None) -> ActionPair:
    """Mutual bracket actions of two Hom-ideals of K, compatibility verified."""
    fwd = action_by_bracket(K, M_sub, N_sub, m_name, n_name)
    bwd = action_by_bracket(K, N_sub, M_sub, n_name, m_name)
    return check_compatible(fwd, bwd)


def self_pair(L: HomLieAlgebra) -> ActionPair:
    """L acting on itself by its bracket in both directions."""
    table = tuple(tuple(L.structure[i][j] for j in range(L.dim)) for i in range(L.dim))
    act = HomAction(L, L, table)
    return check_compatible(act, act)


def trivial_pair(M: HomLieAlgebra, N: HomLieAlgebra) -> ActionPair:
    return check_compatible(HomAction.trivial(M, N), HomAction.trivial(N, M))


def induced_subspace(act: HomAction) -> HomSubspace:
    """^L M: the span of all ^x m inside the target."""
    vectors = (v for row in act.table for v in row)
    return classify(act.target, la.canonicalize(vectors, act.target.dim))


@dataclass(frozen=True)
class Semidirect:
    algebra: HomLieAlgebra
    inject_target: Matrix  # M -> M x| L
    inject_actor: Matrix  # L -> M x| L (linear section, not a homomorphism in general)
    projection: Matrix  # M x| L -> L


def semidirect_table(M: HomLieAlgebra, L: HomLieAlgebra, act: HomAction, name=None) -> HomLieAlgebra:
    nm, nl = M.dim, L.dim
    aL = [L.twist(x) for x in L.basis()]
    zl = la.zero_vector(nl)
    brackets = {}
    for i in range(nm):
        for j in range(i + 1, nm):
            brackets[(i, j)] = M.structure[i][j] + zl
    for i in range(nm):
        for x in range(nl):
            # [(m_i, 0), (0, x)] = (-^{alpha(x)} m_i, 0)
            brackets[(i, nm + x)] = la.neg(act.act(aL[x], la.unit_vector(nm, i))) + zl
    for x in range(nl):
        for y in range(x + 1, nl):
            brackets[(nm + x, nm + y)] = la.zero_vector(nm) + L.structure[x][y]
    alpha = la.block_diagonal(M.alpha, L.alpha)
    return HomLieAlgebra.from_brackets(name or f"{M.name}x|{L.name}", nm + nl, brackets, alpha)


def semidirect(M: HomLieAlgebra, L: HomLieAlgebra, act: HomAction, name=None) -> Semidirect:
    """M x| L with [(m1,x1),(m2,x2)] = ([m1,m2] + ^{a(x1)}m2 - ^{a(x2)}m1, [x1,x2]).

    The result is re-validated; ActionNotAdmissible carries the failing report.
    """
    if act.actor != L or act.target != M:
        raise DimensionMismatch("action must be L acting on M")
    S = semidirect_table(M, L, act, name)
    report = validate(S, limit=8)
    if not report.passed:
        raise ActionNotAdmissible("semidirect bracket fails the Hom-Lie axioms", report)
    nm, nl = M.dim, L.dim
    inj_m = Matrix.from_columns([la.unit_vector(nm + nl, i) for i in range(nm)], nm + nl)
    inj_l = Matrix.from_columns([la.unit_vector(nm + nl, nm + i) for i in range(nl)], nm + nl)
    proj = Matrix.from_rows(
        [la.unit_vector(nm + nl, nm + i) for i in range(nl)], nm + nl
    ) if nl else Matrix((), nm + nl)
    return Semidirect(S, inj_m, inj_l, proj)


def restrict_action(act: HomAction, sub_actor: Subspace | HomSubspace,
                    sub_target: Subspace | HomSubspace,
                    actor_name: str | None = None, target_name: str | None = None) -> HomAction:
    """Restrict to a subalgebra of the actor acting on a subalgebra of the target."""
    A = sub_actor.space if isinstance(sub_actor, HomSubspace) else sub_actor
    T = sub_target.space if isinstance(sub_target, HomSubspace) else sub_target
    for a, x in enumerate(A.basis):
        for b, m in enumerate(T.basis):
            v = act.act(x, m)
            if not T.contains(v):
                raise NotClosed(
                    f"^x m escapes the target subspace (actor {a + 1}, target {b + 1})",
                    witness=(a + 1, b + 1, v),
                )
    actor = restrict_algebra(act.actor, A, actor_name)
    target = restrict_algebra(act.target, T, target_name)
    table = tuple(tuple(T.coordinates(act.act(x, m)) for m in T.basis) for x in A.basis)
    return HomAction(actor, target, table)


def descend_action(act: HomAction, actor_ideal=None, target_ideal=None,
                   actor_name: str | None = None, target_name: str | None = None) -> HomAction:
    """Induced action of actor/I on target/J.

    Requires ^x j in J for all x (target invariance) and ^i m in J for i in I
    (actor ideal acts into J); otherwise WellDefinednessFailure with a witness.
    """
    from .algebra import quotient_presentation

    L, M = act.actor, act.target
    I = Subspace.zero(L.dim) if actor_ideal is None else (
        actor_ideal.space if isinstance(actor_ideal, HomSubspace) else actor_ideal)
    J = Subspace.zero(M.dim) if target_ideal is None else (
        target_ideal.space if isinstance(target_ideal, HomSubspace) else target_ideal)
    for x in L.basis():
        for j in J.basis:
            if not J.contains(act.act(x, j)):
                raise WellDefinednessFailure(
                    "target ideal is not invariant under the action", witness=(x, j),
                    stage="target",
                )
    for i in I.basis:
        for m in M.basis():
            if not J.contains(act.act(i, m)):
                raise WellDefinednessFailure(
                    "actor ideal does not act into the target ideal", witness=(i, m),
                    stage="actor",
                )
    QL = quotient_presentation(L, I, actor_name)
    QM = quotient_presentation(M, J, target_name)
    PL, PM = QL.presentation, QM.presentation
    table = tuple(
        tuple(PM.project(act.act(x, m)) for m in PM.section) for x in PL.section
    )
    return HomAction(QL.algebra, QM.algebra, table)


def quotient_action(act: HomAction, ideal_target, target_name: str | None = None) -> HomAction:
    """Action of the same actor on target / ideal_target."""
    S = ideal_target.space if isinstance(ideal_target, HomSubspace) else ideal_target
    if not classify(act.target, S).is_hom_ideal:
        raise NotAnIdeal("quotient_action requires a Hom-ideal of the target")
    return descend_action(act, None, S, act.actor.name, target_name)
