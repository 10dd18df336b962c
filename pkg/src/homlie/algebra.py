"""Hom-Lie algebras given by structure constants and a twist matrix.

A Hom-Lie algebra here is a finite-dimensional rational vector space with a
skew-symmetric bilinear bracket and a linear map ``alpha`` satisfying the
twisted Jacobi identity

    [alpha(x), [y, z]] + [alpha(z), [x, y]] + [alpha(y), [z, x]] = 0,

together with multiplicativity ``alpha[x, y] = [alpha(x), alpha(y)]``.
Matrices act on column vectors: column ``j`` of ``alpha`` holds the
coordinates of ``alpha(e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionMismatch, NotAnEndomorphism, NotAnIdeal, NotASubalgebra
from .linalg import Matrix, Subspace, Vector


@dataclass(frozen=True)
class HomLieAlgebra:
    name: str
    dim: int
    structure: tuple  # structure[i][j] = coordinates of [e_i, e_j]
    alpha: Matrix

    def __post_init__(self):
        n = self.dim
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise DimensionMismatch(f"structure table of {self.name} is not {n}x{n}")
        for row in self.structure:
            for v in row:
                if len(v) != n:
                    raise DimensionMismatch(f"bracket value of wrong length in {self.name}")
        if self.alpha.shape != (n, n):
            raise DimensionMismatch(f"alpha of {self.name} has shape {self.alpha.shape}")

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: Mapping, alpha=None) -> "HomLieAlgebra":
        """Build from upper-triangular data ``{(i, j): vector}`` (0-based, i < j).

        The table is antisymmetrized; ``alpha`` defaults to the zero map and
        may be a Matrix or a row-major list of rows.
        """
        zero = la.zero_vector(dim)
        table = [[zero] * dim for _ in range(dim)]
        for (i, j), value in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket index pair {(i, j)} must satisfy 0 <= i < j < {dim}")
            v = la.vec(value)
            table[i][j] = v
            table[j][i] = la.neg(v)
        if alpha is None:
            alpha = Matrix.zeros(dim, dim)
        elif not isinstance(alpha, Matrix):
            alpha = Matrix.from_rows(alpha, dim)
        return cls(name, dim, tuple(tuple(r) for r in table), alpha)

    def renamed(self, name: str) -> "HomLieAlgebra":
        return HomLieAlgebra(name, self.dim, self.structure, self.alpha)

    def basis(self) -> list:
        return [la.unit_vector(self.dim, i) for i in range(self.dim)]

    @cached_property
    def _nonzero_pairs(self) -> tuple:
        return tuple(
            (i, j, self.structure[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if not la.is_zero(self.structure[i][j])
        )

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"bracket arguments must have length {self.dim}")
        out = [Fraction(0)] * self.dim
        for i, j, c in self._nonzero_pairs:
            a = x[i]
            if not a:
                continue
            b = y[j]
            if not b:
                continue
            ab = a * b
            for k, ck in enumerate(c):
                if ck:
                    out[k] += ab * ck
        return tuple(out)

    def twist(self, x: Sequence) -> Vector:
        return self.alpha.apply(x)

    def is_abelian(self) -> bool:
        return not self._nonzero_pairs

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y]."""
        return Matrix.from_columns([self.bracket(x, e) for e in self.basis()], self.dim)


def abelian(name: str, dim: int, alpha=None) -> HomLieAlgebra:
    if alpha is None:
        alpha = Matrix.zeros(dim, dim)
    return HomLieAlgebra.from_brackets(name, dim, {}, alpha)


def bracket_eval(L: HomLieAlgebra, x: Sequence, y: Sequence) -> Vector:
    return L.bracket(x, y)


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple
    residual: tuple

    def describe(self) -> str:
        idx = ",".join(str(i) for i in self.witness)
        res = " ".join(la.format_rational(a) for a in self.residual)
        return f"{self.axiom}({idx}): residual [{res}]"


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def axioms_failed(self) -> list:
        return sorted({f.axiom for f in self.failures})


class _Collector:
    def __init__(self, limit: int | None):
        self.failures: list = []
        self.limit = limit

    def check(self, axiom: str, witness: tuple, residual: Sequence) -> None:
        if la.is_zero(residual):
            return
        if self.limit is None or len(self.failures) < self.limit:
            self.failures.append(Failure(axiom, tuple(witness), tuple(residual)))

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self.failures))


def validate(L: HomLieAlgebra, limit: int | None = None) -> ValidationReport:
    """Check skew-symmetry, Hom-Jacobi and multiplicativity on basis tuples.

    Witness indices are 1-based.  ``limit`` caps the number of recorded
    failures (all tuples are still scanned).
    """
    n = L.dim
    c = L.structure
    out = _Collector(limit)
    for i in range(n):
        out.check("skew_symmetry", (i + 1, i + 1), c[i][i])
        for j in range(i + 1, n):
            out.check("skew_symmetry", (i + 1, j + 1), la.add(c[i][j], c[j][i]))
    alpha_cols = L.alpha.columns()
    skew_ok = not out.failures
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # under skew-symmetry the Jacobi residual is alternating in (i, j, k)
                if skew_ok and not i < j < k:
                    continue
                r = la.add(
                    la.add(L.bracket(alpha_cols[i], c[j][k]), L.bracket(alpha_cols[k], c[i][j])),
                    L.bracket(alpha_cols[j], c[k][i]),
                )
                out.check("hom_jacobi", (i + 1, j + 1, k + 1), r)
    for i in range(n):
        for j in range(n):
            r = la.sub(L.twist(c[i][j]), L.bracket(alpha_cols[i], alpha_cols[j]))
            out.check("multiplicativity", (i + 1, j + 1), r)
    return out.report()


KINDS = ("subspace", "subalgebra", "hom_ideal")


@dataclass(frozen=True)
class HomSubspace:
    parent: HomLieAlgebra = field(repr=False)
    space: Subspace
    kind: str
    alpha_invariant: bool
    closed: bool
    is_hom_ideal: bool

    @property
    def dim(self) -> int:
        return self.space.rank

    @property
    def basis(self) -> tuple:
        return self.space.basis

    def algebra(self, name: str | None = None) -> HomLieAlgebra:
        """The subalgebra with restricted bracket and twist, in RREF-basis coordinates."""
        if not (self.closed and self.alpha_invariant):
            raise NotASubalgebra(
                f"subspace of {self.parent.name} is not an alpha-invariant subalgebra"
            )
        return restrict_algebra(self.parent, self.space, name)


def _closure_witness(L: HomLieAlgebra, S: Subspace, others: Sequence) -> tuple | None:
    for a, h in enumerate(S.basis):
        for b, x in enumerate(others):
            v = L.bracket(h, x)
            if not S.contains(v):
                return (a, b, v)
    return None


def classify(L: HomLieAlgebra, S: Subspace) -> HomSubspace:
    """Wrap a subspace of L, recording which structure it verifiably carries."""
    if S.ambient_dim != L.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    alpha_inv = all(S.contains(L.twist(b)) for b in S.basis)
    closed = _closure_witness(L, S, S.basis) is None
    ideal = alpha_inv and _closure_witness(L, S, L.basis()) is None
    if ideal:
        kind = "hom_ideal"
    elif closed and alpha_inv:
        kind = "subalgebra"
    else:
        kind = "subspace"
    return HomSubspace(L, S, kind, alpha_inv, closed, ideal)


def span_in(L: HomLieAlgebra, vectors: Iterable[Sequence]) -> HomSubspace:
    return classify(L, la.canonicalize(vectors, L.dim))


def whole(L: HomLieAlgebra) -> HomSubspace:
    return classify(L, Subspace.full(L.dim))


def zero_subspace(L: HomLieAlgebra) -> HomSubspace:
    return classify(L, Subspace.zero(L.dim))


def restrict_algebra(L: HomLieAlgebra, S: Subspace, name: str | None = None) -> HomLieAlgebra:
    """Bracket and twist of L restricted to S, expressed in S's RREF basis."""
    B = S.basis
    k = len(B)
    brackets = {}
    for a in range(k):
        for b in range(a + 1, k):
            v = L.bracket(B[a], B[b])
            if not S.contains(v):
                raise NotASubalgebra(f"subspace of {L.name} is not closed", witness=(a, b))
            brackets[(a, b)] = S.coordinates(v)
    cols = []
    for b in B:
        v = L.twist(b)
        if not S.contains(v):
            raise NotASubalgebra(f"subspace of {L.name} is not alpha-invariant", witness=(b,))
        cols.append(S.coordinates(v))
    alpha = Matrix.from_columns(cols, k)
    return HomLieAlgebra.from_brackets(name or f"{L.name}|sub", k, brackets, alpha)


def center(L: HomLieAlgebra) -> HomSubspace:
    """Z(L) as the kernel of x -> ([x, e_1], ..., [x, e_n]).

    ``kind`` is always ``"subspace"``; ideal structure is only reported via
    ``is_hom_ideal``.
    """
    n = L.dim
    rows = []
    for j in range(n):
        # coefficient of x_i in [x, e_j] is structure[i][j]
        for k in range(n):
            rows.append(tuple(L.structure[i][j][k] for i in range(n)))
    Z = la.nullspace(Matrix(tuple(rows), n)) if rows else Subspace.zero(0)
    c = classify(L, Z)
    return HomSubspace(L, Z, "subspace", c.alpha_invariant, c.closed, c.is_hom_ideal)


def commutator_subspace(L: HomLieAlgebra, H, K) -> HomSubspace:
    """Span of [h, k] over basis vectors of H and K (HomSubspace or Subspace)."""
    Hs = H.space if isinstance(H, HomSubspace) else H
    Ks = K.space if isinstance(K, HomSubspace) else K
    vectors = (L.bracket(h, k) for h in Hs.basis for k in Ks.basis)
    return classify(L, la.canonicalize(vectors, L.dim))


def derived_subalgebra(L: HomLieAlgebra) -> HomSubspace:
    full = Subspace.full(L.dim)
    return commutator_subspace(L, full, full)


@dataclass(frozen=True)
class QuotientAlgebra:
    algebra: HomLieAlgebra
    projection: Matrix
    presentation: la.QuotientPresentation


def quotient_presentation(L: HomLieAlgebra, I, name: str | None = None) -> QuotientAlgebra:
    S = I.space if isinstance(I, HomSubspace) else I
    if S.ambient_dim != L.dim:
        raise DimensionMismatch("ideal does not live in the algebra")
    for b in S.basis:
        if not S.contains(L.twist(b)):
            raise NotAnIdeal(f"subspace of {L.name} is not alpha-invariant", witness=(b,))
    w = _closure_witness(L, S, L.basis())
    if w is not None:
        a, x, v = w
        raise NotAnIdeal(
            f"[h_{a + 1}, e_{x + 1}] escapes the subspace of {L.name}", witness=(a + 1, x + 1, v)
        )
    P = la.quotient_of(L.dim, S)
    sec = P.section
    brackets = {}
    for a in range(P.dim):
        for b in range(a + 1, P.dim):
            brackets[(a, b)] = P.project(L.bracket(sec[a], sec[b]))
    alpha = la.induce_map(L.alpha, P, P, stage="quotient twist")
    Q = HomLieAlgebra.from_brackets(name or f"{L.name}/I", P.dim, brackets, alpha)
    return QuotientAlgebra(Q, P.projection, P)


def quotient_algebra(L: HomLieAlgebra, I, name: str | None = None) -> tuple:
    """(L/I, projection matrix); raises NotAnIdeal when I is not a Hom-ideal."""
    q = quotient_presentation(L, I, name)
    return q.algebra, q.projection


def is_homomorphism(f: Matrix, L: HomLieAlgebra, L2: HomLieAlgebra, limit: int | None = None) -> ValidationReport:
    if f.shape != (L2.dim, L.dim):
        raise DimensionMismatch(f"map of shape {f.shape} between dims {L.dim} -> {L2.dim}")
    out = _Collector(limit)
    images = f.columns()
    for i in range(L.dim):
        for j in range(L.dim):
            r = la.sub(f.apply(L.structure[i][j]), L2.bracket(images[i], images[j]))
            out.check("bracket", (i + 1, j + 1), r)
    for i in range(L.dim):
        r = la.sub(f.apply(L.twist(la.unit_vector(L.dim, i))), L2.twist(images[i]))
        out.check("twist", (i + 1,), r)
    return out.report()


def direct_product(B: HomLieAlgebra, C: HomLieAlgebra, name: str | None = None) -> HomLieAlgebra:
    nb, nc = B.dim, C.dim
    brackets = {}
    for i in range(nb):
        for j in range(i + 1, nb):
            brackets[(i, j)] = B.structure[i][j] + la.zero_vector(nc)
    for i in range(nc):
        for j in range(i + 1, nc):
            brackets[(nb + i, nb + j)] = la.zero_vector(nb) + C.structure[i][j]
    alpha = la.block_diagonal(B.alpha, C.alpha)
    return HomLieAlgebra.from_brackets(name or f"{B.name}x{C.name}", nb + nc, brackets, alpha)


def yau_twist(L: HomLieAlgebra, beta: Matrix, name: str | None = None) -> HomLieAlgebra:
    """Twist a Lie algebra (alpha = id) by an endomorphism: [x, y]' = beta[x, y]."""
    n = L.dim
    if L.alpha != Matrix.identity(n):
        raise ValueError(f"{L.name} must carry the identity twist")
    if beta.shape != (n, n):
        raise DimensionMismatch("twisting map has the wrong shape")
    cols = beta.columns()
    for i in range(n):
        for j in range(n):
            if beta.apply(L.structure[i][j]) != L.bracket(cols[i], cols[j]):
                raise NotAnEndomorphism(
                    f"map does not preserve the bracket of {L.name}", witness=(i + 1, j + 1)
                )
    brackets = {(i, j): beta.apply(L.structure[i][j]) for i in range(n) for j in range(i + 1, n)}
    return HomLieAlgebra.from_brackets(name or f"{L.name}^beta", n, brackets, beta)


@dataclass(frozen=True)
class AlphaProps:
    surjective: bool
    alpha_identity: bool
    weak_alpha_identity: bool


def alpha_props(L: HomLieAlgebra) -> AlphaProps:
    n = L.dim
    shifted = [la.sub(L.twist(e), e) for e in L.basis()]  # (alpha - id) e_j
    alpha_identity = all(
        la.is_zero(L.bracket(la.unit_vector(n, i), d)) for i in range(n) for d in shifted
    )
    weak = all(
        la.is_zero(L.bracket(L.structure[i][j], d))
        for i in range(n)
        for j in range(n)
        for d in shifted
    )
    return AlphaProps(L.alpha.rank == n, alpha_identity, weak)
