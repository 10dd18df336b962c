"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are row-major
:class:`Matrix` values.  Subspaces are stored in canonical reduced row-echelon
form so that equal subspaces compare equal by representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, WellDefinednessFailure

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading minus, no whitespace)."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot add vectors of length {len(u)} and {len(v)}")
    return tuple(a + b if b else a for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot subtract vectors of length {len(u)} and {len(v)}")
    return tuple(a - b if b else a for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Return sum(c_i * v_i) as a vector of length ``n``."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def tensor(u: Sequence, v: Sequence) -> Vector:
    """Coordinates of u (x) v with index i * len(v) + j."""
    return tuple(a * b for a in u for b in v)


class _Echelon:
    """Incrementally maintained reduced row-echelon basis."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list] = {}

    def residual(self, v: Sequence) -> list:
        r = list(v)
        for p, row in self.rows.items():
            c = r[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        r[k] -= c * a
        return r

    def add(self, v: Sequence) -> bool:
        if len(self.rows) == self.n:
            return False
        r = self.residual(v)
        p = next((k for k, a in enumerate(r) if a), None)
        if p is None:
            return False
        inv = 1 / r[p]
        r = [a * inv if a else a for a in r]
        for q, row in self.rows.items():
            c = row[p]
            if c:
                for k, a in enumerate(r):
                    if a:
                        row[k] -= c * a
        self.rows[p] = r
        return True

    @property
    def full(self) -> bool:
        return len(self.rows) == self.n

    def subspace(self) -> "Subspace":
        pivots = tuple(sorted(self.rows))
        basis = tuple(tuple(self.rows[p]) for p in pivots)
        return Subspace(self.n, basis, pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return canonicalize(vectors, ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def _check(self, v: Sequence) -> None:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient space of dimension {self.ambient_dim}"
            )

    def residual(self, v: Sequence) -> Vector:
        """v minus its component along the basis; zero iff v lies in the subspace."""
        self._check(v)
        r = list(v)
        for p, row in zip(self.pivots, self.basis):
            c = r[p]
            if c:
                for k, a in enumerate(row):
                    if a:
                        r[k] -= c * a
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.residual(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the RREF basis; v must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        return all(self.contains(b) for b in other.basis)

    def embedding(self) -> "Matrix":
        """ambient_dim x rank matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)


def canonicalize(spanning: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Canonical RREF basis of the span of ``spanning`` inside Q^ambient_dim."""
    ech = _Echelon(ambient_dim)
    for v in spanning:
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient space of dimension {ambient_dim}"
            )
        if ech.full:
            continue
        ech.add(v)
    return ech.subspace()


def contains(S: Subspace, v: Sequence) -> bool:
    return S.contains(v)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    return canonicalize(S.basis + T.basis, S.ambient_dim)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """S meet T via the kernel of [S | -T] acting on stacked coefficients."""
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    n = S.ambient_dim
    if S.is_zero() or T.is_zero():
        return Subspace.zero(n)
    cols = list(S.basis) + [neg(t) for t in T.basis]
    stacked = Matrix.from_columns(cols, n)
    ker = nullspace(stacked)
    a = S.rank
    return canonicalize((lincomb(z[:a], S.basis, n) for z in ker.basis), n)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, row-major.  ``ncols`` is explicit for empty shapes."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(vec(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatch("column length does not match row count")
        rows = tuple(tuple(Fraction(c[i]) for c in columns) for i in range(nrows))
        return cls(rows, len(columns))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(zero_vector(ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return (len(self.rows), self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"matrix with {self.ncols} columns applied to length {len(v)}")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.nrows != self.ncols:
                raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
            cols = [self.apply(c) for c in other.columns()]
            return Matrix.from_columns(cols, self.nrows)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in matrix sum")
        return Matrix(tuple(add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in matrix difference")
        return Matrix(tuple(sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(neg(r) for r in self.rows), self.ncols)

    def scaled(self, c) -> "Matrix":
        return Matrix(tuple(scale(c, r) for r in self.rows), self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.rows, self.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append(tuple(a * b for a in ra for b in rb))
        return Matrix(tuple(rows), self.ncols * other.ncols)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def image(self) -> Subspace:
        return canonicalize(self.columns(), self.nrows)

    def kernel(self) -> Subspace:
        return nullspace(self)

    @property
    def rank(self) -> int:
        return canonicalize(self.rows, self.ncols).rank

    def is_injective(self) -> bool:
        return self.rank == self.ncols

    def is_surjective(self) -> bool:
        return self.rank == self.nrows


def block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    rows = [r + zero_vector(b.ncols) for r in a.rows]
    rows += [zero_vector(a.ncols) + r for r in b.rows]
    return Matrix(tuple(rows), a.ncols + b.ncols)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.nrows != b.nrows:
        raise DimensionMismatch("row counts differ")
    return Matrix(tuple(r + s for r, s in zip(a.rows, b.rows)), a.ncols + b.ncols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.ncols:
        raise DimensionMismatch("column counts differ")
    return Matrix(a.rows + b.rows, a.ncols)


def nullspace(A: Matrix) -> Subspace:
    """Kernel of A as a canonical subspace of Q^ncols."""
    n = A.ncols
    row_space = canonicalize(A.rows, n)
    pivset = set(row_space.pivots)
    free = [c for c in range(n) if c not in pivset]
    vectors = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for p, row in zip(row_space.pivots, row_space.basis):
            v[p] = -row[f]
        vectors.append(v)
    return canonicalize(vectors, n)


def preimage(A: Matrix, v: Sequence) -> Vector | None:
    """Some x with A x = v, or None when v is not in the column space."""
    if len(v) != A.nrows:
        raise DimensionMismatch("right-hand side has the wrong length")
    # Solve via RREF of the augmented system [A | v].
    aug = [list(r) + [Fraction(b)] for r, b in zip(A.rows, v)]
    S = canonicalize(aug, A.ncols + 1)
    if A.ncols in S.pivots:
        return None
    x = [Fraction(0)] * A.ncols
    for p, row in zip(S.pivots, S.basis):
        x[p] = row[A.ncols]
    return tuple(x)


@dataclass(frozen=True)
class QuotientPresentation:
    """Q^ambient_dim / kernel with a deterministic section and exact projection."""

    ambient_dim: int
    kernel: Subspace
    section: tuple  # ambient vectors, one per quotient coordinate
    free_cols: tuple
    projection: Matrix

    @property
    def dim(self) -> int:
        return len(self.free_cols)

    def project(self, v: Sequence) -> Vector:
        r = self.kernel.residual(v)
        return tuple(r[c] for c in self.free_cols)

    def lift(self, q: Sequence) -> Vector:
        if len(q) != self.dim:
            raise DimensionMismatch("quotient coordinate vector has the wrong length")
        v = [Fraction(0)] * self.ambient_dim
        for c, a in zip(self.free_cols, q):
            v[c] = Fraction(a)
        return tuple(v)

    def section_matrix(self) -> Matrix:
        return Matrix.from_columns(self.section, self.ambient_dim)

    def image_of(self, S: Subspace) -> Subspace:
        return canonicalize((self.project(b) for b in S.basis), self.dim)

    def preimage_of(self, S: Subspace) -> Subspace:
        """Full preimage of a quotient subspace (contains the kernel)."""
        return canonicalize(
            list(self.kernel.basis) + [self.lift(b) for b in S.basis], self.ambient_dim
        )


def quotient_of(ambient_dim: int, kernel: Subspace) -> QuotientPresentation:
    if kernel.ambient_dim != ambient_dim:
        raise DimensionMismatch("kernel lives in a different ambient space")
    pivset = set(kernel.pivots)
    free = tuple(c for c in range(ambient_dim) if c not in pivset)
    section = tuple(unit_vector(ambient_dim, c) for c in free)
    cols = []
    for j in range(ambient_dim):
        r = kernel.residual(unit_vector(ambient_dim, j))
        cols.append(tuple(r[c] for c in free))
    projection = Matrix.from_columns(cols, len(free))
    return QuotientPresentation(ambient_dim, kernel, section, free, projection)


def trivial_quotient(n: int) -> QuotientPresentation:
    return quotient_of(n, Subspace.zero(n))


def induce_map(f: Matrix, src: QuotientPresentation, dst: QuotientPresentation,
               stage: str | None = None) -> Matrix:
    """Matrix of the map induced by ``f`` on quotient coordinates.

    Raises WellDefinednessFailure with a witness from ``src.kernel`` when
    f(src.kernel) is not contained in ``dst.kernel``.
    """
    if f.ncols != src.ambient_dim or f.nrows != dst.ambient_dim:
        raise DimensionMismatch(
            f"map of shape {f.shape} between ambients {src.ambient_dim} -> {dst.ambient_dim}"
        )
    for k in src.kernel.basis:
        if not dst.kernel.contains(f.apply(k)):
            raise WellDefinednessFailure(
                "map does not send the source kernel into the target kernel",
                witness=k, stage=stage,
            )
    cols = [dst.project(f.apply(s)) for s in src.section]
    return Matrix.from_columns(cols, dst.dim)
