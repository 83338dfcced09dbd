"""Exact linear algebra over Z_d and Q: matrices, row reduction, affine subspaces.

Everything here is pure exact arithmetic on tuples — no numpy, no floats.  The central
type is :class:`AffineSubspace`, stored in a canonical form so that structural equality
coincides with set equality:

* the basis is the reduced row echelon form of the direction space, zero rows dropped;
* the offset has zero entries in every pivot coordinate of that basis (each coset has
  exactly one such representative);
* the empty set is a first-class value, distinct from every singleton ``{offset}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Iterator, Literal, Sequence, Union

from .fields import Field, Scalar

Vector = tuple


def vec(field: Field, entries: Iterable) -> Vector:
    """Coerce an iterable of raw values into a canonical scalar tuple."""
    return tuple(field.element(x) for x in entries)


def zero_vec(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def vec_add(field: Field, u: Vector, v: Vector) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v, strict=True))


def vec_sub(field: Field, u: Vector, v: Vector) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v, strict=True))


def vec_scale(field: Field, c: Scalar, u: Vector) -> Vector:
    return tuple(field.mul(c, a) for a in u)


def vec_dot(field: Field, u: Vector, v: Vector) -> Scalar:
    acc = field.zero
    for a, b in zip(u, v, strict=True):
        acc = field.add(acc, field.mul(a, b))
    return acc


@dataclass(frozen=True)
class Matrix:
    """An immutable exact matrix: a tuple of row tuples plus the field they live in."""

    field: Field
    rows: tuple

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        coerced = tuple(vec(field, r) for r in rows)
        if coerced and any(len(r) != len(coerced[0]) for r in coerced):
            raise ValueError("ragged rows")
        return cls(field, coerced)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, tuple(
            tuple(field.one if i == j else field.zero for j in range(n))
            for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, tuple((field.zero,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows))) if self.rows else self

    def matvec(self, v: Vector) -> Vector:
        return tuple(vec_dot(self.field, row, v) for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T.rows
        return Matrix(self.field, tuple(
            tuple(vec_dot(self.field, row, col) for col in cols)
            for row in self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, tuple(
            vec_add(self.field, r, s) for r, s in zip(self.rows, other.rows, strict=True)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, tuple(
            vec_sub(self.field, r, s) for r, s in zip(self.rows, other.rows, strict=True)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, tuple(vec_scale(self.field, self.field.neg(self.field.one), r)
                                        for r in self.rows))

    def scale(self, c: Scalar) -> "Matrix":
        c = self.field.element(c)
        return Matrix(self.field, tuple(vec_scale(self.field, c, r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(x == self.field.zero for row in self.rows for x in row)

    def inverse(self) -> "Matrix":
        """Exact inverse via Gauss-Jordan; raises ValueError on singular input."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(row) + [self.field.one if i == j else self.field.zero
                            for j in range(n)]
               for i, row in enumerate(self.rows)]
        reduced, pivots = _rref_rows(self.field, aug)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.field, tuple(tuple(row[n:]) for row in reduced[:n]))


def _rref_rows(field: Field, rows: Sequence[Sequence[Scalar]]):
    """Reduced row echelon form of a list of rows.

    Returns ``(reduced_rows, pivot_columns)`` where ``reduced_rows`` has the same number
    of rows as the input (zero rows collected at the bottom) and ``pivot_columns[i]`` is
    the pivot column of row ``i``.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if work[i][c] != field.zero), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        scale = field.inv(work[r][c])
        work[r] = [field.mul(scale, x) for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != field.zero:
                factor = work[i][c]
                work[i] = [field.sub(x, field.mul(factor, y))
                           for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


#: Memo for subspace canonicalization: identical basis rows arrive over and over
#: when states are pushed around by enumerated transformation groups.
_RREF_CACHE: dict = {}
_RREF_CACHE_LIMIT = 200_000


def _rref_cached(field: Field, rows: tuple):
    key = (field, rows)
    hit = _RREF_CACHE.get(key)
    if hit is None:
        if len(_RREF_CACHE) >= _RREF_CACHE_LIMIT:
            _RREF_CACHE.clear()
        reduced, pivots = _rref_rows(field, rows)
        hit = (tuple(tuple(r) for r in reduced), tuple(pivots))
        _RREF_CACHE[key] = hit
    return hit


def rref(m: Matrix) -> tuple:
    """Reduced row echelon form and rank of ``m``.

    The returned matrix has the same shape as ``m`` with eliminated rows as zero rows at
    the bottom; the second component is the rank.
    """
    reduced, pivots = _rref_rows(m.field, m.rows) if m.rows else ([], [])
    return Matrix(m.field, tuple(tuple(r) for r in reduced)), len(pivots)


def null_space(m: Matrix) -> list:
    """A canonical (RREF-derived) basis of ``{x : m @ x = 0}`` as a list of row vectors."""
    field = m.field
    if not m.rows:
        return [tuple(field.one if i == j else field.zero for j in range(m.ncols))
                for i in range(m.ncols)]
    reduced, pivots = _rref_rows(field, m.rows)
    ncols = m.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = field.neg(reduced[i][f])
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class AffineSubspace:
    """An affine subspace ``{offset + sum c_i basis_i}`` in canonical form, or the empty set.

    Construction canonicalizes, so ``==`` is set equality and instances are hashable.
    """

    field: Field
    ambient: int
    basis: tuple = ()
    offset: tuple = None  # type: ignore[assignment]
    is_empty: bool = False

    def __post_init__(self):
        f = self.field
        if self.is_empty:
            object.__setattr__(self, "basis", ())
            object.__setattr__(self, "offset", zero_vec(f, self.ambient))
            return
        offset = list(vec(f, self.offset if self.offset is not None
                          else zero_vec(f, self.ambient)))
        if len(offset) != self.ambient:
            raise ValueError("offset length does not match ambient dimension")
        rows = [vec(f, r) for r in self.basis]
        if any(len(r) != self.ambient for r in rows):
            raise ValueError("basis row length does not match ambient dimension")
        if rows:
            reduced, pivots = _rref_cached(f, tuple(rows))
            rows = list(reduced[:len(pivots)])
            # Zero the offset's pivot coordinates: the unique coset representative.
            for row, p in zip(rows, pivots):
                if offset[p] != f.zero:
                    c = offset[p]
                    offset = [f.sub(x, f.mul(c, y)) for x, y in zip(offset, row)]
        object.__setattr__(self, "basis", tuple(rows))
        object.__setattr__(self, "offset", tuple(offset))

    # -- constructors -------------------------------------------------------------

    @classmethod
    def span(cls, field: Field, rows: Iterable[Iterable], ambient: int = None,
             offset: Iterable = None) -> "AffineSubspace":
        rows = [vec(field, r) for r in rows]
        if ambient is None:
            if not rows and offset is None:
                raise ValueError("ambient dimension is ambiguous")
            ambient = len(rows[0]) if rows else len(tuple(offset))
        return cls(field, ambient, tuple(rows),
                   None if offset is None else vec(field, offset))

    @classmethod
    def point(cls, field: Field, x: Iterable) -> "AffineSubspace":
        x = vec(field, x)
        return cls(field, len(x), (), x)

    @classmethod
    def full(cls, field: Field, ambient: int) -> "AffineSubspace":
        return cls(field, ambient, tuple(Matrix.identity(field, ambient).rows), None)

    @classmethod
    def empty(cls, field: Field, ambient: int) -> "AffineSubspace":
        return cls(field, ambient, is_empty=True)

    # -- queries ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        """Dimension of the direction space (0 for a point; undefined if empty)."""
        return len(self.basis)

    def is_linear(self) -> bool:
        """True when the subspace passes through the origin (and is nonempty)."""
        return (not self.is_empty
                and all(x == self.field.zero for x in self.offset))

    def contains(self, x: Iterable) -> bool:
        if self.is_empty:
            return False
        f = self.field
        r = list(vec_sub(f, vec(f, x), self.offset))
        for row in self.basis:
            p = next(i for i, e in enumerate(row) if e != f.zero)
            if r[p] != f.zero:
                c = r[p]
                r = [f.sub(a, f.mul(c, b)) for a, b in zip(r, row)]
        return all(a == f.zero for a in r)

    def direction(self) -> "AffineSubspace":
        """The underlying linear subspace (offset dropped)."""
        if self.is_empty:
            raise ValueError("empty set has no direction")
        return AffineSubspace(self.field, self.ambient, self.basis, None)

    def translate(self, v: Iterable) -> "AffineSubspace":
        if self.is_empty:
            return self
        return AffineSubspace(self.field, self.ambient, self.basis,
                              vec_add(self.field, self.offset, vec(self.field, v)))

    def plus_directions(self, rows: Iterable[Iterable]) -> "AffineSubspace":
        """Enlarge the direction space by extra spanning rows (offset kept)."""
        if self.is_empty:
            raise ValueError("cannot enlarge the empty set")
        extra = tuple(vec(self.field, r) for r in rows)
        return AffineSubspace(self.field, self.ambient, self.basis + extra, self.offset)

    def representative(self, x: Iterable) -> Vector:
        """Canonical representative of the coset ``x + direction`` (x need not lie here)."""
        f = self.field
        moved = AffineSubspace(f, self.ambient, self.basis, vec(f, x))
        return moved.offset

    def constraints(self) -> tuple:
        """An exact description ``(A, b)`` with ``self == {x : A @ x == b}``."""
        if self.is_empty:
            raise ValueError("empty set is not a solution set of consistent constraints")
        if self.basis:
            rows = null_space(Matrix(self.field, self.basis))
        else:
            rows = list(Matrix.identity(self.field, self.ambient).rows)
        if not rows:
            # Full space: a single trivially-true constraint keeps the column count.
            rows = [zero_vec(self.field, self.ambient)]
        a = Matrix(self.field, tuple(rows))
        return a, a.matvec(self.offset)

    def points(self) -> Iterator[Vector]:
        """Iterate all points (prime fields only), in a deterministic order."""
        if self.is_empty:
            return
        f = self.field
        if not f.is_finite and self.basis:
            raise ValueError("cannot enumerate a positive-dimensional rational subspace")
        if not self.basis:
            yield self.offset
            return
        for coeffs in product(list(f.elements()), repeat=len(self.basis)):
            x = self.offset
            for c, row in zip(coeffs, self.basis):
                if c != f.zero:
                    x = vec_add(f, x, vec_scale(f, c, row))
            yield x


def solve_affine(a: Matrix, b: Iterable) -> AffineSubspace:
    """The full solution set of ``a @ x = b`` as an :class:`AffineSubspace`.

    An inconsistent system yields the canonical empty subspace, never an exception.
    """
    f = a.field
    b = vec(f, b)
    if len(b) != a.nrows:
        raise ValueError("right-hand side length does not match row count")
    ncols = a.ncols
    aug = [list(row) + [rhs] for row, rhs in zip(a.rows, b)]
    if not aug:
        return AffineSubspace.full(f, ncols)
    reduced, pivots = _rref_rows(f, aug)
    if ncols in pivots:
        return AffineSubspace.empty(f, ncols)
    particular = [f.zero] * ncols
    for i, p in enumerate(pivots):
        particular[p] = reduced[i][ncols]
    kernel = null_space(Matrix(f, tuple(tuple(row) for row in a.rows)))
    return AffineSubspace(f, ncols, tuple(kernel), tuple(particular))


def intersect_affine(u: AffineSubspace, w: AffineSubspace) -> AffineSubspace:
    """Exact intersection of two affine subspaces in the same ambient space."""
    if u.field != w.field or u.ambient != w.ambient:
        raise ValueError("subspaces live in different ambient spaces")
    if u.is_empty or w.is_empty:
        return AffineSubspace.empty(u.field, u.ambient)
    au, bu = u.constraints()
    aw, bw = w.constraints()
    stacked = Matrix(u.field, au.rows + aw.rows)
    return solve_affine(stacked, bu + bw)


def cardinality(u: AffineSubspace) -> Union[int, Literal["infinite"]]:
    """Number of points of ``u``: an exact int, or the string ``"infinite"``."""
    if u.is_empty:
        return 0
    if not u.basis:
        return 1
    if u.field.is_finite:
        return u.field.modulus ** len(u.basis)  # type: ignore[attr-defined]
    return "infinite"
