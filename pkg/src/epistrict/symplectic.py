"""Symplectic phase-space geometry over exact fields.

Phase space is F^{2n} with coordinates interleaved as (q1, p1, q2, p2, ...).  The
symplectic form is the block-diagonal matrix J with [[0, 1], [-1, 0]] per degree of
freedom; over Z_2 the canonical representative of -1 is 1, so J renders as
[[0, 1], [1, 0]] there automatically.

Quadrature functionals are affine maps f(m) = <f, m> + c; their finite-difference
Poisson bracket coincides with the symplectic inner product of their linear parts, which
is the algebraic fact the epistemic layer is built on.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .fields import Field, Scalar
from .linalg import (
    AffineSubspace,
    Matrix,
    Vector,
    null_space,
    vec,
    vec_add,
    vec_dot,
    vec_scale,
    vec_sub,
    zero_vec,
)


class SizeCapExceeded(Exception):
    """An enumeration or operator build would exceed the configured size cap."""

    def __init__(self, message: str, required: int, cap: int):
        super().__init__(f"{message}: needs {required}, cap is {cap}")
        self.required = required
        self.cap = cap


class UnsupportedOperation(ValueError):
    """The operation is not defined for this field (e.g. statistics over Q)."""


@dataclass(frozen=True)
class PhaseSpace:
    """The arena F^{2n}: a field and a number of canonical (q, p) pairs."""

    field: Field
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one degree of freedom")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def d(self) -> int:
        """Prime modulus (finite case only)."""
        if not self.field.is_finite:
            raise UnsupportedOperation("rational phase space has no modulus")
        return self.field.modulus  # type: ignore[attr-defined]

    def points(self):
        """All d^{2n} phase-space points in lexicographic order (finite case)."""
        return itertools.product(list(self.field.elements()), repeat=self.dim)

    def vectors(self):
        return self.points()

    def zero(self) -> Vector:
        return zero_vec(self.field, self.dim)

    def q_index(self, i: int) -> int:
        return 2 * i

    def p_index(self, i: int) -> int:
        return 2 * i + 1


@functools.lru_cache(maxsize=None)
def symplectic_form(space: PhaseSpace) -> Matrix:
    """The matrix J of the symplectic form, block-diagonal in the (q, p) interleaving."""
    f = space.field
    rows = [[f.zero] * space.dim for _ in range(space.dim)]
    for i in range(space.n):
        rows[2 * i][2 * i + 1] = f.one
        rows[2 * i + 1][2 * i] = f.neg(f.one)
    return Matrix.from_rows(f, rows)


def symp_inner(space: PhaseSpace, f: Iterable, g: Iterable) -> Scalar:
    """The symplectic inner product <f, g> = f^T J g."""
    fld = space.field
    f = vec(fld, f)
    g = vec(fld, g)
    acc = fld.zero
    for i in range(space.n):
        a = fld.mul(f[2 * i], g[2 * i + 1])
        b = fld.mul(f[2 * i + 1], g[2 * i])
        acc = fld.add(acc, fld.sub(a, b))
    return acc


@dataclass(frozen=True)
class QuadratureFunctional:
    """An affine functional f(m) = <f, m> + c on phase space."""

    space: PhaseSpace
    f: tuple
    c: Scalar = None  # type: ignore[assignment]

    def __post_init__(self):
        fld = self.space.field
        object.__setattr__(self, "f", vec(fld, self.f))
        if len(self.f) != self.space.dim:
            raise ValueError("functional vector has wrong length")
        object.__setattr__(self, "c",
                           fld.zero if self.c is None else fld.element(self.c))

    @classmethod
    def position(cls, space: PhaseSpace, dof: int = 0, c=None) -> "QuadratureFunctional":
        v = [space.field.zero] * space.dim
        v[space.q_index(dof)] = space.field.one
        return cls(space, tuple(v), c)

    @classmethod
    def momentum(cls, space: PhaseSpace, dof: int = 0, c=None) -> "QuadratureFunctional":
        v = [space.field.zero] * space.dim
        v[space.p_index(dof)] = space.field.one
        return cls(space, tuple(v), c)

    def evaluate(self, m: Iterable) -> Scalar:
        fld = self.space.field
        return fld.add(vec_dot(fld, self.f, vec(fld, m)), self.c)

    def table(self) -> dict:
        """The functional as an explicit value table over all points (finite case)."""
        _check_point_cap(self.space)
        return {m: self.evaluate(m) for m in self.space.points()}


def _check_point_cap(space: PhaseSpace, cap: int = 10_000):
    if not space.field.is_finite:
        raise UnsupportedOperation(
            "operation needs to enumerate phase-space points; field is infinite")
    total = space.d ** space.dim
    if total > cap:
        raise SizeCapExceeded("phase-space point enumeration", total, cap)


def poisson_bracket_fd(space: PhaseSpace, f_table: dict, g_table: dict) -> dict:
    """Finite-difference Poisson bracket of two scalar tables over all of phase space.

    {f, g}(m) = sum_i [f(m + q_i) - f(m)][g(m + p_i) - g(m)]
                      - [f(m + p_i) - f(m)][g(m + q_i) - g(m)]

    where q_i, p_i are unit steps along the canonical coordinates.  Defined over prime
    fields only: discrete steps need a discrete arena.
    """
    _check_point_cap(space)
    fld = space.field
    steps = []
    for i in range(space.n):
        q = [fld.zero] * space.dim
        q[2 * i] = fld.one
        p = [fld.zero] * space.dim
        p[2 * i + 1] = fld.one
        steps.append((tuple(q), tuple(p)))

    def diff(table, m, step):
        return fld.sub(table[vec_add(fld, m, step)], table[m])

    out = {}
    for m in space.points():
        acc = fld.zero
        for q_step, p_step in steps:
            term = fld.sub(
                fld.mul(diff(f_table, m, q_step), diff(g_table, m, p_step)),
                fld.mul(diff(f_table, m, p_step), diff(g_table, m, q_step)))
            acc = fld.add(acc, term)
        out[m] = acc
    return out


# ---------------------------------------------------------------------------
# isotropic subspaces
# ---------------------------------------------------------------------------


def is_isotropic(space: PhaseSpace, v: AffineSubspace) -> bool:
    """Whether the (linear) subspace has pairwise-vanishing symplectic products."""
    if v.is_empty or not v.is_linear():
        return False
    if v.rank > space.n:
        return False
    rows = v.basis
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if symp_inner(space, rows[i], rows[j]) != space.field.zero:
                return False
    return True


def is_lagrangian(space: PhaseSpace, v: AffineSubspace) -> bool:
    return is_isotropic(space, v) and v.rank == space.n


@dataclass(frozen=True)
class Complements:
    """The three companions of a subspace V used throughout the theory."""

    euclidean: AffineSubspace   # V-perp under the dot product
    symplectic: AffineSubspace  # V^C under the symplectic form
    j_image: AffineSubspace     # J V


@functools.lru_cache(maxsize=None)
def _euclidean_complement(space: PhaseSpace, v: AffineSubspace) -> AffineSubspace:
    # Memoized: a pure function of the (canonical, hashable) subspace, called
    # repeatedly with the same handful of direction spaces by the state layer.
    rows = null_space(Matrix(space.field, v.basis)) if v.basis else None
    if rows is None:
        return AffineSubspace.full(space.field, space.dim)
    return AffineSubspace.span(space.field, rows, ambient=space.dim)


def _symplectic_complement(space: PhaseSpace, v: AffineSubspace) -> AffineSubspace:
    if not v.basis:
        return AffineSubspace.full(space.field, space.dim)
    j = symplectic_form(space)
    constraint = Matrix(space.field, v.basis) @ j
    return AffineSubspace.span(space.field, null_space(constraint), ambient=space.dim)


def complements(space: PhaseSpace, v: AffineSubspace) -> Complements:
    """Euclidean complement, symplectic complement, and J-image of a linear subspace.

    Also checks the structural identity (V-perp)^C == J V that the quantum bridge
    depends on; it is a theorem, so a failure would mean corrupted input.
    """
    if v.is_empty or not v.is_linear():
        raise ValueError("complements are defined for linear (zero-offset) subspaces")
    j = symplectic_form(space)
    euclid = _euclidean_complement(space, v)
    symp = _symplectic_complement(space, v)
    j_image = AffineSubspace.span(
        space.field, [j.matvec(b) for b in v.basis] or [space.zero()],
        ambient=space.dim)
    check = _symplectic_complement(space, euclid)
    if check != j_image:
        raise AssertionError("(V-perp)^C != J V; symplectic structure is inconsistent")
    return Complements(euclid, symp, j_image)


# ---------------------------------------------------------------------------
# symplectic and affine symplectic maps
# ---------------------------------------------------------------------------


def is_symplectic(space: PhaseSpace, s: Matrix) -> bool:
    if s.shape != (space.dim, space.dim):
        return False
    j = symplectic_form(space)
    return s.T @ j @ s == j


@dataclass(frozen=True)
class SymplecticAffine:
    """An affine symplectic map m -> S m + a, validated on construction."""

    space: PhaseSpace
    s: Matrix
    a: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        fld = self.space.field
        a = self.a if self.a is not None else self.space.zero()
        object.__setattr__(self, "a", vec(fld, a))
        if len(self.a) != self.space.dim:
            raise ValueError("displacement has wrong length")
        if not is_symplectic(self.space, self.s):
            raise ValueError("matrix does not preserve the symplectic form")

    @classmethod
    def identity(cls, space: PhaseSpace) -> "SymplecticAffine":
        return cls(space, Matrix.identity(space.field, space.dim))

    @classmethod
    def displacement(cls, space: PhaseSpace, a: Iterable) -> "SymplecticAffine":
        return cls(space, Matrix.identity(space.field, space.dim), vec(space.field, a))

    @classmethod
    def linear(cls, space: PhaseSpace, s: Iterable) -> "SymplecticAffine":
        return cls(space, s if isinstance(s, Matrix) else Matrix.from_rows(space.field, s))

    def apply(self, m: Iterable) -> Vector:
        fld = self.space.field
        return vec_add(fld, self.s.matvec(vec(fld, m)), self.a)

    def compose(self, other: "SymplecticAffine") -> "SymplecticAffine":
        """self after other: (S, a) o (S', a') = (S S', S a' + a)."""
        fld = self.space.field
        return SymplecticAffine(
            self.space, self.s @ other.s,
            vec_add(fld, self.s.matvec(other.a), self.a))

    def inverse(self) -> "SymplecticAffine":
        """Exact inverse using S^{-1} = J^T S^T J — no elimination required."""
        j = symplectic_form(self.space)
        s_inv = j.T @ self.s.T @ j
        fld = self.space.field
        a_inv = vec_scale(fld, fld.neg(fld.one), s_inv.matvec(self.a))
        return SymplecticAffine(self.space, s_inv, a_inv)


def compose(t1: SymplecticAffine, t2: SymplecticAffine) -> SymplecticAffine:
    """Composite map applying ``t2`` first, then ``t1``."""
    return t1.compose(t2)


def transvection(space: PhaseSpace, u: Iterable, c) -> Matrix:
    """The symplectic transvection x -> x + c <x, u> u."""
    fld = space.field
    u = vec(fld, u)
    c = fld.element(c)
    j = symplectic_form(space)
    ju = j.matvec(u)  # <x, u> = x . (J u)
    rows = []
    for i in range(space.dim):
        row = [fld.mul(fld.mul(c, u[i]), ju[k]) for k in range(space.dim)]
        row[i] = fld.add(row[i], fld.one)
        rows.append(tuple(row))
    return Matrix(fld, tuple(rows))


def symplectic_group_order(d: int, n: int) -> int:
    """|Sp(2n, Z_d)| = d^{n^2} * prod_{i=1}^{n} (d^{2i} - 1)."""
    order = d ** (n * n)
    for i in range(1, n + 1):
        order *= d ** (2 * i) - 1
    return order


def enumerate_symplectic(space: PhaseSpace, cap: int = 200_000) -> list:
    """All symplectic matrices on a finite phase space, deterministically ordered.

    Exhaustive filtering for one degree of freedom; for more, closure of the
    transvection generators (which generate the full group) under multiplication.
    The known group order is asserted, so silent incompleteness is impossible.
    """
    if not space.field.is_finite:
        raise UnsupportedOperation("cannot enumerate symplectic maps over Q")
    d = space.d
    expected = symplectic_group_order(d, space.n)
    if expected > cap:
        raise SizeCapExceeded("symplectic group enumeration", expected, cap)
    fld = space.field
    found: set
    if space.n == 1:
        found = set()
        for flat in itertools.product(range(d), repeat=4):
            m = Matrix.from_rows(fld, [flat[:2], flat[2:]])
            if is_symplectic(space, m):
                found.add(m.rows)
    else:
        gens = []
        seen_lines = set()
        for u in itertools.product(range(d), repeat=space.dim):
            if not any(u):
                continue
            line = min(tuple((c * x) % d for x in u) for c in range(1, d))
            if line in seen_lines:
                continue
            seen_lines.add(line)
            for c in range(1, d):
                gens.append(transvection(space, u, c).rows)
        identity = Matrix.identity(fld, space.dim).rows
        found = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for m in frontier:
                mm = Matrix(fld, m)
                for g in gens:
                    prod = (mm @ Matrix(fld, g)).rows
                    if prod not in found:
                        found.add(prod)
                        nxt.append(prod)
            frontier = nxt
    if len(found) != expected:
        raise AssertionError(
            f"symplectic enumeration produced {len(found)} elements, expected {expected}")
    return [Matrix(fld, rows) for rows in sorted(found)]


def enumerate_group(space: PhaseSpace, cap: int = 200_000) -> list:
    """Every affine symplectic map (all S paired with all displacements)."""
    if not space.field.is_finite:
        raise UnsupportedOperation("cannot enumerate affine symplectic maps over Q")
    d = space.d
    total = symplectic_group_order(d, space.n) * d ** space.dim
    if total > cap:
        raise SizeCapExceeded("affine symplectic group enumeration", total, cap)
    matrices = enumerate_symplectic(space, cap=cap)
    out = []
    for s in matrices:
        for a in space.points():
            out.append(SymplecticAffine(space, s, a))
    return out


def enumerate_isotropic(space: PhaseSpace, rank: Optional[int] = None,
                        cap: int = 500_000) -> list:
    """All isotropic linear subspaces of the given rank (all ranks 0..n when None).

    Subspaces are produced directly in reduced-row-echelon parametrization — one matrix
    per subspace, so the listing is duplicate-free by construction — and filtered for
    isotropy.  Deterministic order: by rank, then pivot columns, then entries.
    """
    if not space.field.is_finite:
        raise UnsupportedOperation("cannot enumerate subspaces over Q")
    d = space.d
    ranks = range(space.n + 1) if rank is None else [rank]
    out = []
    for k in ranks:
        if k < 0 or k > space.n:
            raise ValueError(f"isotropic rank must lie in 0..{space.n}")
        if k == 0:
            out.append(AffineSubspace.span(space.field, [], ambient=space.dim))
            continue
        for pivots in itertools.combinations(range(space.dim), k):
            free_slots = [(i, j) for i in range(k) for j in range(space.dim)
                          if j > pivots[i] and j not in pivots]
            if d ** len(free_slots) > cap:
                raise SizeCapExceeded("isotropic subspace enumeration",
                                      d ** len(free_slots), cap)
            for values in itertools.product(range(d), repeat=len(free_slots)):
                rows = [[space.field.zero] * space.dim for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = space.field.one
                for (i, j), val in zip(free_slots, values):
                    rows[i][j] = val
                ok = True
                for i in range(k):
                    for j in range(i + 1, k):
                        if symp_inner(space, rows[i], rows[j]) != space.field.zero:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    out.append(AffineSubspace.span(space.field, rows, ambient=space.dim))
    return out


def extend_to_symplectic(space: PhaseSpace, f: Iterable) -> Matrix:
    """A symplectic matrix whose first column is ``f``.

    Finite fields: symplectic Gram-Schmidt with lexicographically-least valid choices
    at every step, so the result is a deterministic function of ``f``.  Over Q the
    candidates are the standard basis vectors corrected against the pairs already
    chosen.  The zero vector labels no quadrature and is refused.
    """
    fld = space.field
    f = vec(fld, f)
    if all(x == fld.zero for x in f):
        raise ValueError("cannot extend the zero functional")

    def candidates():
        if fld.is_finite:
            for v in space.points():
                if any(x != fld.zero for x in v):
                    yield vec(fld, v)
        else:
            for i in range(space.dim):
                e = [fld.zero] * space.dim
                e[i] = fld.one
                yield tuple(e)

    def corrected(c, pairs):
        # c + sum_i (<w_i, c> u_i - <u_i, c> w_i) kills all products with chosen pairs.
        for u, w in pairs:
            cu = symp_inner(space, u, c)
            cw = symp_inner(space, w, c)
            c = vec_add(fld, c, vec_sub(fld, vec_scale(fld, cw, u),
                                        vec_scale(fld, cu, w)))
        return c

    pairs = []
    chosen_span: list = []

    def in_span(v):
        if not chosen_span:
            return all(x == fld.zero for x in v)
        return AffineSubspace.span(fld, chosen_span, ambient=space.dim).contains(v)

    def pick_partner(u):
        for g in candidates():
            g2 = corrected(g, pairs) if not fld.is_finite else g
            ip = symp_inner(space, u, g2)
            if ip == fld.zero:
                continue
            if fld.is_finite and any(symp_inner(space, x, g2) != fld.zero
                                     for pair in pairs for x in pair):
                continue
            return vec_scale(fld, fld.inv(ip), g2)
        raise AssertionError("no symplectic partner found; form would be degenerate")

    u1 = f
    pairs.append((u1, pick_partner(u1)))
    chosen_span.extend(pairs[0])
    for _ in range(1, space.n):
        nxt = None
        for cvec in candidates():
            c2 = corrected(cvec, pairs) if not fld.is_finite else cvec
            if in_span(c2):
                continue
            if fld.is_finite and any(symp_inner(space, x, c2) != fld.zero
                                     for pair in pairs for x in pair):
                continue
            nxt = c2
            break
        if nxt is None:
            raise AssertionError("could not complete a symplectic basis")
        w = pick_partner(nxt)
        pairs.append((nxt, w))
        chosen_span.extend((nxt, w))

    cols = []
    for u, w in pairs:
        cols.append(u)
        cols.append(w)
    s = Matrix(fld, tuple(zip(*cols)))
    if not is_symplectic(space, s):
        raise AssertionError("completed matrix is not symplectic")
    return s


def random_symplectic_affine(space: PhaseSpace, rng, factors: int = None) -> SymplecticAffine:
    """A pseudo-random affine symplectic map: a word in transvections plus a shift.

    Transvections generate the symplectic group, so long words mix well; determinism
    comes from the caller's seeded ``rng``.
    """
    if not space.field.is_finite:
        raise UnsupportedOperation("random sampling needs a finite field")
    d = space.d
    fld = space.field
    s = Matrix.identity(fld, space.dim)
    count = factors if factors is not None else 2 * space.dim + 2
    for _ in range(count):
        u = tuple(rng.randrange(d) for _ in range(space.dim))
        if not any(u):
            continue
        c = rng.randrange(1, d)
        s = s @ transvection(space, u, c)
    a = tuple(rng.randrange(d) for _ in range(space.dim))
    return SymplecticAffine(space, s, a)
