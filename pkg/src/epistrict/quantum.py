"""Weyl operators, metaplectic unitaries, and quadrature observables on (C^d)^{⊗n}.

Numerics are complex doubles behind a single tolerance (``TOL``); Hilbert-space
dimensions are capped (d^n <= 128 by default).  Coordinates stay interleaved
(q1, p1, ...) exactly as on the classical side; the computational basis is indexed by
position vectors x in (Z_d)^n with the first degree of freedom as the most significant
digit.

Convention audit (executable in the test suite):

* shift: S(q)|x> = |x - q>, boost: B(p)|x> = chi(p x)|x>, with the doubled character
  exp(2*pi*i/2) -> (-1) inside boost at d = 2, so B(1) = diag(1, -1).
* Weyl prefactor per degree of freedom: chi(-inv2 * q * p) S(q) B(p) at odd d, where
  inv2 is the field inverse of 2.  This is the unique choice (given the S-then-B order)
  for which the composition law

      W(a) W(a') = chi(inv2 * <a, a'>) W(a + a')

  holds exactly, along with W(a)^dag = W(-a).  At d = 2 the prefactor is i^{q p},
  making every W(a) a Hermitian tensor of I, X, Y, Z (W(1,1) = Y); composition then
  holds up to a phase in {1, i, -1, -i} and operators commute iff <a, a'> = 0.
* A quadrature functional f is measured by the projectors built on the Weyl line
  through Jf:  P_f(t) = (1/d) sum_s chi(t s) W(s Jf)  (doubled character at d = 2).
  Conjugating the position PVM by a metaplectic whose symplectic maps q1 to f lands on
  the same PVM up to a label shift — the inverse-transpose of the matrix is what acts
  on functionals — and that reconciliation is asserted in the tests rather than taken
  as the definition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional

import numpy as np

from .fields import Field, PrimeField, RationalField
from .linalg import AffineSubspace, Matrix, vec, vec_dot
from .symplectic import (
    PhaseSpace,
    QuadratureFunctional,
    SizeCapExceeded,
    SymplecticAffine,
    UnsupportedOperation,
    symplectic_form,
    symp_inner,
)
from .epistemic import SharpMeasurement

TOL = 1e-10
MAX_DIM = 128


def hilbert_dim(space: PhaseSpace, cap: int = MAX_DIM) -> int:
    """Dimension d^n of the Hilbert space, enforcing the size cap."""
    if not space.field.is_finite:
        raise UnsupportedOperation("no finite-dimensional Hilbert space over Q")
    dim = space.d ** space.n
    if dim > cap:
        raise SizeCapExceeded("Hilbert space", dim, cap)
    return dim


def chi(field: Field, c) -> complex:
    """The field's character: exp(2 pi i c / d); i^c at d = 2; exp(i c) over Q."""
    if isinstance(field, RationalField):
        return complex(np.exp(1j * float(Fraction(c))))
    d = field.modulus  # type: ignore[attr-defined]
    if d == 2:
        return 1j ** (int(c) % 4)
    return complex(np.exp(2j * np.pi * (int(c) % d) / d))


def _pair_char(d: int, c: int) -> complex:
    """Character used in eigenvalue/projector pairings: doubled at d = 2."""
    if d == 2:
        return float((-1) ** (c % 2))
    return complex(np.exp(2j * np.pi * (c % d) / d))


def shift(d: int, q: int) -> np.ndarray:
    """Single-dof shift S(q)|x> = |x - q>."""
    m = np.zeros((d, d), dtype=complex)
    for x in range(d):
        m[(x - q) % d, x] = 1.0
    return m


def boost(d: int, p: int) -> np.ndarray:
    """Single-dof boost B(p)|x> = chi(p x)|x> (doubled character at d = 2)."""
    return np.diag([_pair_char(d, p * x) for x in range(d)]).astype(complex)


def _weyl_1dof(d: int, q: int, p: int) -> np.ndarray:
    if d == 2:
        phase = 1j ** ((q * p) % 4)
    else:
        inv2 = (d + 1) // 2
        phase = chi(PrimeField(d), (-inv2 * q * p) % d)
    return phase * shift(d, q) @ boost(d, p)


def weyl(space: PhaseSpace, a: Iterable) -> np.ndarray:
    """The Weyl (phase-point displacement) operator for an interleaved vector a."""
    hilbert_dim(space)
    d = space.d
    a = vec(space.field, a)
    out = None
    for i in range(space.n):
        w = _weyl_1dof(d, a[2 * i], a[2 * i + 1])
        out = w if out is None else np.kron(out, w)
    return out


def weyl_phase(space: PhaseSpace, a: Iterable, b: Iterable) -> complex:
    """The exact composition phase: W(a) W(b) = weyl_phase(a, b) W(a + b) (odd d)."""
    d = space.d
    if d == 2:
        raise UnsupportedOperation("at d = 2 the composition phase is not a character")
    inv2 = (d + 1) // 2
    return chi(space.field, (inv2 * int(symp_inner(space, a, b))) % d)


# ---------------------------------------------------------------------------
# metaplectic unitaries
# ---------------------------------------------------------------------------


def _basis_index(d: int, x: tuple) -> int:
    idx = 0
    for e in x:
        idx = idx * d + int(e)
    return idx


def _all_position_vectors(d: int, n: int):
    return itertools.product(range(d), repeat=n)


def _phase_gate(space: PhaseSpace, c_mat: Matrix) -> np.ndarray:
    """Unitary for the lower shear [[I, 0], [C, I]] (block coordinates), C symmetric."""
    d, n = space.d, space.n
    dim = d ** n
    diag = np.zeros(dim, dtype=complex)
    rows = c_mat.rows
    for x in _all_position_vectors(d, n):
        quad = sum(int(rows[i][j]) * x[i] * x[j] for i in range(n) for j in range(n))
        if d == 2:
            # Integer lift: diagonal terms weigh i, cross terms (-1).
            lift = sum(int(rows[i][i]) * x[i] for i in range(n)) \
                + 2 * sum(int(rows[i][j]) * x[i] * x[j]
                          for i in range(n) for j in range(i + 1, n))
            diag[_basis_index(d, x)] = 1j ** (lift % 4)
        else:
            inv2 = (d + 1) // 2
            diag[_basis_index(d, x)] = chi(space.field, (-inv2 * quad) % d)
    return np.diag(diag)


def _gl_gate(space: PhaseSpace, a_mat: Matrix) -> np.ndarray:
    """Unitary |x> -> |A x| for invertible A, implementing [[A, 0], [0, A^-T]]."""
    d, n = space.d, space.n
    dim = d ** n
    u = np.zeros((dim, dim), dtype=complex)
    for x in _all_position_vectors(d, n):
        ax = a_mat.matvec(x)
        u[_basis_index(d, ax), _basis_index(d, x)] = 1.0
    return u


def _fourier_gate(space: PhaseSpace) -> np.ndarray:
    """The DFT on every degree of freedom, implementing [[0, I], [-I, 0]]."""
    d = space.d
    f = np.array([[_pair_char(d, x * y) for x in range(d)] for y in range(d)],
                 dtype=complex) / np.sqrt(d)
    out = f
    for _ in range(space.n - 1):
        out = np.kron(out, f)
    return out


def _interleave_permutation(space: PhaseSpace) -> Matrix:
    """P with x_block = P x_inter, block order (q1..qn, p1..pn)."""
    fld = space.field
    n = space.n
    rows = []
    for i in range(n):
        r = [fld.zero] * space.dim
        r[2 * i] = fld.one
        rows.append(r)
    for i in range(n):
        r = [fld.zero] * space.dim
        r[2 * i + 1] = fld.one
        rows.append(r)
    return Matrix.from_rows(fld, rows)


def _blocks(space: PhaseSpace, s_block: Matrix):
    n = space.n
    def sub(r0, c0):
        return Matrix(space.field, tuple(
            tuple(s_block.rows[r0 + i][c0 + j] for j in range(n)) for i in range(n)))
    return sub(0, 0), sub(0, n), sub(n, 0), sub(n, n)


def _is_invertible(m: Matrix) -> bool:
    try:
        m.inverse()
        return True
    except ValueError:
        return False


def _symmetric_fix(space: PhaseSpace, a: Matrix, b: Matrix) -> Matrix:
    """First symmetric C (lex over the upper triangle) making A C + B invertible."""
    fld = space.field
    n = space.n
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for values in itertools.product(range(space.d), repeat=len(slots)):
        rows = [[fld.zero] * n for _ in range(n)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
            rows[j][i] = v
        c = Matrix.from_rows(fld, rows)
        if _is_invertible(a @ c + b):
            return c
    raise AssertionError("no symmetric completion found; input cannot be symplectic")


_metaplectic_cache: Dict[tuple, np.ndarray] = {}


def metaplectic(space: PhaseSpace, s) -> np.ndarray:
    """A unitary V(S) with V(S) W(a) V(S)^dag proportional to W(S a) for all a.

    At odd d the construction is exactly covariant (the proportionality constant is 1);
    at d = 2 signs can appear on displaced Weyls.  The result is cached and
    deterministic; covariance is re-verified on the generator displacements after every
    build, so a silently wrong decomposition cannot escape.
    """
    if isinstance(s, SymplecticAffine):
        s = s.s
    if not isinstance(s, Matrix):
        s = Matrix.from_rows(space.field, s)
    key = (space.d, space.n, s.rows)
    cached = _metaplectic_cache.get(key)
    if cached is not None:
        return cached
    j = symplectic_form(space)
    if not (s.T @ j @ s == j):
        raise ValueError("matrix is not symplectic; no metaplectic exists")
    hilbert_dim(space)

    perm = _interleave_permutation(space)
    s_block = perm @ s @ perm.T
    a, b, c, d_blk = _blocks(space, s_block)

    if _is_invertible(b):
        c1 = d_blk @ b.inverse()
        c2 = b.inverse() @ a
        for m in (c1, c2):
            if m != m.T:
                raise AssertionError("shear blocks not symmetric; decomposition bug")
        u = (_phase_gate(space, c1)
             @ _gl_gate(space, b)
             @ _fourier_gate(space)
             @ _phase_gate(space, c2))
    else:
        cfix = _symmetric_fix(space, a, b)
        n = space.n
        fld = space.field
        ident = Matrix.identity(fld, n)
        zero = Matrix.zeros(fld, n, n)
        def block_mat(tl, tr, bl, br):
            rows = []
            for i in range(n):
                rows.append(tuple(tl.rows[i]) + tuple(tr.rows[i]))
            for i in range(n):
                rows.append(tuple(bl.rows[i]) + tuple(br.rows[i]))
            return Matrix(fld, tuple(rows))
        r_fix_block = block_mat(ident, cfix, zero, ident)
        r_fix = perm.T @ r_fix_block @ perm
        fixed = metaplectic(space, s @ r_fix)
        fourier = _fourier_gate(space)
        r_inv_unitary = fourier @ _phase_gate(space, cfix) @ fourier.conj().T
        u = fixed @ r_inv_unitary

    _verify_generator_covariance(space, s, u)
    _metaplectic_cache[key] = u
    return u


def _verify_generator_covariance(space: PhaseSpace, s: Matrix, u: np.ndarray):
    fld = space.field
    for i in range(space.dim):
        e = tuple(fld.one if k == i else fld.zero for k in range(space.dim))
        lhs = u @ weyl(space, e) @ u.conj().T
        rhs = weyl(space, s.matvec(e))
        phase = _proportionality_phase(lhs, rhs)
        if phase is None:
            raise AssertionError("metaplectic build lost Weyl covariance")
        if space.d != 2 and abs(phase - 1.0) > 1e-8:
            raise AssertionError("odd-d metaplectic must be exactly covariant")


def _proportionality_phase(lhs: np.ndarray, rhs: np.ndarray) -> Optional[complex]:
    """The unit phase c with lhs = c * rhs, or None if no such scalar exists."""
    idx = np.unravel_index(np.argmax(np.abs(rhs)), rhs.shape)
    if abs(rhs[idx]) < TOL:
        return 1.0 if np.max(np.abs(lhs)) < TOL else None
    c = lhs[idx] / rhs[idx]
    if abs(abs(c) - 1.0) > 1e-8 or np.max(np.abs(lhs - c * rhs)) > 1e-8:
        return None
    return complex(c)


# ---------------------------------------------------------------------------
# Clifford channels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliffordChannel:
    """The unitary channel of an affine symplectic map: displacement after metaplectic.

    Only the superoperator O -> U O U^dag is canonical (the unitary itself carries the
    projective phase freedom of the construction).
    """

    space: PhaseSpace
    t: SymplecticAffine
    unitary: np.ndarray

    def apply(self, op: np.ndarray) -> np.ndarray:
        return self.unitary @ op @ self.unitary.conj().T

    __call__ = apply


def clifford(space: PhaseSpace, t: SymplecticAffine) -> CliffordChannel:
    """Unitary channel whose conjugation realizes the affine map m -> S m + a.

    The displacement enters negated because W(a) conjugation shifts quadrature
    outcome values by -f(a) (the shift unitary translates kets, and kets move
    opposite to outcome labels); W(-a) is the unitary whose Heisenberg action on
    every quadrature observable matches the classical update under m -> m + a.
    """
    if t.space != space:
        raise ValueError("transformation acts on a different phase space")
    f = space.field
    neg_a = tuple(f.neg(x) for x in t.a)
    u = weyl(space, neg_a) @ metaplectic(space, t.s)
    return CliffordChannel(space, t, u)


# ---------------------------------------------------------------------------
# quadrature observables
# ---------------------------------------------------------------------------


def quadrature_projector(space: PhaseSpace, f, value) -> np.ndarray:
    """Projector onto outcome ``value`` of the quadrature functional ``f``.

    Built as the character sum (1/d) sum_s pair(value * s) W(s J f) on the Weyl line
    through Jf; the functional's constant offsets the outcome label.
    """
    fld = space.field
    if isinstance(f, QuadratureFunctional):
        vector, const = f.f, f.c
    else:
        vector, const = vec(fld, f), fld.zero
    if all(x == fld.zero for x in vector):
        raise ValueError("the zero functional has no outcome projectors")
    d = space.d
    t = fld.sub(fld.element(value), const)
    j = symplectic_form(space)
    jf = j.matvec(vector)
    dim = hilbert_dim(space)
    out = np.zeros((dim, dim), dtype=complex)
    for s in range(d):
        coeff = _pair_char(d, (int(t) * s) % d)
        sa = tuple(fld.mul(fld.element(s), x) for x in jf)
        out += coeff * weyl(space, sa)
    return out / d


def quadrature_joint_projector(space: PhaseSpace, known: AffineSubspace,
                               valuation: Iterable) -> np.ndarray:
    """Joint eigenprojector for an isotropic subspace V at a valuation coset.

    The product of single-functional projectors over the canonical echelon basis of V
    (which commute, since V is isotropic).  At odd d the result is basis independent;
    at d = 2 the canonical basis is part of the definition.
    """
    meas = SharpMeasurement(space, known)  # validates isotropy
    fld = space.field
    label = meas.label_of(vec(fld, valuation))
    dim = hilbert_dim(space)
    out = np.eye(dim, dtype=complex)
    for f in known.basis:
        out = out @ quadrature_projector(space, f, vec_dot(fld, f, label))
    return out


@dataclass(frozen=True)
class QuadratureState:
    """Label (V, v) together with the normalized projector it prepares."""

    space: PhaseSpace
    known: AffineSubspace
    valuation: tuple
    rho: np.ndarray

    @property
    def label(self):
        return (self.known, self.valuation)


def quadrature_state(space: PhaseSpace, known: AffineSubspace,
                     valuation: Iterable) -> QuadratureState:
    proj = quadrature_joint_projector(space, known, valuation)
    tr = np.trace(proj).real
    expected_rank = space.d ** (space.n - known.rank)
    if abs(tr - expected_rank) > TOL * max(1, expected_rank):
        raise AssertionError(f"projector rank {tr} != d^(n-k) = {expected_rank}")
    meas = SharpMeasurement(space, known)
    return QuadratureState(space, known, meas.label_of(vec(space.field, valuation)),
                           proj / tr)


def quadrature_pvm(space: PhaseSpace, known: AffineSubspace) -> dict:
    """The full PVM of a joint quadrature measurement, keyed by canonical labels."""
    meas = SharpMeasurement(space, known)
    pvm = {}
    for label in meas.outcomes():
        pvm[label] = quadrature_joint_projector(space, known, label)
    dim = hilbert_dim(space)
    total = sum(pvm.values())
    if np.max(np.abs(total - np.eye(dim))) > TOL:
        raise AssertionError("quadrature PVM does not resolve the identity")
    return pvm


def born(rho: np.ndarray, pvm: dict) -> dict:
    """Born probabilities of a PVM in a state; validates realness and normalization."""
    out = {}
    for label, proj in pvm.items():
        p = np.trace(rho @ proj)
        if abs(p.imag) > TOL:
            raise AssertionError("Born probability has an imaginary part")
        out[label] = float(p.real)
    total = sum(out.values())
    if abs(total - 1.0) > TOL:
        raise AssertionError(f"Born probabilities sum to {total}")
    return out
