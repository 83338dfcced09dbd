"""Weyl stabilizer groups and the classical/quantum comparison they support.

A quadrature state with known functionals V and valuation v is stabilized by the
abelian group generated by

    g_i = char(v . f_i) * W(J f_i)        for a basis {f_i} of V,

since W(J f) acts on the value-t eigenspace of the functional f as char(-t).  This
module translates in both directions between that presentation and the (V, v) one,
rebuilds density matrices from generator lists by multiplying eigenprojectors, and
measures how far value assignments on the full group can be pushed:

  * at odd d the naive additive assignment a = J f  ->  char(v . f) is consistent on
    every group element, because Weyl products over an isotropic subspace carry no
    extra phase;
  * at d = 2 products of commuting generators can flip sign (the XX.ZZ = -YY effect),
    and `weyl_value_report` counts exactly how many group elements the additive
    assignment gets wrong.

The same obstruction is packaged in two classic finite forms (`mermin_square`,
`ghz_test`) with exhaustive assignment searches, and `scan_for_witness` performs the
full operational comparison: it enumerates every (state, transformation, measurement)
triple and returns the first whose classical and quantum outcome statistics differ,
or None when the exhaustive scan finds perfect agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional

import numpy as np

from .linalg import AffineSubspace, Matrix, solve_affine, vec
from .symplectic import (
    PhaseSpace,
    SymplecticAffine,
    enumerate_group,
    enumerate_isotropic,
    enumerate_symplectic,
    symp_inner,
    symplectic_form,
)
from .epistemic import (
    EpistemicState,
    OutcomeDistribution,
    SharpMeasurement,
    enumerate_states,
    measure,
    transform,
)
from .quantum import (
    TOL,
    _pair_char,
    born,
    clifford,
    metaplectic,
    quadrature_pvm,
    quadrature_state,
    weyl,
)


@dataclass(frozen=True)
class StabilizerGroup:
    """Generators (m_i, e_i) standing for the operators char(e_i) W(m_i)."""

    space: PhaseSpace
    generators: tuple

    def __post_init__(self):
        d = self.space.field.modulus if self.space.field.is_finite else None
        if d is None:
            raise ValueError("stabilizer groups live over finite fields")
        gens = []
        for m, e in self.generators:
            m = tuple(int(x) % d for x in m)
            if all(x == 0 for x in m):
                raise ValueError("zero vector cannot generate a stabilizer")
            gens.append((m, int(e) % d))
        for i, (m, _) in enumerate(gens):
            for mp, _ in gens[i + 1:]:
                if symp_inner(self.space, m, mp) != 0:
                    raise ValueError(
                        f"generators {m} and {mp} do not commute "
                        "(nonzero symplectic product)")
        object.__setattr__(self, "generators", tuple(gens))

    def operator(self, i: int) -> np.ndarray:
        m, e = self.generators[i]
        return _pair_char(self.space.d, e) * weyl(self.space, m)


def stabilizer_of_quadrature(space: PhaseSpace, known, valuation) -> StabilizerGroup:
    """Stabilizer generators of the quadrature state (known, valuation)."""
    state = EpistemicState(space, known, valuation)
    j = symplectic_form(space)
    gens = []
    for f in state.known.basis:
        m = tuple(j.matvec(f))
        e = sum(int(a) * int(b) for a, b in zip(f, state.valuation)) % space.d
        gens.append((m, e))
    return StabilizerGroup(space, tuple(gens))


def _eigenprojector(space: PhaseSpace, m, e) -> np.ndarray:
    """Projector onto the +1 eigenspace of char(e) W(m)."""
    d = space.d
    dim = d ** space.n
    proj = np.zeros((dim, dim), dtype=complex)
    g = _pair_char(d, e) * weyl(space, m)
    power = np.eye(dim, dtype=complex)
    for _ in range(d):
        proj += power
        power = power @ g
    return proj / d


def state_from_stabilizer(group: StabilizerGroup) -> np.ndarray:
    """Density matrix of the joint +1 eigenspace of the generators.

    The projectors commute, so their product is the joint projector; a vanishing
    trace means the phases are mutually inconsistent and no state exists.
    """
    space = group.space
    dim = space.d ** space.n
    proj = np.eye(dim, dtype=complex)
    for m, e in group.generators:
        proj = proj @ _eigenprojector(space, m, e)
    tr = np.trace(proj)
    if abs(tr) < TOL:
        raise ValueError("inconsistent stabilizer phases: the joint eigenspace is empty")
    return proj / tr


def quadrature_of_stabilizer(group: StabilizerGroup) -> EpistemicState:
    """Recover (known, valuation) from independent stabilizer generators.

    Requires the Weyl vectors to be linearly independent; a dependent list is
    rejected because at d = 2 the phase of a product of generators is not the sum
    of their phases, so reading dependent generators additively would silently
    assume the very consistency this package is built to probe.
    """
    space = group.space
    f = space.field
    if not group.generators:
        return EpistemicState.ignorance(space)
    j = symplectic_form(space)
    j_inv = j.T  # J^T = J^{-1}: J^2 = -I and J is antisymmetric (symmetric at d = 2)
    functionals = [tuple(j_inv.matvec(m)) for m, _ in group.generators]
    rows = Matrix.from_rows(f, functionals)
    known = AffineSubspace.span(f, functionals, ambient=space.dim)
    if known.rank != len(group.generators):
        raise ValueError("generators are dependent; phases cannot be read additively")
    targets = vec(f, [e for _, e in group.generators])
    sol = solve_affine(rows, targets)
    assert not sol.is_empty
    return EpistemicState(space, known, sol.offset)


@dataclass(frozen=True)
class ValueReport:
    """Additive value assignment audited against actual Weyl eigenvalues."""

    n_elements: int
    n_flips: int
    flipped: tuple          # the functionals whose group element dissents

    @property
    def consistent(self) -> bool:
        return self.n_flips == 0


def weyl_value_report(space: PhaseSpace, known, valuation) -> ValueReport:
    """Check char(v . f) against the true eigenvalue of W(J f) for every f in V."""
    state = EpistemicState(space, known, valuation)
    rho = quadrature_state(space, state.known, state.valuation).rho
    tr = np.trace(rho).real
    j = symplectic_form(space)
    d = space.d
    basis = state.known.basis
    n_elements = 0
    flipped = []
    for coeffs in iproduct(range(d), repeat=len(basis)):
        if all(c == 0 for c in coeffs):
            continue
        f = tuple(sum(c * row[i] for c, row in zip(coeffs, basis)) % d
                  for i in range(space.dim))
        n_elements += 1
        naive = sum(int(a) * int(b) for a, b in zip(f, state.valuation)) % d
        m = tuple(j.matvec(f))
        # Eigenvalue of W(m) on the state, read off the trace.
        actual = np.trace(weyl(space, m) @ rho) / tr
        predicted = np.conj(_pair_char(d, naive))
        if abs(actual - predicted) > 1e-8:
            flipped.append(f)
    return ValueReport(n_elements, len(flipped), tuple(flipped))


# ---------------------------------------------------------------------------
# parity obstructions in their classic finite forms
# ---------------------------------------------------------------------------


def _sign_of_product(space: PhaseSpace, vectors) -> int:
    """Sign s with W(m1) W(m2) ... = s * I, for vectors summing to zero."""
    dim = space.d ** space.n
    prod = np.eye(dim, dtype=complex)
    for m in vectors:
        prod = prod @ weyl(space, m)
    val = prod[0, 0]
    assert np.max(np.abs(prod - val * np.eye(dim))) < 1e-9
    assert abs(abs(val) - 1) < 1e-9 and abs(val.imag) < 1e-9
    return int(round(val.real))


@dataclass(frozen=True)
class MerminReport:
    grid: tuple             # 3 x 3 Weyl vectors on two qubits
    row_signs: tuple
    col_signs: tuple
    n_assignments: int
    n_satisfying: int
    n_satisfying_relaxed: int


def mermin_square() -> MerminReport:
    """The 3 x 3 square of two-qubit Weyl operators with an odd constraint cycle.

    Each row and column multiplies to +-identity; five contexts give +1 and one
    gives -1, so the 512 candidate noncontextual +-1 assignments all fail, while
    dropping the negative context leaves satisfying assignments.
    """
    from .fields import PrimeField
    space = PhaseSpace(PrimeField(2), 2)
    x, z, y, i = (1, 0), (0, 1), (1, 1), (0, 0)

    def pair(a, b):
        return (a[0], a[1], b[0], b[1])

    grid = (
        (pair(x, i), pair(i, x), pair(x, x)),
        (pair(i, z), pair(z, i), pair(z, z)),
        (pair(x, z), pair(z, x), pair(y, y)),
    )
    row_signs = tuple(_sign_of_product(space, row) for row in grid)
    col_signs = tuple(_sign_of_product(space, [grid[r][c] for r in range(3)])
                      for c in range(3))
    constraints = [([(r, c) for c in range(3)], row_signs[r]) for r in range(3)]
    constraints += [([(r, c) for r in range(3)], col_signs[c]) for c in range(3)]

    def count(active) -> int:
        n = 0
        for bits in iproduct((1, -1), repeat=9):
            val = {(r, c): bits[3 * r + c] for r in range(3) for c in range(3)}
            if all(np.prod([val[cell] for cell in cells]) == sign
                   for cells, sign in active):
                n += 1
        return n

    negative = [k for k, (_, sign) in enumerate(constraints) if sign == -1]
    assert len(negative) == 1
    relaxed = [c for k, c in enumerate(constraints) if k != negative[0]]
    return MerminReport(grid, row_signs, col_signs, 512,
                        count(constraints), count(relaxed))


@dataclass(frozen=True)
class GhzReport:
    generators: tuple
    derived: tuple          # the three Weyl vectors with forced -1 values
    eigenvalues: tuple      # (XXX, then the three derived)
    n_assignments: int
    n_satisfying: int
    n_satisfying_relaxed: int


def ghz_test() -> GhzReport:
    """Three-qubit stabilizer state whose single-site +-1 values cannot exist.

    The state stabilized by XXX, ZZI, IZZ assigns +1 to XXX and -1 to each of
    XYY, YXY, YYX; multiplying the four constraints squares every single-site
    value yet leaves a -1, so all 64 local assignments fail.
    """
    from .fields import PrimeField
    space = PhaseSpace(PrimeField(2), 3)
    gens = ((1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 0), (0, 0, 0, 1, 0, 1))
    group = StabilizerGroup(space, tuple((m, 0) for m in gens))
    rho = state_from_stabilizer(group)
    xxx = (1, 0, 1, 0, 1, 0)
    xyy = (1, 0, 1, 1, 1, 1)
    yxy = (1, 1, 1, 0, 1, 1)
    yyx = (1, 1, 1, 1, 1, 0)
    span = AffineSubspace.span(space.field, gens)
    for m in (xyy, yxy, yyx):
        assert span.contains(m), "derived observables must lie in the stabilizer span"
    eigs = tuple(int(round(np.trace(weyl(space, m) @ rho).real / np.trace(rho).real))
                 for m in (xxx, xyy, yxy, yyx))

    # Local assignments give one +-1 value to each of X_i, Y_i.
    def count(constraints) -> int:
        n = 0
        for bits in iproduct((1, -1), repeat=6):
            vx, vy = bits[:3], bits[3:]
            words = {
                xxx: vx[0] * vx[1] * vx[2],
                xyy: vx[0] * vy[1] * vy[2],
                yxy: vy[0] * vx[1] * vy[2],
                yyx: vy[0] * vy[1] * vx[2],
            }
            if all(words[m] == want for m, want in constraints):
                n += 1
        return n

    full = list(zip((xxx, xyy, yxy, yyx), eigs))
    return GhzReport(gens, (xyy, yxy, yyx), eigs, 64, count(full), count(full[1:]))


# ---------------------------------------------------------------------------
# the exhaustive operational comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A triple whose classical and quantum outcome statistics disagree."""

    state: EpistemicState
    transformation: SymplecticAffine
    measurement: SharpMeasurement
    classical: OutcomeDistribution
    quantum: dict
    max_diff: float


def _fingerprint(rho: np.ndarray) -> bytes:
    # Adding complex zero folds -0.0 into +0.0 so equal matrices share bytes.
    return (np.round(rho, 6) + (0.0 + 0.0j)).tobytes()


def scan_for_witness(space: PhaseSpace, tol: float = 1e-9) -> Optional[Witness]:
    """Exhaustively compare the two theories over every scenario triple.

    Both theories act on the same finite state set, so the scan first verifies the
    structural bijection (each Clifford image of a quadrature state is again exactly
    one quadrature state) and reduces each side to a permutation of state labels:
    quantum ones numerically via density-matrix fingerprints, classical ones via the
    support map.  A (state, transformation) pair whose two labels agree yields equal
    statistics for every measurement and is skipped; on the first disagreeing pair
    the measurements are scanned in enumeration order for distinguishing statistics,
    and the winning triple is re-verified through an honest Born computation.
    Returns None when the exhaustive scan finds no disagreement anywhere.
    """
    states = enumerate_states(space)
    index_of_state = {s: i for i, s in enumerate(states)}
    rhos = [quadrature_state(space, s.known, s.valuation).rho for s in states]
    label_of = {}
    for i, rho in enumerate(rhos):
        fp = _fingerprint(rho)
        assert fp not in label_of, "two quadrature states share a density matrix"
        label_of[fp] = i

    def quantum_perm(unitary) -> tuple:
        out = []
        for rho in rhos:
            image = unitary @ rho @ unitary.conj().T
            fp = _fingerprint(image)
            if fp not in label_of:
                raise AssertionError(
                    "a Clifford image of a quadrature state left the state set")
            out.append(label_of[fp])
        perm = tuple(out)
        assert len(set(perm)) == len(perm)
        return perm

    symplectics = enumerate_symplectic(space)
    displacements = [tuple(a) for a in space.points()]
    q_lin = {s.rows: np.array(quantum_perm(metaplectic(space, s)))
             for s in symplectics}
    q_disp = {}
    for a in displacements:
        u = clifford(space, SymplecticAffine.displacement(space, a)).unitary
        q_disp[a] = np.array(quantum_perm(u))

    def classical_perm(t: SymplecticAffine) -> np.ndarray:
        return np.array([index_of_state[transform(s, t)] for s in states])

    c_lin = {s.rows: classical_perm(SymplecticAffine(space, s, space.zero()))
             for s in symplectics}
    c_disp = {a: classical_perm(SymplecticAffine.displacement(space, a))
              for a in displacements}

    measurements = [SharpMeasurement(space, v) for v in enumerate_isotropic(space)
                    if v.rank > 0]

    for t in enumerate_group(space):
        a = tuple(t.a)
        q_perm = q_disp[a][q_lin[t.s.rows]]
        c_perm = c_disp[a][c_lin[t.s.rows]]
        if np.array_equal(q_perm, c_perm):
            continue
        for i in range(len(states)):
            if q_perm[i] == c_perm[i]:
                continue
            classical_image = states[c_perm[i]]
            quantum_image = states[q_perm[i]]
            for meas in measurements:
                c_dist = measure(classical_image, meas)
                q_dist_exact = measure(quantum_image, meas)
                if c_dist == q_dist_exact:
                    continue
                # Honest re-verification through the quantum route.
                evolved = clifford(space, t).apply(rhos[i])
                q_dist = born(evolved, quadrature_pvm(space, meas.measured))
                diff = max(abs(q_dist[k] - float(c_dist.probability(k)))
                           for k in q_dist)
                assert diff > tol, "label mismatch must show up in some statistics"
                return Witness(states[i], t, meas, c_dist, q_dist, diff)
            raise AssertionError(
                "distinct quadrature states must differ in some sharp measurement")
    return None
