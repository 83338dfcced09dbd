"""Classical states under the quadrature knowledge restriction, and their statistics.

An agent may jointly know only quadratures that Poisson-commute, i.e. an isotropic
subspace V of functionals, together with one value for each.  The states of maximal
allowed knowledge are therefore pairs (V, v):

* ``known``      — an isotropic linear subspace V (what is known);
* ``valuation``  — which value assignment, encoded as the canonical representative of
  the coset v + V-perp.  Two raw vectors give identical physics iff they agree on every
  f in V, which happens iff they lie in the same coset of the Euclidean complement
  V-perp, so states are parametrized by cosets rather than by elements of V.  (For the
  generic V with F^{2n} = V + V-perp the representative can be taken inside V; the
  coset form also covers the self-orthogonal-direction cases that arise over finite
  fields, keeping outcome-completeness intact.)

The ontic support is V-perp + v.  All probabilities are exact ``Fraction`` values;
over the rational field only the possibilistic layer is available.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .fields import Scalar
from .linalg import (
    AffineSubspace,
    Matrix,
    Vector,
    cardinality,
    intersect_affine,
    solve_affine,
    vec,
    vec_add,
    vec_dot,
    vec_sub,
)
from .symplectic import (
    PhaseSpace,
    QuadratureFunctional,
    SizeCapExceeded,
    SymplecticAffine,
    UnsupportedOperation,
    _euclidean_complement,
    enumerate_isotropic,
    is_isotropic,
)


@dataclass(frozen=True)
class EpistemicState:
    """A maximal-knowledge epistemic state (V, v); see the module docstring."""

    space: PhaseSpace
    known: AffineSubspace
    valuation: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        if not is_isotropic(self.space, self.known):
            raise ValueError("known quadratures must span an isotropic linear subspace")
        fld = self.space.field
        raw = self.valuation if self.valuation is not None else self.space.zero()
        hidden = _euclidean_complement(self.space, self.known)
        object.__setattr__(self, "valuation", hidden.representative(vec(fld, raw)))

    @classmethod
    def ignorance(cls, space: PhaseSpace) -> "EpistemicState":
        """The state of no knowledge: every ontic state is possible."""
        return cls(space, AffineSubspace.span(space.field, [], ambient=space.dim))

    @classmethod
    def from_support(cls, space: PhaseSpace, sup: AffineSubspace) -> "EpistemicState":
        """Reconstruct (V, v) from an ontic support of the valid affine form."""
        if sup.is_empty:
            raise ValueError("a state must have nonempty support")
        direction = sup.direction()
        known = _euclidean_complement(space, direction)
        state = cls(space, known, sup.offset)
        if state.support() != sup:
            raise ValueError("support is not of the form V-perp + v for isotropic V")
        return state

    def support(self) -> AffineSubspace:
        cached = self.__dict__.get("_support_memo")
        if cached is None:
            hidden = _euclidean_complement(self.space, self.known)
            cached = AffineSubspace(self.space.field, self.space.dim, hidden.basis,
                                    self.valuation)
            object.__setattr__(self, "_support_memo", cached)
        return cached

    @property
    def rank(self) -> int:
        return self.known.rank

    def is_pure(self) -> bool:
        """Maximal allowed knowledge: V is Lagrangian."""
        return self.known.rank == self.space.n

    def is_ignorance(self) -> bool:
        return self.known.rank == 0

    def value_of(self, f) -> Scalar:
        """The sharp value of a known functional (constant on the support)."""
        fld = self.space.field
        if isinstance(f, QuadratureFunctional):
            vector, const = f.f, f.c
        else:
            vector, const = vec(fld, f), fld.zero
        if not self.known.contains(vector):
            raise ValueError("functional is not known in this state")
        return fld.add(vec_dot(fld, vector, self.valuation), const)


def support(state: EpistemicState) -> AffineSubspace:
    return state.support()


def enumerate_states(space: PhaseSpace, cap: int = 500_000) -> list:
    """Every valid epistemic state, deterministically ordered and duplicate-free.

    For each isotropic V (including the trivial one) there are d^rank(V) valuation
    cosets, enumerated as canonical representatives directly.
    """
    if not space.field.is_finite:
        raise UnsupportedOperation("cannot enumerate states over Q")
    d = space.d
    out = []
    for v_sub in enumerate_isotropic(space):
        count = d ** v_sub.rank
        if len(out) + count > cap:
            raise SizeCapExceeded("state enumeration", len(out) + count, cap)
        hidden = _euclidean_complement(space, v_sub)
        fld = space.field
        pivot_cols = [next(i for i, e in enumerate(row) if e != fld.zero)
                      for row in hidden.basis]
        free_cols = [j for j in range(space.dim) if j not in pivot_cols]
        assert len(free_cols) == v_sub.rank
        for values in itertools.product(range(d), repeat=len(free_cols)):
            offset = [fld.zero] * space.dim
            for col, val in zip(free_cols, values):
                offset[col] = val
            out.append(EpistemicState(space, v_sub, tuple(offset)))
    return out


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def transform(state: EpistemicState, t: SymplecticAffine) -> EpistemicState:
    """Push the state through an affine symplectic map (support maps pointwise)."""
    if t.space != state.space:
        raise ValueError("transformation acts on a different phase space")
    fld = state.space.field
    sup = state.support()
    image = AffineSubspace(
        fld, state.space.dim,
        tuple(t.s.matvec(b) for b in sup.basis),
        t.apply(sup.offset))
    return EpistemicState.from_support(state.space, image)


# ---------------------------------------------------------------------------
# sharp measurements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SharpMeasurement:
    """A jointly-knowable quadrature measurement: an isotropic subspace V' of functionals.

    Outcomes are value assignments to V', labelled by canonical coset representatives
    exactly as state valuations are; the response set of a label is the phase-space
    cell V'-perp + label, and the cells partition phase space.
    """

    space: PhaseSpace
    measured: AffineSubspace

    def __post_init__(self):
        if not is_isotropic(self.space, self.measured):
            raise ValueError("measured functionals must span an isotropic linear subspace")

    @classmethod
    def of_functional(cls, space: PhaseSpace, f: Iterable) -> "SharpMeasurement":
        return cls(space, AffineSubspace.span(space.field, [vec(space.field, f)],
                                              ambient=space.dim))

    def _hidden(self) -> AffineSubspace:
        return _euclidean_complement(self.space, self.measured)

    def label_of(self, point: Iterable) -> Vector:
        """Canonical outcome label of the cell containing ``point``."""
        return self._hidden().representative(vec(self.space.field, point))

    def cell(self, label: Iterable) -> AffineSubspace:
        """All ontic states producing this outcome (the response set)."""
        hidden = self._hidden()
        return AffineSubspace(self.space.field, self.space.dim, hidden.basis,
                              vec(self.space.field, label))

    def outcomes(self) -> list:
        """All canonical outcome labels, lexicographically ordered (finite fields)."""
        if not self.space.field.is_finite:
            raise UnsupportedOperation("cannot enumerate outcomes over Q")
        fld = self.space.field
        hidden = self._hidden()
        pivot_cols = [next(i for i, e in enumerate(row) if e != fld.zero)
                      for row in hidden.basis]
        free_cols = [j for j in range(self.space.dim) if j not in pivot_cols]
        labels = []
        for values in itertools.product(range(self.space.d), repeat=len(free_cols)):
            offset = [fld.zero] * self.space.dim
            for col, val in zip(free_cols, values):
                offset[col] = val
            labels.append(tuple(offset))
        return labels

    def values_at(self, label: Iterable) -> tuple:
        """The value tuple (f_i applied to the label) over the canonical basis of V'."""
        fld = self.space.field
        label = vec(fld, label)
        return tuple(vec_dot(fld, f, label) for f in self.measured.basis)


class OutcomeDistribution:
    """Exact outcome statistics: canonical labels mapped to ``Fraction`` probabilities."""

    def __init__(self, entries: dict):
        cleaned = {tuple(k): Fraction(v) for k, v in entries.items() if v != 0}
        total = sum(cleaned.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if any(p < 0 for p in cleaned.values()):
            raise ValueError("negative probability")
        self._probs = cleaned

    def probability(self, label) -> Fraction:
        return self._probs.get(tuple(label), Fraction(0))

    __getitem__ = probability

    def items(self):
        return sorted(self._probs.items())

    def labels(self):
        return [k for k, _ in self.items()]

    def __eq__(self, other) -> bool:
        return isinstance(other, OutcomeDistribution) and self._probs == other._probs

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"OutcomeDistribution({{{inner}}})"

    def is_deterministic(self) -> bool:
        return len(self._probs) == 1


def measure(state: EpistemicState, m: SharpMeasurement) -> OutcomeDistribution:
    """Sharp-measurement statistics by exact affine counting.

    Pr(label) = |support ∩ cell(label)| / |support|; all arithmetic is in Q.
    """
    if m.space != state.space:
        raise ValueError("measurement lives on a different phase space")
    if not state.space.field.is_finite:
        raise UnsupportedOperation(
            "probabilities need a finite ontic space; use possibilistic() over Q")
    sup = state.support()
    denom = cardinality(sup)
    probs = {}
    for label in m.outcomes():
        overlap = intersect_affine(sup, m.cell(label))
        num = cardinality(overlap)
        if num:
            probs[label] = Fraction(num, denom)
    return OutcomeDistribution(probs)


def scenario(state: EpistemicState, t: Optional[SymplecticAffine],
             m: SharpMeasurement) -> OutcomeDistribution:
    """Prepare, transform, measure — computed by two routes and cross-checked.

    Route one transforms the state and measures; route two pulls the measurement back
    through the transformation (measured subspace S^T V', value labels shifted by the
    displacement) and measures the original state.  Both must agree exactly.
    """
    if t is None:
        return measure(state, m)
    direct = measure(transform(state, t), m)

    fld = state.space.field
    pulled_rows = [t.s.T.matvec(f) for f in m.measured.basis]
    pulled = SharpMeasurement(
        state.space,
        AffineSubspace.span(fld, pulled_rows or [state.space.zero()],
                            ambient=state.space.dim))
    pulled_dist = measure(state, pulled)
    relabelled = {}
    for label in m.outcomes():
        # Outcome `label` after the map corresponds to pulled-back values
        # f_i(label) - f_i(a) on the original state.
        targets = [fld.sub(vec_dot(fld, f, label), vec_dot(fld, f, t.a))
                   for f in m.measured.basis]
        if pulled_rows:
            cell = solve_affine(Matrix(fld, tuple(pulled_rows)), targets)
        else:
            cell = AffineSubspace.full(fld, state.space.dim)
        p = pulled_dist.probability(pulled.label_of(cell.offset)) if not cell.is_empty \
            else Fraction(0)
        if p:
            relabelled[label] = p
    indirect = OutcomeDistribution(relabelled)
    if direct != indirect:
        raise AssertionError("transform-then-measure disagrees with pulled-back route")
    return direct


def possibilistic(state: EpistemicState, m: SharpMeasurement) -> AffineSubspace:
    """The set of ontic states compatible with some possible outcome — exactly
    support + V'-perp, one affine subspace whose cells are the possible outcomes.

    Works over any field; this is the entire statistical content available over Q.
    """
    if m.space != state.space:
        raise ValueError("measurement lives on a different phase space")
    sup = state.support()
    return sup.plus_directions(m._hidden().basis)


def possible_labels(state: EpistemicState, m: SharpMeasurement) -> list:
    """Canonical labels of outcomes with nonzero support overlap (finite fields)."""
    reach = possibilistic(state, m)
    return sorted({m.label_of(x) for x in reach.points()})


# ---------------------------------------------------------------------------
# ancilla constructions
# ---------------------------------------------------------------------------


def join_spaces(sys: PhaseSpace, anc: PhaseSpace) -> PhaseSpace:
    if sys.field != anc.field:
        raise ValueError("system and ancilla must share a field")
    return PhaseSpace(sys.field, sys.n + anc.n)


def _joint_point(m_sys: tuple, m_anc: tuple) -> tuple:
    return tuple(m_sys) + tuple(m_anc)


def _anc_part(sys: PhaseSpace, m_joint: tuple) -> tuple:
    return m_joint[sys.dim:]


def _sys_part(sys: PhaseSpace, m_joint: tuple) -> tuple:
    return m_joint[:sys.dim]


def product_state(sys_state: EpistemicState, anc_state: EpistemicState) -> EpistemicState:
    """The joint state knowing exactly what each factor knows."""
    sys, anc = sys_state.space, anc_state.space
    joint = join_spaces(sys, anc)
    fld = joint.field
    zero_sys = (fld.zero,) * sys.dim
    zero_anc = (fld.zero,) * anc.dim
    rows = [_joint_point(b, zero_anc) for b in sys_state.known.basis]
    rows += [_joint_point(zero_sys, b) for b in anc_state.known.basis]
    known = AffineSubspace.span(fld, rows or [joint.zero()], ambient=joint.dim)
    return EpistemicState(joint, known,
                          _joint_point(sys_state.valuation, anc_state.valuation))


def dilate_unsharp(sys: PhaseSpace, anc_state: EpistemicState,
                   coupling: SymplecticAffine, anc_meas: SharpMeasurement) -> dict:
    """Effective (generally unsharp) measurement induced on the system.

    Couple the system to the ancilla, then sharply measure the ancilla.  The result is
    a response kernel: for each system ontic state, the exact outcome distribution

        kernel[m_sys][label] = sum over ancilla support of the sharp response at the
                               coupled image, weighted by the ancilla's distribution.

    Rows always sum to 1.
    """
    if not sys.field.is_finite:
        raise UnsupportedOperation("dilation kernels need a finite ontic space")
    anc = anc_state.space
    joint = join_spaces(sys, anc)
    if coupling.space != joint:
        raise ValueError("coupling must act on the joined system+ancilla space")
    if anc_meas.space != anc:
        raise ValueError("ancilla measurement must live on the ancilla space")
    anc_points = list(anc_state.support().points())
    weight = Fraction(1, len(anc_points))
    kernel = {}
    for m_sys in sys.points():
        row: dict = {}
        for m_anc in anc_points:
            image = coupling.apply(_joint_point(m_sys, m_anc))
            label = anc_meas.label_of(_anc_part(sys, image))
            row[label] = row.get(label, Fraction(0)) + weight
        assert sum(row.values()) == 1
        kernel[m_sys] = row
    return kernel


def dilate_irreversible(sys: PhaseSpace, anc_state: EpistemicState,
                        coupling: SymplecticAffine) -> dict:
    """Effective (generally irreversible) transformation induced on the system.

    Couple to the ancilla, then discard it: for each system ontic state the kernel row
    is the exact distribution over system ontic states after marginalizing the ancilla.
    """
    if not sys.field.is_finite:
        raise UnsupportedOperation("dilation kernels need a finite ontic space")
    anc = anc_state.space
    joint = join_spaces(sys, anc)
    if coupling.space != joint:
        raise ValueError("coupling must act on the joined system+ancilla space")
    anc_points = list(anc_state.support().points())
    weight = Fraction(1, len(anc_points))
    kernel = {}
    for m_sys in sys.points():
        row: dict = {}
        for m_anc in anc_points:
            image = coupling.apply(_joint_point(m_sys, m_anc))
            out = _sys_part(sys, image)
            row[out] = row.get(out, Fraction(0)) + weight
        assert sum(row.values()) == 1
        kernel[m_sys] = row
    return kernel
