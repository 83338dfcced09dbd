"""Epistemic states: enumeration, dynamics, sharp statistics, dilations."""

import random
from fractions import Fraction

import pytest

import oracles
from epistrict.fields import RATIONALS, PrimeField
from epistrict.linalg import AffineSubspace, Matrix, cardinality
from epistrict.epistemic import (
    EpistemicState,
    OutcomeDistribution,
    SharpMeasurement,
    dilate_irreversible,
    dilate_unsharp,
    enumerate_states,
    join_spaces,
    measure,
    possibilistic,
    possible_labels,
    product_state,
    scenario,
    transform,
)
from epistrict.symplectic import (
    PhaseSpace,
    SymplecticAffine,
    UnsupportedOperation,
    enumerate_group,
    enumerate_isotropic,
    random_symplectic_affine,
)

D2 = PhaseSpace(PrimeField(2), 1)
D3 = PhaseSpace(PrimeField(3), 1)
D5 = PhaseSpace(PrimeField(5), 1)
D2_2 = PhaseSpace(PrimeField(2), 2)
D3_2 = PhaseSpace(PrimeField(3), 2)


def q_state(space, value):
    return EpistemicState(
        space, AffineSubspace.span(space.field, [(1, 0)], ambient=2), (value, 0))


# ---------------------------------------------------------------------------
# states and enumeration
# ---------------------------------------------------------------------------


def test_state_counts_qutrit():
    states = enumerate_states(D3)
    assert len(states) == 13
    assert sum(1 for s in states if s.is_pure()) == 12
    assert sum(1 for s in states if s.is_ignorance()) == 1


def test_state_counts_bit():
    states = enumerate_states(D2)
    assert len(states) == 7
    assert sum(1 for s in states if s.is_pure()) == 6


def test_state_counts_two_bits():
    states = enumerate_states(D2_2)
    assert len(states) == 91
    assert sum(1 for s in states if s.is_pure()) == 60


def test_states_have_distinct_supports():
    states = enumerate_states(D2_2)
    supports = {s.support() for s in states}
    assert len(supports) == len(states)


def test_support_cardinality_law():
    for s in enumerate_states(D3_2):
        assert cardinality(s.support()) == 3 ** (4 - s.rank)


def test_self_skew_direction_still_gives_full_outcome_set():
    """V = span{(1,1)} over Z_2 contains its own perp; the coset parametrization
    still yields two distinct states whose own-quantity outcomes differ."""
    v = AffineSubspace.span(D2.field, [(1, 1)], ambient=2)
    states = [s for s in enumerate_states(D2) if s.known == v]
    assert len(states) == 2
    meas = SharpMeasurement(D2, v)
    outcomes = [measure(s, meas) for s in states]
    assert outcomes[0] != outcomes[1]
    for dist in outcomes:
        assert dist.is_deterministic()


def test_self_skew_direction_mod5():
    # (1,2) has <f,f-perp> degeneracy: 1*1 + 2*2 = 5 = 0 mod 5.
    v = AffineSubspace.span(D5.field, [(1, 2)], ambient=2)
    hidden_dir = [s for s in enumerate_states(D5) if s.known == v]
    assert len(hidden_dir) == 5
    assert len({s.support() for s in hidden_dir}) == 5


def test_invalid_known_rejected():
    with pytest.raises(ValueError):
        EpistemicState(D3_2, AffineSubspace.span(
            D3_2.field, [(1, 0, 0, 0), (0, 1, 0, 0)], ambient=4))


def test_from_support_roundtrip_and_rejection():
    for s in enumerate_states(D2_2):
        assert EpistemicState.from_support(D2_2, s.support()) == s
    bad = AffineSubspace.span(D2_2.field, [(0, 0, 1, 0), (0, 0, 0, 1)], ambient=4)
    with pytest.raises(ValueError):
        EpistemicState.from_support(D2_2, bad)  # would entail knowing q1 and p1 jointly
    with pytest.raises(ValueError):
        EpistemicState.from_support(D2, AffineSubspace.empty(D2.field, 2))


def test_valuation_canonicalized_to_coset_representative():
    a = EpistemicState(D3, AffineSubspace.span(D3.field, [(1, 0)], ambient=2), (1, 0))
    b = EpistemicState(D3, AffineSubspace.span(D3.field, [(1, 0)], ambient=2), (1, 2))
    assert a == b  # (1,0) and (1,2) differ by (0,2) in V-perp
    assert a.valuation == (1, 0)


def test_value_of_known_functional():
    epr = EpistemicState(
        D3_2,
        AffineSubspace.span(D3_2.field, [(1, 0, 2, 0), (0, 1, 0, 1)], ambient=4),
        (1, 0, 0, 0))
    assert epr.value_of((1, 0, 2, 0)) == 1   # q1 - q2
    assert epr.value_of((0, 1, 0, 1)) == 0   # p1 + p2
    assert epr.value_of((1, 1, 2, 1)) == 1   # sums of known are known
    with pytest.raises(ValueError):
        epr.value_of((1, 0, 0, 0))           # bare q1 is not known


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------


def test_displacement_moves_position_state():
    t = SymplecticAffine.displacement(D3, (1, 0))
    assert transform(q_state(D3, 1), t) == q_state(D3, 2)


def test_swap_maps_position_to_momentum_state_d2():
    swap = SymplecticAffine.linear(D2, [[0, 1], [1, 0]])
    out = transform(q_state(D2, 0), swap)
    assert out.known == AffineSubspace.span(D2.field, [(0, 1)], ambient=2)
    assert out.valuation == (0, 0)


@pytest.mark.parametrize("space", [D2, D3])
def test_transform_permutes_the_state_set(space):
    states = enumerate_states(space)
    for t in enumerate_group(space):
        images = {transform(s, t) for s in states}
        assert images == set(states)


def test_transform_wrong_space_rejected():
    with pytest.raises(ValueError):
        transform(q_state(D3, 0), SymplecticAffine.identity(D2))


def test_transform_rational_epr():
    space = PhaseSpace(RATIONALS, 2)
    epr = EpistemicState(
        space,
        AffineSubspace.span(space.field, [(1, 0, -1, 0), (0, 1, 0, 1)], ambient=4),
        (Fraction(1, 2), 0, 0, 0))
    shear = SymplecticAffine.linear(space, [
        [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    out = transform(epr, shear)
    assert out.known.rank == 2
    # The map is a bijection on the ontic level, so supports have matching rank.
    assert out.support().rank == epr.support().rank


# ---------------------------------------------------------------------------
# sharp measurement statistics
# ---------------------------------------------------------------------------


def test_position_state_measured_in_momentum_is_uniform():
    dist = measure(q_state(D3, 1), SharpMeasurement.of_functional(D3, (0, 1)))
    assert [p for _, p in dist.items()] == [Fraction(1, 3)] * 3


def test_measuring_known_quantity_is_deterministic():
    state = q_state(D3, 2)
    dist = measure(state, SharpMeasurement.of_functional(D3, (1, 0)))
    assert dist.is_deterministic()
    (label, p), = dist.items()
    assert p == 1 and label == (2, 0)


def test_epr_correlations():
    epr = EpistemicState(
        D3_2,
        AffineSubspace.span(D3_2.field, [(1, 0, 2, 0), (0, 1, 0, 1)], ambient=4))
    both_q = SharpMeasurement(D3_2, AffineSubspace.span(
        D3_2.field, [(1, 0, 0, 0), (0, 0, 1, 0)], ambient=4))
    dist = measure(epr, both_q)
    assert len(dist.labels()) == 3
    for label, p in dist.items():
        assert p == Fraction(1, 3)
        values = both_q.values_at(label)
        assert values[0] == values[1]  # q1 = q2 since q1 - q2 = 0 is known


def test_cells_partition_phase_space():
    meas = SharpMeasurement(D3_2, AffineSubspace.span(
        D3_2.field, [(1, 0, 2, 0), (0, 1, 0, 1)], ambient=4))
    total = 0
    for label in meas.outcomes():
        total += cardinality(meas.cell(label))
    assert total == 3 ** 4
    for point in D3_2.points():
        assert meas.cell(meas.label_of(point)).contains(point)


def test_probabilities_are_reciprocal_powers_of_d():
    rng = random.Random(3)
    states = enumerate_states(D3_2)
    meas_pool = [SharpMeasurement(D3_2, v) for v in enumerate_isotropic(D3_2)
                 if v.rank > 0]
    for _ in range(40):
        s = states[rng.randrange(len(states))]
        m = meas_pool[rng.randrange(len(meas_pool))]
        for _, p in measure(s, m).items():
            assert p.denominator in (1, 3, 9, 27, 81)
            assert (3 ** 4) % p.denominator == 0


def test_scenario_cross_route_and_ontic_oracle_exhaustive_d2():
    """Every (state, transform, measurement) triple over the single bit.

    scenario() already cross-checks its two affine routes internally; here the result
    is additionally compared against raw ontic pushforward counting.
    """
    states = enumerate_states(D2)
    transforms = enumerate_group(D2)
    measurements = [SharpMeasurement(D2, v) for v in enumerate_isotropic(D2, rank=1)]
    for s in states:
        support_pts = list(s.support().points())
        for t in transforms:
            for m in measurements:
                got = scenario(s, t, m)
                raw = oracles.ontic_distribution(
                    2, support_pts, t.s.rows, t.a, m.measured.basis)
                translated = {m.values_at(label): p for label, p in got.items()}
                assert translated == raw


def test_scenario_matches_oracle_sampled_d3_two_dof():
    rng = random.Random(17)
    states = enumerate_states(D3_2)
    meas_pool = [SharpMeasurement(D3_2, v) for v in enumerate_isotropic(D3_2)
                 if v.rank > 0]
    for _ in range(25):
        s = states[rng.randrange(len(states))]
        t = random_symplectic_affine(D3_2, rng)
        m = meas_pool[rng.randrange(len(meas_pool))]
        got = scenario(s, t, m)
        raw = oracles.ontic_distribution(
            3, list(s.support().points()), t.s.rows, t.a, m.measured.basis)
        assert {m.values_at(k): p for k, p in got.items()} == raw


def test_measure_rejects_rationals():
    space = PhaseSpace(RATIONALS, 1)
    state = EpistemicState(space, AffineSubspace.span(space.field, [(1, 0)], ambient=2))
    with pytest.raises(UnsupportedOperation):
        measure(state, SharpMeasurement.of_functional(space, (0, 1)))


def test_outcome_distribution_validates():
    with pytest.raises(ValueError):
        OutcomeDistribution({(0,): Fraction(1, 2)})  # does not sum to 1
    with pytest.raises(ValueError):
        OutcomeDistribution({(0,): Fraction(3, 2), (1,): Fraction(-1, 2)})


# ---------------------------------------------------------------------------
# possibilistic layer
# ---------------------------------------------------------------------------


def test_possibilistic_matches_probabilistic_support():
    states = enumerate_states(D3)
    meas = [SharpMeasurement(D3, v) for v in enumerate_isotropic(D3, rank=1)]
    for s in states:
        for m in meas:
            assert possible_labels(s, m) == measure(s, m).labels()


def test_possibilistic_rational_epr():
    space = PhaseSpace(RATIONALS, 2)
    epr = EpistemicState(
        space,
        AffineSubspace.span(space.field, [(1, 0, -1, 0), (0, 1, 0, 1)], ambient=4),
        (Fraction(1, 3), 0, 0, 0))
    # Measuring q1 alone: every outcome remains possible.
    q1 = SharpMeasurement.of_functional(space, (1, 0, 0, 0))
    assert possibilistic(epr, q1) == AffineSubspace.full(space.field, 4)
    # Measuring both positions: outcomes confined to the line q1 - q2 = 1/3.
    both = SharpMeasurement(space, AffineSubspace.span(
        space.field, [(1, 0, 0, 0), (0, 0, 1, 0)], ambient=4))
    reach = possibilistic(epr, both)
    a, b = reach.constraints()
    for x in reach.points() if False else ():
        pass  # rational sets are not enumerable; check via constraints instead
    assert reach.contains((Fraction(1, 3), 5, 0, -7))
    assert not reach.contains((0, 0, 0, 0))
    assert reach.rank == 3
    # Measuring the known sum p1 + p2: a single cell.
    psum = SharpMeasurement.of_functional(space, (0, 1, 0, 1))
    cell = possibilistic(epr, psum)
    assert cell == psum.cell(epr.valuation)


# ---------------------------------------------------------------------------
# dilations
# ---------------------------------------------------------------------------


def csum_coupling(space_joint):
    """q_anc += q_sys (with the compensating p_sys -= p_anc) on one+one dofs."""
    return SymplecticAffine.linear(space_joint, [
        [1, 0, 0, 0],
        [0, 1, 0, -1],
        [1, 0, 1, 0],
        [0, 0, 0, 1],
    ])


def test_controlled_sum_dilation_reproduces_sharp_position():
    joint = join_spaces(D3, D3)
    anc0 = q_state(D3, 0)
    anc_meas = SharpMeasurement.of_functional(D3, (1, 0))
    kernel = dilate_unsharp(D3, anc0, csum_coupling(joint), anc_meas)
    for m_sys, row in kernel.items():
        assert row == {(m_sys[0], 0): Fraction(1)}


def test_uncoupled_ancilla_measurement_is_state_independent_noise():
    joint = join_spaces(D3, D3)
    ident = SymplecticAffine.identity(joint)
    anc = EpistemicState(D3, AffineSubspace.span(D3.field, [(0, 1)], ambient=2), (0, 1))
    anc_meas = SharpMeasurement.of_functional(D3, (1, 0))
    kernel = dilate_unsharp(D3, anc, ident, anc_meas)
    rows = list(kernel.values())
    assert all(row == rows[0] for row in rows)
    # The noise is the ancilla's own position statistics: uniform.
    assert sorted(rows[0].values()) == [Fraction(1, 3)] * 3


def test_swap_then_measure_ancilla_reads_out_the_system():
    joint = join_spaces(D3, D3)
    swap = SymplecticAffine.linear(joint, [
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    anc = EpistemicState.ignorance(D3)
    anc_meas = SharpMeasurement.of_functional(D3, (1, 0))
    kernel = dilate_unsharp(D3, anc, swap, anc_meas)
    for m_sys, row in kernel.items():
        assert row == {(m_sys[0], 0): Fraction(1)}


def test_swap_with_ignorant_ancilla_is_uniform_channel():
    joint = join_spaces(D3, D3)
    swap = SymplecticAffine.linear(joint, [
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ])
    kernel = dilate_irreversible(D3, EpistemicState.ignorance(D3), swap)
    for row in kernel.values():
        assert all(p == Fraction(1, 9) for p in row.values())
        assert len(row) == 9


def test_identity_coupling_irreversible_kernel_is_deterministic():
    joint = join_spaces(D2, D2)
    ident = SymplecticAffine.identity(joint)
    kernel = dilate_irreversible(D2, EpistemicState.ignorance(D2), ident)
    for m_sys, row in kernel.items():
        assert row == {m_sys: Fraction(1)}


def test_product_state_knows_both_factors():
    joint_state = product_state(q_state(D3, 1), q_state(D3, 2))
    assert joint_state.space == D3_2
    assert joint_state.value_of((1, 0, 0, 0)) == 1
    assert joint_state.value_of((0, 0, 1, 0)) == 2
    assert joint_state.rank == 2
