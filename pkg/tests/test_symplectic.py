"""Symplectic form, brackets, isotropic enumeration, group machinery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epistrict.fields import RATIONALS, PrimeField
from epistrict.linalg import AffineSubspace, Matrix
from epistrict.symplectic import (
    PhaseSpace,
    QuadratureFunctional,
    SizeCapExceeded,
    SymplecticAffine,
    UnsupportedOperation,
    complements,
    compose,
    enumerate_group,
    enumerate_isotropic,
    enumerate_symplectic,
    extend_to_symplectic,
    is_isotropic,
    is_lagrangian,
    is_symplectic,
    poisson_bracket_fd,
    random_symplectic_affine,
    symp_inner,
    symplectic_form,
    symplectic_group_order,
    transvection,
)

SPACES = {
    (2, 1): PhaseSpace(PrimeField(2), 1),
    (3, 1): PhaseSpace(PrimeField(3), 1),
    (5, 1): PhaseSpace(PrimeField(5), 1),
    (2, 2): PhaseSpace(PrimeField(2), 2),
    (3, 2): PhaseSpace(PrimeField(3), 2),
}


# ---------------------------------------------------------------------------
# the form itself
# ---------------------------------------------------------------------------


def test_form_renders_with_canonical_representatives():
    assert symplectic_form(SPACES[2, 1]).rows == ((0, 1), (1, 0))
    assert symplectic_form(SPACES[3, 1]).rows == ((0, 1), (2, 0))
    j22 = symplectic_form(SPACES[2, 2])
    assert j22.rows == (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    )


@pytest.mark.parametrize("key", list(SPACES))
def test_j_squared_is_minus_identity(key):
    space = SPACES[key]
    j = symplectic_form(space)
    assert j @ j == -Matrix.identity(space.field, space.dim)


@pytest.mark.parametrize("key", [(2, 1), (3, 1), (5, 1)])
def test_inner_product_canonical_pair(key):
    space = SPACES[key]
    assert symp_inner(space, (1, 0), (0, 1)) == 1


@pytest.mark.parametrize("key", list(SPACES))
def test_inner_product_antisymmetric_exhaustive_or_sampled(key):
    space = SPACES[key]
    fld = space.field
    pts = list(space.points())
    if len(pts) > 30:
        rng = random.Random(7)
        pts = [tuple(rng.randrange(space.d) for _ in range(space.dim)) for _ in range(30)]
    for f in pts:
        for g in pts:
            assert symp_inner(space, f, g) == fld.neg(symp_inner(space, g, f))


def test_inner_product_over_rationals():
    space = PhaseSpace(RATIONALS, 2)
    f = (Fraction(1, 2), 0, 1, 0)
    g = (0, Fraction(2, 3), 0, -1)
    # q1 p1' - p1 q1' + q2 p2' - p2 q2' = (1/2)(2/3) + 1*(-1)
    assert symp_inner(space, f, g) == Fraction(1, 3) - 1


# ---------------------------------------------------------------------------
# finite-difference Poisson bracket
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 5])
def test_bracket_of_all_quadrature_pairs_is_the_inner_product(d):
    space = SPACES[d, 1]
    vectors = [v for v in space.points() if any(v)]
    tables = {v: QuadratureFunctional(space, v).table() for v in vectors}
    for f in vectors:
        for g in vectors:
            bracket = poisson_bracket_fd(space, tables[f], tables[g])
            expected = symp_inner(space, f, g)
            assert all(val == expected for val in bracket.values())


def test_bracket_constants_absorbed():
    space = SPACES[3, 1]
    f = QuadratureFunctional(space, (1, 0), c=2).table()
    g = QuadratureFunctional(space, (0, 1), c=1).table()
    bracket = poisson_bracket_fd(space, f, g)
    assert set(bracket.values()) == {1}


def test_bracket_nonlinear_table_differs_from_any_constant():
    # x -> q*p is not affine, and its bracket with q is not constant; the finite
    # difference sees genuine structure beyond the quadrature sector.
    space = SPACES[3, 1]
    table = {m: space.field.mul(m[0], m[1]) for m in space.points()}
    q = QuadratureFunctional(space, (0, 1)).table()
    bracket = poisson_bracket_fd(space, table, q)
    assert len(set(bracket.values())) > 1


def test_bracket_refuses_rationals():
    space = PhaseSpace(RATIONALS, 1)
    with pytest.raises(UnsupportedOperation):
        poisson_bracket_fd(space, {}, {})


def test_point_enumeration_cap():
    big = PhaseSpace(PrimeField(11), 2)  # 11^4 = 14641 > 10000
    f = QuadratureFunctional.position(big)
    with pytest.raises(SizeCapExceeded):
        f.table()


# ---------------------------------------------------------------------------
# isotropic subspaces
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("key,expected", [((2, 1), 3), ((3, 1), 4), ((5, 1), 6),
                                          ((2, 2), 15), ((3, 2), 40)])
def test_lagrangian_counts(key, expected):
    space = SPACES[key]
    lagrangians = enumerate_isotropic(space, rank=space.n)
    assert len(lagrangians) == expected
    assert len(set(lagrangians)) == expected
    assert all(is_lagrangian(space, v) for v in lagrangians)


def test_isotropic_listing_complete_d2_n2():
    space = SPACES[2, 2]
    got = {v.basis for v in enumerate_isotropic(space)}
    # Independent route: scan every subset-span via solve-free brute force.
    from itertools import combinations, product
    lines = set()
    all_vectors = [v for v in product(range(2), repeat=4) if any(v)]
    for v in all_vectors:
        lines.add(AffineSubspace.span(space.field, [v], ambient=4).basis)
    planes = set()
    for u, w in combinations(all_vectors, 2):
        s = AffineSubspace.span(space.field, [u, w], ambient=4)
        if s.rank == 2 and symp_inner(space, u, w) == 0:
            planes.add(s.basis)
    expected = {()} | lines | planes
    assert got == expected
    assert len(got) == 1 + 15 + 15


def test_rank_one_subspaces_always_isotropic():
    space = SPACES[3, 2]
    assert len(enumerate_isotropic(space, rank=1)) == (3 ** 4 - 1) // 2


def test_isotropic_rejects_offsets_and_overranked():
    space = SPACES[3, 1]
    shifted = AffineSubspace.span(space.field, [(1, 0)], offset=(0, 1))
    assert not is_isotropic(space, shifted)
    assert not is_isotropic(space, AffineSubspace.full(space.field, 2))


# ---------------------------------------------------------------------------
# complements
# ---------------------------------------------------------------------------


def test_complements_of_position_line_mod3():
    space = SPACES[3, 1]
    v = AffineSubspace.span(space.field, [(1, 0)], ambient=2)
    c = complements(space, v)
    assert c.euclidean == AffineSubspace.span(space.field, [(0, 1)], ambient=2)
    assert c.symplectic == v
    assert c.j_image == AffineSubspace.span(space.field, [(0, 1)], ambient=2)


@pytest.mark.parametrize("key", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_complement_identity_all_isotropic(key):
    """(V-perp)^C == J V is checked internally; construction must never raise."""
    space = SPACES[key]
    for v in enumerate_isotropic(space):
        c = complements(space, v)
        if v.basis:
            assert c.j_image.rank == v.rank
        assert c.symplectic.rank == space.dim - v.rank


# ---------------------------------------------------------------------------
# symplectic matrices, composition, enumeration
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("key,count", [((2, 1), 6), ((3, 1), 24), ((2, 2), 720)])
def test_symplectic_group_sizes(key, count):
    space = SPACES[key]
    group = enumerate_symplectic(space)
    assert len(group) == count == symplectic_group_order(space.d, space.n)
    j = symplectic_form(space)
    assert all(s.T @ j @ s == j for s in group)


def test_affine_group_size_d2():
    assert len(enumerate_group(SPACES[2, 1])) == 24


def test_enumeration_respects_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_symplectic(SPACES[3, 2], cap=1000)


def test_compose_and_inverse_roundtrip():
    space = SPACES[3, 1]
    rng = random.Random(11)
    ident = SymplecticAffine.identity(space)
    for _ in range(20):
        t = random_symplectic_affine(space, rng)
        assert t.compose(t.inverse()) == ident
        assert t.inverse().compose(t) == ident


def test_compose_order_conventions():
    space = SPACES[3, 1]
    shift = SymplecticAffine.displacement(space, (1, 0))
    s = SymplecticAffine.linear(space, [[1, 1], [0, 1]])
    both = compose(s, shift)  # shift first, then shear
    m = (2, 2)
    assert both.apply(m) == s.apply(shift.apply(m))


def test_inverse_uses_form_not_elimination():
    # S^{-1} = J^T S^T J must hold entrywise for an explicit witness.
    space = SPACES[5, 1]
    s = Matrix.from_rows(space.field, [[2, 1], [3, 2]])  # det = 1 mod 5
    t = SymplecticAffine(space, s)
    j = symplectic_form(space)
    assert t.inverse().s == j.T @ s.T @ j


@pytest.mark.parametrize("key", [(2, 1), (3, 1)])
def test_inner_product_invariance_under_full_group(key):
    space = SPACES[key]
    pts = [v for v in space.points()]
    for s in enumerate_symplectic(space):
        for f in pts:
            for g in pts:
                assert symp_inner(space, s.matvec(f), s.matvec(g)) == \
                    symp_inner(space, f, g)


@given(st.sampled_from([(2, 2), (3, 2), (5, 1)]), st.data())
@settings(max_examples=40, deadline=None)
def test_transvections_are_symplectic(key, data):
    space = SPACES.get(key) or PhaseSpace(PrimeField(key[0]), key[1])
    u = data.draw(st.lists(st.integers(0, space.d - 1), min_size=space.dim,
                           max_size=space.dim).filter(lambda v: any(v)))
    c = data.draw(st.integers(1, space.d - 1))
    t = transvection(space, tuple(u), c)
    assert is_symplectic(space, t)


def test_time_reversal_is_the_canonical_non_example():
    """(q, p) -> (q, -p) flips the form's sign: isotropy survives, symplecticity dies."""
    for key in [(3, 1), (5, 1), (3, 2)]:
        space = SPACES.get(key) or PhaseSpace(PrimeField(key[0]), key[1])
        fld = space.field
        rows = [[fld.zero] * space.dim for _ in range(space.dim)]
        for i in range(space.n):
            rows[2 * i][2 * i] = fld.one
            rows[2 * i + 1][2 * i + 1] = fld.neg(fld.one)
        t = Matrix.from_rows(fld, rows)
        assert not is_symplectic(space, t)
        j = symplectic_form(space)
        assert t.T @ j @ t == -j  # anti-symplectic
        for v in enumerate_isotropic(space):
            image = AffineSubspace.span(fld, [t.matvec(b) for b in v.basis] or [space.zero()],
                                        ambient=space.dim)
            assert is_isotropic(space, image)


# ---------------------------------------------------------------------------
# extend_to_symplectic
# ---------------------------------------------------------------------------


def test_extension_momentum_d2_matches_form():
    s = extend_to_symplectic(SPACES[2, 1], (0, 1))
    assert s.rows == ((0, 1), (1, 0))


def test_extension_position_is_identity():
    assert extend_to_symplectic(SPACES[3, 1], (1, 0)) == Matrix.identity(PrimeField(3), 2)


@pytest.mark.parametrize("key", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_extension_first_column_and_symplectic(key):
    space = SPACES[key]
    rng = random.Random(5)
    vectors = [v for v in space.points() if any(v)]
    if len(vectors) > 25:
        vectors = [vectors[rng.randrange(len(vectors))] for _ in range(25)]
    for f in vectors:
        s = extend_to_symplectic(space, f)
        assert tuple(r[0] for r in s.rows) == f
        assert is_symplectic(space, s)
        # Deterministic: same input, same matrix.
        assert extend_to_symplectic(space, f) == s


def test_extension_rejects_zero():
    with pytest.raises(ValueError):
        extend_to_symplectic(SPACES[3, 1], (0, 0))


def test_extension_over_rationals():
    space = PhaseSpace(RATIONALS, 2)
    f = (Fraction(1, 2), Fraction(1, 3), 1, 0)
    s = extend_to_symplectic(space, f)
    assert is_symplectic(space, s)
    assert tuple(r[0] for r in s.rows) == f


@pytest.mark.parametrize("key", [(2, 1), (3, 1)])
def test_extension_preserves_isotropy_of_spans(key):
    space = SPACES[key]
    for f in (v for v in space.points() if any(v)):
        s = extend_to_symplectic(space, f)
        for v in enumerate_isotropic(space):
            image = AffineSubspace.span(space.field,
                                        [s.matvec(b) for b in v.basis] or [space.zero()],
                                        ambient=space.dim)
            assert is_isotropic(space, image)
