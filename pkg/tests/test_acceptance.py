"""Top-level acceptance gates.

One test per numbered criterion, so the verbose pytest run shows one pass/fail
line for each.  Every test also prints a human-readable verdict with the
per-check actuals, which pytest surfaces whenever a criterion fails.

Tolerances are the ones the checks themselves carry: exact field/rational
arithmetic wherever the objects are exact, 1e-10 for complex matrix identities,
1e-9 for Born-rule comparisons, and -1e-12 as the nonnegativity floor.
"""

from epistrict import acceptance


def run_and_report(k: int) -> None:
    results = acceptance.run_criterion(k)
    assert results, f"criterion {k} produced no checks"
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"  [{mark}] {r.name}: {r.actual} (tolerance {r.tolerance})")
    verdict = "PASS" if all(r.passed for r in results) else "FAIL"
    print(f"ACCEPTANCE CRITERION {k}: {verdict}")
    failures = [r for r in results if not r.passed]
    assert not failures, "; ".join(
        f"{r.name}: expected {r.expected}, got {r.actual}" for r in failures)


def test_criterion_1_enumeration_counts():
    """State, transformation and quadrature counts at one bit and one trit."""
    run_and_report(1)


def test_criterion_2_symplectic_and_weyl_algebra():
    """Form preservation, J^2 = -I, brackets, Weyl product and commutation law."""
    run_and_report(2)


def test_criterion_3_operational_equivalence_at_odd_prime():
    """Exhaustive d=3 n=1 agreement, seeded d=3 n=2 sample, d=5 spot sample."""
    run_and_report(3)


def test_criterion_4_wigner_representation_structure():
    """Point-operator normalization, orthogonality, covariance, nonnegativity."""
    run_and_report(4)


def test_criterion_5_stabilizer_bridge():
    """Eigen-relations, round trips, and the two-qubit sign obstruction."""
    run_and_report(5)


def test_criterion_6_parity_two_inequivalence():
    """Negativity, magic square, three-qubit parity, and witness scans."""
    run_and_report(6)


def test_criterion_7_classical_engine_against_brute_force():
    """Library statistics equal pointwise ontic simulation on every triple."""
    run_and_report(7)


def test_criterion_8_possibilistic_rational_engine():
    """Correlated-pair value sets and repeatability over the rationals."""
    run_and_report(8)


def test_suites_cover_every_criterion_exactly_once():
    listed = sorted(k for name in ("algebra", "equivalence", "inequivalence")
                    for k in acceptance.SUITES[name])
    assert listed == list(acceptance.SUITES["all"]) == list(range(1, 9))
