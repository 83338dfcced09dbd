"""At d = 2 the classical picture breaks — four independent demonstrations.

The same machinery that proves equivalence at odd primes mechanically locates
where two-level systems escape it:

1. a single-qubit (prepare, transform, measure) triple whose classical and
   quantum predictions are *opposite* deterministic outcomes;
2. a two-qubit quadrature state whose discrete Wigner table has a negative
   entry, so no probability reading exists;
3. the 3x3 magic square: nine two-qubit observables whose operator constraints
   admit none of the 512 candidate +-1 value assignments;
4. the three-qubit parity argument: four commuting observables, eigenvalues
   (+1,-1,-1,-1), and zero of 64 local assignments.

Run:  python3 demos/03_two_level_anomalies.py
"""

from epistrict import (
    PhaseSpace,
    PrimeField,
    enumerate_states,
    ghz_test,
    mermin_square,
    negativity,
    point_operators,
    quadrature_state,
    scan_for_witness,
    weyl_value_report,
    wigner_state,
)


def main() -> None:
    bit = PhaseSpace(PrimeField(2), 1)
    two_bits = PhaseSpace(PrimeField(2), 2)

    print("=== 1. a single-qubit triple with opposite predictions ===")
    wit = scan_for_witness(bit)
    assert wit is not None
    print(f"prepare:   known {wit.state.known.basis[0]}, "
          f"valuation {wit.state.valuation}")
    print(f"transform: S = {wit.transformation.s.rows}, a = {wit.transformation.a}")
    print(f"measure:   {wit.measurement.measured.basis[0]}")
    print(f"classical says: {dict(wit.classical.items())}")
    print(f"quantum says:   { {k: round(v, 6) for k, v in wit.quantum.items()} }")
    print(f"max difference: {wit.max_diff:.3f}")

    print("\n=== 2. negative Wigner entries on two qubits ===")
    basis = point_operators(two_bits)
    worst = None
    for state in enumerate_states(two_bits):
        rho = quadrature_state(two_bits, state.known, state.valuation).rho
        mn, at = negativity(wigner_state(basis, rho))
        if worst is None or mn < worst[0]:
            worst = (mn, at, state)
    mn, at, state = worst
    print(f"most negative entry: {mn:+.4f} at point {at}")
    print(f"for the state with known = {state.known.basis}")
    print("(a correlated Bell-type pair; every odd-prime table is nonnegative)")

    print("\n=== 3. the magic square ===")
    mer = mermin_square()
    print(f"row products:    {mer.row_signs}  (all +1)")
    print(f"column products: {mer.col_signs}  (last is -1)")
    print(f"value assignments satisfying all six constraints: "
          f"{mer.n_satisfying} of {mer.n_assignments}")
    print(f"dropping any one constraint admits {mer.n_satisfying_relaxed}")

    print("\n=== 4. the three-qubit parity argument ===")
    ghz = ghz_test()
    print(f"observable eigenvalues on the entangled state: {ghz.eigenvalues}")
    print(f"local +-1 assignments satisfying all four: "
          f"{ghz.n_satisfying} of {ghz.n_assignments}")
    print(f"dropping any one constraint admits {ghz.n_satisfying_relaxed}")

    print("\n=== the root cause, in stabilizer language ===")
    flipped_states = 0
    for state in enumerate_states(two_bits):
        if weyl_value_report(two_bits, state.known, state.valuation).n_flips:
            flipped_states += 1
    print(f"{flipped_states} of {len(enumerate_states(two_bits))} two-qubit states "
          "have a Weyl group element whose true eigenvalue is the *negative* of "
          "any additive value assignment — the sign that cannot be classically booked.")


if __name__ == "__main__":
    main()
