"""Independent brute-force oracles used to pin down expected values in the tests.

Everything in this module is deliberately written from scratch on raw ints and
Fractions — no imports from the package's linear algebra — so that agreement between a
library result and an oracle result is a genuine two-route check, not a tautology.
"""

from fractions import Fraction
from itertools import product


def f_elements(d):
    return list(range(d))


def f_add(d, a, b):
    return (a + b) % d


def f_mul(d, a, b):
    return (a * b) % d


def combo_set(d, rows, offset=None):
    """All points ``offset + sum c_i rows_i`` over Z_d, as a frozenset of tuples.

    Works directly on the raw spanning rows (they need not be independent or reduced),
    which is the point: no echelon machinery involved.
    """
    ambient = len(offset) if offset is not None else len(rows[0])
    if offset is None:
        offset = (0,) * ambient
    pts = set()
    for coeffs in product(range(d), repeat=len(rows)):
        x = list(offset)
        for c, row in zip(coeffs, rows):
            for i in range(ambient):
                x[i] = (x[i] + c * row[i]) % d
        pts.add(tuple(x))
    return frozenset(pts)


def solve_set(d, a_rows, b):
    """All x in (Z_d)^n with A x = b, by full enumeration."""
    n = len(a_rows[0]) if a_rows else len(b)
    sols = set()
    for x in product(range(d), repeat=n):
        if all(sum(r * v for r, v in zip(row, x)) % d == rhs % d
               for row, rhs in zip(a_rows, b)):
            sols.add(x)
    return frozenset(sols)


def rational_combo_contains(rows, offset, x):
    """Whether x lies in offset + span(rows) over Q, by solving with Fractions.

    Plain elimination on a dense system, independent of the package's implementation
    (different pivoting, no canonical forms).
    """
    rows = [[Fraction(e) for e in r] for r in rows]
    target = [Fraction(a) - Fraction(b) for a, b in zip(x, offset)]
    # Solve rows^T c = target by eliminating on the transposed system.
    m = [[rows[j][i] for j in range(len(rows))] + [target[i]]
         for i in range(len(target))]
    cols = len(rows)
    pivot_row = 0
    for c in range(cols):
        pr = next((r for r in range(pivot_row, len(m)) if m[r][c] != 0), None)
        if pr is None:
            continue
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        pv = m[pivot_row][c]
        m[pivot_row] = [e / pv for e in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][c] != 0:
                f = m[r][c]
                m[r] = [e - f * p for e, p in zip(m[r], m[pivot_row])]
        pivot_row += 1
    # Consistent iff no row reads 0 = nonzero.
    for row in m:
        if all(e == 0 for e in row[:-1]) and row[-1] != 0:
            return False
    return True


def all_subspace_data(d, ambient):
    """Raw (rows, offset) pairs generating every affine subspace of (Z_d)^ambient.

    Redundant generating sets are fine (duplicates by point set are expected); callers
    dedupe by the frozenset of points.
    """
    vectors = list(product(range(d), repeat=ambient))
    nonzero = [v for v in vectors if any(v)]
    data = []
    for offset in vectors:
        data.append(((), offset))
        for v in nonzero:
            data.append(((v,), offset))
        for i, v in enumerate(nonzero):
            for w in nonzero[i + 1:]:
                data.append(((v, w), offset))
    return data


def ontic_distribution(d, support_points, s_rows, a, meas_rows):
    """Sharp-measurement statistics by raw ontic simulation.

    Each support point is pushed through m' = S m + a; the outcome of measuring the
    functionals ``meas_rows`` is the tuple of their values at m'.  Returns a dict
    mapping value tuples to Fraction probabilities.
    """
    counts = {}
    n_pts = len(support_points)
    for m in support_points:
        mp = tuple((sum(r * e for r, e in zip(row, m)) + shift) % d
                   for row, shift in zip(s_rows, a))
        values = tuple(sum(f * e for f, e in zip(frow, mp)) % d
                       for frow in meas_rows)
        counts[values] = counts.get(values, 0) + 1
    return {v: Fraction(c, n_pts) for v, c in counts.items()}
