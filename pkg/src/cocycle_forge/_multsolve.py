"""Exact solver for multiplicative equation systems over the nonzero rationals.

Each equation states  prod_v v^{c_v} = const  with integer exponents c_v and
a nonzero Fraction constant. Elimination combines equations by Euclid steps
on the exponents (which keeps everything integral), leaving a triangular
set of pivots; back-substitution then takes exact rational n-th roots,
branching over sign choices when an even root appears. Returns one
solution dict or None, and the "None" answer is definitive.
"""

from __future__ import annotations

from fractions import Fraction


def _int_nth_root(x, k):
    """Exact integer k-th root of x >= 0, or None."""
    if x < 0:
        return None
    if x in (0, 1) or k == 1:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)  # upper-ish Newton seed
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == x:
            return cand
    return None


def _rat_nth_roots(val, k):
    """All rational solutions x of x^k = val (val a nonzero Fraction)."""
    if k < 0:
        val, k = 1 / val, -k
    if k == 1:
        return [val]
    neg = val < 0
    if neg and k % 2 == 0:
        return []
    num = _int_nth_root(abs(val.numerator), k)
    den = _int_nth_root(val.denominator, k)
    if num is None or den is None:
        return []
    root = Fraction(num, den)
    if k % 2 == 1:
        return [-root if neg else root]
    return [root, -root]


def _combine(eq2, eq1, m):
    """eq2 * eq1^m, dropping zero exponents."""
    coeffs = dict(eq2[0])
    for v, c in eq1[0].items():
        nc = coeffs.get(v, 0) + m * c
        if nc:
            coeffs[v] = nc
        else:
            coeffs.pop(v, None)
    return coeffs, eq2[1] * eq1[1] ** m


def solve_multiplicative(equations, variables):
    """Solve the system; variables absent from every equation come back as 1.

    equations: iterable of (dict var -> int exponent, Fraction constant).
    Returns dict var -> Fraction, or None when no rational solution exists.
    """
    original = []
    eqs = []
    for coeffs, const in equations:
        coeffs = {v: c for v, c in coeffs.items() if c}
        original.append((coeffs, const))
        if not coeffs:
            if const != 1:
                return None
            continue
        eqs.append((dict(coeffs), const))

    pivots = []
    for var in variables:
        with_var = [eq for eq in eqs if var in eq[0]]
        rest = [eq for eq in eqs if var not in eq[0]]
        if not with_var:
            eqs = rest
            continue
        while len(with_var) > 1:
            with_var.sort(key=lambda eq: abs(eq[0][var]))
            e1 = with_var[0]
            e2 = with_var.pop(1)
            q = e2[0][var] // e1[0][var]
            new = _combine(e2, e1, -q)
            if var in new[0]:
                with_var.append(new)
            elif new[0]:
                rest.append(new)
            elif new[1] != 1:
                return None
        pivots.append((var, with_var[0]))
        eqs = rest
    for coeffs, const in eqs:  # no listed variable appears: must be trivial
        if const != 1 or coeffs:
            return None

    solution = {v: Fraction(1) for v in variables}

    def back(i):
        if i < 0:
            return all(_holds(eq, solution) for eq in original)
        var, (coeffs, const) = pivots[i]
        k = coeffs[var]
        value = const
        for w, c in coeffs.items():
            if w != var:
                value *= solution[w] ** (-c)
        for root in _rat_nth_roots(value, k):
            solution[var] = root
            if back(i - 1):
                return True
        solution[var] = Fraction(1)
        return False

    if not back(len(pivots) - 1):
        return None
    return solution


def _holds(eq, solution):
    coeffs, const = eq
    acc = Fraction(1)
    for v, c in coeffs.items():
        acc *= solution[v] ** c
    return acc == const
