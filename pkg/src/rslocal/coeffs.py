"""Coefficient counters for the two expansions of the local integral.

Four evaluators of one counting problem: how many ways a fixed monomial
U^x V^(2y) arises inside the per-weight geometric blocks of the integral
(m_closed / m_brute) and how many seven-tuples of Pieri-rule indices emit
the same weight and monomial (n_interval / n_brute).  The first of each
pair is a closed form, the second an independent enumeration oracle.

Both families split on the branch a <= c <= 2a versus c < a <= b + c, and
the second branch is obtained from the first by the substitution
x -> x + 2(a - c), y -> y + (a - c) rather than being re-derived, so a
single audited code path serves both.
"""

from __future__ import annotations

__all__ = [
    "m_closed",
    "m_brute",
    "n_interval",
    "n_brute",
    "n_brute_required_cap",
    "delta_parity",
    "in_first_branch",
    "in_second_branch",
]


def in_first_branch(a: int, c: int) -> bool:
    return a <= c <= 2 * a


def in_second_branch(a: int, b: int, c: int) -> bool:
    return c < a <= b + c


def _check_args(x, y, a, b, c):
    if min(x, y, a, b, c) < 0:
        raise ValueError("coefficient arguments must be nonnegative")


def _branch_guard(a, b, c):
    if not (in_first_branch(a, c) or in_second_branch(a, b, c)):
        raise ValueError("(a, b, c)=(%d, %d, %d) lies in neither index branch" % (a, b, c))


# ---------------------------------------------------------------------------
# m: solutions (d, e, f) of the exponent equations inside one weight block.
#
# The generic block has 0 <= d <= dmax, 0 <= e <= emax, 0 <= f, and emits
# U^(emax + d - e + f) V^(2(e + f)).  The first branch uses
# (dmax, emax) = (2a - c, b) and the second (c, -a + b + c).


def _support_ok(x, y, dmax, emax) -> bool:
    if y < 0 or x + y < emax:
        return False
    if not (-dmax - emax <= y - x <= emax):
        return False
    if dmax == 0 and (x + y - emax) % 2:
        return False
    return True


def _m_core(x, y, dmax, emax) -> int:
    if not _support_ok(x, y, dmax, emax):
        return 0
    delta = (x + y + emax) & 1
    t_d = (dmax - delta) // 2
    t_mid = (dmax + emax - x + y) // 2
    if y >= emax:
        t_ef = (emax + x - y - delta) // 2
        t_last = emax
    else:
        t_ef = (-emax + x + y - delta) // 2
        t_last = y
    return min(t_d, t_ef, t_mid, t_last) + 1


def _m_brute_core(x, y, dmax, emax) -> int:
    count = 0
    for d in range(dmax + 1):
        for e in range(emax + 1):
            for f in range(y + 1):
                if e + f == y and emax + d - e + f == x:
                    count += 1
    return count


def m_closed(x: int, y: int, a: int, b: int, c: int) -> int:
    _check_args(x, y, a, b, c)
    _branch_guard(a, b, c)
    if in_first_branch(a, c):
        return _m_core(x, y, 2 * a - c, b)
    return _m_core(x, y, c, -a + b + c)


def m_brute(x: int, y: int, a: int, b: int, c: int) -> int:
    _check_args(x, y, a, b, c)
    _branch_guard(a, b, c)
    if in_first_branch(a, c):
        return _m_brute_core(x, y, 2 * a - c, b)
    return _m_brute_core(x, y, c, -a + b + c)


def delta_parity(x: int, y: int, a: int, b: int, c: int) -> int:
    """Parity offset of the active branch; also the epsilon of n_interval."""
    _check_args(x, y, a, b, c)
    _branch_guard(a, b, c)
    if in_first_branch(a, c):
        return (x + y + b) & 1
    return (x + y + a + b + c) & 1


# ---------------------------------------------------------------------------
# n: one-parameter interval count over the Pieri-rule index alpha.


def n_interval(x: int, y: int, a: int, b: int, c: int) -> int:
    """Number of integers alpha admitted by the seven reduced inequalities.

    All seven bounds are kept in both branches; the two that each branch
    renders redundant cannot change the max/min.  Half-integer bounds are
    handled by exact ceil/floor on doubled integers.
    """
    _check_args(x, y, a, b, c)
    _branch_guard(a, b, c)
    if in_first_branch(a, c):
        xx, yy = x, y
    else:
        xx, yy = x + 2 * (a - c), y + (a - c)
    odd = c & 1
    even = 1 - odd
    gam = c // 2
    eps = (xx + yy + b) & 1
    # bounds stored doubled: alpha >= lo/2, alpha <= hi/2
    lowers = (
        2 * (a - gam - odd),
        -xx + yy + b + c - odd + eps,
        2 * gam,
        -xx + yy + 2 * a + b - c - odd + eps,
    )
    uppers = (
        2 * (gam + yy),
        -2 * even * eps + (-xx + yy + 2 * a + b - 2 * odd + eps),
        2 * (b + gam),
    )
    lo = max((v + 1) // 2 for v in lowers)
    hi = min(v // 2 for v in uppers)
    return max(0, hi - lo + 1)


def n_brute_required_cap(x: int, y: int, a: int, b: int, c: int) -> int:
    """Smallest enumeration radius that provably sees every matching tuple.

    A tuple matching the target monomial has k pinned to the U-degree and
    (m, n) pinned by the SL2 index and V-degree; alpha <= m + n, beta <= m
    and i <= alpha - beta then bound every remaining component.
    """
    odd = c & 1
    if in_first_branch(a, c):
        uexp, vexp = c - a + x, c + 2 * y
    else:
        uexp, vexp = a - c + x, 2 * a - c + 2 * y
    m0 = (2 * a - c - odd) // 2
    n0 = (vexp - 2 * m0 - odd) // 2
    return max(uexp, m0 + n0, 1)


def n_brute(x: int, y: int, a: int, b: int, c: int, cap: int = 30) -> int:
    """Count the seven-tuples (k, m, n, eps, alpha, beta, i) directly.

    Enumerates every component from 0 to cap (eps to 1), keeping only
    tuples that satisfy the three Pieri-rule inequalities and emit exactly
    the target monomial and weight.  Loops are pruned by the monomial
    degree tests as early as possible.
    """
    _check_args(x, y, a, b, c)
    _branch_guard(a, b, c)
    need = n_brute_required_cap(x, y, a, b, c)
    if cap < need:
        raise ValueError("cap %d below required enumeration radius %d" % (cap, need))
    odd = c & 1
    if in_first_branch(a, c):
        uexp, vexp = c - a + x, c + 2 * y
    else:
        uexp, vexp = a - c + x, 2 * a - c + 2 * y
    a1_index = 2 * a - c
    count = 0
    for k in range(cap + 1):
        if k != uexp:
            continue
        for m in range(cap + 1):
            if 2 * m + odd != a1_index:
                continue
            for n in range(cap + 1):
                if 2 * m + 2 * n + odd != vexp:
                    continue
                for eps in (0, 1):
                    eps_low = eps if odd == 0 else 0
                    for alpha in range(cap + 1):
                        if alpha < m or alpha > m + n:
                            continue
                        for beta in range(cap + 1):
                            if 2 * beta + odd > c:
                                continue
                            if beta < eps_low or beta > m:
                                continue
                            for i in range(cap + 1):
                                if 2 * beta + 2 * i + odd != c:
                                    continue
                                if i > alpha - beta:
                                    continue
                                if i > k - 2 * m - n + alpha + beta - eps:
                                    continue
                                if 2 * alpha + k - n - 2 * m - eps - 2 * i != b:
                                    continue
                                count += 1
    return count
