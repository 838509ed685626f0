"""Exact p-adic evaluation of the twisted unipotent section integrals.

Everything here is computed in exact rational arithmetic.  Haar measure is
normalized so the unit ball has measure 1, making the shell |x| = p^k have
measure p^k (1 - 1/p); the additive character has conductor 1, so its shell
integrals vanish beyond |x| = p and all integrals truncate to finite shell
sums plus exactly summable geometric tails.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .characters import VirtualCharacter
from .series import BiSeries

__all__ = [
    "PadicConfig",
    "TorusValuations",
    "RationalFunction",
    "UVPoly",
    "valuation",
    "mat_mul",
    "mat_inv",
    "torus_element",
    "u_element",
    "gamma5_matrix",
    "similitude",
    "bottom_minor_norm",
    "det_norms_closed",
    "fprime_section",
    "integral_max",
    "integral_max_brute",
    "integral_psi_max",
    "integral_psi_max_brute",
    "fpsi_closed",
    "fpsi_brute",
    "torus_term",
    "torus_term_sum",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


class PadicConfig(NamedTuple):
    p: int

    @classmethod
    def make(cls, p: int) -> "PadicConfig":
        if p not in _SMALL_PRIMES:
            raise ValueError("p must be a small prime, got %r" % (p,))
        return cls(p)


class TorusValuations(NamedTuple):
    """Valuations (a, b, c) of the torus coordinates (alpha, beta, gamma)."""

    a: int
    b: int
    c: int

    @classmethod
    def make(cls, a: int, b: int, c: int) -> "TorusValuations":
        if min(a, b, c) < 0:
            raise ValueError("torus valuations must be nonnegative")
        return cls(a, b, c)


def _ppow(p: int, e: int) -> Fraction:
    return Fraction(p**e) if e >= 0 else Fraction(1, p**-e)


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# The rank-6 symplectic space.  Matrices act on row vectors on the right and
# are written in the ordered basis (e1, e2, e3, f3, f2, f1).

_N = 6
_PAIRS = ((0, 5), (1, 4), (2, 3))

J_STD = tuple(
    tuple(
        1 if (i, j) in _PAIRS else (-1 if (j, i) in _PAIRS else 0)
        for j in range(_N)
    )
    for i in range(_N)
)

# gamma5 sends (e1, e2, e3, f3, f2, f1) to (e3, -f1, e2, f2, e1-e3, f1+f3);
# its rows double as the change of basis used by the minor norms.
GAMMA5_ROWS = (
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, -1),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (1, 0, -1, 0, 0, 0),
    (0, 0, 0, 1, 0, 1),
)


def gamma5_matrix():
    return tuple(tuple(Fraction(v) for v in row) for row in GAMMA5_ROWS)


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(_N)) for j in range(_N))
        for i in range(_N)
    )


def mat_inv(A):
    n = len(A)
    aug = [list(map(Fraction, A[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


_G5 = gamma5_matrix()
_G5_INV = mat_inv(_G5)


def similitude(g, p: int | None = None) -> Fraction:
    """The scalar mu with <vg, wg> = mu <v, w>; raises off the group."""
    gj = mat_mul(g, J_STD)
    gjgt = tuple(
        tuple(sum(gj[i][k] * g[j][k] for k in range(_N)) for j in range(_N))
        for i in range(_N)
    )
    mu = gjgt[0][5]
    if mu == 0:
        raise ValueError("zero similitude")
    for i in range(_N):
        for j in range(_N):
            if gjgt[i][j] != mu * J_STD[i][j]:
                raise ValueError("matrix does not preserve the symplectic form")
    return Fraction(mu)


def torus_element(alpha, beta, gamma):
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    diag = (
        alpha * beta,
        beta * beta * gamma,
        beta * gamma,
        beta,
        Fraction(1),
        beta * gamma / alpha,
    )
    return tuple(
        tuple(diag[i] if i == j else Fraction(0) for j in range(_N)) for i in range(_N)
    )


def u_element(x, y, z):
    """The unipotent pair: a z-shear on (e1, f1), an (x, y)-shear on the rest.

    The y-signs are pinned by the requirement that e1 - e3 picks up +y f2,
    which is the convention the determinant-norm formulas describe; the
    opposite sign names the same integral (y is integrated symmetrically)
    but a different matrix.
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    rows = [[Fraction(int(i == j)) for j in range(_N)] for i in range(_N)]
    rows[0][5] = z          # e1 -> e1 + z f1
    rows[1][2] = x          # e2 -> e2 + x e3 - y f3
    rows[1][3] = -y
    rows[2][4] = -y         # e3 -> e3 - y f2
    rows[3][4] = -x         # f3 -> f3 - x f2
    return tuple(tuple(r) for r in rows)


def _minor_valuations(g, r: int, p: int):
    """Valuations of the r x r minors from the bottom r rows, gamma5 basis."""
    m = mat_mul(mat_mul(_G5, g), _G5_INV)
    rows = m[_N - r:]
    best = None
    if r == 2:
        for j1 in range(_N):
            for j2 in range(j1 + 1, _N):
                det = rows[0][j1] * rows[1][j2] - rows[0][j2] * rows[1][j1]
                if det:
                    v = valuation(det, p)
                    if best is None or v < best:
                        best = v
    elif r == 3:
        for j1 in range(_N):
            for j2 in range(j1 + 1, _N):
                for j3 in range(j2 + 1, _N):
                    det = (
                        rows[0][j1] * (rows[1][j2] * rows[2][j3] - rows[1][j3] * rows[2][j2])
                        - rows[0][j2] * (rows[1][j1] * rows[2][j3] - rows[1][j3] * rows[2][j1])
                        + rows[0][j3] * (rows[1][j1] * rows[2][j2] - rows[1][j2] * rows[2][j1])
                    )
                    if det:
                        v = valuation(det, p)
                        if best is None or v < best:
                            best = v
    else:
        raise ValueError("minor size must be 2 or 3")
    if best is None:
        raise ValueError("bottom rows are singular")
    return best


def bottom_minor_norm(g, r: int, p: int) -> Fraction:
    """Largest p-adic absolute value of the bottom-row r x r minors."""
    return _ppow(p, -_minor_valuations(g, r, p))


def det_norms_closed(tv: TorusValuations, x, y, z, p: int) -> tuple[Fraction, Fraction]:
    """Closed forms for (|det3 ut|, |det2 ut|) at torus valuations (a, b, c).

    Takes explicit rational values for (x, y, z) because in the regime
    |gamma| >= |alpha| one entry of the det2 maximum is the absolute value
    of the sum y0 + (gamma/alpha) x0 z0 = (y + xz)/(beta gamma), which the
    component valuations do not determine.  The torus unit parts cancel
    throughout, so valuations suffice for (alpha, beta, gamma).
    """
    a, b, c = tv
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    vx, vy, vz = valuation(x, p), valuation(y, p), valuation(z, p)
    if c >= a:  # |gamma| <= |alpha|
        vz0 = vz + c - 2 * a
        vx0 = vx - b
        vy0 = vy - a - b
        det3 = _ppow(p, -(a + 2 * b)) * _ppow(p, max(0, -vz0))
        m = max(0, -vx0, -vy0, -vz0, -(vx0 + vz0))
        det2 = _ppow(p, -(a + 2 * b)) * _ppow(p, m)
    else:  # |gamma| >= |alpha|
        vz0 = vz - c
        vx0 = vx + a - b - c
        det3 = _ppow(p, -(-a + 2 * b + 2 * c)) * _ppow(p, max(0, -vz0))
        s = y + x * z
        vs = None if s == 0 else valuation(s, p) - b - c
        candidates = [0, -vx0, -vz0, -(vx0 + vz0)]
        if vs is not None:
            candidates.append(-vs)
        det2 = _ppow(p, -(-a + 2 * b + 2 * c)) * _ppow(p, max(candidates))
    return det3, det2


def fprime_section(g, p: int) -> tuple[int, int, int]:
    """Valuation triple (v3, v2, v_mu) determining the spherical section.

    The section value is |det3|^(-2s) |det2|^(2s-w) |mu|^(s+w), so the
    triple fixes it as a monomial in p^(-s), p^(-w).
    """
    mu = similitude(g)
    return (
        _minor_valuations(g, 3, p),
        _minor_valuations(g, 2, p),
        valuation(mu, p),
    )


# ---------------------------------------------------------------------------
# Rational functions of Z = p^(-u) and the two closed shell-integral kernels.


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _poly_trim(a):
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        q[len(a) - len(b)] = f
        for i in range(len(b)):
            a[len(a) - len(b) + i] -= f * b[i]
        _poly_trim(a)
    return q, a


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a if a else [Fraction(1)]


class RationalFunction:
    """Ratio of integer polynomials in one formal variable, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        n = _poly_trim([Fraction(v) for v in num])
        d = _poly_trim([Fraction(v) for v in den])
        if not d:
            raise ZeroDivisionError("zero denominator")
        if n:
            g = _poly_gcd(n, d)
            if len(g) > 1:
                n = _poly_divmod(n, g)[0]
                d = _poly_divmod(d, g)[0]
        # clear denominators to primitive integer coefficients
        from math import lcm

        mult = lcm(*(c.denominator for c in n + d)) if (n or d) else 1
        ni = [int(c * mult) for c in n]
        di = [int(c * mult) for c in d]
        g = 0
        for v in ni + di:
            g = gcd(g, v)
        if g > 1:
            ni = [v // g for v in ni]
            di = [v // g for v in di]
        if di[-1] < 0:
            ni = [-v for v in ni]
            di = [-v for v in di]
        self.num = tuple(ni)
        self.den = tuple(di)

    def evaluate(self, z: Fraction) -> Fraction:
        z = Fraction(z)
        n = sum((c * z**i for i, c in enumerate(self.num)), Fraction(0))
        d = sum((c * z**i for i, c in enumerate(self.den)), Fraction(0))
        return n / d

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return "RationalFunction(num=%r, den=%r)" % (self.num, self.den)


class MaxYIntegral(NamedTuple):
    """Symbolic value of the max-kernel y-integral: |c|^(1-u) * ratio(Z)."""

    prefactor_val: int
    ratio: RationalFunction

    def evaluate(self, p: int, u: int) -> Fraction:
        z = _ppow(p, -u)
        return _ppow(p, self.prefactor_val * (u - 1)) * self.ratio.evaluate(z)


def integral_max(c_val: int, p: int) -> MaxYIntegral:
    """integral over F of max(|c|, |y|)^(-u) dy = |c|^(1-u) (1-Z)/(1-pZ)."""
    return MaxYIntegral(c_val, RationalFunction((1, -1), (1, -p)))


def integral_max_brute(c_val: int, p: int, u: int) -> Fraction:
    """Shell-by-shell oracle for integral_max with an exact geometric tail.

    Shells v(y) = k have measure p^(-k)(1 - 1/p); on them the integrand is
    p^(u min(c_val, k)).  The window below c_val is an explicit finite sum
    once the geometric tail (ratio p^(u-1) per step towards -infinity, in
    measure times value) is summed in closed form.
    """
    if u < 2:
        raise ValueError("need u >= 2 for absolute convergence")
    unit = 1 - Fraction(1, p)
    total = Fraction(0)
    # shells with k >= c_val: constant integrand, total measure p^(-c_val)
    total += _ppow(p, -c_val) * _ppow(p, u * c_val)
    # shells with k < c_val: explicit window plus exact tail
    window = 12
    for k in range(c_val - window, c_val):
        total += _ppow(p, -k) * unit * _ppow(p, u * k)
    ratio = _ppow(p, u - 1)
    low = c_val - window - 1
    total += unit * _ppow(p, low * (u - 1)) / (1 - 1 / ratio)
    return total


def integral_psi_max(a_val: int, p: int) -> RationalFunction:
    """integral of psi(a x) max(1, |x|)^(-u) dx as a polynomial in Z.

    Vanishes when a is not integral; otherwise equals
    (1 - Z)(1 + pZ + ... + (pZ)^a_val).
    """
    if a_val < 0:
        return RationalFunction((0,))
    poly = [Fraction(0)] * (a_val + 2)
    for i in range(a_val + 1):
        # (1 - Z) * (pZ)^i
        poly[i] += p**i
        poly[i + 1] -= p**i
    return RationalFunction(poly)


def integral_psi_max_brute(a_val: int, p: int, u: int) -> Fraction:
    """Shell oracle for integral_psi_max via character orthogonality.

    The ball integral of psi(a x) over |x| <= p^k is p^k when v(a) >= k and
    0 otherwise, so the shell integrals vanish for k > v(a) + 1 and the sum
    is finite with no tail at all.
    """
    total = Fraction(1) if a_val >= 0 else Fraction(0)  # the unit ball
    for k in range(1, max(a_val + 1, 0) + 1):
        ball_k = _ppow(p, k) if a_val >= k else Fraction(0)
        ball_km1 = _ppow(p, k - 1) if a_val >= k - 1 else Fraction(0)
        total += _ppow(p, -u * k) * (ball_k - ball_km1)
    return total


# ---------------------------------------------------------------------------
# The normalized twisted section integral.


class UVPoly:
    """Finitely supported map (i, j) -> rational coefficient of U^i V^j."""

    __slots__ = ("_c",)

    def __init__(self, coeff=None):
        c = {}
        if coeff:
            for key, v in coeff.items():
                v = Fraction(v)
                if v:
                    c[key] = v
        self._c = c

    @classmethod
    def zero(cls):
        return cls()

    def items(self):
        return sorted(self._c.items())

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return isinstance(other, UVPoly) and self._c == other._c

    def evaluate(self, u_val: Fraction, v_val: Fraction) -> Fraction:
        total = Fraction(0)
        for (i, j), coeff in self._c.items():
            total += coeff * u_val**i * v_val**j
        return total

    def __repr__(self):
        return "UVPoly(%s)" % ", ".join(
            "%s*U^%d V^%d" % (c, i, j) for (i, j), c in self.items()
        )


def fpsi_closed(tv: TorusValuations) -> UVPoly:
    """Closed form of the normalized section integral at one torus point.

    With U, V the usual monomial substitutions, the value on the branch
    a <= c <= 2a is U^(c-a) V^(2b+c) (1 + ... + U^(2a-c)) times
    (1 + U/V^2 + ... + (U/V^2)^b); on c < a <= b+c it is
    U^(a-c) V^(2b+c) (1 + ... + U^c)(1 + ... + (U/V^2)^(b+c-a)); and the
    integral vanishes for every other valuation triple.
    """
    a, b, c = tv
    if a <= c <= 2 * a:
        base_u, dmax, emax = c - a, 2 * a - c, b
    elif c < a <= b + c:
        base_u, dmax, emax = a - c, c, b + c - a
    else:
        return UVPoly.zero()
    out: dict[tuple[int, int], int] = {}
    for d in range(dmax + 1):
        for e in range(emax + 1):
            key = (base_u + d + e, 2 * b + c - 2 * e)
            out[key] = out.get(key, 0) + 1
    return UVPoly(out)


def _spsi(p: int, k: int) -> Fraction:
    """Shell integral of the standard character over v(x) = k."""
    if k <= -2:
        return Fraction(0)
    if k == -1:
        return Fraction(-1)
    return _ppow(p, -k) * (1 - Fraction(1, p))


def fpsi_brute(cfg: PadicConfig, tv: TorusValuations, s: int, w: int) -> Fraction:
    """Exact shell-decomposition evaluation of the section integral.

    Integrates psi(z) psi(x) f'(u(x,y,z) t, s, w) over F^3 directly from
    the minor-maximum description of the section, then multiplies by
    zeta(w-2s) zeta(w-1) delta_B^(-1/2)(t).  The (x, z) shells truncate by
    character orthogonality; the y integral is split along v(y + xz),
    whose interaction with v(y) is resolved exactly on each subshell; all
    three tails are exact geometric sums.  Only valuations enter, so the
    result is independent of every unit part.
    """
    p = cfg.p
    a, b, c = tv
    if not (s >= 2 and w - 2 * s >= 4):
        raise ValueError("(s, w) outside the absolute-convergence region")
    e0 = w - 2 * s
    acm = a - c
    mn = min(0, acm)
    zeta_pref = 1 / ((1 - _ppow(p, -(w - 2 * s))) * (1 - _ppow(p, -(w - 1))))
    # constant exponents: delta_B^(-1/2), |mu|^(s+w), and the monomial part
    # of |det2|^(2s-w)
    const_exp = (a + 2 * b + c) - (2 * b + c) * (s + w) + e0 * (-a + b + c)
    consts0 = min(b + c, a + b, 2 * a + b - c)
    vstar_max = consts0 - mn + 1

    ycache: dict[tuple[int, int], Fraction] = {}

    def y_integral(v0: int, sconst: int) -> Fraction:
        """integral over F of p^(e0 min(sconst, v(y'), acm + v(y' - w0))) dy'
        with v(w0) = v0."""
        got = ycache.get((v0, sconst))
        if got is not None:
            return got
        unit = 1 - Fraction(1, p)
        total = Fraction(0)
        # region A: v(y') = j < v0, hence v(y' - w0) = j
        jl = min(v0 - 1, sconst - mn)
        for j in range(jl, v0):
            e = min(sconst, j, acm + j)
            total += _ppow(p, -j) * unit * _ppow(p, e0 * e)
        # tail j < jl: the minimum is j + mn throughout
        total += unit * _ppow(p, e0 * mn) * _ppow(p, (jl - 1) * (e0 - 1)) / (
            1 - _ppow(p, -(e0 - 1))
        )
        # region B: v(y') = j > v0, hence v(y' - w0) = v0
        eb_inf = min(sconst, acm + v0)
        jh = max(v0 + 1, eb_inf)
        for j in range(v0 + 1, jh + 1):
            e = min(sconst, j, acm + v0)
            total += _ppow(p, -j) * unit * _ppow(p, e0 * e)
        total += _ppow(p, -(jh + 1)) * _ppow(p, e0 * eb_inf)
        # region C: v(y') = v0; split on i = v(y' - w0) - v0 >= 0
        ec0 = min(sconst, v0, acm + v0)
        if p > 2:
            total += _ppow(p, -v0) * Fraction(p - 2, p) * _ppow(p, e0 * ec0)
        ec_inf = min(sconst, v0)
        ih = max(0, ec_inf - acm - v0)
        for i in range(1, ih + 1):
            e = min(sconst, v0, acm + v0 + i)
            total += _ppow(p, -v0 - i) * unit * _ppow(p, e0 * e)
        total += _ppow(p, -v0) * _ppow(p, -(ih + 1)) * _ppow(p, e0 * ec_inf)
        ycache[(v0, sconst)] = total
        return total

    def det3_min(vz: int) -> int:
        return 2 * b + min(a, c, 2 * c - a, c - a + vz)

    def sconst_of(vx: int, vz: int) -> int:
        return min(consts0, a + vx, 2 * a - c + vx, b + vz)

    def cell_value(vx: int | None, vz: int | None) -> Fraction:
        """Integrand factor for one (v(x), v(z)) shell pair; None = beyond
        the threshold where the variable has dropped out."""
        big = 10 * (consts0 + abs(acm) + a + b + c + 8) + 40
        evx = big if vx is None else vx
        evz = big if vz is None else vz
        m3 = det3_min(evz)
        sc = sconst_of(evx, evz)
        v0 = evx + evz
        if v0 > vstar_max + 2:
            v0 = vstar_max + 2
        return _ppow(p, 2 * s * m3) * y_integral(v0, sc)

    # thresholds past which the summand is exactly constant
    t_x = max(consts0 - min(a, 2 * a - c) + 2, vstar_max + 2, 1)
    t_z = max(
        consts0 - b + 2,
        max(a, c, 2 * c - a) - (c - a) + 2,
        vstar_max + 2,
        1,
    )
    total = Fraction(0)
    for vx in range(-1, t_x):
        for vz in range(-1, t_z):
            total += _spsi(p, vx) * _spsi(p, vz) * cell_value(vx, vz)
    # strips and corner: sum of the psi shell integrals over v >= T is the
    # ball measure p^(-T)
    for vz in range(-1, t_z):
        total += _ppow(p, -t_x) * _spsi(p, vz) * cell_value(None, vz)
    for vx in range(-1, t_x):
        total += _spsi(p, vx) * _ppow(p, -t_z) * cell_value(vx, None)
    total += _ppow(p, -t_x) * _ppow(p, -t_z) * cell_value(None, None)
    return zeta_pref * _ppow(p, const_exp) * total


def fpsi_closed_value(tv: TorusValuations, p: int, s: int, w: int) -> Fraction:
    """fpsi_closed specialized at U = p^(2-w), V = p^(-s)."""
    return fpsi_closed(tv).evaluate(_ppow(p, -(w - 2)), _ppow(p, -s))


def torus_term(tv: TorusValuations, deg_u: int, deg_v: int) -> BiSeries:
    """One torus point's contribution to the local integral series.

    fpsi_closed(tv) times the truncated geometric series in U V^2 times the
    character A1[2a-c]B2[b,c]; summing over all valuation triples rebuilds
    local_integral_series exactly.
    """
    a, b, c = tv
    poly = fpsi_closed(tv)
    if not poly:
        return BiSeries.zero(deg_u, deg_v)
    weight = (2 * a - c, b, c)
    acc: dict[tuple[int, int], int] = {}
    for (i0, j0), coeff in poly.items():
        if coeff != int(coeff):
            raise AssertionError("closed form should have integer coefficients")
        f = 0
        while i0 + f <= deg_u and j0 + 2 * f <= deg_v:
            key = (i0 + f, j0 + 2 * f)
            acc[key] = acc.get(key, 0) + int(coeff)
            f += 1
    return BiSeries(
        deg_u,
        deg_v,
        {key: VirtualCharacter({weight: mult}) for key, mult in acc.items()},
    )


def torus_term_sum(deg_u: int, deg_v: int) -> BiSeries:
    """Sum of torus_term over every triple that can reach the box."""
    total = BiSeries.zero(deg_u, deg_v)
    bmax = deg_u + deg_v
    for a in range(deg_v + 1):
        for b in range(bmax + 1):
            for c in range(deg_v + 1):
                term = torus_term(TorusValuations(a, b, c), deg_u, deg_v)
                if term:
                    total = total + term
    return total
