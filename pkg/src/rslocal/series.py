"""Truncated bivariate power series over the virtual character ring.

A BiSeries keeps coefficients only inside the rectangular box
0 <= i <= deg_u, 0 <= j <= deg_v; every generator below derives explicit
finite loop bounds from that box, so each of the a priori infinite sums
is assembled exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, NamedTuple

from .characters import (
    VirtualCharacter,
    product_char,
    sym_power_decompose,
    tensor_decompose,
)

__all__ = [
    "BiSeries",
    "RationalBiSeries",
    "SatakePoint",
    "geometric_series",
    "series_from_univariate",
    "local_integral_series",
    "mult_series",
    "lfactor_product_series",
    "pieri_product_series",
    "sym_side_series",
    "specialize",
    "lfactor_closed",
    "character_value",
]


class SatakePoint(NamedTuple):
    """Exact rational torus point (t; y1, y2), doubled Spin5 coordinates."""

    t: Fraction
    y1: Fraction
    y2: Fraction

    @classmethod
    def make(cls, t, y1, y2) -> "SatakePoint":
        pt = cls(Fraction(t), Fraction(y1), Fraction(y2))
        if 0 in (pt.t, pt.y1, pt.y2):
            raise ValueError("torus coordinates must be nonzero")
        return pt


_VALUE_CACHE: dict[tuple, Fraction] = {}


def character_value(weight: tuple[int, int, int], pt: SatakePoint) -> Fraction:
    key = (weight, pt)
    val = _VALUE_CACHE.get(key)
    if val is None:
        val = product_char(*weight).evaluate(pt.t, pt.y1, pt.y2)
        _VALUE_CACHE[key] = val
    return val


class BiSeries:
    __slots__ = ("deg_u", "deg_v", "_c")

    def __init__(self, deg_u: int, deg_v: int, coeff=None):
        if deg_u < 0 or deg_v < 0:
            raise ValueError("truncation degrees must be nonnegative")
        self.deg_u = deg_u
        self.deg_v = deg_v
        c = {}
        if coeff:
            for (i, j), v in coeff.items():
                if i < 0 or j < 0 or i > deg_u or j > deg_v:
                    raise ValueError("coefficient outside truncation box")
                if v:
                    c[(i, j)] = v
        self._c = c

    @classmethod
    def zero(cls, deg_u: int, deg_v: int) -> "BiSeries":
        return cls(deg_u, deg_v)

    def get(self, i: int, j: int) -> VirtualCharacter:
        return self._c.get((i, j), VirtualCharacter.zero())

    def items(self):
        return sorted(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BiSeries)
            and self.deg_u == other.deg_u
            and self.deg_v == other.deg_v
            and self._c == other._c
        )

    def first_mismatch(self, other: "BiSeries"):
        """Smallest box position whose coefficients differ, or None."""
        keys = sorted(set(self._c) | set(other._c))
        for key in keys:
            a, b = self.get(*key), other.get(*key)
            if a != b:
                return key, a, b
        return None

    def __add__(self, other: "BiSeries") -> "BiSeries":
        du, dv = min(self.deg_u, other.deg_u), min(self.deg_v, other.deg_v)
        out = {}
        for (i, j), v in list(self._c.items()) + list(other._c.items()):
            if i <= du and j <= dv:
                cur = out.get((i, j))
                out[(i, j)] = v if cur is None else cur + v
        return BiSeries(du, dv, out)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        du, dv = min(self.deg_u, other.deg_u), min(self.deg_v, other.deg_v)
        out: dict[tuple[int, int], VirtualCharacter] = {}
        for (i1, j1), v1 in self._c.items():
            if i1 > du or j1 > dv:
                continue
            for (i2, j2), v2 in other._c.items():
                i, j = i1 + i2, j1 + j2
                if i > du or j > dv:
                    continue
                prod = tensor_decompose(v1, v2)
                cur = out.get((i, j))
                out[(i, j)] = prod if cur is None else cur + prod
        return BiSeries(du, dv, out)

    def times_monomial_shift(self, su: int, sv: int) -> "BiSeries":
        out = {}
        for (i, j), v in self._c.items():
            if i + su <= self.deg_u and j + sv <= self.deg_v:
                out[(i + su, j + sv)] = v
        return BiSeries(self.deg_u, self.deg_v, out)

    def times_geometric(self, step_u: int, step_v: int) -> "BiSeries":
        """Multiply by the truncated geometric series in U^step_u V^step_v."""
        if step_u < 0 or step_v < 0 or step_u + step_v == 0:
            raise ValueError("geometric step must be nonzero and nonnegative")
        out: dict[tuple[int, int], VirtualCharacter] = {}
        for (i, j), v in self._c.items():
            n = 0
            while i + n * step_u <= self.deg_u and j + n * step_v <= self.deg_v:
                key = (i + n * step_u, j + n * step_v)
                cur = out.get(key)
                out[key] = v if cur is None else cur + v
                n += 1
        return BiSeries(self.deg_u, self.deg_v, out)


def geometric_series(step_u: int, step_v: int, deg_u: int, deg_v: int) -> BiSeries:
    """Truncation of 1/(1 - U^step_u V^step_v) with trivial coefficients."""
    if step_u < 0 or step_v < 0 or step_u + step_v == 0:
        raise ValueError("geometric step must be nonzero and nonnegative")
    one = VirtualCharacter.weight(0, 0, 0)
    out = {}
    n = 0
    while n * step_u <= deg_u and n * step_v <= deg_v:
        out[(n * step_u, n * step_v)] = one
        n += 1
    return BiSeries(deg_u, deg_v, out)


def series_from_univariate(coeffs, axis: str, deg_u: int, deg_v: int) -> BiSeries:
    """Embed a list of coefficients as a pure-U or pure-V BiSeries."""
    if axis not in ("u", "v"):
        raise ValueError("axis must be 'u' or 'v'")
    out = {}
    for n, v in enumerate(coeffs):
        if axis == "u" and n <= deg_u:
            out[(n, 0)] = v
        elif axis == "v" and n <= deg_v:
            out[(0, n)] = v
    return BiSeries(deg_u, deg_v, out)


# ---------------------------------------------------------------------------
# Series builders.


def _accumulate(acc: dict, i: int, j: int, weight: tuple[int, int, int], mult: int):
    cell = acc.get((i, j))
    if cell is None:
        cell = {}
        acc[(i, j)] = cell
    cell[weight] = cell.get(weight, 0) + mult


def _finish(acc: dict, deg_u: int, deg_v: int) -> BiSeries:
    return BiSeries(
        deg_u, deg_v, {key: VirtualCharacter(cell) for key, cell in acc.items()}
    )


def local_integral_series(deg_u: int, deg_v: int) -> BiSeries:
    """Both branch sums of the normalized local integral, truncated.

    First branch (a <= c <= 2a): U^(c-a) V^c (1 + ... + U^(2a-c)) times
    sum over 0 <= e <= b, 0 <= f of U^(b-e+f) V^(2(e+f)), with coefficient
    A1[2a-c] B2[b,c]; second branch (c < a <= b+c) analogously with
    U^(a-c) V^(2a-c), d <= c and e <= -a+b+c.  The box forces c <= deg_v,
    c-a+d+b-e+f <= deg_u and so on, giving finite loops.
    """
    acc: dict = {}
    # branch a <= c <= 2a
    for cc in range(deg_v + 1):
        for aa in range((cc + 1) // 2, cc + 1):
            base_u = cc - aa
            if base_u > deg_u:
                continue
            wt_m = 2 * aa - cc
            bmax = deg_u - base_u + (deg_v - cc) // 2
            for bb in range(bmax + 1):
                weight = (wt_m, bb, cc)
                for d in range(min(2 * aa - cc, deg_u - base_u) + 1):
                    for e in range(bb + 1):
                        fmax = (deg_v - cc) // 2 - e
                        for f in range(max(0, fmax + 1)):
                            i = base_u + d + bb - e + f
                            j = cc + 2 * (e + f)
                            if i <= deg_u and j <= deg_v:
                                _accumulate(acc, i, j, weight, 1)
    # branch c < a <= b + c
    for cc in range(deg_v + 1):
        amax = (deg_v + cc) // 2
        for aa in range(cc + 1, amax + 1):
            base_u, base_v = aa - cc, 2 * aa - cc
            if base_u > deg_u or base_v > deg_v:
                continue
            wt_m = 2 * aa - cc
            emax_hi = deg_u - base_u + (deg_v - base_v) // 2
            for bb in range(aa - cc, aa - cc + emax_hi + 1):
                weight = (wt_m, bb, cc)
                emax = -aa + bb + cc
                for d in range(min(cc, deg_u - base_u) + 1):
                    for e in range(emax + 1):
                        fmax = (deg_v - base_v) // 2 - e
                        for f in range(max(0, fmax + 1)):
                            i = base_u + d + emax - e + f
                            j = base_v + 2 * (e + f)
                            if i <= deg_u and j <= deg_v:
                                _accumulate(acc, i, j, weight, 1)
    return _finish(acc, deg_u, deg_v)


def mult_series(deg_u: int, deg_v: int, counter: Callable[[int, int, int, int, int], int]) -> BiSeries:
    """The same series through a coefficient function of (x, y, a, b, c).

    Emits counter(x,y,a,b,c) U^(c-a+x) V^(c+2y) A1[2a-c]B2[b,c] over the
    first branch and counter(x,y,a,b,c) U^(a-c+x) V^(2a-c+2y) A1[2a-c]B2[b,c]
    over the second; b is bounded because every counter vanishes once
    x + y falls below the block width.
    """
    acc: dict = {}
    for cc in range(deg_v + 1):
        for aa in range((cc + 1) // 2, cc + 1):
            base_u = cc - aa
            if base_u > deg_u:
                continue
            wt_m = 2 * aa - cc
            xmax = deg_u - base_u
            ymax = (deg_v - cc) // 2
            for bb in range(xmax + ymax + 1):
                weight = (wt_m, bb, cc)
                for x in range(xmax + 1):
                    for y in range(ymax + 1):
                        mult = counter(x, y, aa, bb, cc)
                        if mult:
                            _accumulate(acc, base_u + x, cc + 2 * y, weight, mult)
    for cc in range(deg_v + 1):
        amax = (deg_v + cc) // 2
        for aa in range(cc + 1, amax + 1):
            base_u, base_v = aa - cc, 2 * aa - cc
            if base_u > deg_u or base_v > deg_v:
                continue
            wt_m = 2 * aa - cc
            xmax = deg_u - base_u
            ymax = (deg_v - base_v) // 2
            for bb in range(aa - cc, aa - cc + xmax + ymax + 1):
                weight = (wt_m, bb, cc)
                for x in range(xmax + 1):
                    for y in range(ymax + 1):
                        mult = counter(x, y, aa, bb, cc)
                        if mult:
                            _accumulate(acc, base_u + x, base_v + 2 * y, weight, mult)
    return _finish(acc, deg_u, deg_v)


def lfactor_product_series(deg_u: int, deg_v: int) -> BiSeries:
    """(sum_k U^k B2[k,0]) * (sum_{m,n} V^(m+2n) A1[m]B2[n,m]), truncated."""
    left = BiSeries(
        deg_u,
        deg_v,
        {(k, 0): VirtualCharacter.weight(0, k, 0) for k in range(deg_u + 1)},
    )
    right_acc: dict = {}
    for m in range(deg_v + 1):
        for n in range((deg_v - m) // 2 + 1):
            _accumulate(right_acc, 0, m + 2 * n, (m, n, m), 1)
    right = _finish(right_acc, deg_u, deg_v)
    return left * right


def pieri_product_series(deg_u: int, deg_v: int) -> BiSeries:
    """The product of the two series expanded term by term by the Pieri rule.

    Double sum over k, m, n, eps and the admissible (alpha, beta, i):
    U^k V^(2m+2n) A1[2m] B2[2 alpha + k - n - 2m - eps - 2i, 2 beta + 2i]
    plus the odd companion with V^(2m+2n+1), A1[2m+1] and last index
    2 beta + 2i + 1.
    """
    acc: dict = {}
    for parity in (0, 1):
        for k in range(deg_u + 1):
            for m in range(deg_v + 1):
                if 2 * m + parity > deg_v:
                    break
                for n in range((deg_v - 2 * m - parity) // 2 + 1):
                    j = 2 * m + 2 * n + parity
                    for eps in (0, 1):
                        eps_low = eps if parity == 0 else 0
                        for alpha in range(m, m + n + 1):
                            for beta in range(eps_low, m + 1):
                                top = min(alpha - beta, k - 2 * m - n + alpha + beta - eps)
                                for i in range(0, top + 1):
                                    first = 2 * alpha + k - n - 2 * m - eps - 2 * i
                                    if first < 0:
                                        raise AssertionError(
                                            "negative Spin5 index reached emission"
                                        )
                                    weight = (2 * m + parity, first, 2 * beta + 2 * i + parity)
                                    _accumulate(acc, k, j, weight, 1)
    return _finish(acc, deg_u, deg_v)


def sym_side_series(which: str, deg: int) -> list[VirtualCharacter]:
    """Univariate symmetric-power series coefficients.

    "std": Sym^l of the 5-dimensional B2[1,0] (coefficient of U^l);
    "spin-product": Sym^l of the 8-dimensional A1[1]B2[0,1] (V^l).
    """
    if which == "std":
        base = VirtualCharacter.weight(0, 1, 0)
    elif which == "spin-product":
        base = VirtualCharacter.weight(1, 0, 1)
    else:
        raise ValueError("which must be 'std' or 'spin-product'")
    return [sym_power_decompose(base, ell) for ell in range(deg + 1)]


# ---------------------------------------------------------------------------
# Specialization at exact rational Satake points.


class RationalBiSeries:
    __slots__ = ("deg_u", "deg_v", "_c")

    def __init__(self, deg_u: int, deg_v: int, coeff=None):
        self.deg_u = deg_u
        self.deg_v = deg_v
        c = {}
        if coeff:
            for (i, j), v in coeff.items():
                if i < 0 or j < 0 or i > deg_u or j > deg_v:
                    raise ValueError("coefficient outside truncation box")
                v = Fraction(v)
                if v:
                    c[(i, j)] = v
        self._c = c

    def get(self, i: int, j: int) -> Fraction:
        return self._c.get((i, j), Fraction(0))

    def items(self):
        return sorted(self._c.items())

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return (
            isinstance(other, RationalBiSeries)
            and (self.deg_u, self.deg_v) == (other.deg_u, other.deg_v)
            and self._c == other._c
        )

    def __add__(self, other):
        du, dv = min(self.deg_u, other.deg_u), min(self.deg_v, other.deg_v)
        out = {}
        for (i, j), v in list(self._c.items()) + list(other._c.items()):
            if i <= du and j <= dv:
                out[(i, j)] = out.get((i, j), Fraction(0)) + v
        return RationalBiSeries(du, dv, out)

    def __mul__(self, other):
        du, dv = min(self.deg_u, other.deg_u), min(self.deg_v, other.deg_v)
        out = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                i, j = i1 + i2, j1 + j2
                if i <= du and j <= dv:
                    out[(i, j)] = out.get((i, j), Fraction(0)) + v1 * v2
        return RationalBiSeries(du, dv, out)


def specialize(series: BiSeries, pt: SatakePoint) -> RationalBiSeries:
    """Replace every coefficient by its exact character value at pt."""
    out = {}
    for (i, j), vc in series._c.items():
        val = Fraction(0)
        for w, mult in vc.items():
            val += mult * character_value(w, pt)
        if val:
            out[(i, j)] = val
    return RationalBiSeries(series.deg_u, series.deg_v, out)


def _satake_eigenvalues(pt: SatakePoint, rep: str) -> list[Fraction]:
    t, y1, y2 = pt
    if rep == "std5":
        return [y1 * y1, 1 / (y1 * y1), y2 * y2, 1 / (y2 * y2), Fraction(1)]
    if rep == "stdxspin":
        out = []
        for te in (t, 1 / t):
            for s1 in (y1, 1 / y1):
                for s2 in (y2, 1 / y2):
                    out.append(te * s1 * s2)
        return out
    raise ValueError("rep must be 'std5' or 'stdxspin'")


def lfactor_closed(pt: SatakePoint, rep: str, deg: int) -> list[Fraction]:
    """Power-series expansion of prod_i (1 - X lam_i)^(-1) to degree deg.

    The eigenvalue list is written out directly from the torus point, so
    this route is independent of the character machinery it is checked
    against.
    """
    eig = _satake_eigenvalues(pt, rep)
    den = [Fraction(1)]
    for lam in eig:
        new = den + [Fraction(0)]
        for i in range(len(den), 0, -1):
            new[i] -= lam * den[i - 1]
        den = new
    # den now holds prod (1 - lam X); invert as a power series
    inv = [Fraction(1)]
    for n in range(1, deg + 1):
        s = Fraction(0)
        for k in range(1, min(n, len(den) - 1) + 1):
            s += den[k] * inv[n - k]
        inv.append(-s)
    return inv
