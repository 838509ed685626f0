"""Exact character arithmetic for SL2(C) x Spin5(C).

Characters live in the Laurent polynomial ring of the maximal torus.  A
monomial exponent is a triple (t, d1, d2): t is the SL2 torus exponent and
(d1, d2) are doubled orthogonal Spin5 coordinates, so a weight
(l1, l2) in (1/2 Z)^2 with l1 - l2 integral is stored as (2*l1, 2*l2) and
every exponent is an integer.

Irreducible Spin5 characters come from the alternating-sum formula over the
order-8 Weyl group (sign flips and the coordinate swap), with the quotient
taken by exact division.  Decompositions peel highest weights under the
lexicographic order on (t, d1, d2), which refines the dominance order of
both factors, so peeling is deterministic and terminates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple

__all__ = [
    "LaurentPoly",
    "VirtualCharacter",
    "Partition2",
    "char_A1",
    "char_B2",
    "product_char",
    "dim_irrep",
    "decompose",
    "tensor_decompose",
    "sym_power_decompose",
    "pieri_tensor",
    "sym_power_spin_closed",
    "b2_cache_items",
    "b2_cache_load",
]

# Exponents are packed into one int so that integer comparison of keys agrees
# with lex order on (t, d1, d2).  Each field supports exponents in
# [-2047, 2047], far beyond anything the truncated series ever produce.
_SHIFT = 12
_OFF = 1 << (_SHIFT - 1)
_MASK = (1 << _SHIFT) - 1
_MAX_EXP = _OFF - 1
_P0 = ((_OFF) << (2 * _SHIFT)) | (_OFF << _SHIFT) | _OFF


def _pack(t: int, d1: int, d2: int) -> int:
    if max(abs(t), abs(d1), abs(d2)) > _MAX_EXP:
        raise OverflowError("torus exponent out of packed range")
    return ((t + _OFF) << (2 * _SHIFT)) | ((d1 + _OFF) << _SHIFT) | (d2 + _OFF)


def _unpack(key: int) -> tuple[int, int, int]:
    return (
        (key >> (2 * _SHIFT)) - _OFF,
        ((key >> _SHIFT) & _MASK) - _OFF,
        (key & _MASK) - _OFF,
    )


class LaurentPoly:
    """Integer Laurent polynomial in (t, y1, y2), exponents doubled for Spin5."""

    __slots__ = ("_c",)

    def __init__(self, packed: dict[int, int] | None = None):
        self._c = packed if packed is not None else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({_P0: 1})

    @classmethod
    def monomial(cls, t: int, d1: int, d2: int, coeff: int = 1) -> "LaurentPoly":
        return cls({_pack(t, d1, d2): coeff}) if coeff else cls({})

    @classmethod
    def from_terms(cls, terms) -> "LaurentPoly":
        c: dict[int, int] = {}
        for (t, d1, d2), coeff in terms:
            k = _pack(t, d1, d2)
            v = c.get(k, 0) + coeff
            if v:
                c[k] = v
            else:
                c.pop(k, None)
        return cls(c)

    # -- inspection ---------------------------------------------------------

    def items(self) -> Iterator[tuple[tuple[int, int, int], int]]:
        for k, v in self._c.items():
            yield _unpack(k), v

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __repr__(self) -> str:
        terms = sorted(self.items())
        return "LaurentPoly(%s)" % ", ".join(
            "%+d*t^%d y1^%d y2^%d" % (c, t, d1, d2) for (t, d1, d2), c in terms
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, v in other._c.items():
            nv = c.get(k, 0) + v
            if nv:
                c[k] = nv
            else:
                c.pop(k, None)
        return LaurentPoly(c)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for k, v in other._c.items():
            nv = c.get(k, 0) - v
            if nv:
                c[k] = nv
            else:
                c.pop(k, None)
        return LaurentPoly(c)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for k1, v1 in a.items():
            base = k1 - _P0
            for k2, v2 in b.items():
                k = base + k2
                nv = out.get(k, 0) + v1 * v2
                if nv:
                    out[k] = nv
                else:
                    del out[k]
        return LaurentPoly(out)

    def scaled(self, mult: int) -> "LaurentPoly":
        if mult == 0:
            return LaurentPoly({})
        return LaurentPoly({k: mult * v for k, v in self._c.items()})

    def divided_by_int(self, n: int) -> "LaurentPoly":
        out = {}
        for k, v in self._c.items():
            if v % n:
                raise ArithmeticError("coefficient %d not divisible by %d" % (v, n))
            out[k] = v // n
        return LaurentPoly(out)

    def adams(self, n: int) -> "LaurentPoly":
        """Exponent scaling by n: the n-th power-sum symmetric function."""
        out: dict[int, int] = {}
        for k, v in self._c.items():
            t, d1, d2 = _unpack(k)
            kk = _pack(n * t, n * d1, n * d2)
            out[kk] = out.get(kk, 0) + v
        return LaurentPoly(out)

    def evaluate(self, t: Fraction, y1: Fraction, y2: Fraction) -> Fraction:
        total = Fraction(0)
        for k, coeff in self._c.items():
            et, e1, e2 = _unpack(k)
            total += coeff * t**et * y1**e1 * y2**e2
        return total

    # -- symmetry ------------------------------------------------------------

    def _mapped(self, fn) -> "LaurentPoly":
        out: dict[int, int] = {}
        for k, v in self._c.items():
            t, d1, d2 = _unpack(k)
            kk = _pack(*fn(t, d1, d2))
            out[kk] = out.get(kk, 0) + v
        return LaurentPoly(out)

    def is_weyl_invariant(self) -> bool:
        """Invariance under t -> 1/t, the Spin5 swap and a Spin5 sign flip.

        These three involutions generate the full {+-1} wreath symmetry on the
        doubled coordinates together with the SL2 flip.
        """
        for fn in (
            lambda t, d1, d2: (-t, d1, d2),
            lambda t, d1, d2: (t, d2, d1),
            lambda t, d1, d2: (t, d1, -d2),
        ):
            if self._mapped(fn)._c != self._c:
                return False
        return True


def _support_box(c: dict[int, int]) -> tuple[tuple[int, int], ...]:
    tri = [_unpack(k) for k in c]
    return tuple(
        (min(v[i] for v in tri), max(v[i] for v in tri)) for i in range(3)
    )


def _div_exact(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division of packed Laurent dicts, peeling lex-leading terms."""
    if not num:
        return {}
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    dlead = max(den)
    dlc = den[dlead]
    nbox, dbox = _support_box(num), _support_box(den)
    # The quotient's support box is forced coordinatewise, which bounds the
    # number of peeling steps; exceeding it means the division is not exact.
    bound = 1
    for (nlo, nhi), (dlo, dhi) in zip(nbox, dbox):
        bound *= max(0, (nhi - dhi) - (nlo - dlo) + 1)
    rem = dict(num)
    quot: dict[int, int] = {}
    steps = 0
    while rem:
        k = max(rem)
        coeff = rem[k]
        if coeff % dlc:
            raise ArithmeticError("non-exact Laurent division")
        qc = coeff // dlc
        qk = k - dlead + _P0
        quot[qk] = quot.get(qk, 0) + qc
        base = qk - _P0
        for dk, dv in den.items():
            kk = base + dk
            nv = rem.get(kk, 0) - qc * dv
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
        steps += 1
        if steps > bound:
            raise ArithmeticError("non-exact Laurent division (no termination)")
    return quot


# ---------------------------------------------------------------------------
# Irreducible characters.

# Weyl group of Spin5 on doubled coordinates: (d1, d2) -> (s1*d_sigma(1),
# s2*d_sigma(2)); determinant is the swap sign times the product of flips.
_B2_WEYL = [
    (s1 * s2 * (-1 if swap else 1), swap, s1, s2)
    for swap in (False, True)
    for s1 in (1, -1)
    for s2 in (1, -1)
]

_A1_CACHE: dict[int, LaurentPoly] = {}
_B2_CACHE: dict[tuple[int, int], LaurentPoly] = {}
_PROD_CACHE: dict[tuple[int, int, int], LaurentPoly] = {}
_TENSOR_CACHE: dict[tuple, "VirtualCharacter"] = {}


def char_A1(m: int) -> LaurentPoly:
    """Character of the (m+1)-dimensional SL2 irreducible: t^m + ... + t^-m."""
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    poly = _A1_CACHE.get(m)
    if poly is None:
        poly = LaurentPoly({_pack(m - 2 * i, 0, 0): 1 for i in range(m + 1)})
        _A1_CACHE[m] = poly
    return poly


def _b2_alternating_sum(d1: int, d2: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for sgn, swap, s1, s2 in _B2_WEYL:
        i1, i2 = (d2, d1) if swap else (d1, d2)
        k = _pack(0, s1 * i1, s2 * i2)
        nv = out.get(k, 0) + sgn
        if nv:
            out[k] = nv
        else:
            del out[k]
    return out


def char_B2(a: int, b: int) -> LaurentPoly:
    """Irreducible Spin5 character with highest weight a*w1 + b*w2.

    In doubled coordinates the highest weight is (2a+b, b) and the Weyl
    vector is (3, 1); the alternating-sum quotient is an exact division.
    """
    if a < 0 or b < 0:
        raise ValueError("highest weight must be nonnegative")
    poly = _B2_CACHE.get((a, b))
    if poly is None:
        num = _b2_alternating_sum(2 * a + b + 3, b + 1)
        den = _b2_alternating_sum(3, 1)
        poly = LaurentPoly(_div_exact(num, den))
        _B2_CACHE[(a, b)] = poly
    return poly


def product_char(m: int, a: int, b: int) -> LaurentPoly:
    poly = _PROD_CACHE.get((m, a, b))
    if poly is None:
        poly = char_A1(m) * char_B2(a, b)
        _PROD_CACHE[(m, a, b)] = poly
    return poly


def dim_irrep(m: int, a: int, b: int) -> int:
    """Dimension (m+1)(a+1)(b+1)(2a+b+3)(a+b+2)/6 of the product irreducible."""
    if m < 0 or a < 0 or b < 0:
        raise ValueError("highest weight must be nonnegative")
    num = (m + 1) * (a + 1) * (b + 1) * (2 * a + b + 3) * (a + b + 2)
    if num % 6:
        raise ArithmeticError("dimension formula did not divide by 6")
    return num // 6


# ---------------------------------------------------------------------------
# Virtual characters.


class VirtualCharacter:
    """Finitely supported integer combination of product highest weights.

    Keys are (m, a, b): the SL2 weight m and the Spin5 fundamental-weight
    coordinates (a, b).  Multiplicities may be negative.
    """

    __slots__ = ("_m",)

    def __init__(self, mult: dict[tuple[int, int, int], int] | None = None):
        m = {}
        if mult:
            for w, c in mult.items():
                if c:
                    m[w] = c
        self._m = m

    @classmethod
    def zero(cls) -> "VirtualCharacter":
        return cls()

    @classmethod
    def weight(cls, m: int, a: int, b: int, mult: int = 1) -> "VirtualCharacter":
        if m < 0 or a < 0 or b < 0:
            raise ValueError("dominant weights only")
        return cls({(m, a, b): mult})

    def items(self):
        return self._m.items()

    def get(self, w: tuple[int, int, int]) -> int:
        return self._m.get(w, 0)

    def __len__(self) -> int:
        return len(self._m)

    def __bool__(self) -> bool:
        return bool(self._m)

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualCharacter) and self._m == other._m

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        m = dict(self._m)
        for w, c in other._m.items():
            nv = m.get(w, 0) + c
            if nv:
                m[w] = nv
            else:
                del m[w]
        out = VirtualCharacter()
        out._m = m
        return out

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        m = dict(self._m)
        for w, c in other._m.items():
            nv = m.get(w, 0) - c
            if nv:
                m[w] = nv
            else:
                del m[w]
        out = VirtualCharacter()
        out._m = m
        return out

    def scaled(self, mult: int) -> "VirtualCharacter":
        if not mult:
            return VirtualCharacter()
        out = VirtualCharacter()
        out._m = {w: mult * c for w, c in self._m.items()}
        return out

    def is_genuine(self) -> bool:
        return all(c >= 0 for c in self._m.values())

    def dim(self) -> int:
        return sum(c * dim_irrep(*w) for w, c in self._m.items())

    def expand(self) -> LaurentPoly:
        total = LaurentPoly.zero()
        for (m, a, b), c in self._m.items():
            total = total + product_char(m, a, b).scaled(c)
        return total

    def evaluate(self, t: Fraction, y1: Fraction, y2: Fraction) -> Fraction:
        return sum(
            (c * product_char(*w).evaluate(t, y1, y2) for w, c in self._m.items()),
            Fraction(0),
        )

    def __repr__(self) -> str:
        if not self._m:
            return "VirtualCharacter(0)"
        return "VirtualCharacter(%s)" % ", ".join(
            "%+d*A1[%d]B2[%d,%d]" % (c, m, a, b)
            for (m, a, b), c in sorted(self._m.items())
        )


def decompose(p: LaurentPoly) -> VirtualCharacter:
    """Expand a Weyl-invariant Laurent polynomial in irreducible characters.

    Repeatedly peels the lex-maximal monomial, which for an invariant
    polynomial is a dominant weight in the character lattice; subtracting
    that irreducible only introduces lex-smaller monomials, so the loop
    terminates with the unique virtual-character expansion.
    """
    if not p.is_weyl_invariant():
        raise ValueError("polynomial is not Weyl invariant")
    rem = dict(p._c)
    if not rem:
        return VirtualCharacter()
    box = _support_box(rem)
    bound = 1
    for lo, hi in box:
        bound *= hi - lo + 1
    out: dict[tuple[int, int, int], int] = {}
    steps = 0
    while rem:
        k = max(rem)
        t, d1, d2 = _unpack(k)
        if t < 0 or d2 < 0 or d1 < d2 or (d1 - d2) % 2:
            raise ValueError(
                "leading monomial (%d, %d, %d) is not a dominant character-lattice "
                "weight" % (t, d1, d2)
            )
        a, b = (d1 - d2) // 2, d2
        mult = rem[k]
        out[(t, a, b)] = mult
        for kk, cc in product_char(t, a, b)._c.items():
            nv = rem.get(kk, 0) - mult * cc
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
        steps += 1
        if steps > bound:
            raise ArithmeticError("peeling failed to terminate")
    return VirtualCharacter(out)


def _tensor_weights(w1: tuple[int, int, int], w2: tuple[int, int, int]) -> VirtualCharacter:
    key = (w1, w2) if w1 <= w2 else (w2, w1)
    got = _TENSOR_CACHE.get(key)
    if got is None:
        got = decompose(product_char(*key[0]) * product_char(*key[1]))
        _TENSOR_CACHE[key] = got
    return got


def tensor_decompose(v1: VirtualCharacter, v2: VirtualCharacter) -> VirtualCharacter:
    """Decomposition of the product character; bilinear in both arguments."""
    total = VirtualCharacter()
    for w1, c1 in v1.items():
        for w2, c2 in v2.items():
            total = total + _tensor_weights(w1, w2).scaled(c1 * c2)
    return total


def sym_power_decompose(v: VirtualCharacter, power: int) -> VirtualCharacter:
    """Decomposition of the symmetric power of a genuine representation.

    Uses the Newton recursion l*h_l = sum_k p_k h_{l-k} on power sums of the
    torus eigenvalues, avoiding any explicit monomial multiset.
    """
    if power < 0:
        raise ValueError("negative symmetric power")
    if not v.is_genuine():
        raise ValueError("symmetric powers need nonnegative multiplicities")
    base = v.expand()
    h = [LaurentPoly.one()]
    psums = [None] + [base.adams(k) for k in range(1, power + 1)]
    for ell in range(1, power + 1):
        acc = LaurentPoly.zero()
        for k in range(1, ell + 1):
            acc = acc + (psums[k] * h[ell - k])
        h.append(acc.divided_by_int(ell))
    return decompose(h[power])


# ---------------------------------------------------------------------------
# Pieri rule for tensoring with the one-row Spin5 representations.


class Partition2(NamedTuple):
    """Two-row partition label for a Spin5 irreducible.

    (row1, row2) with spinor=False names B2[row1-row2, 2*row2]; with
    spinor=True it names B2[row1-row2, 2*row2+1].
    """

    row1: int
    row2: int
    spinor: bool = False

    def to_weight(self) -> tuple[int, int, int]:
        if self.row1 < self.row2 or self.row2 < 0:
            raise ValueError("not a partition")
        return (0, self.row1 - self.row2, 2 * self.row2 + (1 if self.spinor else 0))


def pieri_tensor(lam: Partition2, k: int) -> VirtualCharacter:
    """Decomposition of pi(lam) (x) B2[k,0] by horizontal-strip counting.

    The multiplicity of a target two-row shape sigma is the number of
    partitions nu contained in both shapes whose complements are horizontal
    strips, with |lam \\ nu| + |sigma \\ nu| equal to k, or to k-1 subject
    to the case split: in the spinor case k-1 is always allowed, otherwise
    only for nu of length two.  (The rank-two fold-back that produces the
    k-1 term passes through a three-row shape whose strip condition forces
    the second row of nu to be nonempty; the character oracle rejects the
    variant that conditions on lam instead.)
    """
    r1, r2, spin = lam.row1, lam.row2, lam.spinor
    if r1 < r2 or r2 < 0 or k < 0:
        raise ValueError("invalid partition or power")
    out: dict[tuple[int, int, int], int] = {}
    for s1 in range(r1 + k + 1):
        for s2 in range(min(s1, r2 + k) + 1):
            mult = 0
            # horizontal strips force nu1 >= max(lam2, sigma2)
            for n1 in range(max(s2, r2), min(s1, r1) + 1):
                for n2 in range(min(s2, r2, n1) + 1):
                    boxes = (r1 + r2 - n1 - n2) + (s1 + s2 - n1 - n2)
                    if boxes == k or (boxes == k - 1 and (spin or n2 >= 1)):
                        mult += 1
            if mult:
                w = (0, s1 - s2, 2 * s2 + (1 if spin else 0))
                out[w] = out.get(w, 0) + mult
    return VirtualCharacter(out)


def sym_power_spin_closed(power: int) -> VirtualCharacter:
    """Closed-form decomposition of Sym^l of the 8-dimensional A1[1]B2[0,1]."""
    if power < 0:
        raise ValueError("negative symmetric power")
    out: dict[tuple[int, int, int], int] = {}
    j = power
    while j >= 0:
        for i in range(j // 2 + 1):
            w = (j - 2 * i, i, j - 2 * i)
            out[w] = out.get(w, 0) + 1
        j -= 2
    return VirtualCharacter(out)


# ---------------------------------------------------------------------------
# Cache persistence hooks (file format owned by the cli module).


def b2_cache_items() -> list[tuple[tuple[int, int], list[tuple[int, int, int]]]]:
    out = []
    for (a, b), poly in sorted(_B2_CACHE.items()):
        terms = sorted((d1, d2, c) for (t, d1, d2), c in poly.items())
        out.append(((a, b), terms))
    return out


def b2_cache_load(entries) -> int:
    loaded = 0
    for (a, b), terms in entries:
        key = (int(a), int(b))
        if key in _B2_CACHE:
            continue
        poly = LaurentPoly.from_terms(
            ((0, int(d1), int(d2)), int(c)) for d1, d2, c in terms
        )
        _B2_CACHE[key] = poly
        loaded += 1
    return loaded
