"""Truncated series builders and their cross identities on small boxes."""

import random
from fractions import Fraction

import pytest

from rslocal import coeffs
from rslocal.characters import VirtualCharacter
from rslocal.series import (
    BiSeries,
    RationalBiSeries,
    SatakePoint,
    character_value,
    geometric_series,
    lfactor_closed,
    lfactor_product_series,
    local_integral_series,
    mult_series,
    pieri_product_series,
    series_from_univariate,
    specialize,
    sym_side_series,
)

TRIV = VirtualCharacter.weight(0, 0, 0)


def test_local_integral_corner():
    s = local_integral_series(3, 3)
    assert s.get(0, 0) == TRIV


def test_local_integral_u0v1():
    s = local_integral_series(3, 3)
    assert s.get(0, 1) == VirtualCharacter.weight(1, 0, 1)


def test_local_equals_mult_m_box_4():
    assert local_integral_series(4, 4) == mult_series(4, 4, coeffs.m_closed)


def test_mult_base_box():
    s = mult_series(0, 0, coeffs.m_closed)
    assert s.get(0, 0) == TRIV


def test_mult_m_equals_mult_n_box_6():
    m = mult_series(6, 6, coeffs.m_closed)
    n = mult_series(6, 6, coeffs.n_interval)
    assert m == n


def test_lfactor_low_coefficients():
    s = lfactor_product_series(2, 2)
    assert s.get(0, 0) == TRIV
    assert s.get(1, 0) == VirtualCharacter.weight(0, 1, 0)
    assert s.get(0, 1) == VirtualCharacter.weight(1, 0, 1)


def test_pieri_series_corner_and_equalities():
    p = pieri_product_series(5, 5)
    assert p.get(0, 0) == TRIV
    assert p == lfactor_product_series(5, 5)
    n = mult_series(6, 6, coeffs.n_interval)
    assert pieri_product_series(6, 6) == n


def test_sym_side_std_chain():
    su = sym_side_series("std", 4)
    assert su[0] == TRIV
    lhs = series_from_univariate(su, "u", 4, 0)
    base = BiSeries(4, 0, {(k, 0): VirtualCharacter.weight(0, k, 0) for k in range(5)})
    rhs = base * geometric_series(2, 0, 4, 0)
    assert lhs == rhs


def test_sym_side_spin_chain():
    sv = sym_side_series("spin-product", 4)
    lhs = series_from_univariate(sv, "v", 0, 4)
    acc = {}
    for m in range(5):
        for n in range((4 - m) // 2 + 1):
            key = (0, m + 2 * n)
            acc[key] = acc.get(key, VirtualCharacter.zero()) + VirtualCharacter.weight(m, n, m)
    rhs = BiSeries(0, 4, acc) * geometric_series(0, 2, 0, 4)
    assert lhs == rhs


def test_sym_side_rejects_unknown():
    with pytest.raises(ValueError):
        sym_side_series("nope", 2)


# ---------------------------------------------------------------------------
# Specialization.


def test_specialize_identity_point_gives_dimensions():
    pt = SatakePoint.make(1, 1, 1)
    s = local_integral_series(2, 2)
    sp = specialize(s, pt)
    for (i, j), vc in s.items():
        assert sp.get(i, j) == vc.dim()


def test_specialize_zero_series():
    pt = SatakePoint.make(2, 3, 5)
    assert not specialize(BiSeries.zero(2, 2), pt)


def test_specialize_chain_identity():
    pt = SatakePoint.make(2, 3, 5)
    lhs = specialize(local_integral_series(6, 6), pt)
    rhs = specialize(lfactor_product_series(6, 6), pt)
    assert lhs == rhs


def test_satake_point_rejects_zero():
    with pytest.raises(ValueError):
        SatakePoint.make(0, 1, 1)


def random_biseries(rng, deg_u, deg_v):
    coeff = {}
    for i in range(deg_u + 1):
        for j in range(deg_v + 1):
            if rng.random() < 0.6:
                w = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2))
                coeff[(i, j)] = VirtualCharacter({w: rng.choice((-2, -1, 1, 2))})
    return BiSeries(deg_u, deg_v, coeff)


def test_specialization_is_ring_homomorphism():
    rng = random.Random(5)
    for _ in range(20):
        pt = SatakePoint.make(
            Fraction(rng.choice((-1, 1)) * rng.randint(1, 7), rng.randint(1, 7)),
            Fraction(rng.choice((-1, 1)) * rng.randint(1, 7), rng.randint(1, 7)),
            Fraction(rng.choice((-1, 1)) * rng.randint(1, 7), rng.randint(1, 7)),
        )
        s1 = random_biseries(rng, 2, 2)
        s2 = random_biseries(rng, 2, 2)
        assert specialize(s1 + s2, pt) == specialize(s1, pt) + specialize(s2, pt)
        assert specialize(s1 * s2, pt) == specialize(s1, pt) * specialize(s2, pt)


# ---------------------------------------------------------------------------
# Euler factors from eigenvalue lists.


def test_lfactor_closed_identity_point():
    pt = SatakePoint.make(1, 1, 1)
    assert lfactor_closed(pt, "std5", 1) == [Fraction(1), Fraction(5)]
    assert lfactor_closed(pt, "stdxspin", 1) == [Fraction(1), Fraction(8)]


def test_lfactor_closed_vs_character_series():
    pt = SatakePoint.make(7, 3, 5)
    got = lfactor_closed(pt, "std5", 3)
    # zeta(X^2) * sum_k B2[k,0](pt) X^k expansion
    vals = [character_value((0, k, 0), pt) for k in range(4)]
    want = []
    for n in range(4):
        total = Fraction(0)
        for k in range(n, -1, -2):
            total += vals[k]
        want.append(total)
    assert got == want


def test_lfactor_closed_rejects_unknown_rep():
    pt = SatakePoint.make(1, 2, 3)
    with pytest.raises(ValueError):
        lfactor_closed(pt, "adjoint", 2)


def test_box_containment_enforced():
    with pytest.raises(ValueError):
        BiSeries(1, 1, {(2, 0): TRIV})
    with pytest.raises(ValueError):
        RationalBiSeries(1, 1, {(0, 2): Fraction(1)})
