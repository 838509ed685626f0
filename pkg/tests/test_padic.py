"""Exact p-adic integrals: closed forms against shell-sum oracles."""

import itertools
import random
from fractions import Fraction

import pytest

from rslocal.padic import (
    PadicConfig,
    RationalFunction,
    TorusValuations,
    UVPoly,
    bottom_minor_norm,
    det_norms_closed,
    fprime_section,
    fpsi_brute,
    fpsi_closed,
    gamma5_matrix,
    integral_max,
    integral_max_brute,
    integral_psi_max,
    integral_psi_max_brute,
    mat_mul,
    similitude,
    torus_element,
    torus_term,
    torus_term_sum,
    u_element,
    valuation,
)
from rslocal.series import local_integral_series


def identity6():
    return tuple(tuple(Fraction(int(i == j)) for j in range(6)) for i in range(6))


def random_unit(rng, p):
    return Fraction(rng.randrange(1, p) + p * rng.randrange(0, 30))


# ---------------------------------------------------------------------------
# Minor norms and the section.


def test_bottom_minor_identity():
    g = identity6()
    assert bottom_minor_norm(g, 2, 5) == 1
    assert bottom_minor_norm(g, 3, 5) == 1


def test_bottom_minor_unit_configuration():
    # all torus coordinates and all of x, y, z units: |det3| = |alpha beta^2| = 1
    g = mat_mul(u_element(1, 1, 1), torus_element(1, 1, 1))
    assert bottom_minor_norm(g, 3, 2) == 1


def test_det3_detects_large_z():
    g = mat_mul(u_element(1, 1, Fraction(1, 9)), torus_element(1, 1, 1))
    assert bottom_minor_norm(g, 3, 3) == 9


def test_det_norms_unit_point():
    tv = TorusValuations(0, 0, 0)
    assert det_norms_closed(tv, 1, 1, 1, 2) == (Fraction(1), Fraction(1))


def test_det_norms_vs_minors_seeded():
    for p in (2, 3):
        rng = random.Random(40 + p)
        for _ in range(150):
            a, b, c = (rng.randrange(0, 4) for _ in range(3))
            xv, yv, zv = (rng.randrange(-3, 4) for _ in range(3))
            x = random_unit(rng, p) * Fraction(p) ** xv
            y = random_unit(rng, p) * Fraction(p) ** yv
            z = random_unit(rng, p) * Fraction(p) ** zv
            alpha = random_unit(rng, p) * Fraction(p) ** a
            beta = random_unit(rng, p) * Fraction(p) ** b
            gamma = random_unit(rng, p) * Fraction(p) ** c
            g = mat_mul(u_element(x, y, z), torus_element(alpha, beta, gamma))
            got = (bottom_minor_norm(g, 3, p), bottom_minor_norm(g, 2, p))
            want = det_norms_closed(TorusValuations(a, b, c), x, y, z, p)
            assert got == want, (p, (a, b, c), (xv, yv, zv))


def test_section_identity_and_gamma5():
    assert fprime_section(identity6(), 3) == (0, 0, 0)
    g5 = gamma5_matrix()
    assert similitude(g5) == 1
    # gamma5 is integral with unit minors: the section is 1 on it
    assert fprime_section(g5, 2) == (0, 0, 0)


def test_section_k_invariance_spot():
    p = 3
    base = mat_mul(u_element(Fraction(1, 3), 3, Fraction(2, 3)), torus_element(3, 9, 3))
    ref = fprime_section(base, p)
    k = mat_mul(u_element(1, 2, 1), gamma5_matrix())
    assert fprime_section(mat_mul(base, k), p) == ref


def test_section_rejects_non_similitude():
    bad = [list(row) for row in identity6()]
    bad[0][1] = Fraction(1)
    bad[1][0] = Fraction(1)
    with pytest.raises(ValueError):
        fprime_section(tuple(tuple(r) for r in bad), 2)


# ---------------------------------------------------------------------------
# The two closed shell-integral kernels.


def test_integral_max_unit_example():
    assert integral_max(0, 2).evaluate(2, 3) == Fraction(7, 6)


def test_integral_max_formal_shape_independent_of_c():
    want = RationalFunction((1, -1), (1, -2))
    assert integral_max(0, 2).ratio == want
    assert integral_max(3, 2).ratio == want
    assert integral_max(-2, 2).ratio == want


def test_integral_max_prefactor_valuation():
    # |c|^(1-u) contributes p^(c_val (u - 1))
    got = integral_max(1, 3).evaluate(3, 4)
    assert got == Fraction(3) ** 3 * integral_max(0, 3).evaluate(3, 4)


def test_integral_psi_cases():
    assert integral_psi_max(-1, 2).evaluate(Fraction(1, 8)) == 0
    assert integral_psi_max(0, 2).evaluate(Fraction(1, 8)) == Fraction(7, 8)


def test_kernel_sweeps_match_brute():
    for p in (2, 3, 5):
        for val in range(-2, 5):
            for u in range(3, 9):
                assert integral_max(val, p).evaluate(p, u) == integral_max_brute(val, p, u)
                z = Fraction(1, p**u)
                assert integral_psi_max(val, p).evaluate(z) == integral_psi_max_brute(val, p, u)


def test_rational_function_reduction():
    f = RationalFunction((2, -2), (2, -4))
    g = RationalFunction((1, -1), (1, -2))
    assert f == g
    z = Fraction(1, 7)
    assert f.evaluate(z) == (1 - z) / (1 - 2 * z)


# ---------------------------------------------------------------------------
# The normalized section integral.


def test_fpsi_closed_base():
    assert fpsi_closed(TorusValuations(0, 0, 0)) == UVPoly({(0, 0): 1})


def test_fpsi_closed_branch_boundaries():
    # c = 2a edge: single monomial U V^2
    assert fpsi_closed(TorusValuations(1, 0, 2)) == UVPoly({(1, 2): 1})
    # a = b + c edge: U V^3 (1 + U)
    assert fpsi_closed(TorusValuations(2, 1, 1)) == UVPoly({(1, 3): 1, (2, 3): 1})
    # outside both branches
    assert not fpsi_closed(TorusValuations(2, 0, 0))


def test_fpsi_brute_examples():
    cfg2 = PadicConfig.make(2)
    got = fpsi_brute(cfg2, TorusValuations(0, 0, 0), 2, 9)
    want = fpsi_closed(TorusValuations(0, 0, 0)).evaluate(Fraction(1, 2**7), Fraction(1, 4))
    assert got == want == 1
    cfg3 = PadicConfig.make(3)
    got3 = fpsi_brute(cfg3, TorusValuations(1, 1, 1), 2, 9)
    want3 = fpsi_closed(TorusValuations(1, 1, 1)).evaluate(Fraction(1, 3**7), Fraction(1, 9))
    assert got3 == want3


def test_fpsi_brute_outside_branches_vanishes():
    cfg = PadicConfig.make(2)
    assert fpsi_brute(cfg, TorusValuations(2, 0, 0), 2, 9) == 0


def test_fpsi_brute_rejects_divergent_parameters():
    cfg = PadicConfig.make(2)
    with pytest.raises(ValueError):
        fpsi_brute(cfg, TorusValuations(0, 0, 0), 2, 7)


def test_fpsi_sweep_small():
    for p in (2, 3):
        cfg = PadicConfig.make(p)
        u_val, v_val = Fraction(1, p**7), Fraction(1, p**2)
        for a, b, c in itertools.product(range(2), repeat=3):
            tv = TorusValuations(a, b, c)
            assert fpsi_brute(cfg, tv, 2, 9) == fpsi_closed(tv).evaluate(u_val, v_val)


# ---------------------------------------------------------------------------
# Per-valuation contributions to the local integral series.


def test_torus_term_base_box():
    term = torus_term(TorusValuations(0, 0, 0), 2, 2)
    triv = {(0, 0): 1, (1, 2): 1}
    assert {key: vc for key, vc in term.items()} == {
        key: term.get(*key) for key in triv
    }
    for key, mult in triv.items():
        assert term.get(*key).get((0, 0, 0)) == mult


def test_torus_term_outside_branches():
    assert not torus_term(TorusValuations(3, 0, 1), 4, 4)


def test_torus_sum_rebuilds_local_series():
    assert torus_term_sum(4, 4) == local_integral_series(4, 4)


def test_valuation_helper():
    assert valuation(Fraction(18, 5), 3) == 2
    assert valuation(Fraction(5, 27), 3) == -3
    with pytest.raises(ValueError):
        valuation(0, 3)
