"""Flag enumeration, orbits, and stabilizers over F_2 (F_3 in acceptance)."""

import random

import pytest

from rslocal.symplectic import (
    FlagState,
    alt_fifth_flag,
    enumerate_flags,
    flag_apply,
    flag_counts,
    gamma5_check,
    group_closure,
    h_generators,
    h_group_order,
    h_similitude,
    make_flag,
    mat_mul_q,
    orbit_decompose,
    orbit_predicates,
    orbit_representatives,
    predicate_index,
    stab5_check,
    stab5_shape_ok,
)

# frozen after the first computation; regression values for the orbit sizes
ORBIT_SIZES_Q2 = [45, 135, 135, 270, 360]
ORBIT_SIZES_Q3 = [160, 640, 1280, 3840, 8640]


def test_flag_count_q2():
    flags = enumerate_flags(2)
    assert len(flags) == 945
    assert flag_counts(2) == (135, 945)
    assert len(set(flags)) == 945


def test_flag_isotropy_invariant():
    for flag in enumerate_flags(2)[:50]:
        # re-canonicalizing is the identity on canonical flags
        assert make_flag(flag.basis2, flag.basis3, 2) == flag


def test_canonicalization_stability():
    rng = random.Random(3)
    flags = enumerate_flags(2)
    for _ in range(30):
        flag = rng.choice(flags)
        # random invertible row mixes of each basis give back the same key
        rows2 = [flag.basis2[0], tuple((a + b) % 2 for a, b in zip(*flag.basis2))]
        rows3 = list(flag.basis3)
        rng.shuffle(rows3)
        assert make_flag(rows2, rows3, 2) == flag


def test_h_generators_are_similitudes():
    for q in (2, 3):
        for g in h_generators(q):
            h_similitude(g, q)


def test_h_closure_order_q2():
    mul = lambda A, B: mat_mul_q(A, B, 2)
    closure = group_closure(h_generators(2), mul, limit=10000)
    assert len(closure) == 4320 == h_group_order(2)


def test_h_group_order_q3_formula():
    assert h_group_order(3) == 48 * 51840


def test_orbit_decompose_q2():
    table = orbit_decompose(2)
    assert len(table.entries) == 5
    assert [e.size for e in table.entries] == ORBIT_SIZES_Q2
    assert table.total == 945


def test_stated_representatives_distinct_q2():
    _, membership = orbit_decompose(2, with_membership=True)
    reps = orbit_representatives(2)
    assert [membership[r] for r in reps] == [1, 2, 3, 4, 5]


def test_alt_flag_in_fifth_orbit_q2():
    _, membership = orbit_decompose(2, with_membership=True)
    assert membership[alt_fifth_flag(2)] == 5


def test_orbit_predicates_q2():
    assert orbit_predicates(2)


def test_predicate_spot_values():
    q = 2
    reps = orbit_representatives(q)
    assert [predicate_index(r, q) for r in reps] == [1, 2, 3, 4, 5]


def test_stab5_q2():
    rep = stab5_check(2)
    assert rep.product_ok and rep.shape_ok
    assert rep.orbit_size * rep.stabilizer_order == h_group_order(2)
    assert rep.orbit_size == 360 and rep.stabilizer_order == 12


def test_stab5_shape_on_identity():
    identity = tuple(tuple(int(i == j) for j in range(6)) for i in range(6))
    assert stab5_shape_ok(identity, 2)


def test_gamma5():
    assert gamma5_check()


def test_make_flag_rejects_bad_input():
    from rslocal.symplectic import E1, E2, F1, F2, F3

    with pytest.raises(ValueError):
        make_flag((E1, F1), (E1, F1, F2), 2)  # not isotropic
    with pytest.raises(ValueError):
        make_flag((F1, E2), (F1, F2, F3), 2)  # plane not inside the 3-space


def test_flag_apply_respects_action():
    q = 2
    flag = orbit_representatives(q)[1]
    for g in h_generators(q):
        image = flag_apply(flag, g, q)
        assert isinstance(image, FlagState)
        # the image is again an isotropic flag with the same dimensions
        assert make_flag(image.basis2, image.basis3, q) == image
