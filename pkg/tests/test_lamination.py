from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinlab.lamination import (
    DEFAULT_K,
    EMPTY,
    LaminationError,
    TorusMulticurve,
    count_bounded,
    count_bruteforce,
    growth_experiment,
    intersection,
    resolutions,
)

primitive = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(lambda t: math.gcd(*t) == 1)
curves = st.builds(lambda ab, w: TorusMulticurve.of(ab[0], ab[1], w), primitive, st.integers(1, 4))


def flat_torus_crossings(c1: TorusMulticurve, c2: TorusMulticurve) -> int:
    """Crossings of straight closed geodesics on R^2/Z^2, counted directly.

    The lines ``s*(a1,b1)`` and ``t*(a2,b2)`` meet wherever their difference
    is a lattice vector ``(m, n)``.  Solving the 2x2 system for each lattice
    vector and reducing ``(s, t)`` modulo 1 enumerates the crossing points.
    """
    a1, b1, a2, b2 = c1.a, c1.b, c2.a, c2.b
    det = a1 * b2 - a2 * b1
    if det == 0:
        return 0
    hits = set()
    R = abs(a1) + abs(a2) + abs(b1) + abs(b2) + 1
    for m in range(-R, R + 1):
        for n in range(-R, R + 1):
            # s*a1 - t*a2 = m, s*b1 - t*b2 = n
            s = Fraction(-m * b2 + n * a2, -det)
            t = Fraction(a1 * n - b1 * m, -det)
            hits.add((s % 1, t % 1))
    return c1.weight * c2.weight * len(hits)


def test_examples():
    assert intersection(TorusMulticurve(1, 0, 1), TorusMulticurve(0, 1, 1)) == 1
    assert intersection(TorusMulticurve.of(1, 2, 2), TorusMulticurve.of(2, 1, 3)) == 18
    c = TorusMulticurve.of(3, 5, 2)
    assert intersection(c, c) == 0


@settings(max_examples=60, deadline=None)
@given(curves, curves)
def test_intersection_matches_flat_torus(c1, c2):
    assert intersection(c1, c2) == flat_torus_crossings(c1, c2)


@settings(max_examples=80, deadline=None)
@given(curves, curves, st.integers(1, 5))
def test_symmetry_bilinearity(c1, c2, k):
    assert intersection(c1, c2) == intersection(c2, c1)
    scaled = TorusMulticurve(c1.a, c1.b, c1.weight * k)
    assert intersection(scaled, c2) == k * intersection(c1, c2)
    assert (intersection(c1, c2) == 0) == ((c1.a, c1.b) == (c2.a, c2.b))
    assert intersection(EMPTY, c1) == 0


@settings(max_examples=60, deadline=None)
@given(primitive, primitive)
def test_subadditivity_of_resolutions(s1, s2):
    c1, c2 = TorusMulticurve.of(*s1), TorusMulticurve.of(*s2)
    if abs(c1.a * c2.b - c2.a * c1.b) != 1:
        with pytest.raises(LaminationError):
            resolutions(c1, c2)
        return
    for r in resolutions(c1, c2):
        for k in DEFAULT_K:
            assert intersection(r, k) <= intersection(c1, k) + intersection(c2, k)


def test_canonical_sign():
    assert TorusMulticurve.of(-2, -4) == TorusMulticurve(1, 2, 2)
    assert TorusMulticurve.of(-3, 0) == TorusMulticurve(1, 0, 3)
    with pytest.raises(LaminationError):
        TorusMulticurve(2, 4, 1)
    with pytest.raises(LaminationError):
        TorusMulticurve(1, -1, 1)


def test_count_small():
    assert count_bounded(DEFAULT_K, 0) == 1
    assert count_bounded(DEFAULT_K, 2) == 4


@pytest.mark.parametrize("N", [1, 3, 6, 11, 20])
def test_count_matches_bruteforce(N):
    assert count_bounded(DEFAULT_K, N) == count_bruteforce(DEFAULT_K, N, N + 1)
    assert count_bounded(DEFAULT_K, N, "s04") == count_bruteforce(DEFAULT_K, N, N + 1, "s04")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 60))
def test_count_monotone(N):
    assert count_bounded(DEFAULT_K, N) <= count_bounded(DEFAULT_K, N + 1)


def test_degenerate_K_rejected():
    with pytest.raises(LaminationError):
        count_bounded([TorusMulticurve(1, 0, 1), TorusMulticurve(1, 0, 2)], 5)


def test_growth_exponent():
    rep = growth_experiment()
    assert rep.counts == sorted(rep.counts)
    assert 1.85 <= rep.fitted_exponent <= 2.15
    assert growth_experiment(preset="quotient").fitted_exponent == 0
    with pytest.raises(LaminationError):
        growth_experiment(N_list=[64])
    assert 1.85 <= growth_experiment(model="s04").fitted_exponent <= 2.15


def test_sphere_model_hand_catalogue():
    # curves separating the four punctures into different pairs meet twice
    a, b, c = TorusMulticurve(1, 0, 1), TorusMulticurve(0, 1, 1), TorusMulticurve(1, 1, 1)
    assert intersection(a, b, "s04") == 2
    assert intersection(a, c, "s04") == 2
    assert intersection(TorusMulticurve(1, 2, 1), TorusMulticurve(2, 1, 1), "s04") == 6
