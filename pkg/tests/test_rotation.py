import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circlerep import _psl2
from circlerep.maps import PL, MobiusLift, Translation, compose, conjugate, invert, power
from circlerep.rotation import (
    RotResult,
    orbit_average,
    periodic_points,
    rot_circle,
    rott,
    rott_compare,
)
from circlerep.cw import OrbitConfig
from circlerep.sampling import hyperbolic_matrix, random_pl, random_pl_with_orbit

from conftest import pl_maps, seeds

F = Fraction


def agree(r1, r2):
    """Exact results must match; intervals must overlap."""
    if r1.is_exact and r2.is_exact:
        return r1.value == r2.value
    return r1.overlaps(r2)


def test_translation():
    assert rott(Translation(F(2, 5))) == RotResult.exact(F(2, 5))
    assert rot_circle(Translation(F(7, 3))) == RotResult.exact(F(1, 3))
    assert rott(Translation(F(-7, 3))).value == F(-7, 3)


def test_pl_with_fixed_point():
    assert rott(PL([(0, 0), (F(1, 2), F(3, 4))])) == RotResult.exact(0)


def test_rational_rotation_certified_by_periodic_point():
    config = OrbitConfig.from_sequence({1: F(2, 5)}, [1] * 5)
    f = random_pl_with_orbit(random.Random(3), config, 1, extra=3)
    r = rott(f)
    assert r == RotResult.exact(F(2, 5))
    assert periodic_points(f, 2, 5)


def test_irrational_looking_map_gives_interval():
    f = compose(PL([(0, 0), (F(1, 3), F(1, 2))]), Translation(F(2, 5)))
    r = rott(f)
    assert not r.is_exact and r.width <= F(1, 10 ** 6)
    assert rott_compare(f, r.lo) == 1 and rott_compare(f, r.hi) == -1


def test_interval_results_are_narrow_and_honest():
    rng = random.Random(7)
    seen = 0
    for _ in range(40):
        f = random_pl(rng, 3)
        r = rott(f, 16, F(1, 1000))
        if r.is_exact:
            continue
        seen += 1
        assert r.width <= F(1, 1000)
        assert r.lo < r.hi
        # no rational of small denominator inside an open interval result
        assert not any(rott_compare(f, x) == 0 for x in (r.lo, r.hi))
        assert rott_compare(f, r.lo) > 0 and rott_compare(f, r.hi) < 0
    assert seen > 0


@given(pl_maps(), st.sampled_from([2, 3, 5]))
def test_power_law(f, n):
    assert agree(rott(power(f, n)), rott(f).scaled(n))


@settings(max_examples=100)
@given(seeds)
def test_power_law_random_maps(seed):
    f = random_pl(random.Random(seed), 4)
    for n in (2, 3):
        assert agree(rott(power(f, n)), rott(f).scaled(n))


@given(pl_maps(), pl_maps(max_breaks=3, shift=False))
def test_conjugacy_invariance(f, h):
    assert agree(rott(conjugate(h, f)), rott(f))


@given(pl_maps(), st.integers(-3, 3))
def test_translation_shift(f, n):
    assert agree(rott(compose(Translation(n), f)), rott(f).shifted(n))


@given(pl_maps(), st.integers(-3, 3))
def test_additivity_when_product_is_translation(g, n):
    f = compose(Translation(n), invert(g))
    rf, rg = rott(f), rott(g)
    if rf.is_exact and rg.is_exact:
        assert rf.value + rg.value == n
    else:
        assert rf.lo + rg.lo < n < rf.hi + rg.hi


def test_orbit_average_inside_interval():
    f = PL([(0, F(1, 7)), (F(1, 2), F(3, 4))])
    r = rott(f, 64, F(1, 10 ** 6))
    est = orbit_average(f, 20000)
    assert abs(est - float(r.midpoint)) < 1e-3


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_hyperbolic_mobius_rotation_is_branch_over_k(k):
    m = hyperbolic_matrix(0.15, 0.7, 2.0)
    for branch in range(k):
        assert rot_circle(MobiusLift(m, k, branch)) == RotResult.exact(F(branch, k))


def elliptic(theta, conj=(1.3, 0.4, 0.2, 0.83)):
    """Conjugate of the rotation matrix by angle theta."""
    c, s = math.cos(theta), math.sin(theta)
    r = (c, -s, s, c)
    p = conj
    return _psl2.mul(_psl2.mul(p, r), _psl2.inv(p))


@pytest.mark.parametrize("theta", [1.0, 2.2, 0.3])
def test_elliptic_mobius_rotation(theta):
    f = MobiusLift(elliptic(theta))
    r = rot_circle(f)
    target = (theta / math.pi) % 1
    assert not r.is_exact
    assert float(r.lo) < target < float(r.hi)


def test_elliptic_long_orbit_average():
    theta = 1.0
    f = MobiusLift(elliptic(theta))
    est = orbit_average(f, 10 ** 6) % 1
    r = rot_circle(f)
    assert abs(est - float(r.midpoint)) < 1e-5


def test_elliptic_rational_angle_is_exact():
    f = MobiusLift(elliptic(2 * math.pi / 5))
    assert rot_circle(f) == RotResult.exact(F(2, 5))


def test_rott_compare_signs():
    f = PL([(0, 0), (F(1, 2), F(3, 4))])
    assert rott_compare(f, 0) == 0
    assert rott_compare(f, F(1, 100)) == -1
    assert rott_compare(f, F(-1, 100)) == 1


def test_argument_checks():
    with pytest.raises(ValueError):
        rott(Translation(0), 0)
    with pytest.raises(ValueError):
        rott(Translation(0), 8, 0)
    with pytest.raises(TypeError):
        rott("x")


def test_rot_result_helpers():
    r = RotResult(F(1, 3), F(1, 2))
    assert r.contains(F(2, 5)) and not r.contains(F(1, 3))
    assert r.overlaps(RotResult.exact(F(2, 5)))
    assert not r.overlaps(RotResult(F(1, 2), 1))
    assert RotResult(F(5, 3), F(7, 4)).mod1() == RotResult(F(2, 3), F(3, 4))
    assert r.to_json() == {"kind": "interval", "lo": "1/3", "hi": "1/2"}
    with pytest.raises(ValueError):
        r.value
