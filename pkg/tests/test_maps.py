import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlerep.maps import (
    PL,
    MobiusLift,
    Translation,
    as_integer_translation,
    compose,
    conjugate,
    evaluate,
    from_json,
    invert,
    lifted_commutator,
    power,
    sample_points,
    to_json,
    to_pl,
)
from circlerep.sampling import hyperbolic_matrix
from circlerep.surface import commutator_product, fuchsian_rep

from conftest import pl_maps

F = Fraction
GRID = [F(i, 64) for i in range(64)]


def hyperbolic(att=0.2, rep=0.6, stretch=2.0, k=1, branch=0):
    return MobiusLift(hyperbolic_matrix(att, rep, stretch), k, branch)


def test_translations_add():
    assert compose(Translation(F(1, 2)), Translation(F(1, 3))) == Translation(F(5, 6))


def test_translation_evaluate_and_invert():
    assert evaluate(Translation(F(1, 3)), 0) == F(1, 3)
    assert invert(Translation(F(2, 7))) == Translation(F(-2, 7))


def test_invert_pl_reflects_graph():
    f = PL([(0, F(1, 4)), (F(1, 2), F(3, 4))])
    g = invert(f)
    assert g.breakpoints == [(F(1, 4), 0), (F(3, 4), F(1, 2))]


@given(pl_maps())
def test_compose_with_inverse_is_identity(f):
    assert as_integer_translation(compose(f, invert(f))) == 0
    assert as_integer_translation(compose(invert(f), f)) == 0


@given(pl_maps(), pl_maps(), st.integers(0, 63))
def test_compose_evaluates_pointwise(f, g, i):
    x = F(i, 64) + F(1, 128)
    assert compose(f, g)(x) == f(g(x))


@given(pl_maps(), st.integers(-3, 3), st.integers(0, 63))
def test_pl_equivariance(f, n, i):
    x = F(i, 64)
    assert evaluate(f, x + n) == evaluate(f, x) + n


@given(pl_maps())
def test_pl_strictly_increasing_on_grid(f):
    vals = [f(x) for x in GRID + [F(1)]]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_mobius_equivariance_and_monotone():
    for k, branch in ((1, 0), (2, 1), (3, 2)):
        f = hyperbolic(k=k, branch=branch)
        for x in GRID:
            x = float(x)
            assert abs(f(x + 1) - f(x) - 1) < 1e-9
            # commutes with rotation by 1/k
            assert abs(f(x + 1 / k) - f(x) - 1 / k) < 1e-9
        vals = [f(float(x)) for x in GRID]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_mobius_fixes_its_fixed_point():
    f = hyperbolic(0.2, 0.6)
    assert abs(f(0.2) - 0.2) < 1e-9
    assert abs(f(0.6) - 0.6) < 1e-9


def test_mobius_compose_certifies_carry():
    f = hyperbolic(0.1, 0.55, 2.5, k=2, branch=1)
    g = hyperbolic(0.3, 0.8, 1.7, k=2, branch=0)
    h = compose(f, g)
    assert isinstance(h, MobiusLift) and h.k == 2
    pts = [float(x) for x in sample_points(16)]
    assert max(abs(h(x) - f(g(x))) for x in pts) < 1e-9


def test_mobius_inverse():
    f = hyperbolic(0.1, 0.55, 2.5, k=3, branch=2)
    g = invert(f)
    for x in sample_points(16):
        assert abs(f(g(float(x))) - float(x)) < 1e-9
        assert abs(g(f(float(x))) - float(x)) < 1e-9


def test_mixed_backends_need_tolerance():
    f = hyperbolic()
    g = PL([(0, F(1, 3))])
    with pytest.raises(ValueError):
        compose(f, g)
    h = compose(f, g, tolerance=1e-6)
    assert isinstance(h, PL)
    for x in sample_points(16):
        assert abs(float(h(x)) - f(float(g(x)))) < 1e-6


def test_to_pl_error_bound():
    f = hyperbolic(0.3, 0.9, 1.5)
    g = to_pl(f, 1e-5)
    for x in sample_points(200, F(1, 3)):
        assert abs(float(g(x)) - f(float(x))) <= 1e-5


def test_power_matches_repeated_compose():
    f = PL([(0, F(1, 5)), (F(1, 3), F(2, 3))])
    assert power(f, 3) == compose(f, compose(f, f))
    assert as_integer_translation(compose(power(f, -2), power(f, 2))) == 0


def test_pl_validation():
    with pytest.raises(ValueError):
        PL([(0, F(1, 2)), (F(1, 2), F(1, 4))])
    with pytest.raises(ValueError):
        PL([(0, 0), (F(1, 2), 1)])
    with pytest.raises(ValueError):
        PL([(F(3, 2), 0)])
    with pytest.raises(TypeError):
        PL([(0.5, 0)])


def test_as_integer_translation():
    assert as_integer_translation(Translation(3)) == 3
    assert as_integer_translation(Translation(F(1, 2))) is None
    assert as_integer_translation(PL([(0, 2), (F(1, 2), F(5, 2))])) == 2
    assert as_integer_translation(commutator_product(fuchsian_rep(2))) == 2


def test_lifted_commutator_of_translations():
    assert lifted_commutator(Translation(F(1, 3)), Translation(F(2, 5))) == Translation(0)


@given(pl_maps(), pl_maps(), st.integers(-2, 2))
def test_lifted_commutator_independent_of_lifts(a, b, n):
    c1 = lifted_commutator(a, b)
    c2 = lifted_commutator(compose(Translation(n), a), b)
    c3 = lifted_commutator(a, compose(Translation(n), b))
    for x in sample_points(16):
        assert c1(x) == c2(x) == c3(x)


def test_json_round_trip():
    maps = [
        Translation(F(1, 3)),
        PL([(0, F(1, 4)), (F(1, 2), F(3, 4))]),
        hyperbolic(k=2, branch=1),
    ]
    for f in maps:
        obj = json.loads(json.dumps(to_json(f)))
        assert from_json(obj) == f
    assert to_json(maps[1]) == {"backend": "pl", "breakpoints": [["0", "1/4"], ["1/2", "3/4"]]}
    assert to_json(maps[0]) == {"backend": "translation", "t": "1/3"}


def test_from_json_rejects_unknown_backend():
    with pytest.raises(ValueError):
        from_json({"backend": "spline"})


def test_float_evaluation_close_to_exact():
    f = PL([(0, F(1, 5)), (F(1, 3), F(2, 3)), (F(2, 3), F(5, 6))])
    for x in GRID:
        assert math.isclose(f(float(x)), float(f(x)), abs_tol=1e-12)


def test_pl_pair_with_fixed_points_and_commutator_translation_one():
    # two maps with fixed points whose lifted commutator has translation number 1
    e = F(1, 8)
    a = PL([(0, 0), (e, F(1, 2) - e), (F(1, 2), F(1, 2)), (1 - e, F(1, 2) + e)])
    b = conjugate(Translation(F(-1, 4)), a)
    from circlerep.rotation import rott

    assert rott(a).value == 0 and rott(b).value == 0
    assert rott(lifted_commutator(a, b)).value == 1
    # the lifted commutator does not see the choice of lifts
    shifted = lifted_commutator(compose(Translation(2), a), compose(Translation(-1), b))
    assert shifted == lifted_commutator(a, b)
    b2 = conjugate(Translation(F(1, 4)), a)
    assert rott(lifted_commutator(a, b2)).value == -1
