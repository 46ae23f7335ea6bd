import json
import random
from fractions import Fraction

import pytest

from circlerep import _psl2
from circlerep.maps import (
    PL,
    MobiusLift,
    Translation,
    compose,
    compose_all,
    lifted_commutator,
    power,
)
from circlerep.rotation import RotResult, rot_circle, rott, rott_compare
from circlerep.sampling import hyperbolic_matrix
from circlerep.surface import (
    RelatorError,
    SurfaceRep,
    all_lifts,
    crossing_sign,
    euler,
    extend_by_rotations,
    fuchsian_rep,
    is_crossed_pair,
    is_good_fixed_set,
    lift_rep,
    lifted_fixed_points,
    milnor_wood_check,
    relator_translation,
    rotation_rep,
    trivial_rep,
)

F = Fraction


@pytest.fixture(scope="module")
def fuchsian2():
    return fuchsian_rep(2)


@pytest.fixture(scope="module")
def fuchsian3():
    return fuchsian_rep(3)


def test_trivial_rep():
    rep = trivial_rep(2)
    assert euler(rep) == 0
    assert milnor_wood_check(rep)


def test_fuchsian_euler(fuchsian2, fuchsian3):
    assert euler(fuchsian2) == 2
    assert euler(fuchsian3) == 4
    n, residual = relator_translation(fuchsian2)
    assert residual < 1e-6
    assert milnor_wood_check(fuchsian2)


def test_fuchsian_generators_hyperbolic_and_crossed(fuchsian2):
    for f in fuchsian2.images:
        assert _psl2.classify(f.matrix, 1e-9) == "hyperbolic"
        assert rot_circle(f) == RotResult.exact(0)
    for i in (1, 2):
        assert is_crossed_pair(*fuchsian2.pair(i))


def test_fuchsian_needs_genus_two():
    with pytest.raises(ValueError):
        fuchsian_rep(1)


def test_lift_euler(fuchsian2, fuchsian3):
    rep = lift_rep(fuchsian2, 2)
    assert euler(rep) == 1
    assert all(rot_circle(f) == RotResult.exact(0) for f in rep.images)
    rng = random.Random(1)
    for _ in range(3):
        branches = [rng.randrange(2) for _ in range(6)]
        assert euler(lift_rep(fuchsian3, 2, branches)) == 2


def test_lift_validation(fuchsian2):
    with pytest.raises(ValueError):
        lift_rep(fuchsian2, 3)  # 3 does not divide 2
    with pytest.raises(ValueError):
        lift_rep(fuchsian2, 2, [0, 0, 2, 0])
    with pytest.raises(ValueError):
        lift_rep(fuchsian2, 2, [0, 0])


def test_sixteen_lifts_have_distinct_rotation_vectors(fuchsian2):
    lifts = all_lifts(fuchsian2, 2)
    assert len(lifts) == 16
    vectors = set()
    for branches, rep in lifts:
        vec = tuple(rot_circle(f).value for f in rep.images)
        assert vec == tuple(F(b, 2) for b in branches)
        vectors.add(vec)
    assert len(vectors) == 16


@pytest.mark.parametrize("genus,k", [(2, 2), (3, 2), (3, 4)])
def test_maximal_lift_commutators(genus, k):
    rep = lift_rep(fuchsian_rep(genus), k, [1] * (2 * genus))
    assert euler(rep) == (2 * genus - 2) // k
    comms = [lifted_commutator(*rep.pair(i)) for i in range(1, genus + 1)]
    for c in comms:
        assert rott(c) == RotResult.exact(F(1, k))
    # attracting periodic points of the commutators appear in cyclic order 1, 2, ..., g
    pts = []
    for i, c in enumerate(comms, 1):
        att, _ = _psl2.attracting_repelling(c.matrix)
        pts += [((att + t) / k, i) for t in range(k)]
    labels = [i for _, i in sorted(pts)]
    start = labels.index(1)
    labels = labels[start:] + labels[:start]
    assert labels == list(range(1, genus + 1)) * k


@pytest.mark.parametrize("genus", [2, 3])
def test_partial_commutator_product_bound(genus):
    rep = lift_rep(fuchsian_rep(genus), 2, [0] * (2 * genus))
    comms = [lifted_commutator(*rep.pair(i)) for i in range(1, genus)]
    assert rott_compare(compose_all(comms), F(2 * genus - 3, 2)) <= 0


def test_euler_independent_of_lifts(fuchsian2):
    rep = lift_rep(fuchsian2, 2, [1, 0, 0, 1])
    base = euler(rep)
    for i in range(4):
        images = list(rep.images)
        images[i] = compose(Translation(1), images[i])
        assert euler(SurfaceRep(2, images)) == base


def test_euler_lift_independent_pl():
    rng = random.Random(4)
    for _ in range(20):
        angles = [F(rng.randrange(12), 12) for _ in range(4)]
        rep = rotation_rep(angles)
        shifted = SurfaceRep(2, [compose(Translation(rng.randint(-2, 2)), f) for f in rep.images])
        assert euler(shifted) == euler(rep) == 0


def test_common_rotation_has_euler_zero():
    assert euler(rotation_rep([F(2, 7)] * 6)) == 0


def test_milnor_wood_on_rotation_reps():
    rng = random.Random(0)
    for _ in range(500):
        rep = rotation_rep([F(rng.randrange(60), rng.randint(1, 60)) for _ in range(4)])
        assert euler(rep) == 0
        assert milnor_wood_check(rep)


def test_milnor_wood_on_constructed_reps(fuchsian2):
    reps = [fuchsian2, fuchsian_rep(3), lift_rep(fuchsian2, 2, [1, 1, 0, 1]),
            extend_by_rotations(fuchsian2, F(1, 3), F(1, 5))]
    for rep in reps:
        assert milnor_wood_check(rep)


def test_relator_must_hold():
    f = PL([(0, F(1, 4)), (F(1, 2), F(1, 2))])
    g = PL([(F(1, 8), F(1, 8)), (F(1, 4), F(3, 4))])
    with pytest.raises(RelatorError):
        SurfaceRep(1, [f, g])


def test_extend_by_rotations(fuchsian2):
    ext = extend_by_rotations(fuchsian2, 0.1, 0.37)
    assert ext.genus == 3
    assert euler(ext) == 2
    assert ext.images[-2] == Translation(F(1, 10))
    zero = extend_by_rotations(fuchsian2, 0, 0)
    assert euler(zero) == euler(fuchsian2)
    assert rot_circle(zero.images[-2]) == RotResult.exact(0)


def test_extension_separates_from_multiples_of_one_over_k(fuchsian2):
    rep = lift_rep(fuchsian2, 2, [0, 1, 1, 0])
    ext = extend_by_rotations(rep, F(1, 3), F(1, 7919))
    r = rot_circle(ext.images[-1])
    assert r.is_exact and (2 * r.value).denominator != 1
    assert euler(ext) == 1


def test_linked_pairs():
    f = MobiusLift(hyperbolic_matrix(0.0, 0.5, 2.0))
    g = MobiusLift(hyperbolic_matrix(0.75, 0.25, 2.0))
    h = MobiusLift(hyperbolic_matrix(0.25, 0.75, 2.0))
    assert crossing_sign(f, g) == -1 and is_crossed_pair(f, g)
    # same axes, opposite orientation of g: still linked, other sign
    assert crossing_sign(f, h) == 1 and not is_crossed_pair(f, h)


def test_pair_with_its_square_is_not_crossed():
    f = MobiusLift(hyperbolic_matrix(0.1, 0.6, 1.8))
    assert crossing_sign(f, power(f, 2)) == 0
    assert not is_crossed_pair(f, power(f, 2))


def test_unlinked_pair():
    f = MobiusLift(hyperbolic_matrix(0.1, 0.2, 1.8))
    g = MobiusLift(hyperbolic_matrix(0.5, 0.7, 1.8))
    assert crossing_sign(f, g) == 0


@pytest.mark.parametrize("genus,k", [(2, 2), (4, 3)])
def test_good_fixed_sets(genus, k):
    base = fuchsian_rep(genus)
    for nb in range(k):
        rep = lift_rep(base, k, [0, nb] + [0] * (2 * genus - 2))
        a, b = rep.pair(1)
        pts = lifted_fixed_points(a)
        assert len(pts) == 2 * k
        assert is_good_fixed_set(a, b, pts, k, nb)
        assert not is_good_fixed_set(a, b, pts, k, nb + 1)


def test_good_fixed_set_wrong_size(fuchsian2):
    a, b = lift_rep(fuchsian2, 2).pair(1)
    pts = lifted_fixed_points(a)
    assert not is_good_fixed_set(a, b, pts[:1], 2, 0)


def test_good_fixed_set_destroyed_by_perturbation(fuchsian2):
    a, b = lift_rep(fuchsian2, 2, [0, 1, 0, 0]).pair(1)
    pts = lifted_fixed_points(a)
    assert is_good_fixed_set(a, b, pts, 2, 1)
    # half a turn keeps the doubled alternation but breaks the index shift (iii)
    assert not is_good_fixed_set(a, compose(Translation(F(1, 2)), b), pts, 2, 1)
    # 3/8 of a turn breaks the alternation itself
    assert not is_good_fixed_set(a, compose(Translation(F(3, 8)), b), pts, 2, 1)


def test_rep_json_round_trip(fuchsian2):
    rep = lift_rep(fuchsian2, 2, [1, 0, 1, 1])
    obj = json.loads(json.dumps(rep.to_json()))
    again = SurfaceRep.from_json(obj)
    assert again.genus == 2
    assert [f.branch for f in again.images] == [1, 0, 1, 1]
    assert euler(again) == 1
