import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circlerep.cw import (
    ConfigError,
    OrbitConfig,
    alternating_pairs,
    allowed_periodic_intervals,
    check_max_constraints,
    cw_pair_sup,
    double_point_config,
    doubled_alternating_pairs,
    interleaves,
    lexicographic_config,
    locate_periodic_points,
    max_pair_bound,
    pair_interleavings,
    parse_word,
    realize,
    step,
    word_product,
    word_translation_bound,
)
from circlerep.maps import PL, Translation
from circlerep.rotation import periodic_points, rott, rott_compare
from circlerep.sampling import random_config, random_pl_with_orbit

from conftest import seeds

F = Fraction


@pytest.fixture
def three_label():
    return lexicographic_config(3, 2, F(1, 2))


def test_step_example(three_label):
    assert step(three_label, 3, (1, 0)) == (3, 1)


def test_step_from_own_orbit(three_label):
    # rotation 1/2 on 2 points: P = 1, so x_i^j goes to x_i^(j+1)
    for i in (1, 2, 3):
        assert step(three_label, i, (i, 0)) == (i, 1)
        assert step(three_label, i, (i, 5)) == (i, 6)


def test_step_with_zero_rotation():
    config = OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2, 1, 2])
    # from x_1^0 (position 0) the next X_2 point to the right is x_2^0
    assert step(config, 2, (1, 0)) == (2, 0)
    assert step(config, 2, (1, 1)) == (2, 1)
    # starting on its own orbit a rotation-0 map stays put
    assert step(config, 2, (2, 0)) == (2, 0)


def test_three_label_bound_and_orbit(three_label):
    bound, cert = word_translation_bound(three_label, "c1 c2 c3")
    assert bound == F(5, 2)
    assert cert.trace == ((1, 0), (3, 1), (2, 3), (1, 5), (3, 6), (2, 8), (1, 10))
    assert cert.translation == 5 and cert.period == 2
    assert cert.replay(three_label, "c1 c2 c3")


def test_tampered_certificate_fails_replay(three_label):
    _, cert = word_translation_bound(three_label, "c1 c2 c3")
    bad = type(cert)(cert.start, cert.translation, cert.period, cert.trace[:-1] + ((1, 11),))
    assert not bad.replay(three_label, "c1 c2 c3")


def test_lexicographic_example():
    assert word_translation_bound(lexicographic_config(2, 3), "c1 c2")[0] == 1


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("k", range(2, 6))
def test_lexicographic_family(n, k):
    bound, cert = word_translation_bound(lexicographic_config(n, k), list(range(1, n + 1)))
    assert bound == F(2 * n - 1, k)


DOUBLE_POINT_VALUES = {
    (2, 2): F(1), (2, 4): F(2, 3), (2, 5): F(1, 2), (3, 2): F(2), (3, 3): F(3, 2),
    (3, 4): F(1), (4, 2): F(3), (4, 3): F(2), (4, 4): F(5, 3), (4, 5): F(4, 3),
    (5, 2): F(4), (5, 4): F(2), (5, 5): F(7, 4),
}


@pytest.mark.parametrize("nk", sorted(DOUBLE_POINT_VALUES))
def test_double_points_strictly_lower(nk):
    n, k = nk
    assert math.gcd(2 * n - 1, k) == 1
    bound, cert = word_translation_bound(double_point_config(n, k), list(range(1, n + 1)))
    assert bound < F(2 * n - 1, k)
    assert bound == DOUBLE_POINT_VALUES[nk]


def test_double_point_config_has_coincidence():
    config = double_point_config(2, 2)
    assert config.has_coincidences()
    assert word_translation_bound(config, "c1 c2")[0] < F(3, 2)


@pytest.mark.parametrize("k", range(2, 7))
def test_alternating_pairs(k):
    assert word_translation_bound(alternating_pairs(k), "c1 c2")[0] == F(1, k)
    assert word_translation_bound(doubled_alternating_pairs(k), "c1 c2")[0] == F(1, k)


def test_more_fixed_points_never_raise_the_bound():
    single = OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2])
    assert word_translation_bound(single, "c1 c2")[0] == 1
    for k in range(2, 7):
        assert word_translation_bound(alternating_pairs(k), "c1 c2")[0] <= 1


def test_cw_pair_sup_examples():
    assert cw_pair_sup(0, 0, 36) == 1
    assert cw_pair_sup(F(1, 2), F(1, 2), 64) == F(3, 2)
    assert cw_pair_sup(F(1, 3), F(1, 3), 64) == 1
    with pytest.raises(ValueError):
        cw_pair_sup(F(-1, 2), 0, 8)


@pytest.mark.parametrize("r,s", [(0, 0), (F(1, 2), F(1, 3)), (F(2, 5), F(1, 4)), (F(1, 6), F(5, 6))])
def test_pair_consistency(r, s):
    assert max_pair_bound(r, s) == cw_pair_sup(r, s, 36)


def test_pair_interleavings_count():
    # one label-1 point pinned first: C(q_r + q_s - 1, q_r - 1) sequences
    assert len(list(pair_interleavings(F(1, 3), F(1, 2)))) == math.comb(4, 2)


def test_realize_three_label(three_label):
    maps = realize(three_label, "c1 c2 c3")
    assert rott(word_product(maps, "c1 c2 c3")).value == F(5, 2)
    for i, f in maps.items():
        assert isinstance(f, PL)
        assert rott(f).value == F(1, 2)


def test_realize_single_label():
    config = OrbitConfig.from_sequence({1: F(1, 2)}, [1, 1])
    maps = realize(config, "c1")
    assert rott(maps[1]).value == F(1, 2)


def test_realize_alternating_pairs():
    maps = realize(alternating_pairs(2))
    assert rott(word_product(maps, "c1 c2")).value == F(1, 2)


def test_realize_rejects_double_points():
    with pytest.raises(ConfigError):
        realize(double_point_config(2, 2))


def test_word_application_order(three_label):
    # rightmost letter first: c1 c2 c3 applied to x_1^0 starts with c3
    assert parse_word("c1 c2 c3") == [1, 2, 3]
    _, cert = word_translation_bound(three_label, "c1 c2 c3")
    assert cert.trace[1] == step(three_label, 3, (1, 0))


@settings(max_examples=30)
@given(seeds, st.integers(1, 4))
def test_cyclic_invariance(seed, n):
    rng = random.Random(seed)
    config = random_config(rng, n, 4)
    word = [rng.randint(1, n) for _ in range(rng.randint(1, 5))]
    base = word_translation_bound(config, word)[0]
    for s in range(1, len(word)):
        assert word_translation_bound(config, word[s:] + word[:s])[0] == base


def test_soundness_on_random_tuples():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(1, 3)
        config = random_config(rng, n, 3)
        maps = {i: random_pl_with_orbit(rng, config, i, extra=rng.randint(0, 2))
                for i in config.labels}
        word = [rng.randint(1, n) for _ in range(rng.randint(1, 3))]
        bound, _ = word_translation_bound(config, word)
        assert rott_compare(word_product(maps, word), bound) <= 0


def test_realization_tightness_random():
    rng = random.Random(5)
    for _ in range(10):
        config = random_config(rng, rng.randint(1, 3), 4)
        maps = realize(config)
        bound, _ = word_translation_bound(config, config.labels)
        assert rott_compare(word_product(maps, config.labels), bound) == 0


def test_config_validation():
    with pytest.raises(ConfigError):
        OrbitConfig({1: F(1, 2)}, [(1, 0)])  # one point cannot carry rotation 1/2
    with pytest.raises(ConfigError):
        OrbitConfig({1: 0}, [(1, F(3, 2))])
    with pytest.raises(ConfigError):
        OrbitConfig({1: 0}, [(2, 0)])
    with pytest.raises(ConfigError):
        OrbitConfig.from_json({"labels": [{"id": 1}], "cycle": []})


def test_config_json_round_trip(three_label):
    obj = three_label.to_json()
    assert obj["labels"][0] == {"id": 1, "rot": "1/2"}
    again = OrbitConfig.from_json(obj)
    assert again.entries == three_label.entries and again.rots == three_label.rots


# -- maximality constraints ---------------------------------------------------

def test_realized_maps_pass_constraints():
    config = lexicographic_config(2, 5)
    maps = realize(config)
    assert check_max_constraints(maps, config).all_pass


def test_non_coprime_case_needs_opt_in():
    config = lexicographic_config(2, 3)
    maps = realize(config, "c1 c2")
    with pytest.raises(ConfigError):
        check_max_constraints(maps, config)
    report = check_max_constraints(maps, config, require_coprime=False)
    assert report.all_pass and not report.coprime


def test_translations_fail_a_constraint():
    n, k = 3, 2
    config = lexicographic_config(n, k)
    maps = {i: Translation(F(1, k)) for i in range(1, n + 1)}
    assert rott(word_product(maps, [1, 2, 3])).value == F(n, k)
    assert not check_max_constraints(maps, config).all_pass


def test_violated_constraint_lowers_rotation():
    config = lexicographic_config(3, 2)
    maps = realize(config)
    # keep d_3's orbit 1/3 -> 5/6 -> 4/3 but push x_1^j to at most x_2^(j+1)
    maps[3] = PL.from_points([(0, F(1, 2)), (F(1, 3), F(5, 6)), (F(1, 2), 1), (F(5, 6), F(4, 3))])
    report = check_max_constraints(maps, config)
    assert any(r["map"] == 3 for r in report.failures())
    assert rott_compare(word_product(maps, [1, 2, 3]), F(5, 2)) < 0


def test_inconsistent_maps_rejected():
    config = lexicographic_config(3, 2)
    maps = {i: Translation(F(1, 3)) for i in (1, 2, 3)}
    with pytest.raises(ConfigError):
        check_max_constraints(maps, config)


def test_periodic_point_intervals():
    config = lexicographic_config(3, 2)
    maps = realize(config)
    x = lambda i, j: config.position((i, j))
    assert locate_periodic_points(maps, config, 2) == [(x(1, j), x(3, j)) for j in range(2)]
    assert locate_periodic_points(maps, config, 1) == [(x(3, j - 1), x(2, j)) for j in range(2)]
    assert locate_periodic_points(maps, config, 3) == [(x(2, j - 1), x(1, j)) for j in range(2)]


@pytest.mark.parametrize("label", [1, 2, 3])
def test_exact_periodic_points_lie_in_allowed_gaps(label):
    config = lexicographic_config(3, 2)
    maps = realize(config)
    found = periodic_points(maps[label], 1, 2)
    pts = [lo for lo, hi in found if lo == hi]
    assert pts and interleaves(config, label, pts)


def test_interleaving_rejects_wrong_orbit():
    config = lexicographic_config(3, 2)
    gaps = allowed_periodic_intervals(config, 2)
    inside = [(a + b) / 2 for a, b in gaps]
    assert interleaves(config, 2, inside)
    assert not interleaves(config, 2, [inside[0], inside[0] + F(1, 100)])
    assert not interleaves(config, 2, [gaps[0][0], inside[1]])


def test_locate_requires_maximality():
    config = lexicographic_config(3, 2)
    maps = realize(config)
    maps[3] = PL.from_points([(0, F(1, 2)), (F(1, 3), F(5, 6)), (F(1, 2), 1), (F(5, 6), F(4, 3))])
    with pytest.raises(ConfigError):
        locate_periodic_points(maps, config, 2)
