"""The tau cocycle on a few pairs, including one where tau = 1."""

from fractions import Fraction

from circlerep.cw import OrbitConfig, alternating_pairs, realize
from circlerep.maps import Translation, compose
from circlerep.semiconj import tau

a, b = Translation(Fraction(1, 3)), Translation(Fraction(1, 5))
print("rotations 1/3 and 1/5: tau =", tau(a, b))

maps = realize(OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2]))
f, g = maps[1], maps[2]
print("maps with one fixed point each, interleaved: tau =", tau(f, g))
print("  after changing lifts:", tau(compose(Translation(3), f), compose(Translation(-2), g)))

for k in (2, 3, 4):
    maps = realize(alternating_pairs(k))
    print("%d alternating pairs: tau = %s" % (k, tau(maps[1], maps[2])))
