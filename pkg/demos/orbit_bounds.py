"""Combinatorial bounds for products of maps with prescribed periodic orbits.

Prints the bound for the three-label configuration, the strict drop caused
by a double point, and checks that realized PL maps attain the bound.
"""

import math
from fractions import Fraction

from circlerep.cw import double_point_config, lexicographic_config, realize, word_product
from circlerep.cw import word_translation_bound
from circlerep.rotation import rott

config = lexicographic_config(3, 2, Fraction(1, 2))
bound, cert = word_translation_bound(config, "c1 c2 c3")
print("three labels, rot 1/2 each: rott(c1 c2 c3) <= %s" % bound)
print("  periodic orbit:", " ".join("x%d^%d" % p for p in cert.trace))

maps = realize(config)
print("  realized maps give rott =", rott(word_product(maps, [1, 2, 3])))

for n, k in [(2, 3), (3, 2), (4, 3)]:
    generic = word_translation_bound(lexicographic_config(n, k), list(range(1, n + 1)))[0]
    doubled = word_translation_bound(double_point_config(n, k), list(range(1, n + 1)))[0]
    note = "" if math.gcd(2 * n - 1, k) == 1 else "  (2n-1 and k not coprime)"
    print("n=%d k=%d: generic %s, with a double point %s%s" % (n, k, generic, doubled, note))
