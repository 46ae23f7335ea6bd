"""Rewrite a crossed pair into one whose first element has rotation 0."""

import random
import sys

from circlerep.euclid import euclid_reduce
from circlerep.sampling import random_crossed_pair

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
rng = random.Random(seed)
for k, branches in [(2, (1, 1)), (3, (2, 1)), (4, (3, 2)), (5, (2, 3))]:
    a, b = random_crossed_pair(rng, k, branches)
    u, v, trace = euclid_reduce(a, b)
    print("k=%d, start branches (m, n) = (%d, %d), %d steps" % (k, trace.m, trace.n, len(trace.steps)))
    print("  u = %s" % u)
    print("  v = %s" % v)
    print("  commutator gap %.1e" % trace.residual)
