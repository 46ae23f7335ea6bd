"""Random generators for maps, configurations and crossed pairs.

All functions take a ``random.Random`` instance so results are
reproducible from a seed.
"""

import math
from fractions import Fraction

from .cw import OrbitConfig
from .maps import PL, MobiusLift, compose, invert


def random_fraction(rng, den=64):
    return Fraction(rng.randrange(den), den)


def _increasing(rng, n, den):
    """n distinct sorted fractions in [0, 1) with denominator den."""
    return sorted(Fraction(v, den) for v in rng.sample(range(den), n))


def random_pl(rng, breakpoints=4, den=64):
    """A random PL lift with F(0) roughly in [0, 1)."""
    xs = _increasing(rng, breakpoints, den)
    ys = _increasing(rng, breakpoints, den)
    shift = Fraction(rng.randrange(den), den)
    return PL([(x, y + shift) for x, y in zip(xs, ys)])


def random_conjugate_of(rng, f, breakpoints=3, den=32):
    h = random_pl(rng, breakpoints, den)
    return compose(compose(h, f), invert(h))


def pl_through(points, rng=None, extra=0, den=1024):
    """PL lift through the given (x, y) pairs (one period), plus random extra nodes.

    ``points`` must be increasing in both coordinates within one period.
    Extra breakpoints are placed strictly inside the gaps, keeping the map
    monotone.
    """
    pts = sorted(points)
    if rng is None or extra == 0:
        return PL.from_points(pts)
    n = len(pts)
    per_gap = [0] * n
    for _ in range(extra):
        per_gap[rng.randrange(n)] += 1
    out = list(pts)
    for i, m in enumerate(per_gap):
        if not m:
            continue
        (x0, y0) = pts[i]
        (x1, y1) = pts[i + 1] if i + 1 < n else (pts[0][0] + 1, pts[0][1] + 1)
        txs = _increasing(rng, m, den)
        tys = _increasing(rng, m, den)
        for tx, ty in zip(txs, tys):
            if tx == 0 or ty == 0:
                continue
            out.append((x0 + tx * (x1 - x0), y0 + ty * (y1 - y0)))
    return PL.from_points(out)


def random_pl_with_orbit(rng, config, label, extra=2):
    """A PL lift sending x_label^j to x_label^(j + P_label), otherwise random."""
    n, p = config.count(label), config.shifts[label]
    pts = [(config.position((label, j)), config.position((label, j + p))) for j in range(n)]
    return pl_through(pts, rng, extra)


def random_config(rng, n_labels, max_den, den=None):
    """Random labels with rotations p/q (q <= max_den) and distinct positions.

    Each label gets q points (a single periodic orbit).
    """
    labels = {}
    counts = {}
    for i in range(1, n_labels + 1):
        q = rng.randint(1, max_den)
        p = rng.randrange(q)
        labels[i] = Fraction(p, q)
        counts[i] = Fraction(p, q).denominator
    total = sum(counts.values())
    den = den or 4 * total
    pos = _increasing(rng, total, den)
    rng.shuffle(pos)
    cycle = []
    it = iter(pos)
    for i in labels:
        for _ in range(counts[i]):
            cycle.append((i, next(it)))
    return OrbitConfig(labels, cycle)


# -- hyperbolic elements ----------------------------------------------------

def hyperbolic_matrix(attracting, repelling, stretch):
    """SL(2,R) element with the given fixed points on R/Z and eigenvalue stretch > 1."""
    ta, tr = math.pi * attracting, math.pi * repelling
    p = [[math.cos(ta), math.cos(tr)], [math.sin(ta), math.sin(tr)]]
    det = p[0][0] * p[1][1] - p[0][1] * p[1][0]
    if det < 0:
        p[0][1], p[1][1] = -p[0][1], -p[1][1]
        det = -det
    lam, mu = stretch, 1.0 / stretch
    # P diag(lam, mu) P^-1
    a = (p[0][0] * lam * p[1][1] - p[0][1] * mu * p[1][0]) / det
    b = (-p[0][0] * lam * p[0][1] + p[0][1] * mu * p[0][0]) / det
    c = (p[1][0] * lam * p[1][1] - p[1][1] * mu * p[1][0]) / det
    d = (-p[1][0] * lam * p[0][1] + p[1][1] * mu * p[0][0]) / det
    return (a, b, c, d)


def random_crossed_pair(rng, k, branches=None, stretch=(1.5, 3.0)):
    """Mobius lifts (f, g) of degree k whose axes cross with sign -1.

    Fixed points appear counterclockwise as f+, g-, f-, g+.
    """
    start = rng.random()
    gaps = [rng.uniform(0.05, 1.0) for _ in range(4)]
    total = sum(gaps)
    pts = []
    acc = start
    for gap in gaps:
        pts.append(acc % 1.0)
        acc += gap / total
    fa, gr, fr, ga = pts
    if branches is None:
        branches = (rng.randrange(k), rng.randrange(k))
    f = MobiusLift(hyperbolic_matrix(fa, fr, rng.uniform(*stretch)), k, branches[0])
    g = MobiusLift(hyperbolic_matrix(ga, gr, rng.uniform(*stretch)), k, branches[1])
    return f, g
