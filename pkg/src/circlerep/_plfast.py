"""Exact sign test for PL lifts on gmpy2 rationals.

G(x) = F^q(x) - x - p is piecewise linear and its breakpoints lie among
the points F^-j(b), 0 <= j < q, for breakpoints b of F.  There
G = F^(q-j)(b) - F^-j(b) - p, so exact forward and backward orbits of the
breakpoints decide the sign of G without ever forming F^q.  Orbit
denominators grow quickly and ``fractions.Fraction`` spends most of its
time in gcd reductions there, hence ``gmpy2.mpq``.
"""

from bisect import bisect_right

from gmpy2 import mpq


def _floor(x):
    return x.numerator // x.denominator


class QPL:
    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys):
        self.xs = xs
        self.ys = ys

    @classmethod
    def from_pl(cls, f):
        return cls([mpq(x.numerator, x.denominator) for x in f.xs],
                   [mpq(y.numerator, y.denominator) for y in f.ys])

    def __call__(self, x):
        return _piece(self.xs, self.ys, x)

    def inverse_at(self, y):
        return _piece(self.ys, self.xs, y)


def _piece(xs, ys, x):
    # xs need not start in [0, 1); reduce relative to xs[0]
    n = _floor(x - xs[0])
    u = x - n
    i = bisect_right(xs, u) - 1
    x0, y0 = xs[i], ys[i]
    if i + 1 < len(xs):
        x1, y1 = xs[i + 1], ys[i + 1]
    else:
        x1, y1 = xs[0] + 1, ys[0] + 1
    return y0 + (y1 - y0) * (u - x0) / (x1 - x0) + n


class OrbitSign:
    """Exact sign of rott(F) - p/q; orbits are cached and extended on demand."""

    def __init__(self, f):
        self.f = QPL.from_pl(f)
        self.fwd = [[b] for b in self.f.xs]
        self.bwd = [[b] for b in self.f.xs]

    @staticmethod
    def _extend(rows, steps, step):
        for row in rows:
            while len(row) <= steps:
                row.append(step(row[-1]))

    def __call__(self, p, q):
        """+1 or -1 when G has that sign everywhere, else 0."""
        self._extend(self.fwd, q, self.f)
        self._extend(self.bwd, q - 1, self.f.inverse_at)
        pos = neg = False
        for fw, bw in zip(self.fwd, self.bwd):
            for j in range(q):
                d = fw[q - j] - bw[j] - p
                if d > 0:
                    pos = True
                elif d < 0:
                    neg = True
                else:
                    return 0
                if pos and neg:
                    return 0
        return 1 if pos else -1
