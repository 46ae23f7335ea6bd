"""Certified rotation and translation numbers.

``rott`` walks the Stern-Brocot tree using the decidable comparison

    rott(F) > p/q  <=>  F^q(x) > x + p for every x,

and symmetrically for ``<``.  When neither holds, F^q - p has a zero and
``rott(F) = p/q`` exactly.  For PL maps the sign of ``F^q(x) - x - p`` is
read off at the breakpoints of ``F^q``; for Mobius lifts it follows from
the conjugacy class of ``A^q`` and the integer tag of its lift.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from . import _plfast, _plfloat, _psl2
from .maps import (
    PL,
    MobiusLift,
    Translation,
    as_fraction,
    invert,
)

DEFAULT_MAX_DENOMINATOR = 64
DEFAULT_RESOLUTION = Fraction(1, 10**6)
REFINE_TOL = 1e-12


class RotationError(ArithmeticError):
    """Raised when a comparison cannot be certified at working precision."""


@dataclass(frozen=True)
class RotResult:
    """Either an exact rational (lo == hi) or an open interval (lo, hi)."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def exact(cls, value):
        value = as_fraction(value)
        return cls(value, value)

    @property
    def is_exact(self):
        return self.lo == self.hi

    @property
    def value(self):
        if not self.is_exact:
            raise ValueError("rotation number only known to lie in (%s, %s)" % (self.lo, self.hi))
        return self.lo

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        if self.is_exact:
            return x == self.lo
        return self.lo < x < self.hi

    def overlaps(self, other):
        """True when both results are compatible with a common value."""
        if self.is_exact and other.is_exact:
            return self.lo == other.lo
        if self.is_exact:
            return other.contains(self.lo)
        if other.is_exact:
            return self.contains(other.lo)
        return self.lo < other.hi and other.lo < self.hi

    def scaled(self, n):
        n = as_fraction(n)
        lo, hi = self.lo * n, self.hi * n
        return RotResult(min(lo, hi), max(lo, hi))

    def shifted(self, t):
        t = as_fraction(t)
        return RotResult(self.lo + t, self.hi + t)

    def mod1(self):
        n = math.floor(self.lo)
        return self.shifted(-n)

    def to_json(self):
        if self.is_exact:
            return {"kind": "exact", "value": str(self.lo)}
        return {"kind": "interval", "lo": str(self.lo), "hi": str(self.hi)}

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        return "(%s, %s)" % (self.lo, self.hi)


# -- comparison oracles ----------------------------------------------------

class _PLOracle:
    """Certified float test first, exact breakpoint orbits only when it is undecided."""

    def __init__(self, f):
        self.f = f
        self.fast = _plfloat.FloatSign(f, invert(f))
        self.exact = None

    def __call__(self, p, q):
        s = self.fast.sign(p, q)
        if s is not None:
            return s
        if self.exact is None:
            self.exact = _plfast.OrbitSign(self.f)
        return self.exact(p, q)


def _cover_sign(elem, p, tol):
    """Sign of rott(elem) - p for an element (matrix, tag) of the universal cover."""
    m, tag = elem
    tr = _psl2.trace(m)
    c = m[2]
    if tr >= 2.0 + tol:
        # a fixed point exists, so rott = tag exactly
        return (tag > p) - (tag < p)
    if abs(tr - 2.0) <= tol:
        return None
    if tag == p:
        return 1 if c > 0 else -1
    return 1 if tag > p else -1


class _MobiusOracle:
    def __init__(self, f):
        self.elem = (f.matrix, f.branch)
        self.tol = f.tol

    def __call__(self, p, q):
        power = _psl2.cover_pow(self.elem, q)
        s = _cover_sign(power, p, self.tol)
        if s is not None:
            return s
        # near the identity (or parabolic): settle in extended precision
        tr, c = _psl2.power_mp(self.elem[0], q)
        if abs(tr - 2.0) <= REFINE_TOL:
            tag = power[1]
            return (tag > p) - (tag < p)
        if tr > 2.0:
            raise RotationError("hyperbolic power of an elliptic element at q=%d" % q)
        return _cover_sign((power[0][:2] + (c,) + power[0][3:], power[1]), p, REFINE_TOL)


def _oracle(f):
    if isinstance(f, Translation):
        t = f.t
        return lambda p, q: (t * q > p) - (t * q < p)
    if isinstance(f, PL):
        return _PLOracle(f)
    if isinstance(f, MobiusLift):
        return _MobiusOracle(f)
    raise TypeError("not a lifted homeomorphism: %r" % (f,))


def rott_compare(f, r):
    """Exact sign (-1, 0, 1) of ``rott(f) - r`` for a rational ``r``.

    For Mobius lifts ``f`` is first rescaled to the universal cover of PSL(2,R).
    """
    r = as_fraction(r)
    if isinstance(f, MobiusLift):
        r = r * f.k
    return _oracle(f)(r.numerator, r.denominator)


# -- Stern-Brocot search ---------------------------------------------------

def _search(cmp, start, max_denominator, resolution):
    """Locate the rotation number given a comparison oracle cmp(p, q).

    ``start`` is any real with |rott - start| < 1.
    """
    n = math.floor(start)
    # rott lies in (n - 1, n + 2); find an integer bracket
    lo = n - 1
    for m in (n, n + 1):
        s = cmp(m, 1)
        if s == 0:
            return RotResult.exact(m)
        if s < 0:
            break
        lo = m
    # bracket (lo + a/b, lo + c/d) with a/b, c/d Farey neighbours in [0, 1]
    a, b, c, d = 0, 1, 1, 1

    def test(num, den):
        return cmp(lo * den + num, den)

    def done(b, d):
        return Fraction(1, b * d) <= resolution and b + d > max_denominator

    while True:
        if done(b, d):
            return RotResult(lo + Fraction(a, b), lo + Fraction(c, d))
        s = test(a + c, b + d)
        if s == 0:
            return RotResult.exact(lo + Fraction(a + c, b + d))
        # move one endpoint repeatedly toward the other
        if s > 0:
            step = lambda j: (a + j * c, b + j * d)
            stop = lambda j: done(b + j * d, d)
        else:
            step = lambda j: (c + j * a, d + j * b)
            stop = lambda j: done(b, d + j * b)
        good = 1
        j = 2
        bad = None
        while True:
            if stop(good):
                break
            if stop(j):
                # do not overshoot the first index that already suffices
                lo_j, hi_j = good, j
                while hi_j - lo_j > 1:
                    mid = (lo_j + hi_j) // 2
                    if stop(mid):
                        hi_j = mid
                    else:
                        lo_j = mid
                j = hi_j
            sj = test(*step(j))
            if sj == 0:
                return RotResult.exact(lo + Fraction(*step(j)))
            if sj == s:
                good = j
                j *= 2
            else:
                bad = j
                break
        if bad is not None:
            while bad - good > 1:
                mid = (good + bad) // 2
                sm = test(*step(mid))
                if sm == 0:
                    return RotResult.exact(lo + Fraction(*step(mid)))
                if sm == s:
                    good = mid
                else:
                    bad = mid
        if s > 0:
            a, b = step(good)
        else:
            c, d = step(good)


def _check_args(max_denominator, resolution):
    if not isinstance(max_denominator, int) or max_denominator < 1:
        raise ValueError("max_denominator must be a positive integer")
    resolution = as_fraction(resolution)
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    return resolution


def rott(f, max_denominator=DEFAULT_MAX_DENOMINATOR, resolution=DEFAULT_RESOLUTION):
    """Lifted rotation (translation) number of ``f`` as a :class:`RotResult`."""
    resolution = _check_args(max_denominator, resolution)
    if isinstance(f, Translation):
        return RotResult.exact(f.t)
    if isinstance(f, MobiusLift):
        return _rott_mobius(f, max_denominator, resolution)
    if isinstance(f, PL):
        g = f.normalized()
        shift = f.ys[0] - g.ys[0]
        return _rott_pl(g.xs, g.ys, max_denominator, resolution).shifted(shift)
    raise TypeError("not a lifted homeomorphism: %r" % (f,))


@lru_cache(maxsize=4096)
def _rott_pl(xs, ys, max_denominator, resolution):
    # keyed on the normalized lift: rott(F + n) = rott(F) + n
    f = PL(zip(xs, ys))
    return _search(_oracle(f), ys[0] - xs[0], max_denominator, resolution)


def _rott_mobius(f, max_denominator, resolution):
    k = f.k
    m = f.matrix
    kind = _psl2.classify(m, REFINE_TOL)
    if kind != "elliptic":
        # a fixed point of the base lift gives a periodic point of f
        return RotResult.exact(Fraction(f.branch, k))
    start = _psl2.base_lift(m, 0.0) + f.branch
    res = _search(_MobiusOracle(f), start, max_denominator, resolution * k)
    return res.scaled(Fraction(1, k))


def rot_circle(f, max_denominator=DEFAULT_MAX_DENOMINATOR, resolution=DEFAULT_RESOLUTION):
    """Circle rotation number in [0, 1)."""
    return rott(f, max_denominator, resolution).mod1()


def rott_lifted_commutator(a, b, **kw):
    from .maps import lifted_commutator

    return rott(lifted_commutator(a, b), **kw)


def orbit_average(f, n=10**6, x=0.0):
    """Float estimate (F^n(x) - x) / n; an independent cross-check."""
    y = x
    for _ in range(n):
        y = f(y)
    return (y - x) / n



def periodic_points(f, p, q):
    """Solutions of F^q(x) = x + p in [0, 1) for a PL or Translation lift.

    Returns a sorted list of ``(lo, hi)`` pairs: isolated solutions have
    ``lo == hi``, and whole segments of solutions appear as intervals.
    """
    from .maps import power

    if isinstance(f, Translation):
        return [(Fraction(0), Fraction(1))] if f.t * q == p else []
    if not isinstance(f, PL):
        raise TypeError("exact periodic points need a PL or Translation lift")
    g = power(f, q)
    xs = list(g.xs) + [g.xs[0] + 1]
    ys = list(g.ys) + [g.ys[0] + 1]
    d = [y - x - p for x, y in zip(xs, ys)]
    out = []
    for i in range(len(xs) - 1):
        x0, x1, d0, d1 = xs[i], xs[i + 1], d[i], d[i + 1]
        if d0 == 0 and d1 == 0:
            out.append((x0, x1))
        elif d0 == 0:
            out.append((x0, x0))
        elif d0 * d1 < 0:
            z = x0 + (x1 - x0) * d0 / (d0 - d1)
            out.append((z, z))
    result = []
    for lo, hi in out:
        n = math.floor(lo)
        lo, hi = lo - n, hi - n
        if (lo, hi) not in result:
            result.append((lo, hi))
    return sorted(result)
