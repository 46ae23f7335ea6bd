"""Lifts of circle homeomorphisms to R (elements of Homeo_Z(R)).

Three backends are supported:

* :class:`Translation` -- ``x -> x + t`` with ``t`` an exact rational.
* :class:`PL` -- an exact piecewise-linear map given by its breakpoints over
  one period; ``F(x + 1) = F(x) + 1`` is implicit.
* :class:`MobiusLift` -- a lift of an element of the k-fold cyclic cover
  PSL^(k) of PSL(2,R), evaluated in floating point.

Values are immutable.  ``compose(f, g)`` is ``f o g`` (``g`` acts first).
"""

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from . import _psl2

DEFAULT_TOL = 1e-9


def as_fraction(x):
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to convert float %r to an exact scalar" % x)
    return Fraction(x)


def _floor(x):
    return math.floor(x)


@dataclass(frozen=True)
class Translation:
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self):
        return "Translation(%s)" % self.t


@dataclass(frozen=True)
class PL:
    """Piecewise-linear lift.

    ``breakpoints`` is a sequence of ``(x, y)`` with ``0 <= x < 1`` strictly
    increasing and ``y`` strictly increasing with ``y_last < y_first + 1``.
    Between consecutive breakpoints (and from the last one to
    ``(x_first + 1, y_first + 1)``) the map is affine.
    """

    xs: tuple
    ys: tuple
    _fx: tuple = field(default=None, repr=False, compare=False)
    _fy: tuple = field(default=None, repr=False, compare=False)

    def __init__(self, breakpoints):
        pts = [(as_fraction(x), as_fraction(y)) for x, y in breakpoints]
        if not pts:
            raise ValueError("a PL map needs at least one breakpoint")
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        if xs[0] < 0 or xs[-1] >= 1:
            raise ValueError("breakpoint abscissae must lie in [0, 1)")
        for i in range(1, len(xs)):
            if xs[i] <= xs[i - 1]:
                raise ValueError("breakpoint abscissae must be strictly increasing")
            if ys[i] <= ys[i - 1]:
                raise ValueError("PL map is not strictly increasing")
        if ys[-1] >= ys[0] + 1:
            raise ValueError("PL map is not strictly increasing across the period")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "_fx", None)
        object.__setattr__(self, "_fy", None)

    @classmethod
    def from_points(cls, points, simplify=True):
        """Build from ``(x, F(x))`` samples at arbitrary real ``x``.

        Points are reduced into one period using equivariance; duplicates
        (same x mod 1) are merged after checking they agree.
        """
        red = {}
        for x, y in points:
            x, y = as_fraction(x), as_fraction(y)
            n = math.floor(x)
            x, y = x - n, y - n
            if x in red and red[x] != y:
                raise ValueError("inconsistent values at x = %s" % x)
            red[x] = y
        pts = sorted(red.items())
        if simplify:
            pts = _drop_collinear(pts)
        return cls(pts)

    @property
    def breakpoints(self):
        return list(zip(self.xs, self.ys))

    def floats(self):
        if self._fx is None:
            object.__setattr__(self, "_fx", tuple(float(x) for x in self.xs))
            object.__setattr__(self, "_fy", tuple(float(y) for y in self.ys))
        return self._fx, self._fy

    def normalized(self):
        """Integer shift of this lift with F(0) in [0, 1)."""
        n = _floor(self(Fraction(0)))
        if n == 0:
            return self
        return PL([(x, y - n) for x, y in zip(self.xs, self.ys)])

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self):
        inner = ", ".join("(%s, %s)" % (x, y) for x, y in zip(self.xs, self.ys))
        return "PL([%s])" % inner


def _drop_collinear(pts):
    """Remove breakpoints where the slope does not change (cyclically)."""
    if len(pts) <= 1:
        return pts
    n = len(pts)

    def pt(i):
        q, r = divmod(i, n)
        return (pts[r][0] + q, pts[r][1] + q)

    keep = []
    for i in range(n):
        x0, y0 = pt(i - 1)
        x1, y1 = pt(i)
        x2, y2 = pt(i + 1)
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            keep.append(pts[i])
    return keep or [pts[0]]


@dataclass(frozen=True)
class MobiusLift:
    """Lift of an element of PSL^(k) acting on the k-fold cover of the circle.

    The map is ``x -> (L_A(k x) + branch) / k`` where ``L_A`` is the lift of
    the projective action of ``A`` closest to the identity (see
    :mod:`circlerep._psl2`).  ``branch`` in ``[0, k)`` picks the circle map;
    other integers differ from those by integer translations.
    """

    matrix: tuple
    k: int = 1
    branch: int = 0
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("cover degree must be positive")
        object.__setattr__(self, "matrix", _psl2.normalize(self.matrix))

    @property
    def cover(self):
        return (self.matrix, self.branch)

    @classmethod
    def from_cover(cls, elem, k, tol=DEFAULT_TOL):
        return cls(elem[0], k, elem[1], tol)

    @property
    def circle_branch(self):
        return self.branch % self.k

    def __call__(self, x):
        return evaluate(self, x)


def is_homeo(f):
    return isinstance(f, (Translation, PL, MobiusLift))


def identity():
    return Translation(0)


def evaluate(f, x):
    """Evaluate the lift at ``x``.

    Exact for PL and Translation when ``x`` is rational; Mobius lifts and
    float arguments are evaluated in floating point.
    """
    if isinstance(f, Translation):
        if isinstance(x, float):
            return x + float(f.t)
        return as_fraction(x) + f.t
    if isinstance(f, PL):
        if isinstance(x, float):
            return _pl_eval_float(f, x)
        return _pl_eval(f, as_fraction(x))
    if isinstance(f, MobiusLift):
        k = f.k
        return (_psl2.base_lift(f.matrix, k * float(x)) + f.branch) / k
    raise TypeError("not a lifted homeomorphism: %r" % (f,))


def _pl_eval(f, x):
    xs, ys = f.xs, f.ys
    n = _floor(x - xs[0])
    u = x - n
    i = bisect_right(xs, u) - 1
    x0, y0 = xs[i], ys[i]
    if i + 1 < len(xs):
        x1, y1 = xs[i + 1], ys[i + 1]
    else:
        x1, y1 = xs[0] + 1, ys[0] + 1
    return y0 + (y1 - y0) * (u - x0) / (x1 - x0) + n


def _pl_eval_float(f, x):
    xs, ys = f.floats()
    n = math.floor(x - xs[0])
    u = x - n
    i = bisect_right(xs, u) - 1
    if i < 0:
        i = 0
    x0, y0 = xs[i], ys[i]
    if i + 1 < len(xs):
        x1, y1 = xs[i + 1], ys[i + 1]
    else:
        x1, y1 = xs[0] + 1.0, ys[0] + 1.0
    return y0 + (y1 - y0) * (u - x0) / (x1 - x0) + n


def invert(f):
    if isinstance(f, Translation):
        return Translation(-f.t)
    if isinstance(f, PL):
        return PL.from_points(zip(f.ys, f.xs), simplify=False)
    if isinstance(f, MobiusLift):
        return MobiusLift.from_cover(_psl2.cover_inv(f.cover), f.k, f.tol)
    raise TypeError("not a lifted homeomorphism: %r" % (f,))


def to_mobius(f, k, tol=DEFAULT_TOL):
    """Express a Translation (or MobiusLift of degree k) as a MobiusLift."""
    if isinstance(f, MobiusLift):
        if f.k != k:
            raise ValueError("cover degrees differ (%d vs %d)" % (f.k, k))
        return f
    if isinstance(f, Translation):
        # x + t = (k x + k t) / k, a rotation on the base circle
        return MobiusLift.from_cover(_psl2.rotation(float(k * f.t)), k, tol)
    raise TypeError("cannot express %r as a Mobius lift" % (f,))


def to_pl(f, tolerance):
    """PL approximation of ``f`` with certified sup-norm error <= tolerance.

    Exact for PL and Translation.  For a Mobius lift the map is sampled on a
    uniform grid; linear interpolation error is bounded by
    ``h^2 / 8 * sup|F''|`` with ``sup|F''| <= 2 pi k |A|^6``.
    """
    if isinstance(f, PL):
        return f
    if isinstance(f, Translation):
        return PL([(0, f.t)])
    if not isinstance(f, MobiusLift):
        raise TypeError("not a lifted homeomorphism: %r" % (f,))
    a, b, c, d = f.matrix
    norm = math.sqrt(a * a + b * b + c * c + d * d)
    bound = 2 * math.pi * f.k * norm ** 6
    # half the budget for interpolation, half for rounding sample values
    h = math.sqrt(8 * (tolerance / 2) / bound)
    n = max(4, math.ceil(1 / h))
    if n > 200000:
        raise ValueError("tolerance %g needs %d samples; refusing" % (tolerance, n))
    den = 10 ** max(6, math.ceil(-math.log10(tolerance / 4)))
    pts = []
    for i in range(n):
        x = Fraction(i, n)
        y = Fraction(round(f(float(x)) * den), den)
        pts.append((x, y))
    return PL.from_points(pts, simplify=False)


def compose(f, g, tolerance=None):
    """The lift ``f o g``.

    Translations and PL maps compose exactly; Mobius lifts of equal cover
    degree compose in the universal cover (with a certified integer carry).
    Mixing a Mobius lift with a PL map, or Mobius lifts of different cover
    degree, needs ``tolerance``: the Mobius factors are then replaced by
    certified PL approximations.
    """
    if isinstance(f, Translation) and isinstance(g, Translation):
        return Translation(f.t + g.t)
    if isinstance(f, MobiusLift) or isinstance(g, MobiusLift):
        k = f.k if isinstance(f, MobiusLift) else g.k
        tol = f.tol if isinstance(f, MobiusLift) else g.tol
        try:
            fm, gm = to_mobius(f, k, tol), to_mobius(g, k, tol)
        except (TypeError, ValueError):
            if tolerance is None:
                raise ValueError(
                    "exact composition of %s with %s is impossible; pass a tolerance"
                    % (type(f).__name__, type(g).__name__)
                )
            return compose(to_pl(f, tolerance / 2), to_pl(g, tolerance / 2))
        return MobiusLift.from_cover(_psl2.cover_mul(fm.cover, gm.cover), k, tol)
    if isinstance(f, Translation):
        return PL([(x, y + f.t) for x, y in zip(g.xs, g.ys)])
    if isinstance(g, Translation):
        return PL.from_points(((x - g.t, y) for x, y in zip(f.xs, f.ys)), simplify=False)
    return _compose_pl(f, g)


def _compose_pl(f, g):
    ginv = invert(g)
    cand = set(g.xs)
    for x in f.xs:
        u = ginv(x)
        cand.add(u - _floor(u))
    pts = [(x, f(g(x))) for x in sorted(cand)]
    return PL(_drop_collinear(pts))


def compose_all(maps, tolerance=None):
    """``maps[0] o maps[1] o ... o maps[-1]``."""
    result = None
    for h in reversed(maps):
        result = h if result is None else compose(h, result, tolerance)
    return identity() if result is None else result


def power(f, n, tolerance=None):
    if n < 0:
        return power(invert(f), -n, tolerance)
    if isinstance(f, Translation):
        return Translation(f.t * n)
    if isinstance(f, MobiusLift):
        return MobiusLift.from_cover(_psl2.cover_pow(f.cover, n), f.k, f.tol)
    result = identity()
    base = f
    while n:
        if n & 1:
            result = compose(base, result, tolerance)
        n >>= 1
        if n:
            base = compose(base, base, tolerance)
    return result


def lifted_commutator(a, b, tolerance=None):
    """``a b a^-1 b^-1``; independent of the chosen lifts of a and b."""
    return compose_all([a, b, invert(a), invert(b)], tolerance)


def conjugate(h, f, tolerance=None):
    """``h f h^-1``."""
    return compose_all([h, f, invert(h)], tolerance)


def sample_points(n=64, offset=Fraction(1, 7)):
    """``n`` rational sample points in one period."""
    return [Fraction(i, n) + offset / n for i in range(n)]


def max_deviation(f, g, points=None):
    """Largest |f(x) - g(x)| over sample points (float)."""
    if points is None:
        points = sample_points()
    return max(abs(float(f(x)) - float(g(x))) for x in points)


def displacement(f, x):
    return f(x) - x


def as_integer_translation(f, tolerance=1e-9, points=None):
    """Return n if ``f`` is (within tolerance) ``x -> x + n``, else None.

    Exact for PL and Translation (every breakpoint must be displaced by the
    same integer); Mobius lifts are checked on 64 sample points.
    """
    if isinstance(f, Translation):
        return int(f.t) if f.t.denominator == 1 else None
    if isinstance(f, PL):
        shifts = {y - x for x, y in zip(f.xs, f.ys)}
        if len(shifts) == 1:
            s = shifts.pop()
            if s.denominator == 1:
                return int(s)
        return None
    residual, n = integer_translation_residual(f, points)
    return n if residual <= tolerance else None


def integer_translation_residual(f, points=None):
    """(max residual, nearest integer) for ``f(x) - x`` over sample points."""
    if points is None:
        points = [float(p) for p in sample_points()]
    disp = [f(float(x)) - float(x) for x in points]
    n = round(sum(disp) / len(disp))
    return max(abs(d - n) for d in disp), n


# -- JSON ------------------------------------------------------------------

def _frac_str(x):
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def to_json(f):
    if isinstance(f, Translation):
        return {"backend": "translation", "t": _frac_str(f.t)}
    if isinstance(f, PL):
        return {
            "backend": "pl",
            "breakpoints": [[_frac_str(x), _frac_str(y)] for x, y in zip(f.xs, f.ys)],
        }
    if isinstance(f, MobiusLift):
        return {"backend": "mobius", "matrix": list(f.matrix), "k": f.k, "branch": f.branch}
    raise TypeError("not a lifted homeomorphism: %r" % (f,))


def from_json(obj):
    backend = obj.get("backend")
    if backend == "translation":
        return Translation(Fraction(obj["t"]))
    if backend == "pl":
        return PL([(Fraction(x), Fraction(y)) for x, y in obj["breakpoints"]])
    if backend == "mobius":
        return MobiusLift(tuple(obj["matrix"]), int(obj.get("k", 1)), int(obj.get("branch", 0)),
                          float(obj.get("tol", DEFAULT_TOL)))
    raise ValueError("unknown backend %r" % (backend,))
