"""Representations of closed surface groups into Homeo+(S^1).

A :class:`SurfaceRep` assigns a lifted homeomorphism to each standard
generator a_1, b_1, ..., a_g, b_g.  The product of lifted commutators is a
lift of the identity, i.e. an integer translation, and that integer is the
Euler number.
"""

import math
from fractions import Fraction

from . import _psl2
from .maps import (
    PL,
    MobiusLift,
    Translation,
    as_fraction,
    as_integer_translation,
    compose_all,
    evaluate,
    from_json,
    integer_translation_residual,
    lifted_commutator,
    to_json,
)
from .words import surface_generators

EULER_RESIDUAL = 0.1


class RelatorError(ValueError):
    """The images do not satisfy the surface relation."""


class SurfaceRep:
    def __init__(self, genus, images, check=True, tolerance=None):
        if genus < 1:
            raise ValueError("genus must be positive")
        images = list(images)
        if len(images) != 2 * genus:
            raise ValueError("need %d generator images, got %d" % (2 * genus, len(images)))
        self.genus = genus
        self.images = images
        self.tolerance = tolerance
        if check:
            relator_translation(self)

    @property
    def generators(self):
        return surface_generators(self.genus)

    def assignment(self):
        return dict(zip(self.generators, self.images))

    def pair(self, i):
        """(rho(a_i), rho(b_i)) for 1 <= i <= genus."""
        return self.images[2 * i - 2], self.images[2 * i - 1]

    def to_json(self):
        return {"genus": self.genus, "images": [to_json(f) for f in self.images]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["genus"]), [from_json(f) for f in obj["images"]])

    def __repr__(self):
        return "SurfaceRep(genus=%d)" % self.genus


def commutator_product(rep, count=None):
    """[a_1, b_1] ... [a_count, b_count] as a lifted homeomorphism."""
    count = rep.genus if count is None else count
    comms = [lifted_commutator(*rep.pair(i), tolerance=rep.tolerance) for i in range(1, count + 1)]
    return compose_all(comms, rep.tolerance)


def relator_translation(rep):
    """(n, residual) with the relator product equal to x -> x + n.

    PL and Translation products are checked exactly (residual 0); Mobius
    products are sampled at 64 points and must stay within 0.1 of n.
    """
    prod = commutator_product(rep)
    if isinstance(prod, (PL, Translation)):
        n = as_integer_translation(prod)
        if n is None:
            raise RelatorError("product of commutators is not an integer translation")
        return n, 0.0
    residual, n = integer_translation_residual(prod)
    if residual >= EULER_RESIDUAL:
        raise RelatorError("relator residual %.3g is too large to certify" % residual)
    return n, residual


def euler(rep):
    return relator_translation(rep)[0]


def milnor_wood_check(rep):
    return abs(euler(rep)) <= 2 * rep.genus - 2


def trivial_rep(genus):
    return SurfaceRep(genus, [Translation(0)] * (2 * genus))


def rotation_rep(angles):
    """Every generator acts by a rigid rotation; ``angles`` has length 2g."""
    angles = list(angles)
    return SurfaceRep(len(angles) // 2, [Translation(as_fraction(t)) for t in angles])


# -- Fuchsian construction ------------------------------------------------

def _rot_about_i(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return (c, s, -s, c)


def _translate(dist):
    return (math.exp(dist / 2), 0.0, 0.0, math.exp(-dist / 2))


def _prod(*ms):
    out = (1.0, 0.0, 0.0, 1.0)
    for m in ms:
        out = _psl2.mul(out, m)
    return out


def _flip(m):
    # conjugation by z -> -conj(z) reverses orientation of the circle
    return (m[0], -m[1], -m[2], m[3])


def fuchsian_matrices(genus):
    """Side pairings of the regular 4g-gon with all angles pi/(2g).

    The polygon is centred at i with inradius r, cosh r = cot(pi/4g).  The
    generator a_i pairs side 4i+2 with side 4i and b_i pairs side 4i+1 with
    side 4i+3 (sides numbered counterclockwise from 0).  Orientation is
    chosen so that the Euler number is +(2g - 2).
    """
    if genus < 2:
        raise ValueError("genus must be at least 2")
    n = 4 * genus
    r = math.acosh(1.0 / math.tan(math.pi / n))
    theta = [2 * math.pi * j / n for j in range(n)]

    def pairing(src, dst):
        return _prod(_rot_about_i(theta[dst]), _translate(2 * r),
                     _rot_about_i(math.pi), _rot_about_i(-theta[src]))

    mats = []
    for i in range(genus):
        mats.append(_flip(pairing(4 * i + 2, 4 * i)))
        mats.append(_flip(pairing(4 * i + 1, 4 * i + 3)))
    return mats


def fuchsian_rep(genus, tol=1e-9):
    return SurfaceRep(genus, [MobiusLift(m, 1, 0, tol) for m in fuchsian_matrices(genus)])


def lift_rep(rep, k, branches=None):
    """Lift a PSL(2,R) representation to the k-fold cover with chosen branches."""
    if branches is None:
        branches = [0] * (2 * rep.genus)
    branches = list(branches)
    if len(branches) != 2 * rep.genus:
        raise ValueError("need %d branches" % (2 * rep.genus))
    if k < 1:
        raise ValueError("cover degree must be positive")
    e = euler(rep)
    if e % k:
        raise ValueError("k = %d does not divide the Euler number %d" % (k, e))
    images = []
    for f, m in zip(rep.images, branches):
        if not isinstance(f, MobiusLift) or f.k != 1:
            raise TypeError("lift_rep needs Mobius images with cover degree 1")
        if not 0 <= m < k:
            raise ValueError("branch %d outside [0, %d)" % (m, k))
        images.append(MobiusLift(f.matrix, k, m, f.tol))
    return SurfaceRep(rep.genus, images)


def all_lifts(rep, k):
    """All k^(2g) branch lifts, in lexicographic order of branch vectors."""
    from itertools import product

    return [(br, lift_rep(rep, k, br)) for br in product(range(k), repeat=2 * rep.genus)]


def extend_by_rotations(rep, alpha, beta):
    """Genus g+1 representation with a_(g+1), b_(g+1) acting by rotations."""
    alpha, beta = _exact(alpha), _exact(beta)
    return SurfaceRep(rep.genus + 1, rep.images + [Translation(alpha), Translation(beta)],
                      tolerance=rep.tolerance)


def _exact(x):
    if isinstance(x, float):
        return Fraction(repr(x))
    return as_fraction(x)


# -- predicates -------------------------------------------------------------

def _base_matrix(f):
    if not isinstance(f, MobiusLift):
        raise TypeError("crossed pairs are defined for Mobius lifts only")
    return f.matrix


def _cyclic_order(points):
    """Labels of ``points`` (label, x) sorted by x mod 1."""
    return [lab for lab, x in sorted(points, key=lambda p: p[1] % 1)]


def crossing_sign(f, g, tol=1e-12):
    """+1 or -1 for linked hyperbolic axes, 0 otherwise.

    Reading counterclockwise from the attracting point of f, the order
    f+, g-, f-, g+ has sign -1 (this is the sign of the standard pairs in
    :func:`fuchsian_rep`); f+, g+, f-, g- has sign +1.
    """
    m1, m2 = _base_matrix(f), _base_matrix(g)
    if f.k != g.k:
        raise ValueError("cover degrees differ")
    if _psl2.classify(m1, tol) != "hyperbolic" or _psl2.classify(m2, tol) != "hyperbolic":
        return 0
    fa, fr = _psl2.attracting_repelling(m1)
    ga, gr = _psl2.attracting_repelling(m2)
    return linking_sign(fa, fr, ga, gr, tol)


def linking_sign(fa, fr, ga, gr, tol=1e-12):
    """Sign of the crossing given attracting/repelling points of f and g."""
    pts = [("f+", fa), ("f-", fr), ("g+", ga), ("g-", gr)]
    for i, (_, x) in enumerate(pts):
        for _, y in pts[i + 1:]:
            d = abs(x - y) % 1
            if min(d, 1 - d) < tol:
                return 0
    order = _cyclic_order(pts)
    i = order.index("f+")
    order = order[i:] + order[:i]
    if order == ["f+", "g-", "f-", "g+"]:
        return -1
    if order == ["f+", "g+", "f-", "g-"]:
        return 1
    return 0


def is_crossed_pair(f, g, tol=1e-12):
    return crossing_sign(f, g, tol) == -1


def _close(a, b, tol):
    if isinstance(a, float) or isinstance(b, float):
        return abs(float(a) - float(b)) <= tol
    return a == b


def is_good_fixed_set(f, b, points, k, n, tol=1e-9):
    """Check that ``points`` is a good fixed set for f with respect to b.

    (i) there are 2k points, all fixed by the circle map of f;
    (ii) X2 = b(X1) alternates with X1 in doubled pairs x1 x1 x2 x2;
    (iii) with that enumeration b(x_1^(2j)) = x_2^(2j+2n-1) and
          b(x_1^(2j+1)) = x_2^(2j+2n).
    """
    pts = sorted((p - math.floor(p) for p in (_coerce(x) for x in points)), key=float)
    if len(pts) != 2 * k:
        return False
    for x in pts:
        d = evaluate(f, x) - x
        if not _close(d, round(d), tol):
            return False
    images = [evaluate(b, x) for x in pts]
    x2 = sorted((y - math.floor(y) for y in images), key=float)
    merged = sorted([(float(x), 1, x) for x in pts] + [(float(y), 2, y) for y in x2])
    for a_, b_ in zip(merged, merged[1:]):
        if abs(a_[0] - b_[0]) <= tol:
            return False
    labels = [lab for _, lab, _ in merged]
    m = len(labels)
    start = None
    for s in range(m):
        rot = labels[s:] + labels[:s]
        if rot == [1, 1, 2, 2] * k:
            start = s
            break
    if start is None:
        return False
    # enumerate lifts starting at the chosen x_1^0
    seq = merged[start:] + [(v + 1, lab, x + 1) for v, lab, x in merged[:start]]
    x1 = [x for _, lab, x in seq if lab == 1]
    x2l = [x for _, lab, x in seq if lab == 2]

    def lift(lst, j):
        q, r = divmod(j, 2 * k)
        return lst[r] + q

    for j in range(k):
        for off, target in ((0, 2 * n - 1), (1, 2 * n)):
            x = lift(x1, 2 * j + off)
            if not _close(evaluate(b, x), lift(x2l, 2 * j + target), tol):
                return False
    return True


def _coerce(x):
    return x if isinstance(x, float) else as_fraction(x)


def lifted_fixed_points(f):
    """Fixed points on the circle of a Mobius lift with rotation number 0.

    For a degree-k lift of a hyperbolic matrix there are 2k of them.
    """
    if not isinstance(f, MobiusLift):
        raise TypeError("need a Mobius lift")
    pts = []
    for p in _psl2.fixed_points(f.matrix):
        for t in range(f.k):
            x = (p + t) / f.k
            if abs(evaluate(f, x) - x - round(evaluate(f, x) - x)) < 1e-9:
                pts.append(x)
    return sorted(pts)
