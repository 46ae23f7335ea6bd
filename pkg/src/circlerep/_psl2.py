"""Floating-point helpers for the universal cover of PSL(2,R).

The circle R/Z is identified with RP^1 by sending x to the line spanned by
(cos(pi x), sin(pi x)).  A matrix M acts on lines, and ``base_lift(M, x)``
is the lift of that action closest to the identity: it has a fixed point
whenever M does, and its displacement stays in (-1, 1).  An element of the
universal cover is then a pair (M, tag) acting by ``base_lift(M, x) + tag``.
"""

import math

import mpmath

FINE_TOL = 1e-12


def normalize(m):
    """Scale to determinant 1 and pick the sign with nonnegative trace."""
    a, b, c, d = (float(v) for v in m)
    det = a * d - b * c
    if det <= 0:
        raise ValueError("matrix must have positive determinant, got %r" % det)
    s = 1.0 / math.sqrt(det)
    a, b, c, d = a * s, b * s, c * s, d * s
    if a + d < 0 or (a + d == 0 and c < 0):
        a, b, c, d = -a, -b, -c, -d
    return (a, b, c, d)


def mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return normalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))


def inv(m):
    a, b, c, d = m
    return normalize((d, -b, -c, a))


def trace(m):
    return m[0] + m[3]


def base_lift(m, x):
    a, b, c, d = m
    t = math.pi * x
    u, v = math.cos(t), math.sin(t)
    wu, wv = a * u + b * v, c * u + d * v
    return x + math.atan2(u * wv - v * wu, u * wu + v * wv) / math.pi


def carry(m, n, mn=None):
    """Integer c with base_lift(m) o base_lift(n) = base_lift(mn) + c."""
    if mn is None:
        mn = mul(m, n)
    val = base_lift(m, base_lift(n, 0.0)) - base_lift(mn, 0.0)
    c = round(val)
    if abs(val - c) > 1e-6:
        raise ArithmeticError("lift carry not certified (residual %g)" % abs(val - c))
    return c


def cover_mul(p, q):
    """Product in the universal cover; elements are (matrix, tag)."""
    mn = mul(p[0], q[0])
    return (mn, p[1] + q[1] + carry(p[0], q[0], mn))


def cover_inv(p):
    mi = inv(p[0])
    e = round(base_lift(p[0], base_lift(mi, 0.0)))
    return (mi, -p[1] - e)


def cover_pow(p, n):
    if n < 0:
        return cover_pow(cover_inv(p), -n)
    result = ((1.0, 0.0, 0.0, 1.0), 0)
    base = p
    while n:
        if n & 1:
            result = cover_mul(result, base)
        base = cover_mul(base, base)
        n >>= 1
    return result


def rotation(x):
    """Universal-cover element acting on R by y -> y + x."""
    tag = round(x)
    phi = math.pi * (x - tag)
    return ((math.cos(phi), -math.sin(phi), math.sin(phi), math.cos(phi)), tag)


def fixed_points(m):
    """Fixed points of M on R/Z (empty for elliptic elements)."""
    a, b, c, d = m
    tr = a + d
    disc = tr * tr - 4.0
    if disc < 0:
        return []
    root = math.sqrt(disc)
    pts = []
    for lam in sorted({(tr + root) / 2.0, (tr - root) / 2.0}, reverse=True):
        # eigenvector of [[a-lam, b], [c, d-lam]]
        if abs(b) >= abs(c) and abs(b) > 0:
            u, v = b, lam - a
        elif abs(c) > 0:
            u, v = lam - d, c
        else:
            u, v = (1.0, 0.0) if abs(a - lam) < abs(d - lam) else (0.0, 1.0)
        pts.append((math.atan2(v, u) / math.pi) % 1.0)
    return pts


def attracting_repelling(m):
    """(attracting, repelling) fixed points of a hyperbolic element."""
    pts = fixed_points(m)
    if len(pts) != 2:
        raise ValueError("not a hyperbolic element")
    # eigenvalues are processed largest first: the larger one attracts
    return pts[0], pts[1]


def classify(m, tol):
    """'hyperbolic', 'elliptic' or 'parabolic' (|trace - 2| within tol)."""
    tr = trace(m)
    if tr > 2.0 + tol:
        return "hyperbolic"
    if tr < 2.0 - tol:
        return "elliptic"
    return "parabolic"


def power_mp(m, n, dps=50):
    """M^n computed in extended precision, normalized as by ``normalize``.

    Returns (trace, c) as floats; used to settle near-identity powers.
    """
    with mpmath.workdps(dps):
        mat = mpmath.matrix([[m[0], m[1]], [m[2], m[3]]])
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
        mat = mat / mpmath.sqrt(det)
        p = mat ** n
        tr, c = p[0, 0] + p[1, 1], p[1, 0]
        if tr < 0 or (tr == 0 and c < 0):
            tr, c = -tr, -c
        return float(tr), float(c)


# -- extended precision ------------------------------------------------------
# The same operations on mpmath numbers, for words whose matrices have
# entries far beyond what double precision can multiply reliably.

def mp_normalize(m):
    a, b, c, d = (mpmath.mpf(v) for v in m)
    det = a * d - b * c
    if det <= 0:
        raise ValueError("matrix must have positive determinant")
    s = 1 / mpmath.sqrt(det)
    a, b, c, d = a * s, b * s, c * s, d * s
    if a + d < 0 or (a + d == 0 and c < 0):
        a, b, c, d = -a, -b, -c, -d
    return (a, b, c, d)


def mp_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return mp_normalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))


def mp_base_lift(m, x):
    a, b, c, d = m
    t = mpmath.pi * x
    u, v = mpmath.cos(t), mpmath.sin(t)
    wu, wv = a * u + b * v, c * u + d * v
    return x + mpmath.atan2(u * wv - v * wu, u * wu + v * wv) / mpmath.pi


def _mp_round(x, what):
    n = int(mpmath.nint(x))
    if abs(x - n) > mpmath.mpf(10) ** (-6):
        raise ArithmeticError("%s not certified (residual %s)" % (what, mpmath.nstr(abs(x - n), 3)))
    return n


def mp_cover_mul(p, q):
    mn = mp_mul(p[0], q[0])
    c = mp_base_lift(p[0], mp_base_lift(q[0], 0)) - mp_base_lift(mn, 0)
    return (mn, p[1] + q[1] + _mp_round(c, "lift carry"))


def mp_cover_inv(p):
    a, b, c, d = p[0]
    mi = mp_normalize((d, -b, -c, a))
    e = _mp_round(mp_base_lift(p[0], mp_base_lift(mi, 0)), "inverse carry")
    return (mi, -p[1] - e)


def mp_fixed_points(m):
    """(attracting, repelling) on R/Z for a hyperbolic mpmath matrix, else None."""
    a, b, c, d = m
    tr = a + d
    disc = tr * tr - 4
    if disc <= 0:
        return None
    root = mpmath.sqrt(disc)
    pts = []
    for lam in ((tr + root) / 2, (tr - root) / 2):
        v1 = (b, lam - a)
        v2 = (lam - d, c)
        u, v = v1 if abs(v1[0]) + abs(v1[1]) >= abs(v2[0]) + abs(v2[1]) else v2
        pts.append(mpmath.atan2(v, u) / mpmath.pi % 1)
    return tuple(pts)
