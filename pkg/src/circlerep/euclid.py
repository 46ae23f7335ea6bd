"""Commutator-preserving rewriting that kills the rotation number of a generator.

Given a crossed pair (a, b) in PSL^(k) with rot(a) = m/k and rot(b) = n/k,
run the Euclidean algorithm on (m, n) and mirror each division step by one
of the rewrites

    (f, g) -> (f, g f^q)      or      (f, g) -> (f g^p, g),

both of which preserve the commutator [f, g] and crossedness.  Exponents
are taken positive modulo k so that all words stay positive.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import _psl2

from .maps import (
    MobiusLift,
    PL,
    Translation,
    as_integer_translation,
    compose,
    evaluate,
    invert,
    lifted_commutator,
    sample_points,
)
from .rotation import rot_circle
from .surface import is_crossed_pair, linking_sign
from .words import GroupWord, commutator

A = GroupWord.letter("a")
B = GroupWord.letter("b")


class ReductionError(ArithmeticError):
    pass


def positive_residue(x, k):
    """Least positive integer congruent to x mod k."""
    r = x % k
    return r if r else k


def positive_word_rot(m, n, k, exponents):
    """Predicted rot of a^al1 b^be1 ... a^als b^bes for a crossed pair.

    With rot(a) = m/k and rot(b) = n/k the answer is
    (m * sum(al) + n * sum(be)) / k mod 1.
    """
    exponents = list(exponents)
    if any(e < 0 for e in exponents):
        raise ValueError("positive words only")
    if len(exponents) % 2:
        raise ValueError("exponents come in (alpha, beta) pairs")
    total = m * sum(exponents[0::2]) + n * sum(exponents[1::2])
    return Fraction(total, k) % 1


def _max_gap(f, g, points):
    return max(abs(float(evaluate(f, x)) - float(evaluate(g, x))) for x in points)


def commutator_identity_check(f, g, n, tol=1e-9):
    """Check [f, g] = [f, g f^n] = [f g^n, g] pointwise."""
    fw = {"a": f, "b": g}
    base = lifted_commutator(f, g)
    others = [
        commutator(A, B * A ** n).evaluate(fw),
        commutator(A * B ** n, B).evaluate(fw),
    ]
    if all(isinstance(h, (PL, Translation)) for h in [base] + others):
        return all(as_integer_translation(compose(h, invert(base))) == 0 for h in others)
    pts = [float(x) for x in sample_points()]
    return all(_max_gap(h, base, pts) <= tol for h in others)


@dataclass
class RewriteTrace:
    k: int
    m: int
    n: int
    steps: list = field(default_factory=list)
    swapped: bool = False
    u: GroupWord = A
    v: GroupWord = B
    residual: float = 0.0

    def pairs(self):
        """All pairs (f_i, g_i) visited, starting from (a, b)."""
        out = [(A, B)]
        for s in self.steps:
            out.append((s["f"], s["g"]))
        if self.swapped:
            out.append((self.u, self.v))
        return out

    def to_json(self):
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "steps": [
                {key: (val.spelled() if isinstance(val, GroupWord) else val) for key, val in s.items()}
                for s in self.steps
            ],
            "swapped": self.swapped,
            "u": self.u.spelled(),
            "v": self.v.spelled(),
            "residual": self.residual,
        }


def euclid_words(m, n, k):
    """The integer part of the reduction: words u, v in a, b and the trace."""
    m, n = m % k, n % k
    trace = RewriteTrace(k, m, n)
    f, g = A, B
    mi, ni = m, n
    while mi != 0 and ni != 0:
        q = ni // mi
        qbar = positive_residue(-q, k)
        ni = ni - q * mi
        g = g * f ** qbar
        trace.steps.append({"kind": "g", "quotient": q, "exponent": qbar,
                            "m": mi, "n": ni, "f": f, "g": g})
        if ni == 0:
            break
        p = mi // ni
        pbar = positive_residue(-p, k)
        mi = mi - p * ni
        f = f * g ** pbar
        trace.steps.append({"kind": "f", "quotient": p, "exponent": pbar,
                            "m": mi, "n": ni, "f": f, "g": g})
    if mi != 0:
        # rot(g) = 0 but rot(f) != 0: trade places while keeping [f, g]
        f, g = f * (g * f) ** (k - 1), g * f
        trace.swapped = True
    trace.u, trace.v = f, g
    return f, g, trace


def _rot_multiple(f, k):
    r = rot_circle(f)
    if not r.is_exact:
        raise ReductionError("rotation number is not certified exactly")
    m = r.value * k
    if m.denominator != 1:
        raise ReductionError("rotation number %s is not a multiple of 1/%d" % (r.value, k))
    return int(m)


class _Evaluator:
    """Words in a, b evaluated as universal cover elements in extended precision.

    Long words for k >= 3 have huge matrix entries and fixed points that
    nearly collide, so float64 is not enough to check the postconditions.
    """

    def __init__(self, a, b, length, dps=None):
        if dps is None:
            growth = max(0.5 * math.log10(sum(x * x for x in f.matrix)) for f in (a, b))
            dps = 30 + int(2 * growth * length)
        self.dps = dps
        self.k = a.k
        self.ab = (a, b)
        with mpmath.workdps(self.dps):
            self.gens = {name: (_psl2.mp_normalize(f.matrix), f.branch)
                         for name, f in (("a", a), ("b", b))}
            self.invs = {name: _psl2.mp_cover_inv(e) for name, e in self.gens.items()}
        self.cache = {}
        self._check = None

    def __call__(self, word):
        key = str(word)
        if key not in self.cache:
            with mpmath.workdps(self.dps):
                out = ((mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1)), 0)
                for g, e in word.letters():
                    out = _psl2.mp_cover_mul(out, self.gens[g] if e > 0 else self.invs[g])
                self.cache[key] = out
        return self.cache[key]

    def _fixed(self, word):
        with mpmath.workdps(self.dps):
            return _psl2.mp_fixed_points(self(word)[0])

    def crossing(self, fw, gw):
        """Crossing sign of the words fw, gw.

        The fixed points are recomputed at twice the precision; their
        disagreement bounds the error, and points closer than a hundred
        times that bound count as coincident.  Coincidences are retried at
        higher precision a few times before being accepted.
        """
        ev = self
        for _ in range(4):
            sign = ev._crossing(fw, gw)
            if sign:
                return sign
            # the points may just be closer than this precision resolves
            ev = ev._check
        return 0

    def _crossing(self, fw, gw):
        if self._check is None:
            self._check = _Evaluator(*self.ab, None, 2 * self.dps)
        lo = (self._fixed(fw), self._fixed(gw))
        hi = (self._check._fixed(fw), self._check._fixed(gw))
        if None in lo or None in hi:
            return 0
        with mpmath.workdps(self._check.dps):
            err = max(abs(x - y) for p, q in zip(lo, hi) for x, y in zip(p, q))
            tol = max(100 * err, mpmath.mpf(10) ** (-self.dps + 5))
            return linking_sign(hi[0][0], hi[0][1], hi[1][0], hi[1][1], tol)

    def commutator(self, p, q):
        with mpmath.workdps(self.dps):
            mul, inv = _psl2.mp_cover_mul, _psl2.mp_cover_inv
            return mul(mul(p, q), mul(inv(p), inv(q)))

    def rot_multiple(self, p):
        """k * rot of the circle map of p, as an integer mod k."""
        with mpmath.workdps(self.dps):
            tr = p[0][0] + p[0][3]
            if tr > 2 + mpmath.mpf(10) ** (-self.dps // 3):
                return p[1] % self.k
        f = MobiusLift(tuple(float(x) for x in p[0]), self.k, p[1])
        return _rot_multiple(f, self.k) % self.k

    def gap(self, p, q, points):
        """max |p(x) - q(x)| over the sample points, on the k-fold cover."""
        k = self.k
        with mpmath.workdps(self.dps):
            worst = mpmath.mpf(0)
            for x in points:
                y = mpmath.mpf(x.numerator) / x.denominator * k
                d = (_psl2.mp_base_lift(p[0], y) + p[1]) - (_psl2.mp_base_lift(q[0], y) + q[1])
                worst = max(worst, abs(d) / k)
            return float(worst)


def euclid_reduce(a, b, k=None, tol=1e-9, check_trace=True):
    """Words (u, v) with [u, v] = [a, b], rot(u) = 0 and (u, v) crossed.

    Every postcondition is verified on the evaluated words, in extended
    precision, before returning.
    """
    if not (isinstance(a, MobiusLift) and isinstance(b, MobiusLift)):
        raise TypeError("euclid_reduce needs Mobius lifts")
    if a.k != b.k:
        raise ValueError("cover degrees differ")
    if k is None:
        k = a.k
    elif k != a.k:
        raise ValueError("k = %d does not match the cover degree %d" % (k, a.k))
    if not is_crossed_pair(a, b):
        raise ReductionError("input is not a crossed pair")
    m, n = _rot_multiple(a, k), _rot_multiple(b, k)
    u, v, trace = euclid_words(m, n, k)
    pairs = trace.pairs()
    # [u, v] cancels entries of size |u|^2 |v|^2, so budget for twice the length
    ev = _Evaluator(a, b, 2 * (len(u) + len(v)) + max(len(w) for pair in pairs for w in pair))
    if check_trace:
        for idx, (fw, gw) in enumerate(pairs):
            fe, ge = ev(fw), ev(gw)
            if ev.crossing(fw, gw) != -1:
                raise ReductionError("pair %d (%s, %s) is not crossed" % (idx, fw, gw))
            if idx and idx <= len(trace.steps):
                s = trace.steps[idx - 1]
                if ev.rot_multiple(fe) != s["m"] or ev.rot_multiple(ge) != s["n"]:
                    raise ReductionError("rotation numbers along the trace disagree at step %d" % idx)
    ue, ve = ev(u), ev(v)
    base = ev.commutator(ev(A), ev(B))
    gap = ev.gap(ev.commutator(ue, ve), base, sample_points())
    if gap > tol:
        raise ReductionError("[u, v] differs from [a, b] by %.3g" % gap)
    if ev.rot_multiple(ue) != 0:
        raise ReductionError("rot(u) is not 0")
    if ev.crossing(u, v) != -1:
        raise ReductionError("(u, v) is not a crossed pair")
    trace.residual = gap
    return u, v, trace
