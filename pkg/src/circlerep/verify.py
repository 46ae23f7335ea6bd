"""Reproducible checks of the worked examples and property suites.

Each check returns a :class:`CheckResult`; ``run_checks`` runs a selection
in a fixed order.  The CLI ``verify-paper`` command and the acceptance
tests both go through here.
"""

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cw import (
    OrbitConfig,
    alternating_pairs,
    cw_pair_sup,
    double_point_config,
    doubled_alternating_pairs,
    lexicographic_config,
    max_pair_bound,
    realize,
    word_product,
    word_translation_bound,
)
from .euclid import euclid_reduce
from .maps import Translation, compose, lifted_commutator
from .rotation import rot_circle, rott_compare
from .sampling import random_config, random_crossed_pair, random_pl, random_pl_with_orbit
from .semiconj import fingerprint, same_class_candidate, tau
from .surface import all_lifts, euler, extend_by_rotations, fuchsian_rep, lift_rep, relator_translation


@dataclass
class CheckResult:
    key: str
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    limit: float = None
    data: dict = field(default_factory=dict)

    @property
    def in_time(self):
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self):
        return self.passed and self.in_time

    def line(self, timing=False):
        status = "PASS" if self.ok else "FAIL"
        out = "%s  %-22s %s" % (status, self.key, self.detail)
        if timing:
            out += "  (%.2fs, limit %gs)" % (self.seconds, self.limit)
        return out

    def to_json(self, timing=False):
        out = {"key": self.key, "title": self.title, "pass": self.ok, "detail": self.detail}
        if timing:
            out["seconds"] = round(self.seconds, 3)
            out["limit"] = self.limit
        return out


# -- the checks ---------------------------------------------------------------

EXPECTED_TRACE = ((1, 0), (3, 1), (2, 3), (1, 5), (3, 6), (2, 8), (1, 10))


def check_three_label(seed=0):
    config = lexicographic_config(3, 2, Fraction(1, 2))
    bound, cert = word_translation_bound(config, "c1 c2 c3")
    ok = bound == Fraction(5, 2) and cert.replay(config, "c1 c2 c3")
    ok = ok and cert.trace == EXPECTED_TRACE
    return ok, "bound %s, orbit %s" % (bound, " ".join("x%d^%d" % p for p in cert.trace))


def check_lexicographic_family(seed=0):
    bad = []
    for n in range(2, 6):
        for k in range(2, 6):
            bound, cert = word_translation_bound(lexicographic_config(n, k), list(range(1, n + 1)))
            if bound != Fraction(2 * n - 1, k) or not cert.replay(lexicographic_config(n, k),
                                                                 list(range(1, n + 1))):
                bad.append((n, k, bound))
    return not bad, "16 cases, bound (2n-1)/k" + ("; failures %s" % bad if bad else "")


def check_double_points(seed=0):
    values = {}
    ok = True
    for n in range(2, 6):
        for k in range(2, 6):
            if math.gcd(2 * n - 1, k) != 1:
                continue
            config = double_point_config(n, k)
            bound, cert = word_translation_bound(config, list(range(1, n + 1)))
            ok = ok and bound < Fraction(2 * n - 1, k) and cert.replay(config, list(range(1, n + 1)))
            values["%d,%d" % (n, k)] = str(bound)
    detail = "strict drop on %d cases: %s" % (
        len(values), ", ".join("(%s)->%s" % kv for kv in values.items()))
    return ok, detail, {"values": values}


def check_pair_supremum(seed=0):
    fracs = sorted({Fraction(p, q) for q in range(1, 7) for p in range(q)})
    bad = [(r, s) for r in fracs for s in fracs if max_pair_bound(r, s) != cw_pair_sup(r, s, 36)]
    return not bad, "%d pairs (r, s), denominators <= 6" % (len(fracs) ** 2) + (
        "; mismatches %s" % bad[:5] if bad else "")


def check_alternating_pairs(seed=0):
    bad = []
    for k in range(2, 7):
        for builder in (alternating_pairs, doubled_alternating_pairs):
            if word_translation_bound(builder(k), "c1 c2")[0] != Fraction(1, k):
                bad.append((builder.__name__, k))
    single = OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2])
    if word_translation_bound(single, "c1 c2")[0] != 1:
        bad.append(("singleton", 1))
    return not bad, "k = 2..6 give 1/k, singletons give 1" + ("; failures %s" % bad if bad else "")


def check_realization(seed=0, count=20):
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        config = random_config(rng, rng.randint(1, 4), 4)
        word = config.labels
        bound, _ = word_translation_bound(config, word)
        maps = realize(config)
        if rott_compare(word_product(maps, word), bound) != 0:
            bad.append(config)
    return not bad, "%d random configurations attain their bound" % count + (
        "; %d failures" % len(bad) if bad else "")


def check_commutator_bound(seed=0, count=1000):
    rng = random.Random(seed)
    violations = 0
    for _ in range(count):
        q = rng.randint(1, 5)
        p = rng.randrange(q)
        config = OrbitConfig.from_sequence({1: Fraction(p, q)}, [1] * q)
        a = random_pl_with_orbit(rng, config, 1, extra=rng.randint(0, 3))
        b = random_pl(rng, rng.randint(2, 4))
        c = lifted_commutator(a, b)
        bound = Fraction(1, q)
        if rott_compare(c, bound) > 0 or rott_compare(c, -bound) < 0:
            violations += 1
    return violations == 0, "%d random pairs, %d violations" % (count, violations)


def check_euler(seed=0):
    rows = []
    ok = True
    for g in (2, 3):
        rep = fuchsian_rep(g)
        n, residual = relator_translation(rep)
        ok = ok and n == 2 * g - 2 and residual < 1e-6
        rows.append("g=%d: %d (residual %.1e)" % (g, n, residual))
        for k in range(2, 2 * g - 1):
            if (2 * g - 2) % k:
                continue
            lifts = all_lifts(rep, k)
            good = all(euler(lift) == (2 * g - 2) // k for _, lift in lifts)
            ok = ok and good
            rows.append("g=%d k=%d: %d lifts" % (g, k, len(lifts)))
    return ok, "; ".join(rows)


def check_lift_fingerprints(seed=0):
    fps = [fingerprint(lift, 1) for _, lift in all_lifts(fuchsian_rep(2), 2)]
    vectors = {tuple(r.value for r in fp.generator_rots) for fp in fps}
    entries_ok = all(v in (0, Fraction(1, 2)) for vec in vectors for v in vec)
    distinct = sum(same_class_candidate(f1, f2).distinct
                   for i, f1 in enumerate(fps) for f2 in fps[i + 1:])
    ok = len(vectors) == 16 and entries_ok and distinct == 120
    return ok, "%d rotation vectors, %d/120 pairs DISTINCT" % (len(vectors), distinct)


def check_euclid(seed=0, count=100):
    rng = random.Random(seed)
    worst = 0.0
    longest = 0
    failures = []
    for _ in range(count):
        k = rng.choice((2, 3, 4))
        a, b = random_crossed_pair(rng, k)
        try:
            u, v, trace = euclid_reduce(a, b)
        except ArithmeticError as exc:
            failures.append(str(exc))
            continue
        worst = max(worst, trace.residual)
        longest = max(longest, len(u) + len(v))
    detail = "%d crossed pairs, max gap %.1e, longest |u|+|v| = %d" % (count, worst, longest)
    if failures:
        detail += "; %d failures, first: %s" % (len(failures), failures[0])
    return not failures, detail


def check_extension(seed=0, count=20):
    rng = random.Random(seed)
    base = fuchsian_rep(2)
    ok = True
    for i in range(count):
        k = rng.choice((1, 2))
        rep = lift_rep(base, k, [rng.randrange(k) for _ in range(4)])
        alpha = Fraction(rng.randrange(100), 100)
        beta = Fraction(rng.randrange(100), 100)
        ok = ok and euler(extend_by_rotations(rep, alpha, beta)) == euler(rep)
    rep = lift_rep(base, 2, [0, 1, 1, 0])
    beta = Fraction(1, 7919)
    ext = extend_by_rotations(rep, Fraction(1, 3), beta)
    r = rot_circle(ext.images[-1])
    separated = r.is_exact and (r.value * 2).denominator != 1
    ok = ok and separated and euler(ext) == 1
    return ok, "%d extensions keep euler; rot(b_3) = %s is not a multiple of 1/2" % (count, r)


def tau_one_example():
    maps = realize(OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2]))
    return maps[1], maps[2]


def check_tau(seed=0, count=200):
    rng = random.Random(seed)
    one = Translation(1)
    bad = 0
    for i in range(count):
        if i % 2:
            a, b = random_pl(rng, rng.randint(2, 4)), random_pl(rng, rng.randint(2, 4))
        else:
            a, b = random_crossed_pair(rng, rng.choice((1, 2, 3)))
        t = tau(a, b)
        if t != tau(compose(one, a), b) or t != tau(a, compose(one, b)):
            bad += 1
    a, b = tau_one_example()
    t1 = tau(a, b)
    return bad == 0 and t1 == 1, "%d pairs lift-independent (%d failures); example tau = %s" % (
        count, bad, t1)


CHECKS = [
    ("three-label", "Three-label lexicographic bound", check_three_label, 1),
    ("lexicographic-family", "Lexicographic family (2n-1)/k", check_lexicographic_family, 5),
    ("double-points", "Double points lower the bound", check_double_points, 5),
    ("pair-supremum", "Two-label supremum formula", check_pair_supremum, 60),
    ("alternating-pairs", "Alternating pairs give 1/k", check_alternating_pairs, 2),
    ("realization", "Realization attains the bound", check_realization, 30),
    ("commutator-bound", "Commutator bound 1/q", check_commutator_bound, 60),
    ("euler", "Euler numbers of Fuchsian lifts", check_euler, 10),
    ("lift-fingerprints", "Fingerprints of the 16 lifts", check_lift_fingerprints, 10),
    ("euclid", "Euclidean reduction", check_euclid, 60),
    ("extension", "Extension by rotations", check_extension, 5),
    ("tau", "tau cocycle", check_tau, 10),
]

KEYS = [c[0] for c in CHECKS]


def run_check(key, seed=0):
    for k, title, fn, limit in CHECKS:
        if k == key:
            break
    else:
        raise KeyError("unknown check %r (choose from %s)" % (key, ", ".join(KEYS)))
    start = time.perf_counter()
    try:
        out = fn(seed=seed)
    except Exception as exc:  # a crash is a failed check, not a crashed report
        out = (False, "error: %s: %s" % (type(exc).__name__, exc))
    elapsed = time.perf_counter() - start
    passed, detail = out[0], out[1]
    data = out[2] if len(out) > 2 else {}
    return CheckResult(key, title, bool(passed), detail, elapsed, limit, data)


def run_checks(only=None, seed=0):
    keys = KEYS if not only else list(only)
    return [run_check(k, seed) for k in keys]
