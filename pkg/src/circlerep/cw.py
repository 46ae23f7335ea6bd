"""The Calegari-Walker combinatorial system for positive words.

Each label ``i`` comes with a finite set X_i of points on the circle,
invariant under a circle map c_i whose lift moves the lifted set
X~_i = {x_i^j} by a fixed index shift P_i (so rot(c_i) = P_i / N_i where
N_i = |X_i|).  The letter c_i acts on the union of all X~_i by moving
right: it skips P_i points of X~_i, counting the point it starts on (or any
point of X~_i at the same position), and lands on the next one.

Points are addressed as ``(label, j)`` meaning x_label^j, with
x_i^(j + N_i) = x_i^j + 1.  Words are sequences of labels and act with the
rightmost letter first.
"""

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .maps import PL, as_fraction, compose_all, evaluate
from .rotation import rott_compare


class ConfigError(ValueError):
    pass


class OrbitConfig:
    """Labelled points in cyclic order, with a rotation number per label.

    ``labels`` maps label id -> rotation number (a nonnegative rational).
    ``cycle`` lists ``(label, position)`` pairs with positions in [0, 1).
    Points of different labels may share a position ("double points").
    """

    def __init__(self, labels, cycle):
        self.rots = {int(i): as_fraction(r) for i, r in dict(labels).items()}
        entries = [(int(i), as_fraction(p)) for i, p in cycle]
        for i, p in entries:
            if i not in self.rots:
                raise ConfigError("point with unknown label %r" % i)
            if not 0 <= p < 1:
                raise ConfigError("position %s is outside [0, 1)" % p)
        # stable sort keeps the given order among coincident points
        self.entries = sorted(entries, key=lambda e: e[1])
        self.positions = {}
        for i in self.rots:
            pts = [p for lab, p in self.entries if lab == i]
            if not pts:
                raise ConfigError("label %d has no points" % i)
            if len(set(pts)) != len(pts):
                raise ConfigError("label %d repeats a position" % i)
            self.positions[i] = pts
        self.shifts = {}
        for i, r in self.rots.items():
            if r < 0:
                raise ConfigError("rotation numbers must be nonnegative")
            s = r * len(self.positions[i])
            if s.denominator != 1:
                raise ConfigError(
                    "label %d: %d points cannot form an orbit of rotation %s"
                    % (i, len(self.positions[i]), r)
                )
            self.shifts[i] = int(s)

    @property
    def labels(self):
        return sorted(self.rots)

    def count(self, label):
        return len(self.positions[label])

    def position(self, point):
        label, j = point
        n = self.count(label)
        q, r = divmod(j, n)
        return self.positions[label][r] + q

    def has_coincidences(self):
        pos = [p for _, p in self.entries]
        return len(set(pos)) != len(pos)

    def min_gap(self):
        pos = sorted({p for _, p in self.entries})
        gaps = [b - a for a, b in zip(pos, pos[1:])]
        gaps.append(pos[0] + 1 - pos[-1])
        return min(gaps)

    def first_at_or_after(self, label, x):
        """Index j of the leftmost x_label^j with position >= x."""
        x = as_fraction(x)
        q = math.floor(x)
        r = bisect_left(self.positions[label], x - q)
        return q * self.count(label) + r

    def step(self, letter, point):
        return step(self, letter, point)

    def to_json(self):
        return {
            "labels": [{"id": i, "rot": str(self.rots[i])} for i in self.labels],
            "cycle": [{"id": i, "pos": str(p)} for i, p in self.entries],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            labels = {int(d["id"]): Fraction(d["rot"]) for d in obj["labels"]}
            cycle = [(int(d["id"]), Fraction(d["pos"])) for d in obj["cycle"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError("malformed orbit configuration: %s" % exc) from exc
        return cls(labels, cycle)

    @classmethod
    def from_sequence(cls, labels, seq):
        """Equally spaced points; ``seq`` lists labels in cyclic order.

        Inner lists stand for coincident points, e.g. ``[[1, 2], 1, 2]``.
        """
        n = len(seq)
        cycle = []
        for idx, item in enumerate(seq):
            group = item if isinstance(item, (list, tuple)) else [item]
            for lab in group:
                cycle.append((lab, Fraction(idx, n)))
        return cls(labels, cycle)

    def __repr__(self):
        return "OrbitConfig(%r, %r)" % (
            {i: str(r) for i, r in self.rots.items()},
            [(i, str(p)) for i, p in self.entries],
        )


def step(config, letter, point):
    """Action of the letter c_letter on the point (label, j)."""
    if letter not in config.rots:
        raise ConfigError("unknown letter c%r" % (letter,))
    if point[0] not in config.rots:
        raise ConfigError("unknown point label %r" % (point[0],))
    j0 = config.first_at_or_after(letter, config.position(point))
    return (letter, j0 + config.shifts[letter])


def parse_word(word):
    """Accept ``[1, 2, 3]``, ``"c1 c2 c3"`` or ``"c1c2c3"``."""
    if isinstance(word, str):
        tokens = word.replace("c", " ").split()
        letters = [int(t) for t in tokens]
    else:
        letters = [int(t) for t in word]
    if not letters:
        raise ConfigError("empty word")
    return letters


def apply_word(config, word, point, trace=None):
    """w . point, letters applied right to left."""
    for letter in reversed(word):
        point = step(config, letter, point)
        if trace is not None:
            trace.append(point)
    return point


@dataclass(frozen=True)
class PeriodicOrbitCertificate:
    start: tuple
    translation: int
    period: int
    trace: tuple

    @property
    def value(self):
        return Fraction(self.translation, self.period)

    def replay(self, config, word):
        """Recompute the trace from the start point and check it."""
        word = parse_word(word)
        pts = [self.start]
        p = self.start
        for _ in range(self.period):
            p = apply_word(config, word, p, pts)
        if tuple(pts) != self.trace:
            return False
        label, j = self.start
        return p == (label, j + self.translation * config.count(label))


def word_cycles(config, word):
    """All cycles of w acting on points mod period, as (value, start residue, length)."""
    word = parse_word(word)
    s = word[0]
    n = config.count(s)
    image = {}
    for r in range(n):
        image[r] = apply_word(config, word, (s, r))[1]
    seen = {}
    cycles = []
    for r0 in range(n):
        path = []
        r = r0
        while r not in seen:
            seen[r] = r0
            path.append(r)
            r = image[r] % n
        if seen[r] == r0:
            cyc = path[path.index(r):]
            advance = sum(image[x] - x for x in cyc)
            cycles.append((Fraction(advance // n, len(cyc)), min(cyc), len(cyc)))
    return cycles


def word_translation_bound(config, word):
    """Best upper bound l/m for rott of w(c~_1, ..., c~_n), with a certificate."""
    word = parse_word(word)
    cycles = word_cycles(config, word)
    value, r, m = max(cycles, key=lambda c: (c[0], -c[1]))
    s = word[0]
    start = (s, r)
    pts = [start]
    p = start
    for _ in range(m):
        p = apply_word(config, word, p, pts)
    l = (p[1] - r) // config.count(s)
    cert = PeriodicOrbitCertificate(start, l, m, tuple(pts))
    assert cert.value == value
    return value, cert


def cw_pair_sup(r, s, max_denominator):
    """max (p1 + p2 + 1)/q over q <= max_denominator, 0 <= p1/q <= r, 0 <= p2/q <= s."""
    r, s = as_fraction(r), as_fraction(s)
    if r < 0 or s < 0:
        raise ValueError("rotation numbers must be nonnegative")
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    best = None
    for q in range(1, max_denominator + 1):
        v = Fraction(math.floor(r * q) + math.floor(s * q) + 1, q)
        if best is None or v > best:
            best = v
    return best


# -- realization ---------------------------------------------------------

def realize(config, word=None, contraction=None):
    """PL maps d_i with the configured orbits that attain the bound.

    Each d_i sends x_i^j to x_i^(j+P_i) and squeezes (x_i^j + eps, x_i^(j+1)]
    into (x_i^(j+1+P_i) - eps, x_i^(j+1+P_i)].  Returns a dict label -> PL.
    When ``word`` is given the attained value is checked exactly.
    """
    if config.has_coincidences():
        raise ConfigError("cannot realize a configuration with coincident points")
    gap = config.min_gap()
    if contraction is None:
        contraction = gap / 4
    eps = as_fraction(contraction)
    if not 0 < eps < gap / 2:
        raise ConfigError("contraction must lie in (0, %s)" % (gap / 2))
    maps = {}
    for i in config.labels:
        n, p = config.count(i), config.shifts[i]
        pts = []
        for j in range(n):
            x = config.position((i, j))
            pts.append((x, config.position((i, j + p))))
            pts.append((x + eps, config.position((i, j + 1 + p)) - eps))
        maps[i] = PL.from_points(pts)
    if word is not None:
        bound, _ = word_translation_bound(config, word)
        prod = word_product(maps, word)
        if rott_compare(prod, bound) != 0:
            raise ArithmeticError("realized word does not attain %s" % bound)
    return maps


def word_product(homeos, word, tolerance=None):
    """The lift w(d_1, ..., d_n) for a dict label -> homeomorphism."""
    homeos = _as_dict(homeos)
    return compose_all([homeos[i] for i in parse_word(word)], tolerance)


def _as_dict(homeos):
    if isinstance(homeos, dict):
        return homeos
    return {i + 1: h for i, h in enumerate(homeos)}


# -- maximality constraints ----------------------------------------------

def lexicographic_config(n, k, rot=None):
    """x_1^j < x_2^j < ... < x_n^j < x_1^(j+1), k points per label."""
    rot = Fraction(1, k) if rot is None else as_fraction(rot)
    labels = {i: rot for i in range(1, n + 1)}
    return OrbitConfig.from_sequence(labels, [i for _ in range(k) for i in range(1, n + 1)])


def double_point_config(n, k, pairs=((1, 0),)):
    """Lexicographic config where x_i^j = x_(i+1)^j for each (i, j) in ``pairs``."""
    seq = []
    merge = {(i, j) for i, j in pairs}
    for j in range(k):
        i = 1
        while i <= n:
            if (i, j) in merge and i < n:
                seq.append([i, i + 1])
                i += 2
            else:
                seq.append(i)
                i += 1
    return OrbitConfig.from_sequence({i: Fraction(1, k) for i in range(1, n + 1)}, seq)


def alternating_pairs(k):
    """k alternating fixed points of two rotation-0 maps."""
    return OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 2] * k)


def doubled_alternating_pairs(k):
    return OrbitConfig.from_sequence({1: 0, 2: 0}, [1, 1, 2, 2] * k)


def _lexicographic_shape(config):
    labels = config.labels
    n = len(labels)
    if labels != list(range(1, n + 1)):
        raise ConfigError("labels must be 1..n")
    k = config.count(1)
    seq = [i for i, _ in config.entries]
    if config.has_coincidences() or seq != [i for _ in range(k) for i in labels]:
        raise ConfigError("configuration is not lexicographically ordered")
    for i in labels:
        if config.rots[i] != Fraction(1, k):
            raise ConfigError("every label must have rotation 1/%d" % k)
    return n, k


def _lt(a, b):
    """a < b for exact or float values."""
    if isinstance(a, float) or isinstance(b, float):
        return float(a) < float(b)
    return a < b


def _check_orbits(homeos, config, tol=1e-9):
    for i in config.labels:
        f = homeos[i]
        for j in range(config.count(i)):
            x = config.position((i, j))
            want = config.position((i, j + config.shifts[i]))
            got = evaluate(f, x)
            if isinstance(got, float):
                ok = abs(got - float(want)) <= tol
            else:
                ok = got == want
            if not ok:
                raise ConfigError("map %d does not send x_%d^%d to x_%d^%d" % (i, i, j, i, j + 1))


@dataclass
class ConstraintReport:
    rows: list
    coprime: bool = True

    @property
    def all_pass(self):
        return all(r["pass"] for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r["pass"]]


def check_max_constraints(homeos, config, require_coprime=True):
    """Evaluate the necessary conditions for rott(c~_1...c~_n) = (2n-1)/k.

    For every j in one period the conditions are
    c~_1(x_2^j) > x_n^(j+1), c~_i(x_(i+1)^j) > x_(i-1)^(j+2) for 1 < i < n,
    and c~_n(x_1^j) > x_(n-1)^(j+1).

    They are only known to be necessary when 2n-1 and k are coprime; pass
    ``require_coprime=False`` to evaluate them anyway (``report.coprime``
    records which case applies).
    """
    homeos = _as_dict(homeos)
    n, k = _lexicographic_shape(config)
    if n < 2:
        raise ConfigError("need at least two labels")
    coprime = math.gcd(2 * n - 1, k) == 1
    if require_coprime and not coprime:
        raise ConfigError("2n-1 and k must be coprime")
    _check_orbits(homeos, config)
    x = lambda i, j: config.position((i, j))
    rows = []
    for j in range(k):
        checks = [(1, (2, j), (n, j + 1))]
        checks += [(i, (i + 1, j), (i - 1, j + 2)) for i in range(2, n)]
        checks.append((n, (1, j), (n - 1, j + 1)))
        for i, arg, bound in checks:
            lhs = evaluate(homeos[i], x(*arg))
            rhs = x(*bound)
            rows.append({
                "map": i, "j": j, "point": arg, "bound": bound,
                "lhs": lhs, "rhs": rhs, "pass": _lt(rhs, lhs),
            })
    return ConstraintReport(rows, coprime)


def allowed_periodic_intervals(config, label):
    """Open intervals (one period) that must contain every lifted periodic point of c_label."""
    n, k = _lexicographic_shape(config)
    x = lambda i, j: config.position((i, j))
    out = []
    for j in range(k):
        if label == 1:
            out.append((x(n, j - 1), x(2, j)))
        elif label == n:
            out.append((x(n - 1, j - 1), x(1, j)))
        else:
            out.append((x(label - 1, j), x(label + 1, j)))
    return out


def locate_periodic_points(homeos, config, label):
    """Allowed intervals for periodic points of c_label at a maximal product."""
    homeos = _as_dict(homeos)
    n, k = _lexicographic_shape(config)
    _check_orbits(homeos, config)
    target = Fraction(2 * n - 1, k)
    prod = word_product(homeos, list(range(1, n + 1)))
    if rott_compare(prod, target) != 0:
        raise ConfigError("rott of the product is not certified to equal %s" % target)
    return allowed_periodic_intervals(config, label)


def interleaves(config, label, points):
    """True if ``points`` (one period of an orbit of c_label) sit one per allowed gap."""
    intervals = allowed_periodic_intervals(config, label)
    counts = [0] * len(intervals)
    for y in points:
        y = as_fraction(y)
        hit = False
        for idx, (a, b) in enumerate(intervals):
            shift = math.floor(y - a)
            for t in (shift, shift - 1):
                if a < y - t < b:
                    counts[idx] += 1
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return False
    return all(c == 1 for c in counts)


# -- two-label interleavings ------------------------------------------------

def pair_interleavings(r, s):
    """Every cyclic interleaving of one orbit of rotation r with one of rotation s.

    Label 1 has q_r points and label 2 has q_s points, equally spaced; the
    first point is pinned to label 1 to remove rotations of the sequence.
    """
    from itertools import combinations

    r, s = as_fraction(r), as_fraction(s)
    n1, n2 = r.denominator, s.denominator
    total = n1 + n2
    for rest in combinations(range(1, total), n1 - 1):
        ones = {0, *rest}
        seq = [1 if i in ones else 2 for i in range(total)]
        yield OrbitConfig.from_sequence({1: r, 2: s}, seq)


def max_pair_bound(r, s, word=(1, 2)):
    """Largest word bound over :func:`pair_interleavings` of (r, s)."""
    return max(word_translation_bound(c, word)[0] for c in pair_interleavings(r, s))
