"""Words in a free group, with evaluation on lifted homeomorphisms.

A word is a tuple of ``(generator, exponent)`` syllables.  Generators are
strings such as ``"a"``, ``"b"`` or ``"a1"``.
"""

import re
from dataclasses import dataclass
from itertools import product

from .maps import compose_all, identity, power

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^\(?(-?\d+)\)?)?$")


@dataclass(frozen=True)
class GroupWord:
    syllables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce(self.syllables))

    @classmethod
    def letter(cls, name, exp=1):
        return cls(((name, exp),))

    @classmethod
    def parse(cls, text):
        """Parse ``"a b^2 a^-1"``; the empty string (or ``"1"``) is the identity."""
        syl = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError("cannot parse word token %r" % tok)
            syl.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        return cls(tuple(syl))

    def __mul__(self, other):
        return GroupWord(self.syllables + other.syllables)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return GroupWord(self.syllables * n)

    def inverse(self):
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def is_positive(self):
        return all(e > 0 for _, e in self.syllables)

    def exponent_sum(self, gen):
        return sum(e for g, e in self.syllables if g == gen)

    def letters(self):
        """Expanded letters as (generator, +1/-1)."""
        out = []
        for g, e in self.syllables:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def evaluate(self, assignment, tolerance=None):
        """Product of the assigned homeomorphisms, leftmost factor outermost."""
        factors = []
        for g, e in self.syllables:
            h = assignment[g]
            factors.append(h if e == 1 else power(h, e, tolerance))
        if not factors:
            return identity()
        return compose_all(factors, tolerance)

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else "%s^%d" % (g, e) for g, e in self.syllables)

    def spelled(self):
        """Letter by letter, e.g. ``"b a a"``; inverses are written ``a^-1``."""
        if not self.syllables:
            return "1"
        return " ".join(g if e > 0 else "%s^-1" % g for g, e in self.letters())

    def __repr__(self):
        return "GroupWord(%r)" % str(self)


def _reduce(syllables):
    out = []
    for g, e in syllables:
        e = int(e)
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e2 = out[-1][1] + e
            out.pop()
            if e2:
                out.append((g, e2))
        else:
            out.append((g, e))
    return tuple(out)


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def surface_generators(genus):
    names = []
    for i in range(1, genus + 1):
        names += ["a%d" % i, "b%d" % i]
    return names


def reduced_words(generators, max_length):
    """All freely reduced nonempty words of length <= max_length, shortest first."""
    letters = [(g, 1) for g in generators] + [(g, -1) for g in generators]
    words = []
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for g, e in letters:
                if w and w[-1] == (g, -e):
                    continue
                nxt.append(w + ((g, e),))
        words.extend(nxt)
        frontier = nxt
    return [GroupWord(w) for w in words]


def positive_words(generators, max_length):
    out = []
    for n in range(1, max_length + 1):
        for letters in product(generators, repeat=n):
            out.append(GroupWord(tuple((g, 1) for g in letters)))
    return out
