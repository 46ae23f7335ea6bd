"""Semi-conjugacy invariants: the tau cocycle and representation fingerprints.

tau(a, b) = rott(a b) - rott(a) - rott(b) does not depend on the chosen
lifts.  Generator rotation numbers together with tau on pairs of short
words give a fingerprint; differing fingerprints prove that two
representations are not semi-conjugate.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .maps import compose
from .rotation import DEFAULT_MAX_DENOMINATOR, RotResult, rot_circle, rott
from .words import reduced_words, surface_generators

DEFAULT_LENGTH = 3


class TauError(ArithmeticError):
    """The rotation data is too coarse to pin down tau."""


def tau(a, b, max_denominator=DEFAULT_MAX_DENOMINATOR, tolerance=None, ab=None):
    """tau(a, b) as a Fraction, or a narrow RotResult interval when some
    translation number is only known to an interval.

    An interval answer is accepted only if its width is below
    1 / (2 max_denominator^2); wider intervals raise :class:`TauError`.
    """
    if ab is None:
        ab = compose(a, b, tolerance)
    res = _resolution(max_denominator)
    return tau_from_rotts(rott(ab, max_denominator, res), rott(a, max_denominator, res),
                          rott(b, max_denominator, res), max_denominator)


def _resolution(max_denominator):
    # three intervals of this width sum to less than 1 / (2 Q^2)
    return Fraction(1, 8 * max_denominator ** 2)


def tau_from_rotts(r_ab, r_a, r_b, max_denominator=DEFAULT_MAX_DENOMINATOR):
    if r_ab.is_exact and r_a.is_exact and r_b.is_exact:
        return r_ab.value - r_a.value - r_b.value
    out = RotResult(r_ab.lo - r_a.hi - r_b.hi, r_ab.hi - r_a.lo - r_b.lo)
    if out.width >= Fraction(1, 2 * max_denominator ** 2):
        raise TauError("tau only known to lie in %s" % out)
    return out


def same_value(x, y):
    """Equality for tau values that may be exact or intervals."""
    if isinstance(x, RotResult) or isinstance(y, RotResult):
        x = x if isinstance(x, RotResult) else RotResult.exact(x)
        y = y if isinstance(y, RotResult) else RotResult.exact(y)
        return x.overlaps(y)
    return x == y


def _value_json(x):
    if isinstance(x, RotResult):
        return x.to_json()
    return {"kind": "exact", "value": str(x)}


def _value_from_json(obj):
    if obj["kind"] == "exact":
        return Fraction(obj["value"])
    return RotResult(Fraction(obj["lo"]), Fraction(obj["hi"]))


@dataclass
class Fingerprint:
    genus: int
    length: int
    generator_rots: list
    tau_table: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "genus": self.genus,
            "length": self.length,
            "generator_rots": [r.to_json() for r in self.generator_rots],
            "tau_table": [
                {"u": u, "v": v, "tau": _value_json(t)} for (u, v), t in self.tau_table.items()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        rots = []
        for r in obj["generator_rots"]:
            val = _value_from_json(r)
            rots.append(val if isinstance(val, RotResult) else RotResult.exact(val))
        table = {(e["u"], e["v"]): _value_from_json(e["tau"]) for e in obj["tau_table"]}
        return cls(int(obj["genus"]), int(obj["length"]), rots, table)


def fingerprint(rep, length=DEFAULT_LENGTH, max_denominator=DEFAULT_MAX_DENOMINATOR):
    """Generator rotation numbers and tau over all pairs of reduced words.

    Words have length <= ``length`` in the generators and their inverses.
    Translation numbers are cached per freely reduced word, so the cost is
    dominated by the number of distinct products.
    """
    if length < 1:
        raise ValueError("word length bound must be positive")
    gens = rep.generators
    assignment = rep.assignment()
    rots = [rot_circle(f, max_denominator) for f in rep.images]
    cache = {}

    def lifted(word):
        key = str(word)
        if key not in cache:
            cache[key] = rott(word.evaluate(assignment, rep.tolerance), max_denominator,
                              _resolution(max_denominator))
        return cache[key]

    words = reduced_words(gens, length)
    table = {}
    for u in words:
        for v in words:
            try:
                table[(str(u), str(v))] = tau_from_rotts(lifted(u * v), lifted(u), lifted(v),
                                                         max_denominator)
            except ArithmeticError as exc:
                raise TauError("tau(%s, %s): %s" % (u, v, exc)) from exc
    return Fingerprint(rep.genus, length, rots, table)


@dataclass
class Verdict:
    """DISTINCT carries a witness; CONSISTENT only covers words up to ``length``."""

    kind: str
    length: int
    witness: dict = None

    @property
    def distinct(self):
        return self.kind == "DISTINCT"

    def to_json(self):
        out = {"verdict": self.kind, "length": self.length}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def __str__(self):
        if self.distinct:
            return "DISTINCT %s" % self.witness
        return "CONSISTENT(%d)" % self.length


def same_class_candidate(fp1, fp2):
    if fp1.genus != fp2.genus:
        raise ValueError("fingerprints have different genus (%d, %d)" % (fp1.genus, fp2.genus))
    if fp1.length != fp2.length:
        raise ValueError("fingerprints use different word lengths (%d, %d)" % (fp1.length, fp2.length))
    for name, r1, r2 in zip(surface_generators(fp1.genus), fp1.generator_rots, fp2.generator_rots):
        if not r1.overlaps(r2):
            return Verdict("DISTINCT", fp1.length,
                           {"generator": name, "rot": [str(r1), str(r2)]})
    for key, t1 in fp1.tau_table.items():
        t2 = fp2.tau_table.get(key)
        if t2 is None:
            raise ValueError("tau tables cover different word pairs")
        if not same_value(t1, t2):
            return Verdict("DISTINCT", fp1.length,
                           {"words": list(key), "tau": [str(t1), str(t2)]})
    return Verdict("CONSISTENT", fp1.length)

