"""Command-line front end.

Every subcommand reads JSON inputs and writes either plain text or, with
``--format json``, a report holding the command line, the SHA-256 of each
input file and the result.  Reports contain no timestamps, so equal inputs
give byte-identical output.  Exit codes: 0 success, 1 failed verification
or uncertifiable result, 2 malformed input.
"""

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .cw import (
    ConfigError,
    OrbitConfig,
    check_max_constraints,
    realize,
    word_translation_bound,
)
from .euclid import euclid_reduce
from .maps import from_json, to_json
from .rotation import DEFAULT_MAX_DENOMINATOR, DEFAULT_RESOLUTION, rot_circle, rott
from .semiconj import DEFAULT_LENGTH, Fingerprint, fingerprint, same_class_candidate
from .surface import SurfaceRep, extend_by_rotations, fuchsian_rep, lift_rep, relator_translation
from .svg import orbit_diagram
from .verify import KEYS, run_checks

THREADS_ENV = "CIRCLEREP_THREADS"


class InputError(ValueError):
    """Bad command-line input; exit code 2."""


class Failure(Exception):
    """A verification that ran and failed; exit code 1."""


# -- helpers ----------------------------------------------------------------

class Context:
    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.inputs = {}

    @property
    def format(self):
        return getattr(self.args, "format", None) or "text"

    @property
    def seed(self):
        return getattr(self.args, "seed", None) or 0

    def load(self, path):
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        try:
            obj = json.loads(data)
        except ValueError as exc:
            raise InputError("%s is not valid JSON: %s" % (path, exc)) from exc
        # a report from --format json can be fed back in directly
        if isinstance(obj, dict) and "result" in obj and "command" in obj:
            obj = obj["result"]
        return obj

    def report(self, result):
        return {"command": self.argv, "inputs": self.inputs, "result": result}


def _dump(obj):
    return json.dumps(obj, indent=2, default=_jsonable)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError("cannot serialize %r" % (x,))


def _write(path, obj):
    with open(path, "w") as fh:
        fh.write(_dump(obj) + "\n")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % text)


def _branches(text):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("branches must be comma-separated integers: %r" % text)


def _seed(text):
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer: %r" % text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return n


def thread_count(environ=None):
    """Worker count requested through the environment (default 1).

    All computations currently run on one thread; the value is validated so
    that scripts setting it behave the same once work is spread out.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError("%s must be a positive integer, got %r" % (THREADS_ENV, raw))
    if n < 1:
        raise InputError("%s must be a positive integer, got %r" % (THREADS_ENV, raw))
    return n


def _load_homeo(ctx, path):
    obj = ctx.load(path)
    try:
        return from_json(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
        raise InputError("%s is not a lifted homeomorphism: %s" % (path, exc)) from exc


def _load_config(ctx, path):
    return OrbitConfig.from_json(ctx.load(path))


def _load_rep(ctx, path):
    obj = ctx.load(path)
    try:
        return SurfaceRep.from_json(obj)
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError("%s is not a surface representation: %s" % (path, exc)) from exc


def _load_maps(ctx, path):
    obj = ctx.load(path)
    if isinstance(obj, dict) and "maps" in obj:
        obj = obj["maps"]
    try:
        if isinstance(obj, dict):
            return {int(k): from_json(v) for k, v in obj.items()}
        return {i + 1: from_json(v) for i, v in enumerate(obj)}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError("%s does not hold a list of homeomorphisms: %s" % (path, exc)) from exc


def _base_rep(ctx, args, genus=None):
    if args.rep:
        return _load_rep(ctx, args.rep)
    return fuchsian_rep(genus or args.genus)


def _orbit_json(cert):
    return {
        "start": list(cert.start),
        "translation": cert.translation,
        "period": cert.period,
        "trace": [list(p) for p in cert.trace],
    }


def _orbit_text(cert):
    pts = " ".join("x%d^%d" % p for p in cert.trace)
    return "periodic orbit %s (translation %d over %d steps)" % (pts, cert.translation, cert.period)


# -- commands ---------------------------------------------------------------

def cmd_rot(ctx, args):
    f = _load_homeo(ctx, args.homeo)
    res = args.resolution if args.resolution is not None else DEFAULT_RESOLUTION
    r = rott(f, args.max_denominator, res)
    c = rot_circle(f, args.max_denominator, res)
    if ctx.format == "json":
        return {"rott": r.to_json(), "rot": c.to_json()}
    kind = "exact" if r.is_exact else "interval"
    return "%s %s\nrot mod 1: %s" % (kind, r, c)


def cmd_cw_bound(ctx, args):
    config = _load_config(ctx, args.config)
    bound, cert = word_translation_bound(config, args.word)
    if not cert.replay(config, args.word):
        raise Failure("certificate does not replay")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(orbit_diagram(config, cert.trace, "%s: %s" % (args.word, bound)))
    if ctx.format == "json":
        return {"word": args.word, "bound": str(bound), "certificate": _orbit_json(cert)}
    return "bound %s\n%s" % (bound, _orbit_text(cert))


def cmd_cw_realize(ctx, args):
    config = _load_config(ctx, args.config)
    maps = realize(config, args.word, args.contraction)
    out = {"maps": {str(i): to_json(f) for i, f in sorted(maps.items())}}
    if args.word:
        out["word"] = args.word
        out["bound"] = str(word_translation_bound(config, args.word)[0])
    if args.output:
        _write(args.output, out)
        if ctx.format == "json":
            return {"output": args.output, "labels": sorted(maps)}
        return "wrote %d maps to %s" % (len(maps), args.output)
    return out


def cmd_cw_check_max(ctx, args):
    config = _load_config(ctx, args.config)
    maps = _load_maps(ctx, args.homeos)
    report = check_max_constraints(maps, config, require_coprime=not args.any_k)
    rows = [dict(r, lhs=str(r["lhs"]), rhs=str(r["rhs"])) for r in report.rows]
    if ctx.format == "json":
        out = {"pass": report.all_pass, "coprime": report.coprime, "rows": rows}
    else:
        lines = []
        for r in rows:
            lines.append("%s  c%d(x%d^%d) = %s > x%d^%d = %s" % (
                "PASS" if r["pass"] else "FAIL", r["map"], r["point"][0], r["point"][1],
                r["lhs"], r["bound"][0], r["bound"][1], r["rhs"]))
        lines.append("all constraints hold" if report.all_pass else
                     "%d constraints fail" % len(report.failures()))
        out = "\n".join(lines)
    if not report.all_pass:
        raise Failure(out)
    return out


def cmd_rep_euler(ctx, args):
    rep = _load_rep(ctx, args.rep)
    n, residual = relator_translation(rep)
    if ctx.format == "json":
        return {"genus": rep.genus, "euler": n, "residual": residual}
    return str(n)


def _emit_rep(ctx, args, rep, what):
    if args.output:
        _write(args.output, rep.to_json())
        if ctx.format == "json":
            return {"output": args.output, "genus": rep.genus}
        return "wrote %s to %s" % (what, args.output)
    return rep.to_json()


def cmd_rep_fuchsian(ctx, args):
    return _emit_rep(ctx, args, fuchsian_rep(args.genus), "genus %d representation" % args.genus)


def cmd_rep_lift(ctx, args):
    genus = None if args.rep else len(args.branches) // 2
    rep = lift_rep(_base_rep(ctx, args, genus), args.k, args.branches)
    return _emit_rep(ctx, args, rep, "%d-fold lift" % args.k)


def cmd_rep_extend(ctx, args):
    rep = extend_by_rotations(_base_rep(ctx, args), args.alpha, args.beta)
    return _emit_rep(ctx, args, rep, "genus %d extension" % rep.genus)


def cmd_euclid_reduce(ctx, args):
    rep = _load_rep(ctx, args.rep)
    if not 1 <= args.pair <= rep.genus:
        raise InputError("pair must lie between 1 and %d" % rep.genus)
    a, b = rep.pair(args.pair)
    u, v, trace = euclid_reduce(a, b, tol=args.tol)
    return trace.to_json()


def cmd_fp_compute(ctx, args):
    rep = _load_rep(ctx, args.rep)
    fp = fingerprint(rep, args.length, args.max_denominator).to_json()
    if args.output:
        _write(args.output, fp)
        if ctx.format == "json":
            return {"output": args.output, "entries": len(fp["tau_table"])}
        return "wrote %d tau entries to %s" % (len(fp["tau_table"]), args.output)
    return fp


def cmd_fp_compare(ctx, args):
    fps = []
    for path in (args.fp1, args.fp2):
        try:
            fps.append(Fingerprint.from_json(ctx.load(path)))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError("%s is not a fingerprint: %s" % (path, exc)) from exc
    verdict = same_class_candidate(*fps)
    if ctx.format == "json":
        out = verdict.to_json()
    elif verdict.distinct:
        out = "DISTINCT\n" + _dump(verdict.witness)
    else:
        out = str(verdict)
    if verdict.distinct:
        raise Failure(out)
    return out


def cmd_verify(ctx, args):
    if args.list:
        return {"checks": KEYS} if ctx.format == "json" else "\n".join(KEYS)
    only = args.only or None
    if only:
        unknown = [k for k in only if k not in KEYS]
        if unknown:
            raise InputError("unknown check %s (choose from %s)" % (", ".join(unknown), ", ".join(KEYS)))
    results = run_checks(only, ctx.seed)
    if args.svg_dir:
        _verify_figures(args.svg_dir)
    ok = all(r.ok for r in results)
    if ctx.format == "json":
        out = {"pass": ok, "seed": ctx.seed, "checks": [r.to_json(args.timing) for r in results]}
    else:
        lines = [r.line(args.timing) for r in results]
        lines.append("%d/%d checks pass" % (sum(r.ok for r in results), len(results)))
        out = "\n".join(lines)
    if not ok:
        raise Failure(out)
    return out


def _verify_figures(directory):
    from .cw import double_point_config, lexicographic_config

    os.makedirs(directory, exist_ok=True)
    figures = {
        "three-label.svg": (lexicographic_config(3, 2, Fraction(1, 2)), "c1 c2 c3"),
        "double-point.svg": (double_point_config(3, 2), "c1 c2 c3"),
    }
    for name, (config, word) in figures.items():
        bound, cert = word_translation_bound(config, word)
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(orbit_diagram(config, cert.trace, "%s: %s" % (word, bound)))


# -- parser -----------------------------------------------------------------

def _common():
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                   help="output format (default text)")
    p.add_argument("--seed", type=_seed, default=argparse.SUPPRESS,
                   help="seed for randomized checks (default 0)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="circlerep", parents=[common],
                                     description="Exact dynamics of circle homeomorphisms.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name, fn, help_):
        p = group.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def rot_args(p):
        p.add_argument("--max-denominator", type=int, default=DEFAULT_MAX_DENOMINATOR)
        p.add_argument("--resolution", type=_fraction, default=None)

    p = leaf(sub, "rot", cmd_rot, "translation and rotation number of a lifted homeomorphism")
    p.add_argument("--homeo", required=True, help="LiftedHomeo JSON file")
    rot_args(p)

    cw = sub.add_parser("cw", help="combinatorial orbit bounds").add_subparsers(
        dest="cw_command", required=True)
    p = leaf(cw, "bound", cmd_cw_bound, "certified upper bound for a positive word")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True, help='labels in order, e.g. "c1 c2 c3"')
    p.add_argument("--svg", help="also draw the periodic orbit")
    p = leaf(cw, "realize", cmd_cw_realize, "PL maps with the configured orbits")
    p.add_argument("--config", required=True)
    p.add_argument("--word", help="check that this word attains its bound")
    p.add_argument("--contraction", type=_fraction, default=None)
    p.add_argument("-o", "--output")
    p = leaf(cw, "check-max", cmd_cw_check_max, "maximality constraints for given maps")
    p.add_argument("--config", required=True)
    p.add_argument("--homeos", required=True, help="JSON list (or label map) of homeomorphisms")
    p.add_argument("--any-k", action="store_true",
                   help="evaluate the constraints even when 2n-1 and k share a factor")

    rep = sub.add_parser("rep", help="surface group representations").add_subparsers(
        dest="rep_command", required=True)
    p = leaf(rep, "euler", cmd_rep_euler, "Euler number")
    p.add_argument("--rep", required=True)
    p = leaf(rep, "fuchsian", cmd_rep_fuchsian, "Fuchsian representation of a closed surface")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("-o", "--output")
    p = leaf(rep, "lift", cmd_rep_lift, "lift to the k-fold cover of the circle")
    p.add_argument("--rep", help="base representation (default: Fuchsian)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--branches", type=_branches, required=True)
    p.add_argument("-o", "--output")
    p = leaf(rep, "extend", cmd_rep_extend, "add a handle acting by rotations")
    p.add_argument("--rep", help="representation to extend (default: Fuchsian of --genus)")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--beta", type=_fraction, required=True)
    p.add_argument("-o", "--output")

    eu = sub.add_parser("euclid", help="commutator-preserving rewriting").add_subparsers(
        dest="euclid_command", required=True)
    p = leaf(eu, "reduce", cmd_euclid_reduce, "rewrite a crossed generator pair")
    p.add_argument("--rep", required=True)
    p.add_argument("--pair", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-9)

    fp = sub.add_parser("fp", help="semi-conjugacy fingerprints").add_subparsers(
        dest="fp_command", required=True)
    p = leaf(fp, "compute", cmd_fp_compute, "fingerprint of a representation")
    p.add_argument("--rep", required=True)
    p.add_argument("--length", type=int, default=DEFAULT_LENGTH)
    p.add_argument("--max-denominator", type=int, default=DEFAULT_MAX_DENOMINATOR)
    p.add_argument("-o", "--output")
    p = leaf(fp, "compare", cmd_fp_compare, "compare two fingerprints")
    p.add_argument("fp1")
    p.add_argument("fp2")

    p = leaf(sub, "verify-paper", cmd_verify, "run the worked-example and property checks")
    p.add_argument("--only", nargs="+", metavar="KEY", help="subset of checks (see --list)")
    p.add_argument("--list", action="store_true", help="list check keys and exit")
    p.add_argument("--timing", action="store_true", help="include wall times (not reproducible)")
    p.add_argument("--svg-dir", help="write orbit diagrams here")
    return parser


def _emit(ctx, result, stream):
    if ctx.format == "json":
        stream.write(_dump(ctx.report(result)) + "\n")
    elif isinstance(result, str):
        stream.write(result + "\n")
    else:
        stream.write(_dump(result) + "\n")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = Context(args, argv)
    try:
        thread_count()
        result = args.fn(ctx, args)
    except Failure as exc:
        result = exc.args[0]
        if ctx.format == "json" and isinstance(result, str):
            result = {"error": result}
        _emit(ctx, result, sys.stdout)
        return 1
    except (InputError, ConfigError, KeyError, TypeError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print("failed: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    _emit(ctx, result, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
