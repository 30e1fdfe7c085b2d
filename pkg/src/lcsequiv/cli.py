"""Command line front end: ``lcs classify|compare|canon|simcheck``.

Exit codes: 0 success or equivalent, 1 not equivalent or check failed,
2 parse error, 3 dimension mismatch, 4 singular witness.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import fileformat as ff
from .decomposition import SingularWitness, canonical_form
from .equivalence import DIFFERENTIAL, LINEAR, RELATIONS, classify, decide
from .harness import NonFinite, initial_state, signal_battery, verify_witness_dynamically

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_SINGULAR = 4


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def seed_from_env() -> int:
    raw = os.environ.get("LCS_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CommandError(EXIT_PARSE, "LCS_SEED must be an integer, got %r" % raw)


def _load_system(path: str, args):
    try:
        return ff.load_system(path, args.rationalize)
    except OSError as exc:
        raise CommandError(EXIT_PARSE, "%s: %s" % (path, exc.strerror))
    except ff.ParseError as exc:
        raise CommandError(EXIT_PARSE, "%s: %s" % (path, exc))
    except (ff.DimensionError, ValueError) as exc:
        raise CommandError(EXIT_DIMENSION, "%s: %s" % (path, exc))


def _emit(doc, out):
    out.write(ff.dumps(doc))


def cmd_classify(args, out) -> int:
    sys_ = _load_system(args.system, args)
    _emit({"command": "classify", **ff.invariants_doc(classify(sys_))}, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    sys1 = _load_system(args.system1, args)
    sys2 = _load_system(args.system2, args)
    if (sys1.n, sys1.m) != (sys2.n, sys2.m) and args.strict:
        raise CommandError(
            EXIT_DIMENSION, "dimension mismatch: (%d, %d) vs (%d, %d)" % (sys1.n, sys1.m, sys2.n, sys2.m)
        )
    seed = seed_from_env()
    wanted = RELATIONS if args.relation == "all" else (args.relation,)
    verdicts = {rel: decide(rel, sys1, sys2, seed) for rel in wanted}
    all_hold = all(v.equivalent for v in verdicts.values())
    witness = next(
        (verdicts[r].witness for r in (LINEAR, DIFFERENTIAL) if r in verdicts and verdicts[r].witness),
        None,
    )
    doc = {
        "command": "compare",
        "relations": {rel: ff.verdict_doc(v) for rel, v in verdicts.items()},
        "equivalent": all_hold,
        "witness_written": False,
    }
    if args.witness and witness is not None:
        with open(args.witness, "w", encoding="utf-8") as fh:
            fh.write(ff.dumps(ff.witness_doc(witness)))
        doc["witness_written"] = True
    _emit(doc, out)
    return EXIT_OK if all_hold else EXIT_FAIL


def cmd_canon(args, out) -> int:
    sys_ = _load_system(args.system, args)
    form = canonical_form(sys_)
    if not form.witness.carries(sys_, form.system):
        raise CommandError(EXIT_FAIL, "canonical witness failed verification")
    text = ff.dumps(ff.canonical_doc(form))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"command": "canon", "k": form.k, "p": list(form.p), "written": args.out}, out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_simcheck(args, out) -> int:
    sys1 = _load_system(args.system1, args)
    sys2 = _load_system(args.system2, args)
    try:
        w = ff.load_witness(args.witness, args.rationalize)
    except OSError as exc:
        raise CommandError(EXIT_PARSE, "%s: %s" % (args.witness, exc.strerror))
    except ff.ParseError as exc:
        raise CommandError(EXIT_PARSE, "%s: %s" % (args.witness, exc))
    except SingularWitness as exc:
        raise CommandError(EXIT_SINGULAR, "%s: %s" % (args.witness, exc))
    except (ff.DimensionError, ValueError) as exc:
        raise CommandError(EXIT_DIMENSION, "%s: %s" % (args.witness, exc))
    if (sys1.n, sys1.m) != (w.n, w.m) or (sys2.n, sys2.m) != (w.n, w.m):
        raise CommandError(EXIT_DIMENSION, "witness is for n=%d, m=%d" % (w.n, w.m))
    seed = seed_from_env()
    x0 = initial_state(sys1.n, seed)
    results = []
    passed = True
    for i, u in enumerate(signal_battery(sys1.m, seed, args.t_final)):
        try:
            residual, ok = verify_witness_dynamically(sys1, sys2, w, u, x0, args.t_final, args.steps, args.tol)
            results.append({"signal": i, "kind": u.kind, "max_residual": "%.6e" % residual, "pass": ok})
        except NonFinite as exc:
            ok = False
            results.append({"signal": i, "kind": u.kind, "max_residual": None, "pass": False, "error": str(exc)})
        passed = passed and ok
    _emit(
        {
            "command": "simcheck",
            "t_final": args.t_final,
            "steps": args.steps,
            "tol": args.tol,
            "signals": results,
            "pass": passed,
        },
        out,
    )
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcs", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--rationalize",
        type=int,
        metavar="DENOM",
        default=None,
        help="accept decimal entries, rounding to the nearest fraction with denominator <= DENOM",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the invariants of a system")
    p.add_argument("system")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="decide equivalence of two systems")
    p.add_argument("system1")
    p.add_argument("system2")
    p.add_argument("--relation", choices=RELATIONS + ("all",), default="all")
    p.add_argument("--witness", metavar="PATH", help="write the feedback witness here when one exists")
    p.add_argument("--strict", action="store_true", help="exit 3 when (n, m) differ")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("canon", help="write the canonical form and its witness")
    p.add_argument("system")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("simcheck", help="check a witness by simulation")
    p.add_argument("system1")
    p.add_argument("system2")
    p.add_argument("witness")
    p.add_argument("--t-final", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_simcheck)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CommandError as exc:
        err.write("lcs %s: %s\n" % (args.command, exc))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
