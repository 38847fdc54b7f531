"""Command-line front end.

Every subcommand prints one line of compact JSON on stdout.  Exit codes:
0 success, 1 negative verdict, 2 usage or input error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .clone import (
    OperationTable,
    essential_rank,
    generate_clone_fragment,
    minimal_support,
    variety_rank_estimate,
)
from .errors import AlgTypeError, EnumerationCapExceeded
from .finalg import all_algebras, enumerate_homomorphisms, evaluate, load_algebra
from .functor_probe import all_endos_mono, every_epi_has_section
from .recovery import recover_type
from .signature import are_equivalent, load_signature
from .terms import DEFAULT_TERM_CAP, VARIABLE_RE, parse_term

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

# default probe pool: every algebra on at most this many elements
DEFAULT_POOL_CARRIER = 3
DEFAULT_POOL_LIMIT = 10_000


class UsageError(AlgTypeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _cmd_equiv(args):
    verdict = are_equivalent(load_signature(args.a), load_signature(args.b))
    return {"equivalent": verdict}, EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_recover(args):
    sig = load_signature(args.sig)
    return recover_type(sig, args.depth, args.max_terms).to_json(), EXIT_OK


def _cmd_rank(args):
    return {"rank": variety_rank_estimate(load_signature(args.sig)).to_json()}, EXIT_OK


def _cmd_support(args):
    alg = load_algebra(args.alg)
    if args.op not in alg.signature:
        raise UsageError(f"--op: symbol {args.op!r} not in the algebra's signature")
    op = OperationTable.of_symbol(alg, args.op)
    return {"minimal_support": sorted(minimal_support(op)), "essential_rank": essential_rank(op)}, EXIT_OK


def _cmd_clone(args):
    alg = load_algebra(args.alg)
    frag = generate_clone_fragment(alg, args.basis, args.depth, args.max_terms)
    ops = [{"term": str(term), "table": list(op.table)} for op, term in frag.entries]
    return {"basis": args.basis, "depth": args.depth, "count": len(ops), "operations": ops}, EXIT_OK


def _cmd_homs(args):
    homs = list(enumerate_homomorphisms(load_algebra(args.a), load_algebra(args.b)))
    payload = {"count": len(homs)}
    if args.list:
        payload["homomorphisms"] = [list(h) for h in homs]
    return payload, EXIT_OK


def _default_pool(p):
    total = 0
    for n in range(1, DEFAULT_POOL_CARRIER + 1):
        count = 1
        for _, a in p.signature:
            count *= n ** (n**a)
        total += count
    if total > DEFAULT_POOL_LIMIT:
        raise EnumerationCapExceeded(DEFAULT_POOL_LIMIT, "default pool algebras (pass --pool)")
    return [a for n in range(1, DEFAULT_POOL_CARRIER + 1) for a in all_algebras(p.signature, n)]


def _cmd_probe_free(args):
    p = load_algebra(args.p)
    if args.pool is None:
        pool = _default_pool(p)
    else:
        pool_dir = Path(args.pool)
        if not pool_dir.is_dir():
            raise UsageError(f"--pool: {pool_dir} is not a directory")
        pool = [load_algebra(f) for f in sorted(pool_dir.glob("*.json"))]
    epi = every_epi_has_section(p, pool)
    mono = all_endos_mono(p)
    payload = {
        "epi_section": epi.holds,
        "endos_mono": mono.holds,
        "witness": {"epi_section": epi.witness, "endos_mono": mono.witness},
    }
    return payload, EXIT_OK if epi.holds and mono.holds else EXIT_NEGATIVE


def _parse_assignment(text, n):
    values = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        m = VARIABLE_RE.match(name.strip())
        if not sep or not m:
            raise UsageError(f"--assign: cannot read {part!r}, expected x<i>=<value>")
        try:
            v = int(value)
        except ValueError:
            raise UsageError(f"--assign: value of {name.strip()} is not an integer") from None
        if not 0 <= v < n:
            raise UsageError(f"--assign: value of {name.strip()} outside [0, {n})")
        values[int(m.group(1))] = v
    return values


def _cmd_eval(args):
    alg = load_algebra(args.alg)
    t = parse_term(args.term, alg.signature)
    return {"value": evaluate(alg, t, _parse_assignment(args.assign, alg.carrier))}, EXIT_OK


def _positive(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algtype", description="Algebra types, clones and type recovery.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("equiv", help="are two signatures equivalent types")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("recover", help="recover the arity multiset through fragment oracles")
    p.add_argument("sig")
    p.add_argument("--depth", type=_positive, required=True)
    p.add_argument("--max-terms", type=_positive, default=DEFAULT_TERM_CAP)
    p.set_defaults(fn=_cmd_recover)

    p = sub.add_parser("rank", help="rank of the absolutely free class of a signature")
    p.add_argument("sig")
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("support", help="minimal support of a basic operation")
    p.add_argument("alg")
    p.add_argument("--op", required=True)
    p.set_defaults(fn=_cmd_support)

    p = sub.add_parser("clone", help="term operations of bounded depth")
    p.add_argument("alg")
    p.add_argument("--basis", type=_positive, required=True)
    p.add_argument("--depth", type=_positive, required=True)
    p.add_argument("--max-terms", type=_positive, default=DEFAULT_TERM_CAP)
    p.set_defaults(fn=_cmd_clone)

    p = sub.add_parser("homs", help="homomorphisms between two finite algebras")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=_cmd_homs)

    p = sub.add_parser("probe-free", help="free rank-one detection predicates")
    p.add_argument("p")
    p.add_argument("--pool")
    p.set_defaults(fn=_cmd_probe_free)

    p = sub.add_parser("eval", help="evaluate a term in a finite algebra")
    p.add_argument("alg")
    p.add_argument("--term", required=True)
    p.add_argument("--assign", default="")
    p.set_defaults(fn=_cmd_eval)
    return parser


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        payload, code = args.fn(args)
    except EnumerationCapExceeded as exc:
        print(f"algtype: {exc}", file=stderr)
        return EXIT_CAP
    except (AlgTypeError, OSError) as exc:
        print(f"algtype: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
