"""``finring`` command line.

Exit codes: 0 success, 1 a theorem check failed, 2 parse error, 3 construction error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import structure as st
from .classify import PROPERTIES, classify, clean_decompositions
from .dsl import ParseError, eval_expr
from .persist import load_ring, save_ring
from .ring import FiniteRing, RingError
from .verify import REGISTRY, default_corpus, load_corpus, run_all

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_BUILD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _ring(args) -> FiniteRing:
    if args.from_cache:
        try:
            return load_ring(args.from_cache)
        except (OSError, ValueError, RingError) as exc:
            raise CliError(EXIT_BUILD, f"cannot load cache {args.from_cache}: {exc}")
    if not args.expr:
        raise CliError(EXIT_PARSE, "an expression is required (or --from-cache)")
    return eval_expr(args.expr)


def _emit(args, doc: dict, text: str) -> None:
    print(json.dumps(doc, indent=2) if args.json else text)


def cmd_eval(args) -> int:
    R = _ring(args)
    s = st.structure(R)
    doc = {"label": R.label, "order": R.order, "idempotents": len(s.idempotents),
           "units": len(s.units.units), "nilpotents": len(s.nilpotents),
           "radical": len(s.radical), "center": len(s.center)}
    _emit(args, doc, "\n".join(f"{k:12} {v}" for k, v in doc.items()))
    return EXIT_OK


def cmd_classify(args) -> int:
    R = _ring(args)
    props = args.props.split(",") if args.props else list(PROPERTIES)
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise CliError(EXIT_PARSE, f"unknown properties: {', '.join(unknown)}")
    verdicts = classify(R, props)
    doc = {"ring": R.label, "verdicts": [
        v.to_json() if args.witness or v.holds else {**v.to_json(), "witness": None}
        for v in verdicts]}
    lines = []
    for v in verdicts:
        line = f"{v.property:24} {'holds' if v.holds else 'fails'}"
        if args.witness and v.witness:
            line += f"  {json.dumps(v.witness)}"
        lines.append(line)
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    R = _ring(args)
    if not 0 <= args.element < R.order:
        raise CliError(EXIT_BUILD, f"element {args.element} out of range for order {R.order}")
    rec = clean_decompositions(R, args.element)
    doc = rec.to_json(R)
    lines = [f"element {rec.element} = {R.render(rec.element)}"]
    for (e, u), c in zip(rec.pairs, rec.commuting_flags):
        lines.append(f"  e={e} [{R.render(e)}]  u={u} [{R.render(u)}]"
                     f"{'  commuting' if c else ''}")
    lines.append(f"conjugacy partition: {rec.conjugacy_partition}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_elements(args) -> int:
    R = _ring(args)
    n = R.order if args.limit is None else min(args.limit, R.order)
    doc = {"ring": R.label, "order": R.order,
           "elements": [{"index": i, "rendered": R.render(i)} for i in range(n)]}
    _emit(args, doc, "\n".join(f"{i:6}  {R.render(i)}" for i in range(n)))
    return EXIT_OK


def cmd_verify(args) -> int:
    corpus = load_corpus(args.corpus) if args.corpus else default_corpus()
    if args.suite in (None, "all"):
        ids = list(REGISTRY)
    else:
        ids = [s.strip() for s in args.suite.split(",") if s.strip()]
        unknown = [s for s in ids if s not in REGISTRY]
        if unknown:
            raise CliError(EXIT_PARSE, f"unknown theorem ids: {', '.join(unknown)}")
    report = run_all(corpus, jobs=args.jobs, theorems=ids)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for run in report.runs:
            status = "ok" if run.failures == 0 else f"{run.failures} FAILED"
            print(f"{run.theorem_id:16} {len(run):4} checks  {len(run.skipped):2} skipped  {status}")
            for res in run:
                if not res.passed:
                    print(f"    {res.ring_id}: {json.dumps(res.witness)}")
                elif res.evidence and res.evidence.get("kind") == "unit-sum":
                    print(f"    {res.ring_id}: expected failure, units {res.evidence['u']}"
                          f" + {res.evidence['v']} = 1")
            for sk in run.skipped:
                print(f"    skipped {sk.ring_id}: {sk.reason}")
        print(f"{report.checks} checks, {report.failures} failures, {report.elapsed:.1f}s")
    return EXIT_FAILED if report.failures else EXIT_OK


def cmd_cache(args) -> int:
    R = _ring(args)
    save_ring(R, args.out, args.format)
    print(f"wrote {R.label} (order {R.order}) to {args.out} as {args.format}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finring", description="Finite ring constructions and checks.")
    p.add_argument("--from-cache", metavar="PATH", help="load the ring from a cache file")
    sub = p.add_subparsers(dest="command", required=True)

    def ring_cmd(name: str, help_: str, json_flag: bool = True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("expr", nargs="?", help="construction expression, e.g. 'T(2,Z(4))'")
        sp.add_argument("--from-cache", dest="from_cache_sub", metavar="PATH",
                        help=argparse.SUPPRESS)
        if json_flag:
            sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    ring_cmd("eval", "order and structural counts").set_defaults(func=cmd_eval)
    sp = ring_cmd("classify", "clean-family property verdicts")
    sp.add_argument("--props", help="comma-separated property names (default: all)")
    sp.add_argument("--witness", action="store_true", help="include failure witnesses")
    sp.set_defaults(func=cmd_classify)
    sp = ring_cmd("decompose", "clean decompositions of one element")
    sp.add_argument("--element", type=int, required=True)
    sp.set_defaults(func=cmd_decompose)
    sp = ring_cmd("elements", "element index table")
    sp.add_argument("--limit", type=int)
    sp.set_defaults(func=cmd_elements)
    sp = sub.add_parser("verify", help="run the theorem suite")
    sp.add_argument("--suite", help="comma-separated theorem ids or 'all'")
    sp.add_argument("--corpus", help="JSON corpus file (default: built-in corpus)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    sp = ring_cmd("cache", "write operation tables to a file", json_flag=False)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("json", "bin"), default="json")
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "from_cache_sub", None):
        args.from_cache = args.from_cache_sub
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.expected:
            print(f"expected one of: {', '.join(exc.expected)}", file=sys.stderr)
        return EXIT_PARSE
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":
    sys.exit(main())
