"""Command-line front end: ``tanglekit VERB [options] MATROID``.

MATROID is a path to a MatroidExpr JSON file, inline JSON, or an example
spec understood by ``gen-example`` (``u37``, ``k4``, ``sec9:6``, ...).
Exit codes: 0 ok, 1 domain or verification failure, 2 usage error,
3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import connectivity as cn
from . import corpus
from . import expr as ex
from . import minors as mn
from . import tangle as tg
from .errors import (
    DomainError,
    InvariantError,
    PreconditionError,
    ResourceCapError,
    StructuralError,
    TanglekitError,
)
from .matroid import Matroid

log = logging.getLogger("tanglekit")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_SEED = 0


class CliFailure(Exception):
    """A well-formed command whose answer is negative (exit 1)."""


def load_matroid(spec: str, seed: int = DEFAULT_SEED) -> Matroid:
    s = spec.strip()
    if s.startswith("{"):
        return ex.parse(s)
    p = Path(s)
    if p.is_file():
        return ex.load(p)
    if p.suffix == ".json":
        # examples/u37.json and friends resolve to the built-in entry of that name
        if p.stem in corpus.entries():
            log.info("%s not found; using built-in corpus entry %r", s, p.stem)
            return corpus.entry(p.stem).matroid()
        raise StructuralError(f"{s}: no such file")
    return example(s, seed)


def example(spec: str, seed: int = DEFAULT_SEED) -> Matroid:
    if spec.startswith("random:") and spec.count(",") == 1:
        spec = f"{spec},{seed}"
    return corpus.example(spec)


def mask_arg(M: Matroid, text: str) -> int:
    labels = [x.strip() for x in text.split(",") if x.strip()]
    return M.mask(labels)


def pick_tangle(M: Matroid, k: int, index: int) -> tuple[tg.Tangle, int]:
    found = tg.enumerate_tangles(M, k)
    if not found:
        raise CliFailure(f"no tangle of order {k}")
    if not 0 <= index < len(found):
        raise StructuralError(f"--index {index} out of range; {len(found)} tangles of order {k}")
    return found[index], len(found)


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


# -- verbs -------------------------------------------------------------------

def cmd_tangles(args, M: Matroid) -> tuple[dict, list[str]]:
    found = tg.enumerate_tangles(M, args.order)
    rows, lines = [], [f"{_plural(len(found), 'tangle')} found"]
    for i, T in enumerate(found):
        b = tg.breadth(T).value
        rows.append(dict(T.to_json(), breadth=b))
        lines.append(f"tangle {i}: order {T.order}, breadth {b}, {_plural(len(T.maximal_small), 'maximal small set')}")
        if args.list_maximal_small:
            lines += ["  {" + ",".join(M.labels_of(h)) + "}" for h in T.maximal_small]
    return {"matroid": M.expr, "order": args.order, "count": len(found), "tangles": rows}, lines


def cmd_tangle_matroid(args, M: Matroid) -> tuple[dict, list[str]]:
    T, count = pick_tangle(M, args.order, args.index)
    MT = tg.tangle_matroid(T).matroid
    hyp = [MT.labels_of(h) for h in cn.hyperplanes(MT)]
    lines = [
        f"tangle {args.index} of {count}: tangle matroid of rank {MT.rank()} on {MT.n} elements",
        f"{_plural(len(hyp), 'hyperplane')}",
    ]
    return {"matroid": M.expr, "tangle": T.to_json(), "tangle_matroid": MT.expr, "hyperplanes": hyp}, lines


def cmd_breadth(args, M: Matroid) -> tuple[dict, list[str]]:
    T, _ = pick_tangle(M, args.order, args.index)
    cert = tg.breadth(T)
    MT = tg.tangle_matroid(T, check=False).matroid
    violation = None
    if not tg.is_uniform_restriction(MT, cert.witness, T.order - 1):
        violation = "witness restriction is not uniform of rank k-1"
    lines = [f"breadth {cert.value}"]
    if args.witness:
        lines.append("witness {" + ",".join(M.labels_of(cert.witness)) + "}")
    if violation:
        raise InvariantError(violation)
    out = {"value": cert.value, "witness": M.labels_of(cert.witness), "violation": violation}
    return out, lines


def cmd_reduce(args, M: Matroid) -> tuple[dict, list[str]]:
    T, _ = pick_tangle(M, args.order, args.index)
    N, TN, trace = mn.reduce_to_weakly_4_connected(M, T)
    b = trace.start_breadth
    if not trace.steps:
        lines = [f"already weakly 4-connected; breadth {b}"]
    else:
        lines = [f"reduced {M.n} -> {N.n} elements in {_plural(len(trace.steps), 'step')}; breadth {b}"]
        lines += [f"  {s.removal} via {s.rule} (breadth {s.breadth})" for s in trace.steps]
    out = dict(trace.to_json(N, TN), start=M.expr, start_tangle=T.to_json(), breadth=b)
    if args.trace:
        Path(args.trace).write_text(json.dumps(out, indent=1) + "\n", encoding="utf-8")
        lines.append(f"trace written to {args.trace}")
    return out, lines


def cmd_check(args, M: Matroid) -> tuple[dict, list[str]]:
    results: list[dict[str, Any]] = []
    if args.weak4:
        results.append({"check": "weak4", "value": cn.is_weakly_4_connected(M)})
    if args.round:
        results.append({"check": "round", "value": cn.is_round(M)})
    if args.titanic is not None:
        cover = cn.titanic_cover(M, mask_arg(M, args.titanic))
        wit = None if cover is None else [M.labels_of(p) for p in cover]
        results.append({"check": "titanic", "value": cover is None, "witness": wit})
    if args.solid is not None:
        bad = cn.solid_violation(M, mask_arg(M, args.solid))
        wit = None if bad is None else [M.labels_of(p) for p in bad]
        results.append({"check": "solid", "value": bad is None, "witness": wit})
    if args.fully_closed is not None:
        results.append({"check": "fully-closed", "value": cn.is_fully_closed(M, mask_arg(M, args.fully_closed))})
    if args.svec is not None:
        try:
            s = [int(x) for x in args.svec.split(",")]
        except ValueError:
            raise StructuralError(f"--svec needs comma-separated integers, got {args.svec!r}") from None
        rep = cn.connectivity_report(M, s).to_json(M)
        results.append({"check": "svec", "value": rep["svec_ok"], "witness": rep["witness"], "report": rep})
    if not results:
        rep = cn.connectivity_report(M).to_json(M)
        results = [{"check": key, "value": val} for key, val in rep.items()]
    if len(results) == 1:
        lines = [str(results[0]["value"]).lower()]
    else:
        lines = [f"{r['check']}: {str(r['value']).lower()}" for r in results]
    for r in results:
        if r.get("witness"):
            lines.append(f"  {r['check']} witness: {r['witness']}")
    out = {"checks": results, "value": all(r["value"] for r in results)}
    return out, lines


def cmd_kconn(args, M: Matroid) -> tuple[dict, list[str]]:
    z = mask_arg(M, args.set)
    bad = cn.k_connected_set_violation(M, z, args.order)
    out = {"set": M.labels_of(z), "order": args.order, "value": bad is None,
           "violation": None if bad is None else M.labels_of(bad)}
    lines = [str(bad is None).lower()]
    if bad is not None:
        lines.append("violated by {" + ",".join(M.labels_of(bad)) + "}")
    return out, lines


def cmd_truncate(args, M: Matroid) -> tuple[dict, list[str]]:
    T, _ = pick_tangle(M, args.order, args.index)
    U = tg.truncate_tangle(T, args.to)
    MT = tg.tangle_matroid(U).matroid
    lines = [
        f"truncated order {T.order} -> {U.order}; {_plural(len(U.maximal_small), 'maximal small set')}",
        f"tangle matroid rank {MT.rank()} equals the truncated tangle matroid",
    ]
    return {"matroid": M.expr, "tangle": U.to_json(), "tangle_matroid": MT.expr}, lines


def run_verify_suite(args) -> tuple[dict, list[str], bool]:
    from .lab import run_suite

    rep = run_suite(args.suite_id, args.select, budget=args.budget, max_n=args.max_n, threads=args.threads)
    lines = [rep.summary()]
    for f in rep.failures[:10]:
        lines.append(f"  {f.get('instance')}: {f.get('claim')} {json.dumps(f.get('witness'))}")
    for e in rep.errors[:10]:
        lines.append(f"  {e['instance']}: {e['error']}")
    return rep.to_json(), lines, rep.ok


def run_gen_example(args) -> tuple[dict | None, list[str]]:
    if args.spec == "all":
        if not args.out:
            raise StructuralError("gen-example all needs --out DIR")
        written = corpus.write_corpus(args.out)
        return {"written": [str(p) for p in written]}, [f"wrote {len(written)} files to {args.out}"]
    M = example(args.spec, args.seed)
    text = ex.dumps(M.expr)
    if args.out:
        out = Path(args.out)
        if out.is_dir():
            out = out / f"{args.spec.replace(':', '_').replace(',', '_')}.json"
        out.write_text(text + "\n", encoding="utf-8")
        return {"written": [str(out)]}, [f"wrote {out}"]
    return None, [text]


# -- parser ------------------------------------------------------------------

def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for random examples")
    p.add_argument("--threads", type=int, default=d(1), help="worker processes for verify-suite")
    p.add_argument("--index", type=int, default=d(0), help="which tangle when there are several")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tanglekit", description="Tangles and tangle matroids of small matroids.")
    _globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, help_: str, needs_input: bool = True, order: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=[common])
        if order:
            p.add_argument("--order", "-k", type=int, required=True)
        if needs_input:
            p.add_argument("matroid", help="JSON path, inline JSON, or example spec")
        return p

    verb("tangles", "enumerate tangles of order K").add_argument("--list-maximal-small", action="store_true")
    verb("tangle-matroid", "tangle matroid of a tangle")
    verb("breadth", "breadth with a witness").add_argument("--witness", action="store_true")
    verb("reduce", "reduce to a weakly 4-connected minor").add_argument("--trace", metavar="OUT.json")
    p = verb("check", "connectivity predicates", order=False)
    p.add_argument("--weak4", action="store_true")
    p.add_argument("--round", action="store_true")
    p.add_argument("--titanic", metavar="SET")
    p.add_argument("--solid", metavar="SET")
    p.add_argument("--fully-closed", metavar="SET")
    p.add_argument("--svec", metavar="S0,S1,...")
    verb("kconn", "is a set k-connected").add_argument("--set", required=True, metavar="LABELS")
    verb("truncate", "truncate a tangle").add_argument("--to", type=int, required=True, metavar="T")
    p = verb("verify-suite", "run a property suite", needs_input=False, order=False)
    p.add_argument("suite_id")
    p.add_argument("--budget", type=int, help="maximum number of instances")
    p.add_argument("--select", default="all", help="instance selector (all, corpus, random, names)")
    p.add_argument("--max-n", type=int)
    p = verb("gen-example", "print or write an example MatroidExpr", needs_input=False, order=False)
    p.add_argument("spec", help="u37 | k4 | sec9:S | random:N,R[,SEED] | corpus entry | all")
    p.add_argument("--out", help="file or directory to write")
    return parser


VERBS = {
    "tangles": cmd_tangles,
    "tangle-matroid": cmd_tangle_matroid,
    "breadth": cmd_breadth,
    "reduce": cmd_reduce,
    "check": cmd_check,
    "kconn": cmd_kconn,
    "truncate": cmd_truncate,
}


def _emit(args, payload: dict | None, lines: list[str]) -> None:
    if args.json and payload is not None:
        print(json.dumps(payload))
    else:
        print("\n".join(lines))


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits 2 on usage errors, 0 on --help
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    ok = True
    try:
        if args.verb == "verify-suite":
            payload, lines, ok = run_verify_suite(args)
        elif args.verb == "gen-example":
            payload, lines = run_gen_example(args)
        else:
            M = load_matroid(args.matroid, args.seed)
            payload, lines = VERBS[args.verb](args, M)
            if args.verb in ("check", "kconn"):
                ok = bool(payload["value"])
        _emit(args, payload, lines)
    except CliFailure as e:
        _emit(args, {"error": str(e)}, [str(e)])
        return EXIT_FAIL
    except ResourceCapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (StructuralError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PreconditionError, InvariantError, TanglekitError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
