"""``multilat`` command-line interface.

Exit codes: 0 success, 1 a check failed, 2 the input could not be used.
Any FILE argument may also be ``builtin:<name>``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import catalog, io
from .algebra import OpTable, Pocrim, check_properties, ordinal_sum, verify_pocrim, verify_rml
from .concepts import (build_concept_rml, check_closedness, enumerate_concepts,
                       verify_galois)
from .errors import (BudgetExceeded, ClosednessViolated, CycleDetected, DomainMismatch, DuplicateLabel,
                     EmptySubset, MultilatError, NotAMaximum, NotResiduated, ParseError, ShapeMismatch,
                     SizeTooLarge, UnknownLabel, UnknownName, UnverifiedInput)
from .order import classify, find_ml6, multilattice_selftest, subml_check
from .poset import Poset, to_dot
from .reproduce import CHECKS, run
from .search import enumerate_bounded_posets, enumerate_implications, enumerate_pocrims

INPUT_ERRORS = (ParseError, CycleDetected, DuplicateLabel, UnknownLabel, UnknownName, ShapeMismatch,
                NotAMaximum, DomainMismatch, EmptySubset, SizeTooLarge, BudgetExceeded, UnverifiedInput)

AXIOM_ALIASES = {"p3": "p3", "p4": "p4-imp", "p4-imp": "p4-imp", "p5": "p5", "weak": "weakening",
                 "weakening": "weakening", "topid": "topid", "top-identity": "topid"}


def _load(arg):
    """Poset, Pocrim or OpTable from a file or ``builtin:<name>``."""
    if arg.startswith("builtin:"):
        obj = catalog.builtin(arg[len("builtin:"):])
        return obj
    return io.parse_structure(arg)


def _poset_of(obj):
    if isinstance(obj, Poset):
        return obj
    return obj.poset


def _algebra(arg):
    obj = _load(arg)
    if not isinstance(obj, Pocrim):
        raise ParseError(f"{arg}: expected an algebra with a 'mul' table")
    return obj


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps({"schema": io.SCHEMA, **payload}, ensure_ascii=False, indent=2))
    else:
        print(text)


def _report_exit(args, rep, extra=None):
    payload = {"report": rep.to_dict()}
    if extra:
        payload.update(extra)
    _emit(args, payload, str(rep))
    return 0 if rep.ok else 1


# -- commands ---------------------------------------------------------------


def cmd_verify(args):
    if args.kind == "poset":
        obj = _load(args.file)
        P = _poset_of(obj)
        ok = multilattice_selftest(P)
        rep = classify(P, selftest=False)
        _emit(args, {"poset": P.name, "valid": True, "classification": rep.to_dict()},
              f"poset {P.name or args.file}: valid order on {P.n} elements\n{_classification_text(rep)}")
        return 0 if ok else 1
    if args.kind == "galois":
        pair = io.parse_galois(args.file)
        rep = verify_galois(pair, mode=args.mode, k=args.samples, seed=args.seed)
        return _report_exit(args, rep)
    alg = _algebra(args.file)
    rep = verify_pocrim(alg) if args.kind == "pocrim" else verify_rml(alg)
    if args.laws:
        rep.extend(check_properties(alg))
    return _report_exit(args, rep)


def _classification_text(rep):
    lines = [f"  multilattice: {rep.is_multilattice}", f"  complete:     {rep.is_complete}",
             f"  lattice:      {rep.is_lattice}", f"  pure:         {rep.is_pure}"]
    if rep.witness:
        lines.append(f"  witness:      {rep.witness}")
    return "\n".join(lines)


def cmd_classify(args):
    P = _poset_of(_load(args.file))
    rep = classify(P)
    _emit(args, {"classification": rep.to_dict()}, f"{P.name or args.file}\n{_classification_text(rep)}")
    return 0


def cmd_subml(args):
    P = _poset_of(_load(args.file))
    S = [s.strip() for s in args.subset.split(",") if s.strip()]
    ok = subml_check(P, S, args.kind)
    _emit(args, {"subset": S, "kind": args.kind, "holds": ok},
          f"{{{', '.join(S)}}} is {'' if ok else 'not '}a {args.kind} submultilattice")
    return 0 if ok else 1


def cmd_find_ml6(args):
    P = _poset_of(_load(args.file))
    found = find_ml6(P, args.kind, iso=args.iso)
    images = [sorted(e.image, key=P.index) for e in found]
    text = f"{len(found)} {args.kind} copies of ML6\n" + "\n".join("  {" + ", ".join(s) + "}" for s in images)
    _emit(args, {"kind": args.kind, "iso": args.iso, "copies": images}, text.rstrip())
    return 0


def _write_results(out, stem, docs):
    if not out:
        return []
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, doc in enumerate(docs, 1):
        p = d / f"{stem}-{k:03d}.json"
        io.write(p, doc)
        paths.append(str(p))
    return paths


def cmd_search(args):
    P = _poset_of(_load(args.file))
    t0 = time.perf_counter()
    if args.what == "pocrims":
        res = enumerate_pocrims(P, args.top, cap=args.cap, jobs=args.jobs,
                                symmetry_breaking=args.symmetry_breaking)
        docs = [io.algebra_to_json(a) for a in res]
    else:
        axioms = []
        for a in args.axioms.split(","):
            a = a.strip().lower()
            if a not in AXIOM_ALIASES:
                raise UnknownName(f"unknown axiom {a!r}; known: {', '.join(AXIOM_ALIASES)}")
            axioms.append(AXIOM_ALIASES[a])
        res = enumerate_implications(P, args.top, tuple(dict.fromkeys(axioms)), cap=args.cap, jobs=args.jobs)
        docs = [{"schema": io.SCHEMA, "type": "implication", "elements": list(P.elements),
                 "imp": OpTable(P, m).labels()} for m in res]
    paths = _write_results(args.out, args.what.rstrip("s"), docs)
    summary = {**res.summary(), "seconds": round(time.perf_counter() - t0, 4), "files": paths}
    lines = [f"found {summary['found']} ({'exhaustive' if res.exhaustive else 'capped'}), "
             f"{summary['nodes']} nodes, {summary['seconds']}s"]
    if not args.out:
        for doc in docs:
            key = "mul" if args.what == "pocrims" else "imp"
            lines.append(_table_text(P, doc[key]))
    _emit(args, {"summary": summary, "structures": docs if not args.out else None}, "\n".join(lines))
    return 0


def _table_text(P, rows):
    w = max(len(x) for x in P.elements)
    head = " " * (w + 1) + " ".join(f"{x:<{w}}" for x in P.elements)
    body = [f"{P.label(i):<{w}} " + " ".join(f"{x:<{w}}" for x in row) for i, row in enumerate(rows)]
    return "\n".join([head] + body)


def cmd_gen(args):
    posets = enumerate_bounded_posets(args.n)
    docs = [io.poset_to_json(P) for P in posets]
    paths = _write_results(args.out, f"bounded-{args.n}", docs)
    text = f"{len(posets)} bounded posets on {args.n} elements"
    if not args.out:
        text += "\n" + "\n".join(
            f"  {P.name}: " + ", ".join(f"{a}<{b}" for a, b in (
                (P.label(i), P.label(j)) for i, j in P.cover_pairs())) for P in posets)
    _emit(args, {"count": len(posets), "posets": docs if not args.out else None, "files": paths}, text)
    return 0


def cmd_sum(args):
    S = ordinal_sum(_algebra(args.first), _algebra(args.second))
    doc = io.algebra_to_json(S)
    if args.out:
        io.write(args.out, doc)
        print(f"wrote {S.n}-element ordinal sum to {args.out}")
    else:
        print(io.dumps(doc), end="")
    return 0


def cmd_builtin(args):
    if args.name == "list":
        print("\n".join(catalog.NAMES))
        return 0
    obj = catalog.builtin(args.name)
    if isinstance(obj, Pocrim):
        doc = io.algebra_to_json(obj, ascii=args.ascii)
    elif isinstance(obj, OpTable):
        doc = {**io.poset_to_json(obj.poset, args.ascii), "type": "implication", "imp": obj.labels()}
    else:
        doc = io.poset_to_json(obj, ascii=args.ascii)
    if args.out:
        io.write(args.out, doc)
    else:
        print(io.dumps(doc), end="")
    return 0


def cmd_concepts(args):
    pair = io.parse_galois(args.file)
    rep = verify_galois(pair, mode=args.mode, k=args.samples, seed=args.seed)
    if not rep.ok:
        print(rep)
        return 1
    sys_ = enumerate_concepts(pair)
    ext_ok, int_ok = check_closedness(sys_, "ext"), check_closedness(sys_, "int")
    lines = [f"{len(sys_)} concepts"] + [f"  {c.label}" for c in sys_.concepts]
    lines.append(f"extents closed under →: {ext_ok}; intents closed under →: {int_ok}")
    payload = {"concepts": [{"extent": io.function_to_json(c.extent), "intent": io.function_to_json(c.intent)}
                            for c in sys_.concepts], "ext_closed": ext_ok, "int_closed": int_ok}
    if args.dot:
        Path(args.dot).write_text(to_dot(sys_.poset, "concepts"), encoding="utf-8")
    code = 0
    if args.emit_algebra:
        try:
            alg = build_concept_rml(sys_)
        except ClosednessViolated as e:
            lines.append(f"cannot build the concept algebra: {e}")
            code = 1
        else:
            io.write(args.emit_algebra, io.algebra_to_json(alg))
            rml = verify_rml(alg)
            lines.append(f"concept algebra written to {args.emit_algebra}: "
                         f"{'residuated multilattice' if rml.ok else 'FAILED verification'}")
            payload["algebra_verified"] = rml.ok
            code = 0 if rml.ok else 1
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_export(args):
    if args.kind == "concepts":
        P = enumerate_concepts(io.parse_galois(args.file)).poset
        name = "concepts"
    else:
        P = _poset_of(_load(args.file))
        name = None
    dot = to_dot(P, name)
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
    else:
        print(dot, end="")
    return 0


def cmd_reproduce(args):
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    report = run(only, seed=args.seed, jobs=args.jobs, command=" ".join(["reproduce"] + (args.raw or [])))
    if args.json_out:
        io.write(args.json_out, report.to_dict())
    if args.json:
        print(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
    else:
        print(report.table())
    for r in report.discrepancies:
        print(f"warning: {r.name}: known discrepancy in the published data: {r.detail}", file=sys.stderr)
    return report.exit_code


# -- parser -----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="multilat", description="Finite residuated multilattices and their concepts.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify a poset, pocrim, RML or Galois pair")
    v.add_argument("kind", choices=["poset", "pocrim", "rml", "galois"])
    v.add_argument("file")
    v.add_argument("--laws", action="store_true", help="also check the derived laws P1-P7")
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--samples", type=int, default=1000)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common], help="lattice / multilattice classification")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("subml", parents=[common], help="submultilattice test")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated element names")
    s.add_argument("--kind", choices=["full", "restricted"], default="restricted")
    s.set_defaults(func=cmd_subml)

    f = sub.add_parser("find-ml6", parents=[common], help="copies of ML6 that are submultilattices")
    f.add_argument("file")
    f.add_argument("--kind", choices=["full", "restricted"], default="restricted")
    f.add_argument("--iso", choices=["homomorphism", "order"], default="homomorphism")
    f.set_defaults(func=cmd_find_ml6)

    se = sub.add_parser("search", parents=[common], help="search pocrims or implication tables")
    se.add_argument("what", choices=["pocrims", "implications"])
    se.add_argument("file")
    se.add_argument("--top", default=None)
    se.add_argument("--cap", type=int, default=None)
    se.add_argument("--axioms", default="p3,p4,p5,weak,topid")
    se.add_argument("--symmetry-breaking", action="store_true")
    se.add_argument("--out", help="directory for one JSON file per result")
    se.set_defaults(func=cmd_search)

    g = sub.add_parser("gen", parents=[common], help="generate bounded posets")
    g.add_argument("what", choices=["posets"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", help="directory for one JSON file per poset")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("sum", parents=[common], help="ordinal sum of two algebras")
    o.add_argument("first")
    o.add_argument("second")
    o.add_argument("--out")
    o.set_defaults(func=cmd_sum)

    b = sub.add_parser("builtin", parents=[common], help="print a catalog structure as JSON ('list' for names)")
    b.add_argument("name")
    b.add_argument("--out")
    b.add_argument("--ascii", action="store_true", help="write ⊥/⊤ as bot/top")
    b.set_defaults(func=cmd_builtin)

    k = sub.add_parser("concepts", parents=[common], help="enumerate the concepts of a Galois pair")
    k.add_argument("file")
    k.add_argument("--emit-algebra", dest="emit_algebra")
    k.add_argument("--dot")
    k.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    k.add_argument("--samples", type=int, default=1000)
    k.set_defaults(func=cmd_concepts)

    e = sub.add_parser("export", parents=[common], help="export a diagram")
    e.add_argument("format", choices=["dot"])
    e.add_argument("file")
    e.add_argument("--out")
    e.add_argument("--kind", choices=["poset", "concepts"], default="poset")
    e.set_defaults(func=cmd_export)

    r = sub.add_parser("reproduce", parents=[common], help="run every reproduction check")
    r.add_argument("--only", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    r.add_argument("--json-out", dest="json_out", help="also write the JSON report here")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.raw = argv[1:]
    try:
        return args.func(args)
    except INPUT_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (NotResiduated, ClosednessViolated) as e:
        print(f"fail: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except MultilatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
