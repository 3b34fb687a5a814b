"""JSON files for posets, algebras, contexts, maps and Galois pairs.

Every document may carry ``"schema": 1``; ``bot`` and ``top`` are accepted
as ASCII spellings of ``⊥`` and ``⊤``. Paths inside a Galois file are
resolved relative to that file; ``"builtin:<name>"`` refers to the
catalog.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import catalog
from .algebra import Pocrim
from .concepts import (CrispContext, galois_from_crisp_context, galois_from_residuum_negation,
                       galois_from_tables)
from .errors import DomainMismatch, DuplicateLabel, ParseError, ShapeMismatch, UnknownLabel, UnknownName
from .funcspace import ValuedFunction
from .poset import ALIASES, BOTTOM, TOP, Poset

SCHEMA = 1
_FROM_ASCII = {"bot": BOTTOM, "top": TOP}


def _norm(x):
    if not isinstance(x, str):
        raise ParseError(f"element names must be strings, got {x!r}")
    return _FROM_ASCII.get(x, x)


def _ascii(x):
    return ALIASES[x] if x in (BOTTOM, TOP) else x


class _Doc:
    """A parsed JSON object plus the text it came from, for error locations."""

    def __init__(self, obj, text="", path=None):
        self.obj, self.text, self.path = obj, text, path

    def where(self, token):
        if not self.text or token is None:
            return ""
        needle = json.dumps(token, ensure_ascii=False)
        for no, line in enumerate(self.text.splitlines(), 1):
            if needle in line:
                return f"line {no}: "
        return ""

    def fail(self, msg, token=None):
        prefix = f"{self.path}: " if self.path else ""
        raise ParseError(f"{prefix}{self.where(token)}{msg}")


def read(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return loads(text, path)


def loads(text, path=None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path or '<input>'}: line {e.lineno} column {e.colno}: {e.msg}") from None
    return _checked(_Doc(obj, text, path))


def _checked(doc):
    if not isinstance(doc.obj, dict):
        doc.fail("top level must be a JSON object")
    if doc.obj.get("schema", SCHEMA) != SCHEMA:
        doc.fail(f"unsupported schema {doc.obj.get('schema')!r} (expected {SCHEMA})")
    return doc


def _doc(src, base=None):
    """Accept a path, a dict, a ``builtin:`` string or a ready ``_Doc``."""
    if isinstance(src, _Doc):
        return src
    if isinstance(src, dict):
        return _checked(_Doc(src, json.dumps(src, ensure_ascii=False, indent=1)))
    if isinstance(src, (str, Path)):
        p = Path(src)
        if base is not None and not p.is_absolute():
            p = Path(base) / p
        return read(p)
    raise ParseError(f"expected a file path or JSON object, got {src!r}")


def _require(doc, key, kind=None):
    if key not in doc.obj:
        doc.fail(f"missing field {key!r}")
    v = doc.obj[key]
    if kind is not None and not isinstance(v, kind):
        doc.fail(f"field {key!r} has the wrong type")
    return v


# -- posets and algebras ----------------------------------------------------


def _poset(doc):
    elements = [_norm(x) for x in _require(doc, "elements", list)]
    covers = doc.obj.get("covers", doc.obj.get("order", []))
    pairs = []
    for pair in covers:
        if not (isinstance(pair, list) and len(pair) == 2):
            doc.fail(f"cover {pair!r} is not a [lower, upper] pair")
        lo, hi = map(_norm, pair)
        for x in (lo, hi):
            if x not in elements:
                doc.fail(f"cover {pair!r} uses unknown element {x!r}", x)
        pairs.append((lo, hi))
    try:
        return Poset.from_covers(elements, pairs, name=doc.obj.get("name", ""))
    except (DuplicateLabel, UnknownLabel) as e:
        doc.fail(str(e))


def parse_poset(src):
    return _poset(_doc(src))


def _table(doc, key, P):
    rows = _require(doc, key, list)
    if len(rows) != P.n:
        doc.fail(f"{key} table has {len(rows)} rows, expected {P.n}")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != P.n:
            doc.fail(f"{key} row {i + 1} ({P.label(i)}) must list {P.n} entries")
        try:
            out.append([P.index(_norm(x)) for x in row])
        except UnknownLabel:
            bad = next(x for x in row if _norm(x) not in P)
            doc.fail(f"{key} row {i + 1} ({P.label(i)}): unknown element {bad!r}", bad)
    return out


def _algebra(doc, base=None):
    obj = doc.obj
    if isinstance(obj.get("builtin"), str):
        return _builtin_algebra(obj["builtin"], doc)
    P = _poset(doc)
    mul = _table(doc, "mul", P)
    imp = _table(doc, "imp", P) if "imp" in obj else None
    top = _norm(obj["top"]) if "top" in obj else None
    bottom = _norm(obj["bottom"]) if "bottom" in obj else None
    for x in (top, bottom):
        if x is not None and x not in P:
            doc.fail(f"unknown element {x!r}", x)
    try:
        return Pocrim(P, mul, imp, top=top, bottom=bottom, name=obj.get("name", ""))
    except ShapeMismatch as e:
        doc.fail(str(e))


def _builtin_algebra(name, doc=None):
    try:
        alg = catalog.builtin(name)
    except UnknownName as e:
        if doc is None:
            raise ParseError(str(e)) from None
        doc.fail(str(e))
    if not isinstance(alg, Pocrim):
        raise ParseError(f"builtin {name!r} is not an algebra")
    return alg


def parse_algebra(src, base=None):
    if isinstance(src, str) and src.startswith("builtin:"):
        return _builtin_algebra(src[len("builtin:"):])
    return _algebra(_doc(src, base), base)


def parse_structure(src):
    """A poset or an algebra, depending on whether tables are present."""
    doc = _doc(src)
    return _algebra(doc) if "mul" in doc.obj or "builtin" in doc.obj else _poset(doc)


def poset_to_json(P, ascii=False):
    f = _ascii if ascii else (lambda x: x)
    return {
        "schema": SCHEMA,
        "type": "poset",
        "name": P.name,
        "elements": [f(x) for x in P.elements],
        "covers": [[f(P.label(i)), f(P.label(j))] for i, j in P.cover_pairs()],
    }


def algebra_to_json(alg, ascii=False):
    f = _ascii if ascii else (lambda x: x)
    d = poset_to_json(alg.poset, ascii)
    d["type"] = "pocrim"
    d["name"] = alg.name
    d["top"] = f(alg.poset.label(alg.top))
    if alg.bottom is not None:
        d["bottom"] = f(alg.poset.label(alg.bottom))
    d["mul"] = [[f(x) for x in row] for row in alg.table_labels("mul")]
    d["imp"] = [[f(x) for x in row] for row in alg.table_labels("imp")]
    return d


# -- contexts, maps, Galois files -------------------------------------------


def parse_context(src, base=None):
    doc = _doc(src, base)
    objects = _require(doc, "objects", list)
    attributes = _require(doc, "attributes", list)
    incidence = _require(doc, "incidence", list)
    for pair in incidence:
        if not (isinstance(pair, list) and len(pair) == 2):
            doc.fail(f"incidence entry {pair!r} is not an [object, attribute] pair")
    try:
        return CrispContext(objects, attributes, incidence)
    except UnknownLabel as e:
        doc.fail(str(e))


def context_to_json(ctx):
    return {
        "schema": SCHEMA,
        "type": "context",
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": [list(p) for p in sorted(ctx.incidence)],
    }


def parse_function(obj, domain=None):
    """``{"domain": [...], "values": [...]}``, a ``{x: value}`` mapping, or a bare value list."""
    try:
        if isinstance(obj, dict) and "values" in obj:
            f = ValuedFunction(obj.get("domain", domain), [_norm(v) for v in obj["values"]])
        elif isinstance(obj, dict):
            f = ValuedFunction.from_mapping({k: _norm(v) for k, v in obj.items()}, domain)
        elif isinstance(obj, list):
            f = ValuedFunction(domain, [_norm(v) for v in obj])
        else:
            raise ParseError(f"cannot read a map from {obj!r}")
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad map {obj!r}: {e}") from None
    if domain is not None and list(f.domain) != list(domain):
        raise ParseError(f"map domain {list(f.domain)} differs from {list(domain)}")
    return f


def function_to_json(f):
    return {"domain": list(f.domain), "values": list(f.values)}


def parse_galois(src, base=None):
    doc = _doc(src, base)
    if doc.path is not None:
        base = Path(doc.path).parent
    kind = _require(doc, "type", str)
    obj = doc.obj
    if kind == "crisp":
        return galois_from_crisp_context(parse_context(_require(doc, "context"), base))
    if kind == "residuum-negation":
        alg = parse_algebra(_require(doc, "algebra"), base)
        domain = _require(doc, "domain", list)
        r = parse_function(_require(doc, "r"), domain)
        _check_values(doc, alg, r)
        return galois_from_residuum_negation(alg, domain, r)
    if kind == "tables":
        alg1 = parse_algebra(_require(doc, "algebra1"), base)
        alg2 = parse_algebra(obj.get("algebra2", obj["algebra1"]), base)
        G = _require(doc, "objects", list)
        M = _require(doc, "attributes", list)

        def entries(key, dom, cod, a, b):
            out = []
            for e in _require(doc, key, list):
                if not isinstance(e, dict) or "arg" not in e or "value" not in e:
                    doc.fail(f"{key} entries need 'arg' and 'value'")
                x, y = parse_function(e["arg"], dom), parse_function(e["value"], cod)
                _check_values(doc, a, x)
                _check_values(doc, b, y)
                out.append((x, y))
            return out

        try:
            return galois_from_tables(alg1, G, alg2, M, entries("phi", G, M, alg1, alg2),
                                      entries("psi", M, G, alg2, alg1))
        except DomainMismatch as e:
            doc.fail(str(e))
    doc.fail(f"unknown Galois type {kind!r}", kind)


def _check_values(doc, alg, f):
    for v in f.values:
        if v not in alg.poset:
            doc.fail(f"unknown element {v!r}", v)


def galois_to_json(pair):
    """Self-contained document with the algebra(s) inlined."""
    if pair.source == "crisp":
        return {"schema": SCHEMA, "type": "crisp", "context": context_to_json(pair.meta["context"])}
    if pair.source == "residuum-negation":
        return {"schema": SCHEMA, "type": "residuum-negation", "algebra": algebra_to_json(pair.alg1),
                "domain": list(pair.G), "r": pair.meta["r"].as_dict()}
    S1, S2 = pair.S1, pair.S2
    return {
        "schema": SCHEMA, "type": "tables",
        "algebra1": algebra_to_json(pair.alg1), "objects": list(pair.G),
        "algebra2": algebra_to_json(pair.alg2), "attributes": list(pair.M),
        "phi": [{"arg": list(S1.function(c).values), "value": list(S2.function(int(v)).values)}
                for c, v in enumerate(pair.phi_table)],
        "psi": [{"arg": list(S2.function(c).values), "value": list(S1.function(int(v)).values)}
                for c, v in enumerate(pair.psi_table)],
    }


def dumps(obj):
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def write(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")
