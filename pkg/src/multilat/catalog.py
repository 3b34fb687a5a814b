"""Built-in posets and algebras.

``builtin(name)`` returns fresh objects each call. Names:

* ``ml6-poset``, ``fig1-right-poset``, ``fig2-poset`` – posets;
* ``rml7`` – the printed seven-element tables, verbatim (they are *not* a
  pocrim: ⊙ is not associative);
* ``rml7-repaired`` – a genuine pocrim on the same seven-element order;
* ``rml7-poset`` – that order alone;
* ``ml6-imp-table`` – the only implication compatible with a pocrim on ML6;
* ``two`` – the Boolean chain;
* ``chain-N-godel``, ``chain-N-lukasiewicz`` – N-element residuated chains.
"""

from __future__ import annotations

import re

import numpy as np

from .algebra import OpTable, Pocrim
from .errors import UnknownName
from .order import ml6
from .poset import BOTTOM as B
from .poset import TOP as T
from .poset import Poset, chain

RML7_ELEMENTS = [B, "a", "b", "c", "d", "e", T]

RML7_MUL = [
    # ⊥  a  b  c  d  e  ⊤
    [B, B, B, B, B, B, B],  # ⊥
    [B, "a", B, B, "a", B, "a"],  # a
    [B, B, "b", "b", B, B, "b"],  # b
    [B, B, "b", "c", B, B, "c"],  # c
    [B, "a", B, B, "d", B, "d"],  # d
    [B, B, B, B, B, "a", "e"],  # e
    [B, "a", "b", "c", "d", "e", T],  # ⊤
]

RML7_IMP = [
    [T, T, T, T, T, T, T],
    ["b", T, "b", T, T, T, T],
    ["a", "a", T, T, T, T, T],
    [B, "a", "b", T, "d", T, T],
    [B, "a", "b", "c", T, T, T],
    ["d", "e", "d", "e", "d", T, T],
    [B, "a", "b", "c", "d", "e", T],
]

# Lookalike of the printed tables that is an actual pocrim on the same order:
# among the 17 pocrims on this poset it keeps e⊙e = a, e→a = e, e→c = e and
# is closest to the printed tables (10 ⊙ and 13 → entries differ).
RML7_REPAIRED_MUL = [
    [B, B, B, B, B, B, B],
    [B, B, B, B, B, B, "a"],
    [B, B, B, B, B, B, "b"],
    [B, B, B, "a", B, "a", "c"],
    [B, B, B, B, B, B, "d"],
    [B, B, B, "a", B, "a", "e"],
    [B, "a", "b", "c", "d", "e", T],
]

RML7_REPAIRED_IMP = [
    [T, T, T, T, T, T, T],
    ["e", T, "e", T, T, T, T],
    ["e", "e", T, T, T, T, T],
    ["d", "e", "d", T, "e", T, T],
    ["e", "e", "e", "e", T, T, T],
    ["d", "e", "d", "e", "e", T, T],
    [B, "a", "b", "c", "d", "e", T],
]

ML6_IMP = [
    [T, T, T, T, T, T],
    ["b", T, "b", T, T, T],
    ["a", "a", T, T, T, T],
    [B, "a", "b", T, "d", T],
    [B, "a", "b", "c", T, T],
    [B, "a", "b", "c", "d", T],
]

FIG2_COVERS = [
    (B, "a"), (B, "b"), (B, "c"),
    ("a", "d"), ("a", "f"),
    ("b", "d"), ("b", "f"), ("b", "g"),
    ("c", "f"), ("c", "g"),
    ("d", "h"), ("d", "i"),
    ("f", "h"), ("f", "i"), ("f", "j"),
    ("g", "i"), ("g", "j"),
    ("h", T), ("i", T), ("j", T),
]

# The ML6 copies listed for fig2. S9 is listed too, but fails the restricted
# condition: a ⊔ c = {f} and f is not in it.
FIG2_LISTED_COPIES = {
    "S1": {B, "a", "b", "d", "f", "i"},
    "S2": {B, "a", "b", "d", "f", "h"},
    "S3": {B, "b", "c", "f", "g", "i"},
    "S4": {B, "b", "c", "f", "g", "j"},
    "S5": {"a", "h", "i", "d", "f", T},
    "S6": {"b", "d", "f", "h", "i", T},
    "S7": {"b", "f", "g", "i", "j", T},
    "S8": {"c", "f", "g", "i", "j", T},
    "S9": {B, "a", "c", "j", "h", T},
}


def _index_table(poset, rows):
    return np.array([[poset.index(x) for x in row] for row in rows], dtype=np.int64)


def rml7_poset():
    return Poset.from_covers(
        RML7_ELEMENTS,
        [(B, "a"), (B, "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
         ("c", "e"), ("d", "e"), ("e", T)],
        name="RML7",
    )


def rml7():
    P = rml7_poset()
    return Pocrim(P, _index_table(P, RML7_MUL), _index_table(P, RML7_IMP), name="RML7")


def rml7_repaired():
    P = rml7_poset()
    return Pocrim(P, _index_table(P, RML7_REPAIRED_MUL), _index_table(P, RML7_REPAIRED_IMP),
                  name="RML7-repaired")


def fig2_poset():
    return Poset.from_covers([B, "a", "b", "c", "d", "f", "g", "h", "i", "j", T], FIG2_COVERS, name="fig2")


def fig1_right_poset():
    return Poset.from_covers(
        [B, "a", "b", "c", "d"],
        [(B, "a"), (B, "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        name="fig1-right",
    )


def ml6_imp_table():
    P = ml6()
    return OpTable(P, _index_table(P, ML6_IMP), symbol="→")


def godel_chain(n, labels=None):
    """n-element chain with ⊙ = min and the Gödel residual."""
    P = chain(n, labels, name=f"chain-{n}-godel")
    i, j = np.indices((n, n))
    mul = np.minimum(i, j)
    imp = np.where(i <= j, n - 1, j)
    return Pocrim(P, mul, imp, name=P.name)


def lukasiewicz_chain(n, labels=None):
    """n-element chain 0 < 1 < ... < n-1 with truncated addition."""
    P = chain(n, labels, name=f"chain-{n}-lukasiewicz")
    i, j = np.indices((n, n))
    mul = np.maximum(0, i + j - (n - 1))
    imp = np.minimum(n - 1, (n - 1) - i + j)
    return Pocrim(P, mul, imp, name=P.name)


def two():
    return Pocrim(chain(2, [B, T], name="two"), [[0, 0], [0, 1]], [[1, 1], [0, 1]], name="two")


_FIXED = {
    "ml6-poset": ml6,
    "fig1-right-poset": fig1_right_poset,
    "fig2-poset": fig2_poset,
    "rml7": rml7,
    "rml7-poset": rml7_poset,
    "rml7-repaired": rml7_repaired,
    "ml6-imp-table": ml6_imp_table,
    "two": two,
}

_CHAIN = re.compile(r"chain-(\d+)-(godel|lukasiewicz)$")

NAMES = tuple(_FIXED) + ("chain-N-godel", "chain-N-lukasiewicz")


def builtin(name):
    """Look up a catalog structure by name."""
    if name in _FIXED:
        return _FIXED[name]()
    m = _CHAIN.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownName(f"chain length must be positive in {name!r}")
        return godel_chain(n) if m.group(2) == "godel" else lukasiewicz_chain(n)
    raise UnknownName(f"unknown builtin {name!r}; known: {', '.join(NAMES)}")
