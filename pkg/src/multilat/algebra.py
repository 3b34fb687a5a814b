"""Finite pocrims and residuated multilattices.

A :class:`Pocrim` is a finite poset with a top element, a commutative
monoid operation ``mul`` (⊙) with identity top, and its residual ``imp``
(→), tied together by adjointness::

    a ⊙ c <= b  iff  c <= a → b

Tables are ``n × n`` integer arrays of element indices, rows and columns in
the poset's element order. Every check here is exhaustive over tuples and
reports the lexicographically first counterexample.
"""

from __future__ import annotations

import numpy as np

from .errors import NotAMaximum, NotResiduated, ShapeMismatch, UnverifiedInput
from .order import classify, multilattice_selftest
from .poset import Poset
from .report import VerificationReport


def _as_table(table, n, what):
    arr = np.asarray(table)
    if arr.shape != (n, n):
        raise ShapeMismatch(f"{what} table has shape {arr.shape}, expected {(n, n)}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ShapeMismatch(f"{what} table must hold element indices")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ShapeMismatch(f"{what} table has entries outside 0..{n - 1}")
    arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


def residual_of(poset, mul, a, b):
    """Largest ``c`` with ``a ⊙ c <= b``, or ``None`` if there is no largest one."""
    a, b = poset.index(a), poset.index(b)
    mul = np.asarray(mul)
    S = poset.leq[mul[a, :], b]
    if not S.any():
        return None
    # c is the maximum of S iff every member of S lies below c
    tops = np.flatnonzero(S & poset.leq[S, :].all(axis=0))
    return int(tops[0]) if len(tops) else None


def _residual_table(poset, mul):
    n = poset.n
    leq = poset.leq
    imp = np.full((n, n), -1, dtype=np.int64)
    for a in range(n):
        S = leq[mul[a, :], :]  # S[c, b]: a ⊙ c <= b
        # bad[c, b]: some member of S_b is not below c
        bad = (S.T.astype(np.int64) @ (~leq).astype(np.int64)).T > 0
        ok = S & ~bad
        has = ok.any(axis=0)
        imp[a, has] = ok[:, has].argmax(axis=0)
    return imp


def derive_implication(poset, mul):
    """The residual table of ``mul``, or ``None`` if some pair has no residual."""
    mul = _as_table(mul, poset.n, "mul")
    imp = _residual_table(poset, mul)
    return None if (imp < 0).any() else imp


def residuation_failure(poset, mul):
    """First ``(a, b)`` (as labels) without a residual, or ``None``."""
    mul = _as_table(mul, poset.n, "mul")
    bad = np.argwhere(_residual_table(poset, mul) < 0)
    return poset.labels(bad[0]) if len(bad) else None


class Pocrim:
    """A finite partially ordered commutative residuated integral monoid.

    Parameters
    ----------
    poset : Poset
    mul : array_like, shape (n, n)
        Indices of ``x ⊙ y``.
    imp : array_like, shape (n, n), optional
        Indices of ``x → y``. Derived from ``mul`` when omitted; raises
        :class:`NotResiduated` if no residual exists.
    top, bottom : label or index, optional
        Default to the poset's maximum and minimum.
    """

    def __init__(self, poset, mul, imp=None, top=None, bottom=None, name=""):
        self.poset = poset
        self.name = name or poset.name
        n = poset.n
        if top is None:
            top = poset.top
            if top is None:
                raise NotAMaximum(f"{poset!r} has no maximum")
        self.top = poset.index(top)
        if bottom is None:
            bottom = poset.bottom
        self.bottom = None if bottom is None else poset.index(bottom)
        self.mul = _as_table(mul, n, "mul")
        if imp is None:
            derived = derive_implication(poset, self.mul)
            if derived is None:
                pair = residuation_failure(poset, self.mul)
                raise NotResiduated(f"no residual for {pair[0]} → {pair[1]}", pair)
            imp = derived
        self.imp = _as_table(imp, n, "imp")

    @property
    def n(self):
        return self.poset.n

    @property
    def elements(self):
        return self.poset.elements

    def times(self, x, y):
        p = self.poset
        return p.label(self.mul[p.index(x), p.index(y)])

    def implies(self, x, y):
        p = self.poset
        return p.label(self.imp[p.index(x), p.index(y)])

    def table_labels(self, which="mul"):
        t = self.mul if which == "mul" else self.imp
        return [[self.poset.label(v) for v in row] for row in t]

    def with_entry(self, which, x, y, z, symmetric=True):
        """Copy with one table entry replaced (``symmetric`` also sets ``y, x``)."""
        p = self.poset
        i, j, k = p.index(x), p.index(y), p.index(z)
        mul, imp = self.mul.copy(), self.imp.copy()
        t = mul if which == "mul" else imp
        t[i, j] = k
        if symmetric:
            t[j, i] = k
        return Pocrim(p, mul, imp, top=self.top, bottom=self.bottom, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, Pocrim):
            return NotImplemented
        return (self.poset == other.poset and self.top == other.top and self.bottom == other.bottom
                and bool((self.mul == other.mul).all()) and bool((self.imp == other.imp).all()))

    def __hash__(self):
        return hash((self.poset, self.mul.tobytes(), self.imp.tobytes()))

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<Pocrim{name} n={self.n}>"


class OpTable:
    """A bare binary operation table over a poset, addressed by labels.

    ``t["a", "b"]`` and ``t["a"]["b"]`` both give the label of ``a ∘ b``.
    """

    def __init__(self, poset, table, symbol="→"):
        self.poset = poset
        self.table = _as_table(table, poset.n, symbol)
        self.symbol = symbol

    def __getitem__(self, key):
        p = self.poset
        if isinstance(key, tuple):
            x, y = key
            return p.label(self.table[p.index(x), p.index(y)])
        row = self.table[p.index(key)]
        return {p.label(j): p.label(v) for j, v in enumerate(row)}

    def __eq__(self, other):
        if isinstance(other, OpTable):
            return self.poset == other.poset and bool((self.table == other.table).all())
        return NotImplemented

    def __hash__(self):
        return hash((self.poset, self.table.tobytes()))

    def labels(self):
        return [[self.poset.label(v) for v in row] for row in self.table]


# -- verification -----------------------------------------------------------


def _first(mask, poset):
    """Labels of the lexicographically first True position of ``mask``."""
    hits = np.argwhere(mask)
    return poset.labels(hits[0]) if len(hits) else None


def _grids(n):
    return np.ix_(np.arange(n), np.arange(n), np.arange(n))


def verify_pocrim(alg):
    """Monoid laws, bounds and adjointness, exhaustively over all triples."""
    P, leq, mul, imp, top = alg.poset, alg.poset.leq, alg.mul, alg.imp, alg.top
    n = P.n
    rep = VerificationReport(f"pocrim {alg.name}".strip())
    rep.add("top-is-maximum", _first(~leq[:, top], P))
    if alg.bottom is not None:
        rep.add("bottom-is-minimum", _first(~leq[alg.bottom, :], P))
    rep.add("commutativity", _first(mul != mul.T, P))
    rep.add("identity", _first(mul[top, :] != np.arange(n), P))
    a, b, c = _grids(n)
    rep.add("associativity", _first(mul[mul[a, b], c] != mul[a, mul[b, c]], P))
    # adjointness over (a, b, c): a ⊙ c <= b  iff  c <= a → b
    rep.add("adjointness", _first(leq[mul[a, c], b] != leq[c, imp[a, b]], P))
    return rep


def verify_rml(alg):
    """Pocrim axioms plus: the order is a complete multilattice (finite: bounded)."""
    rep = verify_pocrim(alg)
    rep.subject = f"residuated multilattice {alg.name}".strip()
    rep.add("multilattice", None if multilattice_selftest(alg.poset) else ("definition",))
    rep.add("complete", None if alg.poset.is_bounded() else ("unbounded",),
            note="" if alg.poset.is_bounded() else "no top or no bottom")
    return rep


def check_properties(alg):
    """The derived pocrim laws P1..P7, exhaustively."""
    P, leq, mul, imp, top = alg.poset, alg.poset.leq, alg.mul, alg.imp, alg.top
    n = P.n
    a, b, c = _grids(n)
    a2, b2 = np.ix_(np.arange(n), np.arange(n))
    ab = mul[a2, b2]
    a_to_b = imp[a2, b2]
    rep = VerificationReport(f"pocrim laws {alg.name}".strip())
    rep.add("P1", _first(~(leq[ab, a2] & leq[ab, b2]), P))
    rep.add("P2", _first(~(leq[mul[a2, a_to_b], a2] & leq[a2, imp[b2, ab]]
                           & leq[mul[b2, a_to_b], b2] & leq[b2, imp[a2, ab]]), P))
    rep.add("P3", _first(leq[a2, b2] != (a_to_b == top), P))
    mono = (leq[mul[a, c], mul[b, c]] & leq[imp[c, a], imp[c, b]] & leq[imp[b, c], imp[a, c]])
    rep.add("P4", _first(leq[a, b] & ~mono, P))
    rep.add("P5", _first(imp[a, imp[b, c]] != imp[b, imp[a, c]], P))
    rep.add("P6", _first(~leq[mul[imp[a, b], imp[b, c]], imp[a, c]], P))
    ab3 = imp[a, b]
    rep.add("P7", _first(~(leq[ab3, imp[mul[a, c], mul[b, c]]]
                           & leq[ab3, imp[imp[c, a], imp[c, b]]]
                           & leq[ab3, imp[imp[b, c], imp[a, c]]]), P))
    return rep


# -- constructions ----------------------------------------------------------


def ordinal_sum(A, B, name=None):
    """Stack ``B`` on top of ``A`` with the two tops identified.

    Elements of A other than its top lie below all of B. Labels that
    clash between the two summands get a ``_1`` / ``_2`` suffix.
    """
    if A.bottom is None:
        raise UnverifiedInput(f"{A!r} has no bottom")
    for alg in (A, B):
        rep = verify_pocrim(alg)
        if not rep.ok:
            raise UnverifiedInput(f"{alg!r} is not a pocrim: {[c.name for c in rep.failures]}")

    a_rest = [i for i in range(A.n) if i != A.top]
    a_labels = [A.poset.label(i) for i in a_rest]
    b_labels = list(B.elements)
    clash = set(a_labels) & set(b_labels)
    a_labels = [f"{x}_1" if x in clash else x for x in a_labels]
    b_labels = [f"{x}_2" if x in clash else x for x in b_labels]

    nA, nB = len(a_rest), B.n
    N = nA + nB
    top = nA + B.top
    a_pos = np.empty(A.n, dtype=np.int64)
    a_pos[a_rest] = np.arange(nA)
    a_pos[A.top] = top
    # inverse maps; -1 marks "not on this side"
    to_a = np.full(N, -1)
    to_a[:nA] = a_rest
    to_a[top] = A.top
    to_b = np.full(N, -1)
    to_b[nA:] = np.arange(nB)

    leq = np.zeros((N, N), dtype=bool)
    leq[:nA, :nA] = A.poset.leq[np.ix_(a_rest, a_rest)]
    leq[:nA, nA:] = True
    leq[nA:, nA:] = B.poset.leq
    mul = np.empty((N, N), dtype=np.int64)
    imp = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        for y in range(N):
            if to_b[x] >= 0 and to_b[y] >= 0:
                mul[x, y] = nA + B.mul[to_b[x], to_b[y]]
                imp[x, y] = nA + B.imp[to_b[x], to_b[y]]
            elif to_a[x] >= 0 and to_a[y] >= 0:
                mul[x, y] = a_pos[A.mul[to_a[x], to_a[y]]]
                imp[x, y] = a_pos[A.imp[to_a[x], to_a[y]]]
            elif x < nA:  # x in A minus top, y in B
                mul[x, y] = x
                imp[x, y] = top
            else:  # x in B, y in A minus top
                mul[x, y] = y
                imp[x, y] = y
    poset = Poset(a_labels + b_labels, leq, name=name or f"{A.name}⊕{B.name}")
    return Pocrim(poset, mul, imp, top=top, bottom=a_pos[A.bottom], name=poset.name)


def is_residuated_lattice(alg):
    """Verified pocrim whose order is a bounded lattice."""
    return verify_pocrim(alg).ok and classify(alg.poset).is_lattice and alg.poset.is_bounded()
