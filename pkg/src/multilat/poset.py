"""Finite posets stored as dense boolean order matrices.

Elements are addressed by label at the public surface and by their index
(position in ``Poset.elements``) internally. Every set-valued query returns
its members in index order so results are deterministic.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import CycleDetected, DuplicateLabel, UnknownLabel

BOTTOM = "⊥"
TOP = "⊤"

# ASCII spellings accepted wherever a label is looked up.
ALIASES = {"bot": BOTTOM, "top": TOP, BOTTOM: "bot", TOP: "top"}


def transitive_closure(rel):
    """Reflexive-transitive closure of a square boolean matrix (Warshall)."""
    closure = np.array(rel, dtype=bool, copy=True)
    np.fill_diagonal(closure, True)
    for k in range(closure.shape[0]):
        closure |= np.outer(closure[:, k], closure[k, :])
    return closure


class Poset:
    """An immutable finite partial order.

    Parameters
    ----------
    elements : sequence of str
        Unique, non-empty labels. Position ``i`` is the element's index.
    leq : array_like of bool, shape (n, n)
        ``leq[i, j]`` is true iff element ``i`` is below element ``j``.
    name : str, optional
    """

    def __init__(self, elements, leq, name=""):
        elements = tuple(str(e) for e in elements)
        seen = set()
        for e in elements:
            if not e:
                raise DuplicateLabel("labels must be non-empty")
            if e in seen:
                raise DuplicateLabel(f"duplicate label {e!r}")
            seen.add(e)
        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise ValueError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise ValueError("order relation is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleDetected(f"{elements[i]!r} and {elements[j]!r} are mutually below each other")
        if not (transitive_closure(leq) == leq).all():
            raise ValueError("order relation is not transitive")
        leq.setflags(write=False)
        self.elements = elements
        self.leq = leq
        self.name = name
        self._index = {e: i for i, e in enumerate(elements)}

    @classmethod
    def from_covers(cls, labels, covers, name=""):
        """Build a poset from its labels and a list of ``(lower, upper)`` pairs.

        The pairs need not be irredundant; the order is their
        reflexive-transitive closure.
        """
        labels = [str(x) for x in labels]
        probe = cls(labels, np.eye(len(labels), dtype=bool))  # label validation only
        rel = np.eye(len(labels), dtype=bool)
        for lo, hi in covers:
            rel[probe.index(lo), probe.index(hi)] = True
        closure = transitive_closure(rel)
        both = closure & closure.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleDetected(f"covers form a cycle through {labels[i]!r} and {labels[j]!r}")
        return cls(labels, closure, name=name)

    # -- element addressing -------------------------------------------------

    @property
    def n(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            self.index(x)
        except UnknownLabel:
            return False
        return True

    def index(self, x):
        """Index of ``x``, given as a label (str) or as an index (int)."""
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            if 0 <= x < self.n:
                return int(x)
            raise UnknownLabel(f"index {x} out of range for {self.n} elements")
        try:
            return self._index[x]
        except KeyError:
            alias = ALIASES.get(x)
            if alias is not None and alias in self._index:
                return self._index[alias]
        raise UnknownLabel(f"unknown element {x!r}")

    def indices(self, xs):
        return sorted({self.index(x) for x in xs})

    def label(self, i):
        return self.elements[i]

    def labels(self, idx):
        return tuple(self.elements[i] for i in idx)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and bool((self.leq == other.leq).all())

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<Poset{name} n={self.n}>"

    # -- order queries on indices -------------------------------------------

    def le(self, x, y):
        return bool(self.leq[self.index(x), self.index(y)])

    @property
    def lt(self):
        strict = self.leq.copy()
        np.fill_diagonal(strict, False)
        return strict

    def cover_matrix(self):
        lt = self.lt.astype(np.int64)
        return self.lt & ((lt @ lt) == 0)

    def cover_pairs(self):
        """Index pairs ``(i, j)`` with ``i`` covered by ``j``, sorted."""
        return [tuple(map(int, p)) for p in np.argwhere(self.cover_matrix())]

    def upper_mask(self, idx):
        """Boolean mask of the common upper bounds of the index set ``idx``."""
        idx = list(idx)
        if not idx:
            return np.ones(self.n, dtype=bool)
        return self.leq[idx, :].all(axis=0)

    def lower_mask(self, idx):
        idx = list(idx)
        if not idx:
            return np.ones(self.n, dtype=bool)
        return self.leq[:, idx].all(axis=1)

    def minimal_of(self, mask):
        """Minimal elements of the set given as a boolean mask."""
        mask = np.asarray(mask, dtype=bool)
        sub = self.lt[np.ix_(mask, mask)]
        members = np.flatnonzero(mask)
        return tuple(int(i) for i in members[~sub.any(axis=0)])

    def maximal_of(self, mask):
        mask = np.asarray(mask, dtype=bool)
        sub = self.lt[np.ix_(mask, mask)]
        members = np.flatnonzero(mask)
        return tuple(int(i) for i in members[~sub.any(axis=1)])

    def sup(self, idx):
        """Minimal upper bounds of an index set."""
        return self.minimal_of(self.upper_mask(idx))

    def inf(self, idx):
        """Maximal lower bounds of an index set."""
        return self.maximal_of(self.lower_mask(idx))

    @property
    def top(self):
        """Index of the maximum, or ``None``."""
        full = np.flatnonzero(self.leq.all(axis=0))
        return int(full[0]) if len(full) else None

    @property
    def bottom(self):
        full = np.flatnonzero(self.leq.all(axis=1))
        return int(full[0]) if len(full) else None

    def is_bounded(self):
        return self.top is not None and self.bottom is not None

    def is_chain(self):
        return bool((self.leq | self.leq.T).all())

    # -- derived posets -----------------------------------------------------

    def dual(self):
        return Poset(self.elements, self.leq.T, name=f"{self.name}^op" if self.name else "")

    def induced(self, xs, name=""):
        """Subposet on ``xs`` (labels or indices), kept in index order."""
        idx = self.indices(xs)
        return Poset(self.labels(idx), self.leq[np.ix_(idx, idx)], name=name)

    def relabel(self, labels, name=None):
        return Poset(labels, self.leq, name=self.name if name is None else name)

    def height(self):
        """Length of the longest chain ending at each element (minimal ones: 0)."""
        lt = self.lt
        level = np.zeros(self.n, dtype=int)
        # a topological order: sort by down-set size
        for j in np.argsort(self.leq.sum(axis=0), kind="stable"):
            below = np.flatnonzero(lt[:, j])
            if len(below):
                level[j] = level[below].max() + 1
        return level


# -- label-level operations ---------------------------------------------------

def from_covers(labels, covers, name=""):
    return Poset.from_covers(labels, covers, name=name)


def bounds(P, X, side="upper"):
    """Common upper (``side="upper"``) or lower bounds of ``X`` as labels.

    The empty set is bounded by every element.
    """
    idx = P.indices(X)
    if side == "upper":
        mask = P.upper_mask(idx)
    elif side == "lower":
        mask = P.lower_mask(idx)
    else:
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    return P.labels(np.flatnonzero(mask))


def extremal(P, S, side="minimal"):
    """Minimal or maximal members of ``S``."""
    mask = np.zeros(P.n, dtype=bool)
    mask[P.indices(S)] = True
    if side == "minimal":
        return P.labels(P.minimal_of(mask))
    if side == "maximal":
        return P.labels(P.maximal_of(mask))
    raise ValueError(f"side must be 'minimal' or 'maximal', got {side!r}")


def bounded(P):
    """``(top, bottom)`` labels; either is ``None`` when absent."""
    top, bot = P.top, P.bottom
    return (None if top is None else P.label(top), None if bot is None else P.label(bot))


def covers(P):
    """Cover pairs as ``(lower, upper)`` labels."""
    return [(P.label(i), P.label(j)) for i, j in P.cover_pairs()]


def chain(n, labels=None, name=""):
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    return Poset(labels, np.triu(np.ones((n, n), dtype=bool)), name=name)


def antichain(labels, name=""):
    return Poset(labels, np.eye(len(labels), dtype=bool), name=name)


def subsets_up_to(n, k):
    """All index subsets of ``range(n)`` with at most ``k`` members."""
    for size in range(k + 1):
        yield from combinations(range(n), size)


def to_dot(P, name=None):
    """Hasse diagram in Graphviz DOT, drawn bottom to top."""
    gname = name or P.name or "poset"
    lines = [f'digraph "{_esc(gname)}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for i, e in enumerate(P.elements):
        lines.append(f'  n{i} [label="{_esc(e)}"];')
    for i, j in P.cover_pairs():
        lines.append(f"  n{i} -> n{j} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s):
    return str(s).replace("\\", "\\\\").replace('"', '\\"')
