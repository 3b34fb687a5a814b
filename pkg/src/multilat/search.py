"""Exhaustive search for residuated structures on a fixed finite poset.

Three engines:

* :func:`enumerate_pocrims` – every ⊙ table making the poset a pocrim;
* :func:`enumerate_implications` – every → table satisfying a chosen set
  of implication laws (no ⊙ involved);
* :func:`enumerate_bounded_posets` – bounded posets up to isomorphism.

The table searches are depth-first over a fixed cell order with
constraint checks after each assignment. Branches of the first cell can be
farmed out to worker processes; results are merged and sorted, so output
does not depend on the worker count.
"""

from __future__ import annotations

import string
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .algebra import Pocrim, derive_implication, verify_pocrim
from .errors import NotAMaximum, SizeTooLarge
from .order import find_embeddings
from .poset import BOTTOM, TOP, Poset
from .report import VerificationReport

IMPLICATION_AXIOMS = ("p3", "p4-imp", "p5", "weakening", "topid")


@dataclass
class SearchResult:
    structures: list = field(default_factory=list)
    nodes: int = 0
    exhaustive: bool = True

    def __len__(self):
        return len(self.structures)

    def __iter__(self):
        return iter(self.structures)

    def summary(self):
        return {"found": len(self.structures), "nodes": self.nodes, "exhaustive": self.exhaustive}


def _resolve_top(P, top):
    if top is None:
        t = P.top
        if t is None:
            raise NotAMaximum(f"{P!r} has no maximum")
        return t
    t = P.index(top)
    if not P.leq[:, t].all():
        raise NotAMaximum(f"{P.label(t)!r} is not the maximum of {P!r}")
    return t


def automorphisms(P):
    """All order automorphisms of ``P`` as index permutation arrays."""
    out = []
    for e in find_embeddings(P, P, distinct_images=False):
        out.append(np.array([P.index(e.mapping[x]) for x in P.elements]))
    return sorted(out, key=tuple)


def _is_orbit_minimal(table, autos):
    flat = tuple(table.ravel())
    for pi in autos:
        inv = np.argsort(pi)
        permuted = pi[table[np.ix_(inv, inv)]]
        if tuple(permuted.ravel()) < flat:
            return False
    return True


# -- generic depth-first engine ---------------------------------------------


class _TableSearch:
    """Fills the free cells of an n×n table; subclasses supply the constraints."""

    symmetric = False

    def __init__(self, P, top):
        self.P = P
        self.n = P.n
        self.top = top
        self.leq = P.leq
        self.lt = P.lt
        self.table = np.full((self.n, self.n), -1, dtype=np.int64)
        self.cells = []
        self.domains = {}

    def consistent(self, i, j):
        raise NotImplementedError

    def accept(self, table):
        """Leaf filter; returns the structure to report or None."""
        raise NotImplementedError

    def _set(self, i, j, z):
        self.table[i, j] = z
        if self.symmetric:
            self.table[j, i] = z

    def run(self, prefix=(), limit=None):
        """DFS from the given partial assignment; returns (found, nodes, capped)."""
        found, nodes = [], 0
        for (i, j), z in zip(self.cells, prefix):
            self._set(i, j, z)
            if not self.consistent(i, j):
                return found, 1, False
        start = len(prefix)
        cells = self.cells
        capped = False

        def dfs(k):
            nonlocal nodes, capped
            if k == len(cells):
                s = self.accept(self.table.copy())
                if s is not None:
                    found.append(s)
                    if limit is not None and len(found) >= limit:
                        capped = True
                return
            i, j = cells[k]
            for z in self.domains[i, j]:
                nodes += 1
                self._set(i, j, z)
                if self.consistent(i, j):
                    dfs(k + 1)
                    if capped:
                        break
            self._set(i, j, -1)

        dfs(start)
        return found, nodes, capped


def _extended(table, n):
    # undecided entries (and lookups through them) map to the sentinel n
    ext = np.full((n + 1, n + 1), n, dtype=np.int64)
    ext[:n, :n] = np.where(table < 0, n, table)
    return ext


class _PocrimSearch(_TableSearch):
    symmetric = True

    def __init__(self, P, top):
        super().__init__(P, top)
        n, leq, t = self.n, self.leq, top
        self.table[t, :] = np.arange(n)
        self.table[:, t] = np.arange(n)
        free = [i for i in range(n) if i != t]
        cells = [(i, j) for a, i in enumerate(free) for j in free[a:]]
        for i, j in cells:
            # a ⊙ b lies below a and b
            self.domains[i, j] = [int(z) for z in np.flatnonzero(leq[:, i] & leq[:, j])]
        # most constrained cell first, ties in row-major order
        self.cells = sorted(cells, key=lambda c: (len(self.domains[c]), c))
        self._ar = np.arange(n)
        self.not_leq = (~leq).astype(np.int64)

    def _monotone(self, i, j):
        T, leq, lt = self.table, self.leq, self.lt
        z = T[i, j]
        for a, b in ((i, j), (j, i)):
            col = T[:, b]
            dec = col >= 0
            below = dec & lt[:, a]
            if below.any() and not leq[col[below], z].all():
                return False
            above = dec & lt[a, :]
            if above.any() and not leq[z, col[above]].all():
                return False
        return True

    def _associative(self):
        n = self.n
        ext = _extended(self.table, n)
        T = ext[:n, :n]
        left = ext[T[:, :, None], self._ar[None, None, :]]
        right = ext[self._ar[:, None, None], T[None, :, :]]
        bad = (left < n) & (right < n) & (left != right)
        return not bad.any()

    def _row_residuated(self, a):
        row = self.table[a]
        if (row < 0).any():
            return True
        S = self.leq[row, :]  # S[c, b]: a ⊙ c <= b
        bad = (self.not_leq.T @ S.astype(np.int64)) > 0
        return bool((S & ~bad).any(axis=0).all())

    def consistent(self, i, j):
        return (self._monotone(i, j) and self._associative()
                and self._row_residuated(i) and self._row_residuated(j))

    def accept(self, table):
        imp = derive_implication(self.P, table)
        if imp is None:
            return None
        alg = Pocrim(self.P, table, imp, top=self.top)
        return alg if verify_pocrim(alg).ok else None


class _ImplicationSearch(_TableSearch):
    def __init__(self, P, top, axioms):
        super().__init__(P, top)
        self.axioms = frozenset(axioms)
        n, leq, t = self.n, self.leq, top
        cells = []
        for i, j in product(range(n), range(n)):
            dom = np.ones(n, dtype=bool)
            if "p3" in self.axioms:
                if leq[i, j]:
                    dom[:] = False
                    dom[t] = True
                else:
                    dom[t] = False
            if "weakening" in self.axioms:
                dom &= leq[j, :]
            if "topid" in self.axioms and i == t:
                only = dom[j]
                dom[:] = False
                dom[j] = only
            self.domains[i, j] = [int(z) for z in np.flatnonzero(dom)]
            cells.append((i, j))
        self.cells = sorted(cells, key=lambda c: (len(self.domains[c]), c))
        self._ar = np.arange(n)

    def _antitone_isotone(self, i, j):
        T, leq, lt = self.table, self.leq, self.lt
        z = T[i, j]
        row = T[i, :]
        dec = row >= 0
        m = dec & lt[:, j]
        if m.any() and not leq[row[m], z].all():
            return False
        m = dec & lt[j, :]
        if m.any() and not leq[z, row[m]].all():
            return False
        col = T[:, j]
        dec = col >= 0
        m = dec & lt[:, i]  # x' < i  =>  i → j <= x' → j
        if m.any() and not leq[z, col[m]].all():
            return False
        m = dec & lt[i, :]
        if m.any() and not leq[col[m], z].all():
            return False
        return True

    def _exchange(self):
        n = self.n
        ext = _extended(self.table, n)
        T = ext[:n, :n]
        a = self._ar[:, None, None]
        b = self._ar[None, :, None]
        left = ext[a, T[None, :, :]]  # a → (b → c)
        right = ext[b, T[:, None, :]]  # b → (a → c)
        bad = (left < n) & (right < n) & (left != right)
        return not bad.any()

    def consistent(self, i, j):
        if "p4-imp" in self.axioms and not self._antitone_isotone(i, j):
            return False
        if "p5" in self.axioms and not self._exchange():
            return False
        return True

    def accept(self, table):
        rep = implication_report(self.P, self.top, table, self.axioms)
        return table if rep.ok else None


def implication_report(P, top, imp, axioms=IMPLICATION_AXIOMS):
    """Check an implication table against the named laws, exhaustively."""
    imp = np.asarray(imp)
    n, leq = P.n, P.leq
    a, b, c = np.ix_(np.arange(n), np.arange(n), np.arange(n))
    a2, b2 = np.ix_(np.arange(n), np.arange(n))
    rep = VerificationReport("implication laws")

    def first(mask):
        hits = np.argwhere(mask)
        return P.labels(hits[0]) if len(hits) else None

    if "p3" in axioms:
        rep.add("p3", first(leq[a2, b2] != (imp[a2, b2] == top)))
    if "p4-imp" in axioms:
        rep.add("p4-imp", first(leq[a, b] & ~(leq[imp[c, a], imp[c, b]] & leq[imp[b, c], imp[a, c]])))
    if "p5" in axioms:
        rep.add("p5", first(imp[a, imp[b, c]] != imp[b, imp[a, c]]))
    if "weakening" in axioms:
        rep.add("weakening", first(~leq[b2, imp[a2, b2]]))
    if "topid" in axioms:
        rep.add("topid", first(imp[top, :] != np.arange(n)))
    return rep


# -- drivers ----------------------------------------------------------------


def _run_branch(args):
    kind, P, top, extra, prefix, limit = args
    engine = _PocrimSearch(P, top) if kind == "pocrim" else _ImplicationSearch(P, top, extra)
    return engine.run(prefix, limit)


def _drive(kind, P, top, extra, cap, jobs):
    engine = _PocrimSearch(P, top) if kind == "pocrim" else _ImplicationSearch(P, top, extra)
    # search for one more than the cap so "exactly cap solutions" stays exhaustive
    limit = None if cap is None else cap + 1
    if jobs <= 1 or not engine.cells:
        found, nodes, _ = engine.run((), limit)
    else:
        first = engine.cells[0]
        tasks = [(kind, P, top, extra, (z,), limit) for z in engine.domains[first]]
        found, nodes = [], 0
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part, part_nodes, _ in pool.map(_run_branch, tasks):
                found.extend(part)
                nodes += part_nodes
    exhaustive = cap is None or len(found) <= cap
    if cap is not None:
        found = found[:cap]
    return found, nodes, exhaustive


def enumerate_pocrims(P, top=None, *, cap=None, jobs=1, symmetry_breaking=False):
    """All pocrim structures on ``P`` with the given top.

    Every reported algebra has passed :func:`verify_pocrim`. Results are
    sorted by their ⊙ table, read row by row. With ``cap``, the first
    ``cap`` solutions in search order are kept and ``exhaustive`` is False
    if more exist. ``symmetry_breaking`` keeps one table per orbit of the
    poset's automorphism group.
    """
    t = _resolve_top(P, top)
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    found, nodes, exhaustive = _drive("pocrim", P, t, None, cap, jobs)
    if symmetry_breaking:
        autos = automorphisms(P)
        found = [a for a in found if _is_orbit_minimal(a.mul, autos)]
    found.sort(key=lambda a: tuple(a.mul.ravel()))
    return SearchResult(found, nodes, exhaustive)


def enumerate_implications(P, top=None, axioms=IMPLICATION_AXIOMS, *, cap=None, jobs=1):
    """All → tables on ``P`` satisfying the selected laws.

    Axiom names: ``p3`` (a <= b iff a → b = top), ``p4-imp`` (→ antitone in
    the first and isotone in the second argument), ``p5`` (exchange),
    ``weakening`` (b <= a → b), ``topid`` (top → x = x).
    """
    axioms = tuple(axioms)
    if not axioms:
        raise ValueError("at least one axiom is required")
    unknown = set(axioms) - set(IMPLICATION_AXIOMS)
    if unknown:
        raise ValueError(f"unknown axioms {sorted(unknown)}")
    t = _resolve_top(P, top)
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    found, nodes, exhaustive = _drive("implication", P, t, axioms, cap, jobs)
    found.sort(key=lambda m: tuple(m.ravel()))
    return SearchResult(found, nodes, exhaustive)


# -- poset generation ---------------------------------------------------------


def _canonical(leq):
    """Canonical (key, matrix) of an order matrix under relabelling.

    Elements are first sorted by (down-set size, up-set size); only
    permutations inside blocks of equal invariants are tried.
    """
    n = leq.shape[0]
    if n == 0:
        return b"", leq
    down, up = leq.sum(axis=0), leq.sum(axis=1)
    inv = sorted(range(n), key=lambda i: (down[i], -up[i]))
    blocks = []
    for i in inv:
        sig = (down[i], -up[i])
        if blocks and blocks[-1][0] == sig:
            blocks[-1][1].append(i)
        else:
            blocks.append((sig, [i]))
    best_key, best = None, None
    for parts in product(*(permutations(b) for _, b in blocks)):
        order = [i for part in parts for i in part]
        m = leq[np.ix_(order, order)]
        key = np.packbits(m).tobytes()
        if best_key is None or key < best_key:
            best_key, best = key, m
    return best_key, best


def _down_sets(leq):
    n = leq.shape[0]
    for bits in range(1 << n):
        members = [i for i in range(n) if bits >> i & 1]
        mask = np.zeros(n, dtype=bool)
        mask[members] = True
        # down-closed: everything below a member is a member
        if all(mask[leq[:, i]].all() for i in members):
            yield mask


def enumerate_posets(n):
    """Order matrices of all posets on ``n`` points, one per isomorphism class.

    Built by adding a new maximal element above every down-set of each
    smaller representative, with canonical-form rejection of duplicates.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > 7:
        raise SizeTooLarge("poset generation is capped at 7 points")
    level = {b"": np.zeros((0, 0), dtype=bool)}
    for k in range(n):
        nxt = {}
        for leq in level.values():
            for below in _down_sets(leq):
                m = np.zeros((k + 1, k + 1), dtype=bool)
                m[:k, :k] = leq
                m[:k, k] = below
                m[k, k] = True
                key, canon = _canonical(m)
                nxt.setdefault(key, canon)
        level = nxt
    return [level[key] for key in sorted(level)]


def _middle_labels(k):
    letters = string.ascii_lowercase
    if k <= len(letters):
        return list(letters[:k])
    return [f"x{i}" for i in range(k)]


def enumerate_posets_labelled(n):
    return [Poset(_middle_labels(n), m, name=f"poset-{n}-{i}") for i, m in enumerate(enumerate_posets(n))]


def enumerate_bounded_posets(n):
    """All bounded posets on ``n`` elements up to isomorphism.

    For n >= 2 these are the posets on n - 2 points with a new bottom and
    top attached; labels are ⊥, a, b, ..., ⊤.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > 7:
        raise SizeTooLarge("bounded poset generation is capped at 7 elements")
    if n == 1:
        return [Poset([TOP], [[True]], name="bounded-1-0")]
    out = []
    for i, mid in enumerate(enumerate_posets(n - 2)):
        k = n - 2
        m = np.zeros((n, n), dtype=bool)
        m[0, :] = True
        m[:, n - 1] = True
        m[1:k + 1, 1:k + 1] = mid
        out.append(Poset([BOTTOM] + _middle_labels(k) + [TOP], m, name=f"bounded-{n}-{i}"))
    return out


def canonical_key(P):
    """Isomorphism-invariant key of a poset."""
    return _canonical(P.leq)[0]
