"""Galois connections between function spaces and their concepts.

A :class:`GaloisPair` links ``A1^G`` and ``A2^M`` through antitone maps
``phi`` and ``psi`` with ``p <= psi(q)  iff  q <= phi(p)``. Three sources
are provided (crisp contexts, residuum negation, explicit tables) and the
law is always checked by :func:`verify_galois`, never assumed.

Concepts are the pairs ``(h, f)`` with ``phi(h) = f`` and ``psi(f) = h``.
With the closed operations ``h1 ⊗ h2 = psi phi (h1 ⊙ h2)`` and
``h1 ⇉ h2 = psi phi (h1 → h2)`` they form a residuated multilattice
whenever extents and intents are closed under the pointwise implication.

Maps are passed around as :class:`~multilat.funcspace.ValuedFunction`
at the API surface and as integer codes of a
:class:`~multilat.funcspace.FunctionSpace` internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .algebra import Pocrim, verify_pocrim
from .catalog import two
from .errors import (BudgetExceeded, ClosednessViolated, DomainMismatch, EmptySelection,
                     UnknownLabel, UnverifiedInput)
from .funcspace import FunctionSpace, ValuedFunction, budget, choice_bounds
from .poset import Poset
from .report import VerificationReport

DEFAULT_PAIR_BUDGET = 10**6
DEFAULT_INTENT_BUDGET = 10**6
DEFAULT_TRIPLE_BUDGET = 5 * 10**7


# -- contexts and Galois pairs ----------------------------------------------


@dataclass(frozen=True)
class CrispContext:
    objects: tuple
    attributes: tuple
    incidence: frozenset

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "incidence", frozenset(map(tuple, self.incidence)))
        for g, m in self.incidence:
            if g not in self.objects:
                raise UnknownLabel(f"incidence uses unknown object {g!r}")
            if m not in self.attributes:
                raise UnknownLabel(f"incidence uses unknown attribute {m!r}")

    def matrix(self):
        I = np.zeros((len(self.objects), len(self.attributes)), dtype=bool)
        for g, m in self.incidence:
            I[self.objects.index(g), self.attributes.index(m)] = True
        return I


class _Side:
    """Code-level tables for one side of a Galois pair."""

    def __init__(self, S, alg, close, image):
        self.S = S
        self.alg = alg
        self.close = close      # closure code of every map on this side
        self.image = image      # codes of the other map's outputs (candidates for extents/intents)
        self.leq = S.leq_matrix()
        self.mul = S.op_table(alg.mul)
        self.imp = S.op_table(alg.imp)


class GaloisPair:
    """Maps ``phi: A1^G -> A2^M`` and ``psi: A2^M -> A1^G``.

    ``phi`` and ``psi`` act on stacks of index vectors (last axis is the
    domain) and must broadcast over leading axes.
    """

    def __init__(self, alg1, G, alg2, M, phi, psi, source="tables", meta=None):
        self.alg1, self.alg2 = alg1, alg2
        self.G, self.M = tuple(G), tuple(M)
        self._phi, self._psi = phi, psi
        self.source = source
        self.meta = dict(meta or {})
        self.S1 = FunctionSpace(alg1.poset, self.G)
        self.S2 = FunctionSpace(alg2.poset, self.M)
        self._sides = {}

    def __repr__(self):
        return f"<GaloisPair {self.source} |G|={len(self.G)} |M|={len(self.M)}>"

    def phi_vec(self, V):
        return np.asarray(self._phi(np.asarray(V, dtype=np.int64)), dtype=np.int64)

    def psi_vec(self, V):
        return np.asarray(self._psi(np.asarray(V, dtype=np.int64)), dtype=np.int64)

    def phi(self, h):
        if h.domain != self.G:
            raise DomainMismatch(f"phi expects domain {self.G}, got {h.domain}")
        return self.S2.function(self.S2.encode(self.phi_vec(h.vector(self.alg1.poset))))

    def psi(self, f):
        if f.domain != self.M:
            raise DomainMismatch(f"psi expects domain {self.M}, got {f.domain}")
        return self.S1.function(self.S1.encode(self.psi_vec(f.vector(self.alg2.poset))))

    def phi_codes(self, codes):
        return self.S2.encode(self.phi_vec(self.S1.decode(codes)))

    def psi_codes(self, codes):
        return self.S1.encode(self.psi_vec(self.S2.decode(codes)))

    def _check_size(self, limit=None):
        limit = limit or budget(DEFAULT_PAIR_BUDGET)
        big = max(self.S1.size, self.S2.size) ** 2
        if big > limit:
            raise BudgetExceeded(f"function spaces of sizes {self.S1.size} and {self.S2.size} "
                                 "are too large for exhaustive tables")

    @property
    def phi_table(self):
        if "phi" not in self._sides:
            self._check_size()
            self._sides["phi"] = self.phi_codes(np.arange(self.S1.size))
        return self._sides["phi"]

    @property
    def psi_table(self):
        if "psi" not in self._sides:
            self._check_size()
            self._sides["psi"] = self.psi_codes(np.arange(self.S2.size))
        return self._sides["psi"]

    def side(self, k):
        """Tables for side 1 (``A1^G``, closure psi phi) or side 2 (``A2^M``, phi psi)."""
        if k not in (1, 2):
            raise ValueError(f"side must be 1 or 2, got {k!r}")
        if k not in self._sides:
            Phi, Psi = self.phi_table, self.psi_table
            if k == 1:
                self._sides[1] = _Side(self.S1, self.alg1, Psi[Phi], Psi)
            else:
                self._sides[2] = _Side(self.S2, self.alg2, Phi[Psi], Phi)
        return self._sides[k]


def galois_from_crisp_context(ctx):
    """The derivation operators of a crisp context, on 0/1-valued maps."""
    alg = two()
    t = alg.top
    I = ctx.matrix()

    def phi(H):
        member = H == t
        return np.where((member[..., :, None] & ~I).any(axis=-2), 1 - t, t)

    def psi(F):
        member = F == t
        return np.where((member[..., None, :] & ~I).any(axis=-1), 1 - t, t)

    return GaloisPair(alg, ctx.objects, alg, ctx.attributes, phi, psi, source="crisp",
                      meta={"context": ctx})


def galois_from_residuum_negation(alg, domain, r):
    """``phi = psi = (x -> r)`` pointwise, on ``A^domain`` for both sides."""
    domain = tuple(domain)
    if r.domain != domain:
        raise DomainMismatch(f"r is defined on {r.domain}, expected {domain}")
    rv = r.vector(alg.poset)
    imp = alg.imp

    def neg(V):
        return imp[V, rv]

    return GaloisPair(alg, domain, alg, domain, neg, neg, source="residuum-negation", meta={"r": r})


def galois_from_code_tables(alg1, G, alg2, M, phi_codes, psi_codes, meta=None):
    """Pair given by complete code tables over ``A1^G`` and ``A2^M``."""
    S1, S2 = FunctionSpace(alg1.poset, G), FunctionSpace(alg2.poset, M)
    phi_codes = np.asarray(phi_codes, dtype=np.int64)
    psi_codes = np.asarray(psi_codes, dtype=np.int64)
    if phi_codes.shape != (S1.size,) or psi_codes.shape != (S2.size,):
        raise DomainMismatch("tables must list one image for every map of each side")
    if (phi_codes.min(initial=0) < 0 or phi_codes.max(initial=0) >= S2.size
            or psi_codes.min(initial=0) < 0 or psi_codes.max(initial=0) >= S1.size):
        raise DomainMismatch("table entries out of range")

    def phi(V):
        return S2.decode(phi_codes[S1.encode(V)])

    def psi(V):
        return S1.decode(psi_codes[S2.encode(V)])

    meta = dict(meta or {})
    meta.update(phi=phi_codes, psi=psi_codes)
    return GaloisPair(alg1, G, alg2, M, phi, psi, source="tables", meta=meta)


def galois_from_tables(alg1, G, alg2, M, phi, psi):
    """Pair from explicit lists of ``(argument, image)`` ValuedFunction pairs."""
    S1, S2 = FunctionSpace(alg1.poset, G), FunctionSpace(alg2.poset, M)

    def fill(entries, src, dst, what):
        out = np.full(src.size, -1, dtype=np.int64)
        for arg, val in entries:
            out[src.code_of(arg)] = dst.code_of(val)
        if (out < 0).any():
            raise DomainMismatch(f"{what} table misses {src.label(int(np.flatnonzero(out < 0)[0]))}")
        return out

    return galois_from_code_tables(alg1, G, alg2, M, fill(phi, S1, S2, "phi"), fill(psi, S2, S1, "psi"))


def galois_maps(P1, P2):
    """Every Galois connection between finite posets, as ``(phi, psi)`` index arrays.

    ``phi`` runs over antitone maps ``P1 -> P2`` by backtracking; it is kept
    when each ``{p : q <= phi(p)}`` has a maximum, which is then ``psi(q)``.
    """
    return [(np.array(a), np.array(b)) for a, b in _galois_maps(P1, P2)]


@lru_cache(maxsize=16)
def _galois_maps(P1, P2):
    l1, l2 = P1.leq, P2.leq
    order = [int(i) for i in np.argsort(l1.sum(axis=0), kind="stable")]
    phi = np.full(P1.n, -1, dtype=np.int64)
    out = []

    def residual():
        S = l2[:, phi]  # S[q, p]: q <= phi(p)
        psi = np.empty(P2.n, dtype=np.int64)
        for q in range(P2.n):
            s = S[q]
            tops = np.flatnonzero(s & l1[s, :].all(axis=0))
            if not len(tops):
                return None
            psi[q] = tops[0]
        return psi

    def dfs(k):
        if k == P1.n:
            psi = residual()
            if psi is not None:
                out.append((tuple(phi.tolist()), tuple(psi.tolist())))
            return
        i = order[k]
        ok = np.ones(P2.n, dtype=bool)
        for j in order[:k]:
            if l1[j, i]:
                ok &= l2[:, phi[j]]
            if l1[i, j]:
                ok &= l2[phi[j], :]
        for v in np.flatnonzero(ok):
            phi[i] = v
            dfs(k + 1)
        phi[i] = -1

    dfs(0)
    return tuple(out)


def random_explicit_pairs(alg1, G, alg2, M, count, seed=0):
    """``count`` distinct Galois pairs drawn uniformly from all of them."""
    S1, S2 = FunctionSpace(alg1.poset, G), FunctionSpace(alg2.poset, M)
    if S1.size * S2.size > budget(10**4):
        raise BudgetExceeded("function spaces too large to enumerate all Galois connections")
    maps = _galois_maps(S1.as_poset(), S2.as_poset())
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(maps), size=min(count, len(maps)), replace=False)
    return [galois_from_code_tables(alg1, G, alg2, M, *maps[i], meta={"draw": int(i)}) for i in picks]


# -- verification -----------------------------------------------------------


def verify_galois(pair, mode="exhaustive", k=1000, seed=0):
    """Galois law, the two triple identities and the closure law of both closures."""
    rep = VerificationReport(f"galois connection ({pair.source}, {mode})")
    S1, S2 = pair.S1, pair.S2
    if mode == "exhaustive":
        pair._check_size()
        Phi, Psi = pair.phi_table, pair.psi_table
        l1, l2 = S1.leq_matrix(), S2.leq_matrix()
        h = np.arange(S1.size)[:, None]
        f = np.arange(S2.size)[None, :]
        law = l1[h, Psi[f]] != l2[f, Phi[h]]
        hit = np.argwhere(law)
        rep.add("galois-law", (S1.label(hit[0][0]), S2.label(hit[0][1])) if len(hit) else None)
        bad = np.flatnonzero(Phi[Psi[Phi]] != Phi)
        rep.add("phi-psi-phi", (S1.label(bad[0]),) if len(bad) else None)
        bad = np.flatnonzero(Psi[Phi[Psi]] != Psi)
        rep.add("psi-phi-psi", (S2.label(bad[0]),) if len(bad) else None)
        for name, S, c, leq in (("closure-psi-phi", S1, Psi[Phi], l1), ("closure-phi-psi", S2, Phi[Psi], l2)):
            # x <= c(y)  iff  c(x) <= c(y)
            grid = leq[np.arange(S.size)[:, None], c[None, :]] != leq[c[:, None], c[None, :]]
            hit = np.argwhere(grid)
            rep.add(name, (S.label(hit[0][0]), S.label(hit[0][1])) if len(hit) else None)
        return rep

    if mode != "sampled":
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    rng = np.random.default_rng(seed)
    H = rng.integers(0, pair.alg1.n, size=(k, len(pair.G)))
    F = rng.integers(0, pair.alg2.n, size=(k, len(pair.M)))
    Hy = rng.integers(0, pair.alg1.n, size=(k, len(pair.G)))
    Fy = rng.integers(0, pair.alg2.n, size=(k, len(pair.M)))
    phi, psi = pair.phi_vec, pair.psi_vec

    def first(mask, *stacks):
        bad = np.flatnonzero(mask)
        if not len(bad):
            return None
        i = bad[0]
        return tuple(S.label(int(S.encode(V[i]))) for S, V in stacks)

    rep.add("galois-law", first(S1.leq_rows(H, psi(F)) != S2.leq_rows(F, phi(H)), (S1, H), (S2, F)))
    rep.add("phi-psi-phi", first((phi(psi(phi(H))) != phi(H)).any(axis=1), (S1, H)))
    rep.add("psi-phi-psi", first((psi(phi(psi(F))) != psi(F)).any(axis=1), (S2, F)))
    cH, cHy = psi(phi(H)), psi(phi(Hy))
    rep.add("closure-psi-phi", first(S1.leq_rows(H, cHy) != S1.leq_rows(cH, cHy), (S1, H), (S1, Hy)))
    cF, cFy = phi(psi(F)), phi(psi(Fy))
    rep.add("closure-phi-psi", first(S2.leq_rows(F, cFy) != S2.leq_rows(cF, cFy), (S2, F), (S2, Fy)))
    return rep


# -- concepts ---------------------------------------------------------------


@dataclass(frozen=True)
class Concept:
    extent: ValuedFunction
    intent: ValuedFunction

    @property
    def label(self):
        return f"({','.join(self.extent.values)} | {','.join(self.intent.values)})"

    def __str__(self):
        return self.label


@dataclass
class ConceptSystem:
    """All concepts of a Galois pair, sorted by extent code.

    ``extent_codes[i]`` / ``intent_codes[i]`` belong to ``concepts[i]``.
    """

    pair: GaloisPair
    extent_codes: np.ndarray
    intent_codes: np.ndarray
    concepts: list = field(default_factory=list)

    def __post_init__(self):
        S1, S2 = self.pair.S1, self.pair.S2
        self.concepts = [Concept(S1.function(h), S2.function(f))
                         for h, f in zip(self.extent_codes, self.intent_codes)]
        self._by_extent = {int(h): i for i, h in enumerate(self.extent_codes)}
        self._by_intent = {int(f): i for i, f in enumerate(self.intent_codes)}

    def __len__(self):
        return len(self.concepts)

    @property
    def ext(self):
        return frozenset(int(h) for h in self.extent_codes)

    @property
    def int(self):
        return frozenset(int(f) for f in self.intent_codes)

    def index_of_extent(self, code):
        return self._by_extent.get(int(code))

    def index_of_intent(self, code):
        return self._by_intent.get(int(code))

    def index(self, c):
        if isinstance(c, (int, np.integer)):
            return int(c)
        i = self._by_extent.get(self.pair.S1.code_of(c.extent))
        if i is None or self.concepts[i] != c:
            raise UnknownLabel(f"{c} is not a concept of this system")
        return i

    def extent_leq(self):
        S = self.pair.S1
        E = S.decode(self.extent_codes)
        return S.leq_rows(E[:, None, :], E[None, :, :])

    def intent_leq(self):
        S = self.pair.S2
        F = S.decode(self.intent_codes)
        return S.leq_rows(F[:, None, :], F[None, :, :])

    @property
    def poset(self):
        return Poset([c.label for c in self.concepts], self.extent_leq(), name="concepts")


def enumerate_concepts(pair, limit=None, chunk=1 << 16):
    """Scan every intent candidate ``f`` and keep ``(psi f, f)`` when ``phi psi f = f``."""
    limit = limit or budget(DEFAULT_INTENT_BUDGET)
    S2 = pair.S2
    if S2.size > limit:
        raise BudgetExceeded(f"{S2.size} candidate intents exceed the budget of {limit}")
    ext, intents = [], []
    for start in range(0, S2.size, chunk):
        f = np.arange(start, min(start + chunk, S2.size))
        h = pair.psi_codes(f)
        keep = pair.phi_codes(h) == f
        ext.append(h[keep])
        intents.append(f[keep])
    ext = np.concatenate(ext)
    intents = np.concatenate(intents)
    order = np.argsort(ext, kind="stable")
    return ConceptSystem(pair, ext[order], intents[order])


def concept_multi_bounds(sys, J, side="inf"):
    """Maximal lower (``inf``) or minimal upper (``sup``) bounds of concepts ``J``.

    ``inf`` takes the maximal lower bounds of the extents in ``A1^G``;
    ``sup`` takes the maximal lower bounds of the intents in ``A2^M``.
    Each result is checked to be a concept and an extremal bound in ``sys``.
    """
    idx = [sys.index(c) for c in J]
    if not idx:
        raise EmptySelection("no concepts selected")
    pair = sys.pair
    if side == "inf":
        found = choice_bounds(pair.alg1.poset, [sys.concepts[i].extent for i in idx], "inf")
        members = [sys.index_of_extent(pair.S1.code_of(h)) for h in found]
    elif side == "sup":
        found = choice_bounds(pair.alg2.poset, [sys.concepts[i].intent for i in idx], "inf")
        members = [sys.index_of_intent(pair.S2.code_of(f)) for f in found]
    else:
        raise ValueError(f"side must be 'sup' or 'inf', got {side!r}")
    if found.truncated:
        raise BudgetExceeded("too many bound candidates")
    leq = sys.extent_leq() if side == "inf" else sys.extent_leq().T
    bound = leq[:, idx].all(axis=1)
    for k, i in enumerate(members):
        if i is None:
            raise UnverifiedInput(f"bound candidate {found[k]} is not closed")
        between = bound & leq[i, :]
        between[i] = False
        if not bound[i] or between.any():
            raise UnverifiedInput(f"{sys.concepts[i]} is not an extremal bound")
    return [sys.concepts[i] for i in members]


def closed_tensor(pair, side, op, u, v):
    """``closure(u ⊙ v)`` (op="tensor") or ``closure(u → v)`` (op="arrow") on one side."""
    alg, S, dom = (pair.alg1, pair.S1, pair.G) if side == 1 else (pair.alg2, pair.S2, pair.M)
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side!r}")
    if u.domain != dom or v.domain != dom:
        raise DomainMismatch(f"side {side} maps must have domain {dom}")
    table = {"tensor": alg.mul, "arrow": alg.imp}.get(op)
    if table is None:
        raise ValueError(f"op must be 'tensor' or 'arrow', got {op!r}")
    w = table[u.vector(alg.poset), v.vector(alg.poset)]
    closed = pair.psi_vec(pair.phi_vec(w)) if side == 1 else pair.phi_vec(pair.psi_vec(w))
    return S.function(S.encode(closed))


def closedness_violation(sys, which="ext"):
    """First pair of extents (intents) whose pointwise implication is not one, or ``None``."""
    pair = sys.pair
    if which == "ext":
        S, alg, codes, members = pair.S1, pair.alg1, sys.extent_codes, sys.ext
    elif which == "int":
        S, alg, codes, members = pair.S2, pair.alg2, sys.intent_codes, sys.int
    else:
        raise ValueError(f"which must be 'ext' or 'int', got {which!r}")
    V = S.decode(codes)
    out = S.encode(alg.imp[V[:, None, :], V[None, :, :]])
    bad = np.argwhere(~np.isin(out, list(members)))
    if not len(bad):
        return None
    i, j = bad[0]
    return (S.label(codes[i]), S.label(codes[j]))


def check_closedness(sys, which="ext"):
    return closedness_violation(sys, which) is None


def build_concept_rml(sys, diagnostic=False):
    """The concept algebra ``(C, ⊙, →)`` with ⊙ and → taken from ``⊗`` and ``⇉`` on extents.

    Raises :class:`ClosednessViolated` unless extents are closed under →1
    and intents under →2. With ``diagnostic=True`` it never raises and
    returns ``(algebra, report)`` where the report lists what fails.
    """
    violations = {w: closedness_violation(sys, w) for w in ("ext", "int")}
    if not diagnostic:
        for which, pair in violations.items():
            if pair is not None:
                raise ClosednessViolated(
                    f"{'extents' if which == 'ext' else 'intents'} not closed: "
                    f"{pair[0]} → {pair[1]} leaves the set", which, pair)
    gp = sys.pair
    S = gp.S1
    E = S.decode(sys.extent_codes)

    def to_concepts(W):
        closed = gp.psi_codes(gp.phi_codes(S.encode(W)))
        return np.vectorize(sys.index_of_extent, otypes=[np.int64])(closed)

    mul = to_concepts(gp.alg1.mul[E[:, None, :], E[None, :, :]])
    imp = to_concepts(gp.alg1.imp[E[:, None, :], E[None, :, :]])
    P = sys.poset
    top = sys.index_of_extent(S.constant(gp.alg1.top))
    alg = Pocrim(P, mul, imp, top=top, bottom=P.bottom, name="concept algebra")
    if not diagnostic:
        return alg
    rep = VerificationReport("concept algebra diagnostic")
    rep.add("ext-closed", violations["ext"])
    rep.add("int-closed", violations["int"])
    rep.extend(verify_pocrim(alg))
    return alg, rep


# -- lemma checks -----------------------------------------------------------


def _triples_ok(n):
    if n ** 3 > budget(DEFAULT_TRIPLE_BUDGET):
        raise BudgetExceeded(f"{n}^3 triples exceed the budget")


def thm1_report(sys, max_size=3):
    """Meet/join transfer through psi, and exactness of concept bounds.

    (i) for all ``F`` in ``A2^M`` with ``1 <= |F| <= max_size``: every
    maximal lower bound of ``psi(F)`` is ``psi`` of a minimal upper bound
    of ``F``; (ii) :func:`concept_multi_bounds` succeeds for every
    selection of at most ``max_size`` concepts.
    """
    pair = sys.pair
    P1, P2 = pair.S1.as_poset(), pair.S2.as_poset()
    Psi = pair.psi_table
    rep = VerificationReport(f"concept bounds ({pair.source})")
    bad = None
    for size in range(1, max_size + 1):
        for F in combinations(range(pair.S2.size), size):
            left = set(P1.inf(sorted({int(Psi[f]) for f in F})))
            right = {int(Psi[g]) for g in P2.sup(F)}
            if not left <= right:
                bad = tuple(P2.label(f) for f in F)
                break
        if bad:
            break
    rep.add("meet-of-psi-in-psi-of-join", bad)
    for side in ("inf", "sup"):
        bad = None
        for size in range(1, max_size + 1):
            for J in combinations(range(len(sys)), size):
                try:
                    concept_multi_bounds(sys, J, side)
                except UnverifiedInput:
                    bad = tuple(sys.concepts[j].label for j in J)
                    break
            if bad:
                break
        rep.add(f"concept-{side}", bad)
    return rep


def closure_lemma_report(pair):
    """The four least/greatest-element characterisations of the closed operations."""
    rep = VerificationReport(f"closure lemma ({pair.source})")
    for item, k in (("item-1", 1), ("item-2", 2)):
        s = pair.side(k)
        n = s.S.size
        U = np.unique(s.image)
        # x = u1 ⊙ u2; least element of {c in U : x <= c} must be close(x)
        above = s.leq[:, U]
        least = s.close
        ok_x = s.leq[np.arange(n), least] & np.isin(least, U) & (~above | s.leq[least][:, U]).all(axis=1)
        hit = np.argwhere(~ok_x[s.mul])
        rep.add(item, (s.S.label(hit[0][0]), s.S.label(hit[0][1])) if len(hit) else None)
    for item, k in (("item-3", 1), ("item-4", 2)):
        s = pair.side(k)
        n = s.S.size
        _triples_ok(n)
        bad = None
        for u1 in range(n):
            # mask[w, u2]: w ⊙ u1 <= u2
            mask = s.leq[s.mul[:, u1][:, None], np.arange(n)[None, :]]
            target = s.close[s.imp[u1]]
            cw = s.close[:, None]
            member = (mask & (cw == target[None, :])).any(axis=0)
            greatest = (~mask | s.leq[cw, target[None, :]]).all(axis=0)
            fail = np.flatnonzero(~(member & greatest))
            if len(fail):
                bad = (s.S.label(u1), s.S.label(fail[0]))
                break
        rep.add(item, bad)
    return rep


def _first_triple(grid, lab, codes=None):
    hit = np.argwhere(grid)
    if not len(hit):
        return None
    return tuple(lab(int(codes[i]) if codes is not None else int(i)) for i in hit[0])


def tensor_associativity_witness(pair, side=1):
    """First triple of arbitrary maps on which ``⊗`` is not associative, or ``None``.

    Closedness of extents and intents only forces associativity on closed
    arguments; on arbitrary maps it can fail.
    """
    s = pair.side(side)
    _triples_ok(s.S.size)
    ten = s.close[s.mul]
    ar = np.arange(s.S.size)
    for a in ar:
        w = _first_triple(ten[ten[a][:, None], ar[None, :]] != ten[a][ten], s.S.label)
        if w is not None:
            return (s.S.label(int(a)),) + w[:2]
    return None


def lemme1_report(sys):
    """Residuation, commutativity and associativity of the closed operations.

    On every map: ``u ⊗ v <= w`` implies ``u <= v ⇉ w``, and ``⊗`` is
    commutative. When extents (intents) are closed under the implication,
    additionally: adjointness and associativity over all closed triples.
    """
    pair = sys.pair
    rep = VerificationReport(f"closed operations ({pair.source})")
    for k, which, closed in ((1, "ext", sys.extent_codes), (2, "int", sys.intent_codes)):
        s = pair.side(k)
        n = s.S.size
        _triples_ok(n)
        ten = s.close[s.mul]
        arr = s.close[s.imp]
        lab = s.S.label
        ar = np.arange(n)
        one_way = None
        for a in ar:
            # (a, b, c): a ⊗ b <= c  implies  a <= b ⇉ c
            w = _first_triple(s.leq[ten[a][:, None], ar[None, :]] & ~s.leq[a, arr], lab)
            if w is not None:
                one_way = (lab(int(a)),) + w[:2]
                break
        rep.add(f"side-{k}-residuation-one-way", one_way)
        hit = np.argwhere(ten != ten.T)
        rep.add(f"side-{k}-commutativity", (lab(hit[0][0]), lab(hit[0][1])) if len(hit) else None)
        if check_closedness(sys, which):
            c = np.asarray(closed)
            x, y, z = c[:, None, None], c[None, :, None], c[None, None, :]
            rep.add(f"side-{k}-associativity-on-closed",
                    _first_triple(ten[ten[x, y], z] != ten[x, ten[y, z]], lab, c))
            rep.add(f"side-{k}-adjointness-on-closed",
                    _first_triple(s.leq[ten[x, y], z] != s.leq[x, arr[y, z]], lab, c))
    return rep
