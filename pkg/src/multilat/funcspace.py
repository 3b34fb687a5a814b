"""The pointwise algebra A^X of all maps from a finite index set X into A.

A map is a :class:`ValuedFunction` (domain labels plus one value per
label). Internally the whole space is handled as dense index vectors, and
each map gets an integer code in mixed radix |A| with the first domain
label most significant, so codes sort lexicographically by value vector.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import islice, product

import numpy as np

from .errors import BudgetExceeded, DomainMismatch
from .poset import Poset
from .report import VerificationReport

DEFAULT_CAP = 100_000
DEFAULT_FUNCTION_BUDGET = 512


def budget(default):
    """``MULTILAT_BUDGET`` if set, else ``default``."""
    env = os.environ.get("MULTILAT_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class ValuedFunction:
    """A map from an ordered domain of labels to carrier labels."""

    domain: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.domain) != len(self.values):
            raise DomainMismatch(f"{len(self.domain)} domain labels but {len(self.values)} values")
        if len(set(self.domain)) != len(self.domain):
            raise DomainMismatch(f"repeated domain label in {self.domain}")

    @classmethod
    def from_mapping(cls, mapping, domain=None):
        domain = list(mapping) if domain is None else list(domain)
        missing = [x for x in domain if x not in mapping]
        if missing or len(mapping) != len(domain):
            raise DomainMismatch(f"mapping keys {sorted(mapping)} do not match domain {domain}")
        return cls(domain, [mapping[x] for x in domain])

    @classmethod
    def constant(cls, domain, value):
        return cls(domain, [value] * len(domain))

    def __getitem__(self, x):
        try:
            return self.values[self.domain.index(x)]
        except ValueError:
            raise DomainMismatch(f"{x!r} is not in the domain {self.domain}") from None

    def as_dict(self):
        return dict(zip(self.domain, self.values))

    def vector(self, poset):
        return np.array([poset.index(v) for v in self.values], dtype=np.int64)

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"


def _same_domain(fs):
    fs = list(fs)
    if not fs:
        raise DomainMismatch("no functions given")
    d = fs[0].domain
    for f in fs[1:]:
        if f.domain != d:
            raise DomainMismatch(f"domains differ: {d} vs {f.domain}")
    return d


def _from_vector(poset, domain, vec):
    return ValuedFunction(domain, [poset.label(int(i)) for i in vec])


def pointwise(alg, op, f1, f2):
    """``f1 ⊙ f2`` (op="mul") or ``f1 → f2`` (op="imp"), computed per point."""
    domain = _same_domain([f1, f2])
    table = {"mul": alg.mul, "imp": alg.imp}.get(op)
    if table is None:
        raise ValueError(f"op must be 'mul' or 'imp', got {op!r}")
    P = alg.poset
    return _from_vector(P, domain, table[f1.vector(P), f2.vector(P)])


def pointwise_leq(poset, f1, f2):
    """``f1 <= f2`` at every point."""
    _same_domain([f1, f2])
    return bool(poset.leq[f1.vector(poset), f2.vector(poset)].all())


def top_function(alg, domain):
    """The constant map onto the top element."""
    return ValuedFunction.constant(domain, alg.poset.label(alg.top))


def bottom_function(alg, domain):
    if alg.bottom is None:
        raise DomainMismatch(f"{alg!r} has no bottom element")
    return ValuedFunction.constant(domain, alg.poset.label(alg.bottom))


class ChoiceBounds(list):
    """List of bound functions; ``truncated`` is set when the cap was hit."""

    truncated = False


def choice_bounds(P, fs, side="sup", cap=DEFAULT_CAP):
    """All choice maps ``g`` with ``g(x)`` in the pointwise ⊔ (or ⊓) of ``fs``.

    For finite carriers these are exactly the minimal upper (maximal lower)
    bounds of ``fs`` in the pointwise order. Results come in lexicographic
    order of value vectors; at most ``cap`` are returned.
    """
    domain = _same_domain(fs)
    if side not in ("sup", "inf"):
        raise ValueError(f"side must be 'sup' or 'inf', got {side!r}")
    V = np.array([f.vector(P) for f in fs])
    bound = P.sup if side == "sup" else P.inf
    per_point = [bound(sorted(set(V[:, k].tolist()))) for k in range(len(domain))]
    out = ChoiceBounds()
    for choice in islice(product(*per_point), cap + 1):
        if len(out) == cap:
            out.truncated = True
            break
        out.append(_from_vector(P, domain, choice))
    return out


class FunctionSpace:
    """All maps from ``domain`` into the carrier of ``poset``, as index vectors."""

    def __init__(self, poset, domain):
        self.poset = poset
        self.domain = tuple(domain)
        self.m = len(self.domain)
        self.base = poset.n
        self.size = self.base ** self.m
        self.weights = self.base ** np.arange(self.m - 1, -1, -1, dtype=np.int64)

    def encode(self, V):
        return np.asarray(V, dtype=np.int64) @ self.weights

    def decode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.base

    def vectors(self):
        """All maps, one per row, in code order."""
        return self.decode(np.arange(self.size))

    def code_of(self, f):
        if f.domain != self.domain:
            raise DomainMismatch(f"domain {f.domain} is not {self.domain}")
        return int(self.encode(f.vector(self.poset)))

    def function(self, code):
        return _from_vector(self.poset, self.domain, self.decode(code))

    def label(self, code):
        return str(self.function(code))

    def leq_rows(self, U, V):
        """Pointwise order between two stacks of vectors (broadcasting)."""
        return self.poset.leq[U, V].all(axis=-1)

    def leq_matrix(self):
        V = self.vectors()
        return self.leq_rows(V[:, None, :], V[None, :, :])

    def as_poset(self, name=""):
        labels = [self.label(c) for c in range(self.size)]
        return Poset(labels, self.leq_matrix(), name=name)

    def op_table(self, table):
        """Code table of a pointwise binary operation given by an element table."""
        V = self.vectors()
        return self.encode(np.asarray(table)[V[:, None, :], V[None, :, :]])

    def constant(self, i):
        return int(i * self.weights.sum())


def power_algebra(alg, X, name=None):
    """The pocrim A^X with pointwise order and operations."""
    from .algebra import Pocrim

    S = FunctionSpace(alg.poset, X)
    if S.size > budget(DEFAULT_FUNCTION_BUDGET):
        raise BudgetExceeded(f"|A|^|X| = {S.size} exceeds the budget")
    P = S.as_poset(name=name or f"{alg.name}^{len(S.domain)}")
    bottom = None if alg.bottom is None else S.constant(alg.bottom)
    return Pocrim(P, S.op_table(alg.mul), S.op_table(alg.imp), top=S.constant(alg.top),
                  bottom=bottom, name=P.name)


def _first_hit(mask, offset=()):
    hits = np.argwhere(mask)
    return tuple(offset) + tuple(int(v) for v in hits[0]) if len(hits) else None


def verify_pointwise_pocrim(alg, X, mode="exhaustive", k=1000, seed=0):
    """Check the pocrim laws and bounds on A^X.

    ``mode="exhaustive"`` runs over every triple of maps (requires
    ``|A|^|X|`` within the function budget); ``mode="sampled"`` draws ``k``
    random triples. Counterexamples are reported as tuples of maps.
    """
    S = FunctionSpace(alg.poset, X)
    rep = VerificationReport(f"pointwise pocrim {alg.name}^{S.m} ({mode})")

    def show(hit):
        return None if hit is None else tuple(S.label(c) for c in hit)

    top = S.constant(alg.top)
    bot = None if alg.bottom is None else S.constant(alg.bottom)

    if mode == "exhaustive":
        if S.size > budget(DEFAULT_FUNCTION_BUDGET):
            raise BudgetExceeded(f"|A|^|X| = {S.size} maps exceed the budget; use mode='sampled'")
        N = S.size
        leq = S.leq_matrix()
        mul = S.op_table(alg.mul)
        imp = S.op_table(alg.imp)
        rep.add("top-is-maximum", show(_first_hit(~leq[:, top])))
        if bot is not None:
            rep.add("bottom-is-minimum", show(_first_hit(~leq[bot, :])))
        rep.add("commutativity", show(_first_hit(mul != mul.T)))
        rep.add("identity", show(_first_hit(mul[top, :] != np.arange(N))))
        assoc = adj = None
        # one slice per first argument keeps memory at N^2
        for a in range(N):
            if assoc is None:
                assoc = _first_hit(mul[mul[a][:, None], np.arange(N)] != mul[a][mul], (a,))
            if adj is None:
                # (a, b, c): a ⊙ c <= b  iff  c <= a → b
                adj = _first_hit(leq[mul[a][None, :], np.arange(N)[:, None]]
                                 != leq[np.arange(N)[None, :], imp[a][:, None]], (a,))
            if assoc is not None and adj is not None:
                break
        rep.add("associativity", show(assoc))
        rep.add("adjointness", show(adj))
        return rep

    if mode != "sampled":
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    rng = np.random.default_rng(seed)
    n, m = alg.n, S.m
    A, B, C = (rng.integers(0, n, size=(k, m)) for _ in range(3))
    leq = alg.poset.leq
    mul, imp = alg.mul, alg.imp

    def first_row(mask):
        bad = np.flatnonzero(mask)
        if not len(bad):
            return None
        i = bad[0]
        return tuple(int(S.encode(V[i])) for V in (A, B, C))

    T = np.full((k, m), alg.top)
    rep.add("top-is-maximum", first_row(~leq[A, T].all(axis=1)))
    if alg.bottom is not None:
        rep.add("bottom-is-minimum", first_row(~leq[np.full((k, m), alg.bottom), A].all(axis=1)))
    rep.add("commutativity", first_row((mul[A, B] != mul[B, A]).any(axis=1)))
    rep.add("identity", first_row((mul[T, A] != A).any(axis=1)))
    rep.add("associativity", first_row((mul[mul[A, B], C] != mul[A, mul[B, C]]).any(axis=1)))
    rep.add("adjointness", first_row(leq[mul[A, C], B].all(axis=1) != leq[C, imp[A, B]].all(axis=1)))
    for c in rep.checks:
        if c.counterexample is not None:
            c.counterexample = tuple(S.label(v) for v in c.counterexample)
    return rep
