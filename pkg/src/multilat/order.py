"""Multilattice structure of finite posets.

Multi-suprema and multi-infima, lattice/multilattice classification,
full and restricted submultilattices, homomorphisms and a backtracking
search for order-embedded copies of a pattern poset (used to locate
copies of ML6).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import EmptySubset, UnknownLabel
from .poset import ALIASES, BOTTOM, TOP, Poset, subsets_up_to


def multi_bounds(P, X, side="sup"):
    """Minimal upper bounds (``"sup"``) or maximal lower bounds (``"inf"``) of X."""
    idx = P.indices(X)
    if side == "sup":
        return P.labels(P.sup(idx))
    if side == "inf":
        return P.labels(P.inf(idx))
    raise ValueError(f"side must be 'sup' or 'inf', got {side!r}")


@dataclass(frozen=True)
class MultiLatticeReport:
    is_multilattice: bool
    is_complete: bool
    is_lattice: bool
    is_pure: bool
    witness: tuple | None = None

    def to_dict(self):
        return {
            "is_multilattice": self.is_multilattice,
            "is_complete": self.is_complete,
            "is_lattice": self.is_lattice,
            "is_pure": self.is_pure,
            "witness": list(self.witness) if self.witness else None,
        }


def multilattice_selftest(P, max_size=4):
    """Literal check of the multilattice definition on subsets of size <= max_size.

    Every upper bound must lie above some minimal upper bound, and dually.
    Finite posets always pass; the check is kept as a guard on the
    bound/extremal machinery.
    """
    leq = P.leq
    for X in subsets_up_to(P.n, max_size):
        if not X:
            continue
        for mask, extreme, above in (
            (P.upper_mask(X), P.sup(X), True),
            (P.lower_mask(X), P.inf(X), False),
        ):
            for u in np.flatnonzero(mask):
                ext = list(extreme)
                if above:
                    ok = leq[ext, u].any() if ext else False
                else:
                    ok = leq[u, ext].any() if ext else False
                if not ok:
                    return False
    return True


def classify(P, selftest=True):
    """Classify a finite poset as lattice / pure multilattice, complete or not."""
    is_ml = multilattice_selftest(P) if selftest else True
    witness = None
    for x, y in combinations(range(P.n), 2):
        if len(P.sup((x, y))) != 1 or len(P.inf((x, y))) != 1:
            witness = (P.label(x), P.label(y))
            break
    is_lattice = is_ml and witness is None
    return MultiLatticeReport(
        is_multilattice=is_ml,
        is_complete=is_ml and P.n > 0 and P.is_bounded(),
        is_lattice=is_lattice,
        is_pure=is_ml and not is_lattice,
        witness=witness,
    )


def subml_check(P, S, kind="restricted"):
    """Whether ``S`` is a full or restricted submultilattice of ``P``."""
    idx = P.indices(S)
    if not idx:
        raise EmptySubset("a submultilattice must be non-empty")
    inside = np.zeros(P.n, dtype=bool)
    inside[idx] = True
    for x in idx:
        for y in idx:
            if y < x:
                continue
            for bset in (P.sup((x, y)), P.inf((x, y))):
                hits = inside[list(bset)] if bset else np.zeros(0, dtype=bool)
                if kind == "full":
                    if not hits.all():
                        return False
                elif kind == "restricted":
                    if not hits.any():
                        return False
                else:
                    raise ValueError(f"kind must be 'full' or 'restricted', got {kind!r}")
    return True


@dataclass(frozen=True)
class Embedding:
    """Injective order-embedding of a pattern poset into a host."""

    mapping: dict = field(hash=False)

    @property
    def image(self):
        return frozenset(self.mapping.values())

    def __hash__(self):
        return hash(tuple(sorted(self.mapping.items())))


def _search_order(pattern):
    # grow from a minimal element through comparabilities so that every new
    # vertex is constrained by an already placed one
    comp = pattern.leq | pattern.leq.T
    order = [int(np.argmin(pattern.leq.sum(axis=0)))]
    rest = set(range(pattern.n)) - set(order)
    while rest:
        best = max(sorted(rest), key=lambda v: comp[v, order].sum())
        order.append(best)
        rest.remove(best)
    return order


def find_embeddings(pattern, host, distinct_images=True):
    """All order-embeddings of ``pattern`` into ``host`` (backtracking).

    With ``distinct_images`` only the first witness per image set is kept.
    Results are sorted by the index tuple of their image.
    """
    pl, hl = pattern.leq, host.leq
    order = _search_order(pattern)
    p_down, p_up = pl.sum(axis=0), pl.sum(axis=1)
    h_down, h_up = hl.sum(axis=0), hl.sum(axis=1)
    cands = [
        [w for w in range(host.n) if h_down[w] >= p_down[v] and h_up[w] >= p_up[v]]
        for v in range(pattern.n)
    ]
    found = {}
    assign = {}

    def extend(k):
        if k == len(order):
            image = frozenset(assign.values())
            if distinct_images and image in found:
                return
            key = image if distinct_images else tuple(sorted(assign.items()))
            found[key] = dict(assign)
            return
        v = order[k]
        used = set(assign.values())
        for w in cands[v]:
            if w in used:
                continue
            if all(pl[u, v] == hl[fu, w] and pl[v, u] == hl[w, fu] for u, fu in assign.items()):
                assign[v] = w
                extend(k + 1)
                del assign[v]

    extend(0)
    out = []
    for m in found.values():
        mapping = {pattern.label(v): host.label(w) for v, w in sorted(m.items())}
        out.append(Embedding(mapping))
    out.sort(key=lambda e: (sorted(host.index(x) for x in e.image), [host.index(e.mapping[p]) for p in pattern.elements]))
    return out


def ml6():
    """The six-element crown ML6 (bottom, a, b < c, d, top)."""
    return Poset.from_covers(
        [BOTTOM, "a", "b", "c", "d", TOP],
        [(BOTTOM, "a"), (BOTTOM, "b"), ("a", "c"), ("a", "d"),
         ("b", "c"), ("b", "d"), ("c", TOP), ("d", TOP)],
        name="ML6",
    )


def find_ml6(P, kind="restricted", iso="homomorphism"):
    """Copies of ML6 inside ``P`` that are submultilattices of the given kind.

    A candidate is a six-element subset whose induced order is that of ML6.
    With ``iso="homomorphism"`` the witnessing map ML6 -> P must also be a
    one-to-one homomorphism (multi-suprema and multi-infima of ML6 land inside
    those of P). ``iso="order"`` keeps every order-isomorphic candidate.
    """
    if iso not in ("homomorphism", "order"):
        raise ValueError(f"iso must be 'homomorphism' or 'order', got {iso!r}")
    if not P.is_bounded():
        warnings.warn(f"{P!r} is not bounded; multi-bounds may be empty", stacklevel=2)
    pattern = ml6()
    out = []
    for e in find_embeddings(pattern, P):
        if not subml_check(P, e.image, kind):
            continue
        # automorphisms of ML6 are homomorphisms, so any witness will do
        if iso == "homomorphism" and not check_homomorphism(pattern, P, e.mapping):
            continue
        out.append(e)
    return out


def check_homomorphism(P, Q, mapping, mode="benado"):
    """Check a map between multilattices for the homomorphism conditions.

    ``benado``: h(x ⊔ y) ⊆ h(x) ⊔ h(y) and dually for ⊓.
    ``full-characterization``: h(x ⊔ y) = (h(x) ⊔ h(y)) ∩ h(P) and dually;
    equivalent to ``benado`` when every multi-bound of ``P`` is non-empty.
    """
    h = np.array([Q.index(_image_of(mapping, P.label(i))) for i in range(P.n)])
    image = set(h.tolist())
    for x in range(P.n):
        for y in range(x, P.n):
            pairs = (
                ({int(h[z]) for z in P.sup((x, y))}, set(Q.sup((h[x], h[y])))),
                ({int(h[z]) for z in P.inf((x, y))}, set(Q.inf((h[x], h[y])))),
            )
            for mapped, target in pairs:
                if mode == "benado":
                    if not mapped <= target:
                        return False
                elif mode == "full-characterization":
                    if mapped != target & image:
                        return False
                else:
                    raise ValueError(f"unknown mode {mode!r}")
    return True


def _image_of(mapping, label):
    if label in mapping:
        return mapping[label]
    alias = ALIASES.get(label)
    if alias in mapping:
        return mapping[alias]
    raise UnknownLabel(f"map is undefined on {label!r}")
