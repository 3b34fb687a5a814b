"""Slow, obviously-correct reference implementations used to cross-check the library.

Everything here works on plain Python sets and dicts of labels and never
calls into the package's numpy machinery.
"""

from itertools import combinations, permutations, product


def closure(elements, pairs):
    """Reflexive-transitive closure of a relation, as a set of (x, y) with x <= y."""
    rel = {(x, x) for x in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(product(rel, rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def upper_bounds(elements, le, X):
    return {u for u in elements if all((x, u) in le for x in X)}


def lower_bounds(elements, le, X):
    return {u for u in elements if all((u, x) in le for x in X)}


def minimal(le, S):
    return {s for s in S if not any((t, s) in le and t != s for t in S)}


def maximal(le, S):
    return {s for s in S if not any((s, t) in le and t != s for t in S)}


def msup(elements, le, X):
    return minimal(le, upper_bounds(elements, le, X))


def minf(elements, le, X):
    return maximal(le, lower_bounds(elements, le, X))


def is_lattice(elements, le):
    return all(len(msup(elements, le, {x, y})) == 1 and len(minf(elements, le, {x, y})) == 1
               for x in elements for y in elements)


def restricted_sub(elements, le, S):
    for x, y in combinations(sorted(S), 2):
        if not (msup(elements, le, {x, y}) & S) or not (minf(elements, le, {x, y}) & S):
            return False
    return True


def full_sub(elements, le, S):
    for x, y in combinations(sorted(S), 2):
        if not msup(elements, le, {x, y}) <= S or not minf(elements, le, {x, y}) <= S:
            return False
    return True


ML6 = (["⊥", "a", "b", "c", "d", "⊤"],
       [("⊥", "a"), ("⊥", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "⊤"), ("d", "⊤")])


def ml6_copies(elements, le, kind="restricted"):
    """Six-element subsets order-isomorphic to ML6 that pass the submultilattice test."""
    pat_el, pat_cov = ML6
    pat_le = closure(pat_el, pat_cov)
    out = set()
    for S in combinations(elements, 6):
        for img in permutations(S):
            f = dict(zip(pat_el, img))
            if all(((f[x], f[y]) in le) == ((x, y) in pat_le) for x in pat_el for y in pat_el):
                test = restricted_sub if kind == "restricted" else full_sub
                if test(elements, le, set(S)):
                    out.add(frozenset(S))
                break
    return out


def residual(elements, le, mul, a, b):
    S = [c for c in elements if (mul[a, c], b) in le]
    tops = [c for c in S if all((s, c) in le for s in S)]
    return tops[0] if tops else None


def is_pocrim(elements, le, mul, top):
    """Direct definition: commutative monoid with identity top and an adjoint residual."""
    for a in elements:
        if mul[top, a] != a:
            return False
        for b in elements:
            if mul[a, b] != mul[b, a]:
                return False
            r = residual(elements, le, mul, a, b)
            if r is None or any(((mul[a, c], b) in le) != ((c, r) in le) for c in elements):
                return False
            for c in elements:
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    return False
    return True


def adjoint(elements, le, mul, imp):
    return all(((mul[a, c], b) in le) == ((c, imp[a, b]) in le)
               for a in elements for b in elements for c in elements)


def count_posets(n):
    """Unlabelled posets on n points by brute force over all relations."""
    pts = list(range(n))
    cells = [(i, j) for i in pts for j in pts if i != j]
    seen = set()
    for bits in product([0, 1], repeat=len(cells)):
        rel = {c for c, b in zip(cells, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        key = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in permutations(pts))
        seen.add(key)
    return len(seen)


def crisp_concepts(objects, attributes, incidence):
    out = set()
    for k in range(len(objects) + 1):
        for A in combinations(objects, k):
            B = frozenset(m for m in attributes if all((g, m) in incidence for g in A))
            A2 = frozenset(g for g in objects if all((g, m) in incidence for m in B))
            out.add((A2, B))
    return out


def as_relation(P):
    """Label-level carrier and order relation of a Poset."""
    return list(P.elements), {(P.label(i), P.label(j)) for i in range(P.n) for j in range(P.n) if P.leq[i, j]}


def as_op(alg, which="mul"):
    t = alg.mul if which == "mul" else alg.imp
    P = alg.poset
    return {(P.label(i), P.label(j)): P.label(t[i, j]) for i in range(P.n) for j in range(P.n)}
