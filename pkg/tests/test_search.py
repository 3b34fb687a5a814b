from itertools import combinations_with_replacement, product

import numpy as np
import pytest

from multilat.algebra import verify_pocrim
from multilat.catalog import builtin
from multilat.errors import NotAMaximum, SizeTooLarge
from multilat.order import classify
from multilat.poset import BOTTOM, TOP, Poset, chain
from multilat.search import (IMPLICATION_AXIOMS, canonical_key, enumerate_bounded_posets,
                             enumerate_implications, enumerate_pocrims, enumerate_posets,
                             implication_report)
import oracles
from oracles import as_relation


def naive_pocrim_tables(P):
    """All ⊙ tables on P passing the direct pocrim definition.

    Identity and commutativity are imposed while generating (every pocrim
    has them); the remaining cells range over the whole carrier.
    """
    els, le = as_relation(P)
    top = P.label(P.top)
    rest = [x for x in els if x != top]
    cells = list(combinations_with_replacement(rest, 2))
    out = set()
    for vals in product(els, repeat=len(cells)):
        mul = {(top, x): x for x in els} | {(x, top): x for x in els}
        for (x, y), v in zip(cells, vals):
            mul[x, y] = mul[y, x] = v
        if oracles.is_pocrim(els, le, mul, top):
            out.add(tuple(P.index(mul[x, y]) for x in els for y in els))
    return out


def posets_with_top(max_n):
    for n in range(1, max_n + 1):
        for i, m in enumerate(enumerate_posets(n)):
            P = Poset([f"p{k}" for k in range(n)], m, name=f"p{n}-{i}")
            if P.top is not None:
                yield P


@pytest.mark.parametrize("P", list(posets_with_top(4)), ids=lambda P: P.name)
def test_pocrims_match_naive(P):
    got = {tuple(A.mul.ravel()) for A in enumerate_pocrims(P)}
    assert got == naive_pocrim_tables(P)


def test_ml6_has_no_pocrim(ml6):
    res = enumerate_pocrims(ml6)
    assert res.exhaustive and len(res) == 0 and res.nodes > 0


def test_rml7_order_pocrims(rml7, rml7r):
    res = enumerate_pocrims(rml7.poset)
    assert res.exhaustive
    tables = [A.mul for A in res]
    assert any((t == rml7r.mul).all() for t in tables)
    # the printed ⊙ is not associative, so it cannot be among them
    assert not any((t == rml7.mul).all() for t in tables)
    assert all(verify_pocrim(A).ok for A in res)


def test_two_chain_single_pocrim():
    res = enumerate_pocrims(chain(2))
    assert len(res) == 1 and res.structures[0].mul.tolist() == [[0, 0], [0, 1]]


def test_bad_top(ml6):
    with pytest.raises(NotAMaximum):
        enumerate_pocrims(ml6, top="a")
    with pytest.raises(NotAMaximum):
        enumerate_pocrims(builtin("fig1-right-poset"))


def test_cap():
    res = enumerate_pocrims(builtin("rml7-poset"), cap=3)
    assert len(res) == 3 and not res.exhaustive
    full = enumerate_pocrims(chain(3))
    res = enumerate_pocrims(chain(3), cap=len(full))
    assert res.exhaustive and len(res) == len(full)
    with pytest.raises(ValueError):
        enumerate_pocrims(chain(3), cap=0)


def test_parallel_identical():
    P = builtin("rml7-poset")
    a = enumerate_pocrims(P, jobs=1)
    b = enumerate_pocrims(P, jobs=4)
    assert [x.mul.tobytes() for x in a] == [x.mul.tobytes() for x in b]
    c = enumerate_implications(builtin("ml6-poset"), jobs=3)
    d = enumerate_implications(builtin("ml6-poset"))
    assert [t.tobytes() for t in c] == [t.tobytes() for t in d]


def test_results_sorted():
    res = enumerate_pocrims(builtin("rml7-poset"))
    keys = [tuple(A.mul.ravel()) for A in res]
    assert keys == sorted(keys)


def test_symmetry_breaking_subset():
    P = builtin("rml7-poset")
    full = enumerate_pocrims(P)
    sb = enumerate_pocrims(P, symmetry_breaking=True)
    assert 0 < len(sb) <= len(full)
    assert {A.mul.tobytes() for A in sb} <= {A.mul.tobytes() for A in full}


# -- implications ----------------------------------------------------------------


def test_fleche_contains_table1(ml6):
    t1 = builtin("ml6-imp-table").table
    res = enumerate_implications(ml6)
    assert res.exhaustive
    assert any((t == t1).all() for t in res)
    assert len(res) == 2


def test_two_chain_p3_only():
    res = enumerate_implications(chain(2, [BOTTOM, TOP]), axioms=["p3"])
    assert len(res) == 1 and res.structures[0].tolist() == [[1, 1], [0, 1]]


def test_rml7_implications(rml7, rml7r):
    res = enumerate_implications(rml7.poset)
    assert any((t == rml7r.imp).all() for t in res)
    # the printed → breaks the antitone law and exchange
    assert not any((t == rml7.imp).all() for t in res)
    rep = implication_report(rml7.poset, rml7.top, rml7.imp)
    assert {c.name for c in rep.failures} == {"p4-imp", "p5"}


def test_implication_soundness(ml6):
    for axioms in (IMPLICATION_AXIOMS, ("p3",), ("p3", "p5"), ("weakening", "topid")):
        res = enumerate_implications(chain(3), axioms=axioms)
        assert all(implication_report(chain(3), 2, t, axioms).ok for t in res)


def test_implication_completeness_tiny():
    P = chain(3)
    for axioms in (("p3",), ("p3", "p5"), IMPLICATION_AXIOMS):
        got = {t.tobytes() for t in enumerate_implications(P, axioms=axioms)}
        want = set()
        for vals in product(range(3), repeat=9):
            t = np.array(vals, dtype=np.int64).reshape(3, 3)
            if implication_report(P, 2, t, axioms).ok:
                want.add(t.tobytes())
        assert got == want


def test_implication_bad_axioms(ml6):
    with pytest.raises(ValueError):
        enumerate_implications(ml6, axioms=[])
    with pytest.raises(ValueError):
        enumerate_implications(ml6, axioms=["p9"])


# -- poset generation --------------------------------------------------------------


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_poset_counts_match_brute_force(n):
    assert len(enumerate_posets(n)) == oracles.count_posets(n)


def test_poset_counts_known():
    assert [len(enumerate_posets(n)) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]


def test_bounded_counts():
    assert [len(enumerate_bounded_posets(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 16, 63]
    (P,) = enumerate_bounded_posets(3)
    assert classify(P).is_lattice


def test_bounded_distinct_classes():
    for n in range(1, 8):
        keys = [canonical_key(P) for P in enumerate_bounded_posets(n)]
        assert len(keys) == len(set(keys))


def test_only_ml6_is_pure_up_to_six(ml6):
    pure = [P for n in range(1, 7) for P in enumerate_bounded_posets(n) if classify(P).is_pure]
    assert len(pure) == 1 and canonical_key(pure[0]) == canonical_key(ml6)


def test_size_limits():
    with pytest.raises(SizeTooLarge):
        enumerate_bounded_posets(8)
    with pytest.raises(SizeTooLarge):
        enumerate_posets(8)
    with pytest.raises(ValueError):
        enumerate_bounded_posets(0)


@pytest.mark.slow
def test_minimality():
    for n in range(1, 7):
        for P in enumerate_bounded_posets(n):
            if classify(P).is_pure:
                assert len(enumerate_pocrims(P)) == 0
    rml7_key = canonical_key(builtin("rml7-poset"))
    hits = [P for P in enumerate_bounded_posets(7) if canonical_key(P) == rml7_key]
    assert len(hits) == 1 and len(enumerate_pocrims(hits[0])) > 0


def test_labels_of_bounded():
    P = enumerate_bounded_posets(5)[0]
    assert P.elements[0] == BOTTOM and P.elements[-1] == TOP
