from itertools import combinations

import pytest

from multilat.catalog import FIG2_LISTED_COPIES, builtin
from multilat.errors import EmptySubset
from multilat.order import (check_homomorphism, classify, find_embeddings, find_ml6,
                            multi_bounds, multilattice_selftest, subml_check)
from multilat.order import ml6 as ml6_pattern
from multilat.poset import TOP, chain, from_covers
from multilat.search import enumerate_bounded_posets
import oracles
from oracles import as_relation


def boolean_cube():
    els = ["0", "x", "y", "z", "xy", "xz", "yz", "xyz"]
    cov = [("0", "x"), ("0", "y"), ("0", "z"), ("x", "xy"), ("x", "xz"), ("y", "xy"), ("y", "yz"),
           ("z", "xz"), ("z", "yz"), ("xy", "xyz"), ("xz", "xyz"), ("yz", "xyz")]
    return from_covers(els, cov, name="2^3")


def test_multi_bounds_examples(ml6):
    assert set(multi_bounds(ml6, {"a", "b"}, "sup")) == {"c", "d"}
    assert multi_bounds(builtin("rml7-poset"), {"c", "d"}, "sup") == ("e",)
    assert multi_bounds(ml6, ml6.elements, "sup") == (TOP,)


def test_classify_examples(ml6):
    r = classify(ml6)
    assert (r.is_multilattice, r.is_complete, r.is_lattice, r.is_pure) == (True, True, False, True)
    assert set(r.witness) == {"a", "b"}
    r = classify(builtin("fig1-right-poset"))
    assert r.is_multilattice and not r.is_complete and not r.is_lattice
    r = classify(chain(4))
    assert r.is_lattice and r.is_complete and not r.is_pure


@pytest.mark.parametrize("P", [chain(1), chain(3), boolean_cube(), builtin("ml6-poset"),
                               builtin("fig2-poset"), builtin("rml7-poset"), builtin("fig1-right-poset")],
                         ids=lambda P: P.name or str(P.n))
def test_is_lattice_matches_oracle(P):
    els, le = as_relation(P)
    assert classify(P).is_lattice == oracles.is_lattice(els, le)


@pytest.mark.parametrize("P", [chain(4), boolean_cube()], ids=["chain", "cube"])
def test_lattices_have_singleton_bounds(P):
    els, le = as_relation(P)
    for k in range(1, 4):
        for X in combinations(els, k):
            s, i = multi_bounds(P, X, "sup"), multi_bounds(P, X, "inf")
            assert len(s) == 1 and len(i) == 1
            assert set(s) == oracles.msup(els, le, set(X))


def test_bounding_property_bounded_posets():
    for n in range(1, 7):
        for P in enumerate_bounded_posets(n):
            assert multilattice_selftest(P)
            els, le = as_relation(P)
            for k in range(1, min(4, n) + 1):
                for X in combinations(els, k):
                    sup = set(multi_bounds(P, X, "sup"))
                    assert sup and multi_bounds(P, X, "inf")
                    for u in oracles.upper_bounds(els, le, X):
                        assert any((m, u) in le for m in sup)


def test_subml_examples(fig2):
    S1 = FIG2_LISTED_COPIES["S1"]
    assert subml_check(fig2, S1, "restricted")
    assert not subml_check(fig2, S1, "full")
    assert subml_check(fig2, fig2.elements, "full")
    with pytest.raises(EmptySubset):
        subml_check(fig2, [], "full")


def test_s9_fails_restricted(fig2):
    S9 = FIG2_LISTED_COPIES["S9"]
    assert set(multi_bounds(fig2, {"a", "c"}, "sup")) == {"f"}
    assert not subml_check(fig2, S9, "restricted")


def test_find_ml6_self(ml6):
    found = find_ml6(ml6, "restricted")
    assert len(found) == 1 and found[0].image == frozenset(ml6.elements)


def test_fig2_copies(fig2):
    found = {frozenset(e.image) for e in find_ml6(fig2, "restricted")}
    assert found == {frozenset(FIG2_LISTED_COPIES[f"S{i}"]) for i in range(1, 9)}
    assert find_ml6(fig2, "full") == []


def test_fig2_order_variant_matches_oracle(fig2):
    els, le = as_relation(fig2)
    literal = {frozenset(e.image) for e in find_ml6(fig2, "restricted", iso="order")}
    assert literal == oracles.ml6_copies(els, le, "restricted")
    # four order-isomorphic restricted copies are not homomorphic images
    assert len(literal) == 12
    assert oracles.ml6_copies(els, le, "full") == set()


def test_embeddings_distinct_images(fig2):
    embs = find_embeddings(ml6_pattern(), fig2)
    images = [e.image for e in embs]
    assert len(images) == len(set(images))


def test_homomorphism_examples(ml6, fig2):
    ident = {x: x for x in ml6.elements}
    assert check_homomorphism(ml6, ml6, ident)
    const = {x: TOP for x in ml6.elements}
    assert check_homomorphism(ml6, ml6, const)
    S1 = fig2.induced(FIG2_LISTED_COPIES["S1"])
    emb = find_embeddings(ml6, S1)[0]
    assert check_homomorphism(ml6, S1, emb.mapping)


def test_contains_ml6_small_pure():
    for n in range(1, 8):
        for P in enumerate_bounded_posets(n):
            if classify(P).is_pure:
                assert find_ml6(P, "restricted"), P.name
                assert find_ml6(P, "restricted", iso="order"), P.name
