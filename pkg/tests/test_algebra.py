from itertools import product

import numpy as np
import pytest

from multilat.algebra import (OpTable, Pocrim, check_properties, derive_implication, ordinal_sum,
                              residual_of, residuation_failure, verify_pocrim, verify_rml)
from multilat.catalog import NAMES, builtin
from multilat.errors import NotResiduated, ShapeMismatch, UnknownName, UnverifiedInput
from multilat.order import classify
from multilat.poset import BOTTOM, TOP, Poset, chain
import oracles
from oracles import as_op, as_relation

ALGEBRAS = ["rml7-repaired", "two", "chain-3-godel", "chain-4-lukasiewicz", "chain-5-godel"]


# -- catalog ------------------------------------------------------------------


def test_rml7_verbatim_entries(rml7):
    assert rml7.times("e", "e") == "a"
    assert rml7.implies("e", "a") == "e"
    assert rml7.implies("c", BOTTOM) == BOTTOM
    assert rml7.implies("c", "e") == TOP


def test_ml6_imp_table():
    t = builtin("ml6-imp-table")
    assert isinstance(t, OpTable)
    assert t["a"][BOTTOM] == "b" and t["a", BOTTOM] == "b"


def test_two():
    A = builtin("two")
    assert A.table_labels("mul") == [[BOTTOM, BOTTOM], [BOTTOM, TOP]]
    assert A.table_labels("imp") == [[TOP, TOP], [BOTTOM, TOP]]


def test_unknown_builtin():
    with pytest.raises(UnknownName):
        builtin("ml7")
    with pytest.raises(UnknownName):
        builtin("chain-0-godel")


def test_names_listed():
    assert "rml7" in NAMES and "ml6-imp-table" in NAMES


# -- residuals ------------------------------------------------------------------


def test_residual_examples(rml7, rml7r):
    for A in (rml7, rml7r):
        assert A.poset.label(residual_of(A.poset, A.mul, "e", "a")) == "e"
        for b in A.elements:
            assert A.poset.label(residual_of(A.poset, A.mul, TOP, b)) == b


def test_residual_c_bottom_from_printed_product(rml7):
    # the printed ⊙ has c⊙e = ⊥, so the largest c' with c⊙c' <= ⊥ is e,
    # although the printed → lists c→⊥ = ⊥
    P = rml7.poset
    assert P.label(residual_of(P, rml7.mul, "c", BOTTOM)) == "e"


def test_no_pocrim_on_rml7_order_has_c_to_bottom_bottom(rml7r):
    from multilat.search import enumerate_pocrims
    found = enumerate_pocrims(rml7r.poset)
    assert found.exhaustive and len(found) == 17
    assert all(A.implies("c", BOTTOM) != BOTTOM for A in found)


def test_derive_printed_table_has_no_residual(rml7):
    # the printed ⊙ is not monotone, so some pair has no largest residual
    assert derive_implication(rml7.poset, rml7.mul) is None
    assert residuation_failure(rml7.poset, rml7.mul) is not None


def test_derive_repaired_reproduces_imp(rml7r):
    assert (derive_implication(rml7r.poset, rml7r.mul) == rml7r.imp).all()


def test_derive_two_chain_min():
    P = chain(2, [BOTTOM, TOP])
    imp = derive_implication(P, [[0, 0], [0, 1]])
    assert imp.tolist() == [[1, 1], [0, 1]]


def test_derive_absent_on_ml6_meetlike(ml6):
    # a⊙c = a⊙d = ⊥ and a⊙⊥ = ⊥: {c' : a⊙c' <= ⊥} has maxima c and d only
    n = ml6.n
    i = ml6.index
    mul = np.zeros((n, n), dtype=np.int64)
    mul[i(TOP), :] = np.arange(n)
    mul[:, i(TOP)] = np.arange(n)
    assert derive_implication(ml6, mul) is None
    with pytest.raises(NotResiduated) as exc:
        Pocrim(ml6, mul)
    assert exc.value.pair is not None


def test_residual_matches_oracle_on_catalog():
    for name in ALGEBRAS:
        A = builtin(name)
        els, le = as_relation(A.poset)
        mul = as_op(A)
        for a, b in product(els, els):
            got = residual_of(A.poset, A.mul, a, b)
            assert (None if got is None else A.poset.label(got)) == oracles.residual(els, le, mul, a, b)


def test_residual_matches_oracle_on_random_tables():
    rng = np.random.default_rng(7)
    P = builtin("ml6-poset")
    els, le = as_relation(P)
    for _ in range(40):
        mul = rng.integers(0, P.n, size=(P.n, P.n))
        d = {(P.label(x), P.label(y)): P.label(mul[x, y]) for x in range(P.n) for y in range(P.n)}
        for a, b in product(els, els):
            got = residual_of(P, mul, a, b)
            assert (None if got is None else P.label(got)) == oracles.residual(els, le, d, a, b)


# -- verification -----------------------------------------------------------------


def test_verify_printed_rml7_reports_failures(rml7):
    rep = verify_pocrim(rml7)
    assert not rep.ok
    assert rep["commutativity"].passed and rep["identity"].passed
    assert rep["associativity"].counterexample == ("a", "e", "e")
    assert rep["adjointness"].counterexample is not None


def test_verify_repaired(rml7r):
    assert verify_pocrim(rml7r).ok
    assert verify_rml(rml7r).ok


def test_mutation_breaks_adjointness(rml7r):
    rep = verify_pocrim(rml7r.with_entry("mul", "e", "e", BOTTOM))
    assert not rep["adjointness"].passed
    assert rep["adjointness"].counterexample == ("e", BOTTOM, "e")


def test_one_element_algebra():
    P = chain(1, [TOP])
    A = Pocrim(P, [[0]])
    assert verify_pocrim(A).ok and verify_rml(A).ok and check_properties(A).ok


def test_fig1_right_not_complete():
    P = builtin("fig1-right-poset")
    n = P.n
    A = Pocrim(P, np.zeros((n, n), dtype=np.int64), np.zeros((n, n), dtype=np.int64), top="c")
    rep = verify_rml(A)
    assert not rep["complete"].passed


def test_lukasiewicz3_is_lattice_rml():
    A = builtin("chain-3-lukasiewicz")
    assert verify_rml(A).ok
    r = classify(A.poset)
    assert r.is_lattice and not r.is_pure


def test_shape_mismatch(ml6):
    with pytest.raises(ShapeMismatch):
        Pocrim(ml6, np.zeros((3, 3), dtype=np.int64))
    with pytest.raises(ShapeMismatch):
        Pocrim(ml6, np.full((6, 6), 9))


@pytest.mark.parametrize("name", ALGEBRAS)
def test_verify_matches_oracle(name):
    A = builtin(name)
    els, le = as_relation(A.poset)
    top = A.poset.label(A.top)
    assert verify_pocrim(A).ok == (oracles.is_pocrim(els, le, as_op(A), top)
                                   and oracles.adjoint(els, le, as_op(A), as_op(A, "imp")))


def test_printed_rml7_rejected_by_oracle(rml7):
    els, le = as_relation(rml7.poset)
    assert not oracles.is_pocrim(els, le, as_op(rml7), TOP)


# -- properties ----------------------------------------------------------------


@pytest.mark.parametrize("name", ALGEBRAS)
def test_properties_hold(name):
    assert check_properties(builtin(name)).ok


def test_property_instances(rml7r):
    assert rml7r.poset.le("c", "e") and rml7r.implies("c", "e") == TOP
    A = rml7r
    assert A.implies("a", A.implies("b", BOTTOM)) == A.implies("b", A.implies("a", BOTTOM))


def test_printed_rml7_property_failures(rml7):
    rep = check_properties(rml7)
    assert rep["P3"].passed and rep["P1"].passed
    assert not rep["P4"].passed and not rep["P5"].passed


# -- ordinal sums ----------------------------------------------------------------


def test_sum_two_two():
    S = ordinal_sum(builtin("two"), builtin("two"))
    assert S.n == 3 and verify_pocrim(S).ok
    assert classify(S.poset).is_lattice
    G = builtin("chain-3-godel")
    assert (S.mul == G.mul).all() and (S.imp == G.imp).all()


def test_sum_rml7_two(rml7r):
    S = ordinal_sum(rml7r, builtin("two"))
    assert S.n == 8 and verify_rml(S).ok
    assert classify(S.poset).is_pure


def test_sum_case_tables(rml7r):
    B = builtin("chain-3-lukasiewicz")
    S = ordinal_sum(rml7r, B)
    below = [x for x in rml7r.elements if x != TOP]
    for x in below:
        for y in B.elements:
            y2 = y if y in S.elements else f"{y}_2"
            assert S.times(x, y2) == x
            assert S.implies(x, y2) == S.poset.label(S.top)
            assert S.implies(y2, x) == x


def test_sum_rejects_unverified(rml7):
    with pytest.raises(UnverifiedInput):
        ordinal_sum(rml7, builtin("two"))


def test_sum_label_clash():
    S = ordinal_sum(builtin("chain-3-godel"), builtin("chain-2-godel"))
    assert len(set(S.elements)) == S.n == 4


def test_no_pocrim_without_lower_bound():
    # x⊙y would have to lie below both x and y
    from multilat.search import enumerate_pocrims
    P = Poset.from_covers(["x", "y", TOP], [("x", TOP), ("y", TOP)])
    res = enumerate_pocrims(P)
    assert res.exhaustive and len(res) == 0
