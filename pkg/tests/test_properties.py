"""Randomised law checks over generated posets, algebras, maps and contexts."""

from itertools import product

from hypothesis import HealthCheck, given, settings, strategies as st

from multilat import io
from multilat.algebra import check_properties, derive_implication, ordinal_sum, verify_pocrim
from multilat.catalog import builtin
from multilat.concepts import (CrispContext, enumerate_concepts, galois_from_code_tables,
                               galois_from_crisp_context, galois_maps, lemme1_report, verify_galois)
from multilat.funcspace import ValuedFunction, choice_bounds, pointwise, pointwise_leq, top_function
from multilat.order import classify, multi_bounds
from multilat.poset import bounds, from_covers
import oracles
from oracles import as_relation

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

ALGEBRAS = ["rml7-repaired", "two", "chain-3-godel", "chain-4-lukasiewicz", "chain-3-lukasiewicz"]


@st.composite
def posets(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    labels = [f"v{i}" for i in range(n)]
    return from_covers(labels, [(labels[i], labels[j]) for i, j in chosen])


@st.composite
def subsets(draw, P, min_size=0, max_size=3):
    k = draw(st.integers(min_size, min(max_size, P.n)))
    return draw(st.lists(st.sampled_from(P.elements), min_size=k, max_size=k, unique=True))


@SETTINGS
@given(st.data())
def test_order_is_closure_of_covers(data):
    P = data.draw(posets())
    els, le = as_relation(P)
    cov = [(P.label(i), P.label(j)) for i, j in P.cover_pairs()]
    assert le == oracles.closure(els, cov)


@SETTINGS
@given(st.data())
def test_multi_bounds_match_oracle(data):
    P = data.draw(posets())
    X = data.draw(subsets(P, 1))
    els, le = as_relation(P)
    assert set(multi_bounds(P, X, "sup")) == oracles.msup(els, le, X)
    assert set(multi_bounds(P, X, "inf")) == oracles.minf(els, le, X)
    assert set(bounds(P, X, "upper")) == oracles.upper_bounds(els, le, X)


@SETTINGS
@given(st.data())
def test_duality(data):
    P = data.draw(posets())
    X = data.draw(subsets(P))
    assert bounds(P, X, "upper") == bounds(P.dual(), X, "lower")
    if X:
        assert multi_bounds(P, X, "sup") == multi_bounds(P.dual(), X, "inf")


@SETTINGS
@given(st.data())
def test_bounding_property(data):
    P = data.draw(posets())
    X = data.draw(subsets(P, 1))
    sup = multi_bounds(P, X, "sup")
    for u in bounds(P, X, "upper"):
        assert any(P.le(m, u) for m in sup)


@SETTINGS
@given(st.data())
def test_lattice_flag_matches_oracle(data):
    P = data.draw(posets(5))
    els, le = as_relation(P)
    assert classify(P).is_lattice == oracles.is_lattice(els, le)


@SETTINGS
@given(st.data())
def test_poset_json_round_trip(data):
    P = data.draw(posets())
    ascii = data.draw(st.booleans())
    assert io.parse_poset(io.loads(io.dumps(io.poset_to_json(P, ascii)))) == P


# -- algebras ---------------------------------------------------------------


@st.composite
def algebras(draw):
    """Catalog algebras and ordinal sums of up to three of them."""
    parts = draw(st.lists(st.sampled_from(ALGEBRAS), min_size=1, max_size=3))
    alg = builtin(parts[0])
    for p in parts[1:]:
        alg = ordinal_sum(alg, builtin(p))
    return alg, parts


@SETTINGS
@given(algebras())
def test_sums_are_pocrims_with_all_laws(drawn):
    alg, _ = drawn
    assert verify_pocrim(alg).ok
    assert check_properties(alg).ok
    assert (derive_implication(alg.poset, alg.mul) == alg.imp).all()


@SETTINGS
@given(algebras())
def test_sum_purity_and_size(drawn):
    alg, parts = drawn
    assert alg.n == sum(builtin(p).n for p in parts) - (len(parts) - 1)
    r = classify(alg.poset)
    assert r.is_complete
    assert r.is_pure == any(classify(builtin(p).poset).is_pure for p in parts)


@SETTINGS
@given(algebras(), st.data())
def test_p4_monotonicity(drawn, data):
    alg, _ = drawn
    a, b, c = (data.draw(st.sampled_from(alg.elements)) for _ in range(3))
    le = alg.poset.le
    if le(a, b):
        assert le(alg.times(a, c), alg.times(b, c))
        assert le(alg.implies(c, a), alg.implies(c, b))
        assert le(alg.implies(b, c), alg.implies(a, c))


# -- function spaces -----------------------------------------------------------


@st.composite
def maps(draw, alg, domain):
    return ValuedFunction(domain, [draw(st.sampled_from(alg.elements)) for _ in domain])


@SETTINGS
@given(st.data(), st.integers(1, 4))
def test_pointwise_adjointness(data, m):
    alg = builtin(data.draw(st.sampled_from(ALGEBRAS)))
    dom = tuple(f"x{i}" for i in range(m))
    f1, f2, f3 = (data.draw(maps(alg, dom)) for _ in range(3))
    P = alg.poset
    assert pointwise_leq(P, pointwise(alg, "mul", f1, f2), f3) == pointwise_leq(P, f2, pointwise(alg, "imp", f1, f3))
    assert pointwise(alg, "mul", f1, top_function(alg, dom)) == f1
    assert pointwise(alg, "mul", f1, f2) == pointwise(alg, "mul", f2, f1)


@SETTINGS
@given(st.data())
def test_choice_bounds_exact(data):
    P = builtin(data.draw(st.sampled_from(["rml7-poset", "ml6-poset", "fig2-poset"])))
    alg_like = type("A", (), {"elements": P.elements})
    dom = ("x", "y")
    fs = data.draw(st.lists(maps(alg_like, dom), min_size=1, max_size=3))
    side = data.draw(st.sampled_from(["sup", "inf"]))
    got = {f.values for f in choice_bounds(P, fs, side)}
    els, le = as_relation(P)
    space = list(product(els, repeat=2))
    fle = {(u, v) for u in space for v in space if (u[0], v[0]) in le and (u[1], v[1]) in le}
    want = (oracles.msup if side == "sup" else oracles.minf)(space, fle, [f.values for f in fs])
    assert got == want


# -- Galois pairs and concepts ------------------------------------------------------

R = builtin("rml7-repaired")
RP = R.poset
MAPS = galois_maps(RP, RP)


@SETTINGS
@given(st.integers(0, len(MAPS) - 1))
def test_every_galois_map_verifies(k):
    phi, psi = MAPS[k]
    pair = galois_from_code_tables(R, ("x",), R, ("x",), phi, psi)
    assert verify_galois(pair).ok
    sys = enumerate_concepts(pair)
    # extents are exactly the closed elements
    closed = {i for i in range(RP.n) if psi[phi[i]] == i}
    assert set(int(h) for h in sys.extent_codes) == closed
    rep = lemme1_report(sys)
    assert rep["side-1-residuation-one-way"].passed and rep["side-2-residuation-one-way"].passed


@SETTINGS
@given(st.integers(0, len(MAPS) - 1))
def test_concept_order_dual_to_intent_order(k):
    sys = enumerate_concepts(galois_from_code_tables(R, ("x",), R, ("x",), *MAPS[k]))
    assert (sys.extent_leq() == sys.intent_leq().T).all()


@SETTINGS
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_crisp_bridge(n_obj, n_att, data):
    G = [f"g{i}" for i in range(n_obj)]
    M = [f"m{j}" for j in range(n_att)]
    cells = [(g, m) for g in G for m in M]
    inc = data.draw(st.sets(st.sampled_from(cells)))
    sys = enumerate_concepts(galois_from_crisp_context(CrispContext(G, M, inc)))
    got = {(frozenset(g for g, v in zip(G, c.extent.values) if v == "⊤"),
            frozenset(m for m, v in zip(M, c.intent.values) if v == "⊤")) for c in sys.concepts}
    assert got == oracles.crisp_concepts(G, M, inc)
