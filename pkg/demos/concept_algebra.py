"""Concepts of a residuum-negation pair and the algebra they carry."""

from multilat.algebra import verify_rml
from multilat.catalog import builtin
from multilat.concepts import build_concept_rml, enumerate_concepts, galois_from_residuum_negation
from multilat.funcspace import ValuedFunction

R = builtin("rml7-repaired")
pair = galois_from_residuum_negation(R, ["x"], ValuedFunction(["x"], ["c"]))
sys = enumerate_concepts(pair)
for c in sys.concepts:
    print(c)

alg = build_concept_rml(sys)
print("\n(e | e) ⊗ (e | e) =", alg.times("(e | e)", "(e | e)"))
print(verify_rml(alg))
