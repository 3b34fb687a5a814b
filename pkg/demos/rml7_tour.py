"""Check the seven-element tables, then find every pocrim on the same order."""

from multilat.algebra import check_properties, verify_rml
from multilat.catalog import builtin
from multilat.search import enumerate_pocrims

printed = builtin("rml7")
print("printed tables")
print(verify_rml(printed))
print(check_properties(printed))

repaired = builtin("rml7-repaired")
print("\nrepaired tables")
print(verify_rml(repaired))

res = enumerate_pocrims(repaired.poset)
print(f"\n{len(res)} pocrims on the seven-element order (exhaustive={res.exhaustive})")
print("repaired table among them:", any(a == repaired for a in res))
print("ML6 carries none:", len(enumerate_pocrims(builtin('ml6-poset'))) == 0)
