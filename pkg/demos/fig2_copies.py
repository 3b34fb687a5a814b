"""Locate the copies of ML6 inside the eleven-element multilattice."""

from multilat.catalog import builtin
from multilat.order import classify, find_ml6

P = builtin("fig2-poset")
print(classify(P))
for iso in ("homomorphism", "order"):
    copies = find_ml6(P, "restricted", iso=iso)
    print(f"\n{iso}: {len(copies)} restricted copies")
    for e in copies:
        print("  ", sorted(e.image))
print("\nfull copies:", len(find_ml6(P, "full")))
