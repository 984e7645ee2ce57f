"""Triangular bipyramid: factorization through facet classes, and subdivision.

The 2-cycles of the bipyramid give three classes of facets, and Sym_2 is a
polynomial in the three class sums.
"""
from symanzik_kit.simplicial import (
    SimplicialComplex, facet_class_factorization, simplicial_kirchhoff, simplicial_symanzik,
    stellar_subdivide, subdivision_check,
)

cx = SimplicialComplex([(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)])
print(cx)
print("boundary matrix:")
for row in cx.top_boundary.to_rows():
    print("  ", " ".join(f"{v:2d}" for v in row))

print("Kir_2 at ones (number of weighted 0-forests):", simplicial_kirchhoff(cx, 2).evaluate([1] * 7))
print("Sym_2 =", simplicial_symanzik(cx, 2))

dec = facet_class_factorization(cx, 2)
for line in dec.describe():
    print("  ", line)
print("classes (1-based):", [tuple(i + 1 for i in c) for c in dec.classes])
assert dec.composed() == simplicial_symanzik(cx, 2)

# subdividing a facet splits its variable into a sum over the new facets
new, phi = stellar_subdivide(cx, 0)
print("after subdividing facet 1:", len(new.facets), "facets, parent map", [p + 1 for p in phi])
for f in range(7):
    ok, _, _ = subdivision_check(cx, f, 2)
    print(f"  facet {f + 1}: {'invariant' if ok else 'CHANGED'}")
