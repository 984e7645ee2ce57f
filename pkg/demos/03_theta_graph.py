"""Parameters on the theta graph: Symanzik polynomials with a boundary,
the orientation formula, the height pairing and its cross terms."""
from fractions import Fraction

from symanzik_kit import core
from symanzik_kit.simplicial import (
    cross_term_identity_check, decompose_simple, graph_complex, preimage_chain,
)

# two vertices joined by three paths of length two
g = graph_complex([(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)])
U = g.top_boundary
b = [0, 2, -1, -1, 0]          # 2 v2 - v3 - v4

pf = core.ParamFamily(U, [b])
p = core.symanzik_with_params(pf, 2)
print("Sym_2(u; b) =", p)
print("at ones:", p.evaluate([1] * 6))
print("orientation formula agrees:", core.symanzik_orientation(pf, 2) == p)

# b splits into simple boundaries supported on paths
parts = decompose_simple(g, b)
for lam, piece in parts:
    print(f"  {lam} * {piece}")

chains = [preimage_chain(g, piece) for _, piece in parts]
rep = cross_term_identity_check(g, chains, [1] * 6)
for line in rep.lines():
    print("  ", line)

# height pairing as a rational function of edge lengths
y = [Fraction(1), Fraction(2), Fraction(1), Fraction(3), Fraction(1), Fraction(1)]
print("<b,b>_y =", core.height_pairing(U, b, b, y), "=", core.rat_sym(pf, 2, y))
tri = graph_complex([(1, 2), (1, 3), (2, 3)]).top_boundary
print("triangle, <v1-v2, v1-v2> at unit lengths:", core.height_pairing(tri, [1, -1, 0], [1, -1, 0], [1, 1, 1]))
