"""Kirchhoff polynomials of a cell structure on the projective plane.

Two 2-cells glued along three edges, encoded only by the boundary matrix.
The order-2 polynomial carries the torsion of homology in its coefficient.
"""
from symanzik_kit import core
from symanzik_kit.linalg import IntMatrix
from symanzik_kit.simplicial import GeneralizedComplex, enumerate_forests, torsion_order

U = IntMatrix.from_rows([[-1, -1], [-1, -1], [1, -1]])
cx = GeneralizedComplex(U)

for k in (0, 2, 4):
    print(f"Kir_{k} =", core.kirchhoff(U, k))
print("Sym_2 =", core.symanzik(U, 2))

# the coefficient 4 is the square of the torsion order
print("torsion order:", torsion_order(cx))
print("0-forests:", [tuple(i + 1 for i in f) for f in enumerate_forests(cx, 0)])

# a saturated kernel of U spans the dual side of the duality
cert = core.duality_certificate(U, 2)
print(cert.summary())
print("Sym_2 / a^2 =", cert.lhs, "   Kir_2(v) / b^2 =", cert.rhs)
