"""Exchange graphs of matroids.

Vertices are pairs of independent sets; an edge moves one element from the
second set to the first.  Components are recognised by the multiset union
of the pair together with its maximal codependent pair.
"""
from symanzik_kit.matroid import (
    ExchangePair, MatroidView, cfe, classify_components, is_isolated, mcp, neighbors,
    probe_square_layer,
)

u24 = MatroidView.uniform(2, 4)
v = ExchangePair.make(u24, [0, 1], [2])
print("U(2,4), vertex", v)
print("  neighbours:", ", ".join(str(w) for w in neighbors(u24, v)))
print("  mcp:", mcp(u24, v), " cfe in its layer:", cfe(u24, v))
print("  ({1,2},{3,4}) isolated in the full graph:", is_isolated(u24, ExchangePair.make(u24, [0, 1], [2, 3])))

par = MatroidView.linear([[1, 1, 0], [0, 0, 1]])   # elements 1 and 2 parallel
w = ExchangePair.make(par, [0, 2], [1])
print("parallel pair, vertex", w, "mcp", mcp(par, w))

for name, m in [("U(2,5)", MatroidView.uniform(2, 5)),
                ("K4 graphic", MatroidView.graphic([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])),
                ("linear", MatroidView.linear([[1, 0, 1, 2, 0], [0, 1, 1, 1, 0], [0, 0, 0, 0, 1]]))]:
    for graph in ("full", "rr1"):
        res = classify_components(m, graph)
        print(f"{name:11s} {graph:4s}", " | ".join(res.summary_lines()[1:5]))

# the square layer is only observed, nothing is claimed about it
print("square layer probe, U(2,4):", probe_square_layer(u24))
