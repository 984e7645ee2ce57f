"""Bounded perturbations of the weights change the Symanzik fraction by O(1).

sup |D| over seeded samples y in [C, 10C]^n settles as C grows; with two
parameters the difference needs dividing by max(y).  The last instance
shows that this rate cannot be lowered.
"""
from symanzik_kit.simplicial import graph_complex
from symanzik_kit.stability import (
    StabilityInstance, dense_perturbation, diagonal_perturbation, run_corollary_experiment,
    run_stability_experiment, sharpness_example, symbolic_difference,
)

U = graph_complex([(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]).top_boundary.to_rows()
b = [0, 2, -1, -1, 0]

inst = StabilityInstance.from_parameters(U, [b], 2, diagonal_perturbation(2, 6))
rep = run_stability_experiment(inst, samples=30)
print("theta graph, diagonal Z")
print(rep.table())

inst = StabilityInstance.from_parameters([[1, 1, 0], [0, 1, 1]], [[1, 0]], 4, dense_perturbation(4, 3))
print("\norder 4, dense Z")
print(run_stability_experiment(inst, samples=20).table())

two = StabilityInstance.from_parameters(U, [b, [1, 0, 0, 0, -1]], 2, diagonal_perturbation(2, 6))
print("\ntwo parameters, normalized by max(y)")
print(run_corollary_experiment(two, samples=30).table())

inst, z = sharpness_example()
num, den = symbolic_difference(inst, z)
print("\nsharpness instance: D =", num, "/", den)
print(run_stability_experiment(inst, samples=10).table())
print(run_corollary_experiment(inst, samples=10).table())
