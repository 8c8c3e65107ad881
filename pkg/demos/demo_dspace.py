"""Deciding the D-property and watching the greedy recursion stumble.

A space is D when every neighborhood assignment has a closed discrete
kernel: a set of points whose assigned neighborhoods already cover
everything.  The engine decides this exhaustively, extracts the witness
behind the companion-map characterization, and checks its pullback form.
"""

from topoforge import dspace_check, indiscrete_space, kernel_search, sierpinski
from topoforge.assignments import SetAssignment
from topoforge.dspace import (
    characterization_witness,
    forced_points,
    greedy_kernel,
    greedy_kernel_all_orders,
    pullback_diagonal_check,
)

sier = sierpinski()
neighborhoods = SetAssignment(sier, 2, (0b01, 0b11))  # N(0) = {0}, N(1) = X

# Brute force: scan subsets by size for a closed discrete kernel.
print("smallest closed discrete kernel:", kernel_search(neighborhoods))
print("forced points (must lie in every kernel):", forced_points(neighborhoods))

# The exhaustive verdict over all neighborhood assignments.
print("\nSierpinski is D:", dspace_check(sier).status)
verdict = dspace_check(indiscrete_space(2))
print("indiscrete pair is D:", verdict.status, "- counterexample:", verdict.counterexample.sets)

# The greedy recursion picks the first uncovered point and punctures its
# neighborhood by everything picked before.  Off T1 it can paint itself
# into a corner: picking 0 first leaves {0,1}, which is not discrete here.
failed = greedy_kernel(neighborhoods, (0, 1))
print("\ngreedy with order (0, 1):", "succeeded" if failed.success else "failed")
for step in failed.trace:
    print(f"  picked {step.picked}: set {step.neighborhood_before:#b} -> {step.neighborhood_after:#b}")
print("  reason:", failed.failure)

# Another order recovers; trying all orders restores completeness.
print("greedy with order (1, 0):", greedy_kernel(neighborhoods, (1, 0)).kernel)
print("first succeeding order:", greedy_kernel_all_orders(neighborhoods).order)

# The characterization witness: puncture the assignment on the kernel, take
# the companion, trace it onto the kernel.  The trace never hits the empty
# value, fixes each kernel point, and the kernel diagonal sits inside the
# pullback of the trace against the singleton embedding.
witness = characterization_witness(neighborhoods)
print("\nwitness kernel:", witness.kernel, "- trace values:", witness.trace_values)
print("pullback diagonal check:", pullback_diagonal_check(witness).ok)
