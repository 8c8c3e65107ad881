"""Tour of the core space layer: building, checking, and querying finite spaces."""

from topoforge import (
    PointSet,
    classify_subset,
    closure,
    discrete_space,
    generate_topology,
    indiscrete_space,
    separation_level,
    sierpinski,
    subspace,
    verify_axioms,
)
from topoforge.space import FiniteSpace

# Points are indices 0..n-1 and subsets are bit words, so a space is just a
# point count plus its open family in a canonical order.
sier = sierpinski()
print("Sierpinski space:", sier)

# Generate a topology from any subbase: the smallest family containing it,
# the empty set and the whole space, closed under union and intersection.
chain = generate_topology(3, [PointSet.from_indices(3, [0, 1]), PointSet.from_indices(3, [1, 2])])
print("\ngenerated from {0,1} and {1,2}:", chain)
print("axioms hold:", verify_axioms(chain).ok)

# A family that is not a topology gets diagnosed, not rejected.
broken = FiniteSpace.from_opens(2, [0b00, 0b01, 0b10])
report = verify_axioms(broken)
print("\nbroken family: has_full =", report.has_full, ", union_closed =", report.union_closed)

# Subset classification: closed, discrete, and the conjunction.
one = PointSet.singleton(2, 1)
cls = classify_subset(sier, one)
print("\n{1} in Sierpinski: closed =", cls.is_closed, ", discrete =", cls.is_discrete)
print("closure of {0}:", closure(sier, PointSet.singleton(2, 0)).indices())

# Separation: the Sierpinski space distinguishes its points (T0) but the
# open point is not closed (not T1).  Finite T1 forces the discrete topology.
print("\nSierpinski separation:", separation_level(sier))
print("discrete separation:", separation_level(discrete_space(2)))
print("indiscrete separation:", separation_level(indiscrete_space(2)))

# Subspaces come re-indexed with a translation table.
sub = subspace(chain, PointSet.from_indices(3, [0, 2]))
print("\nsubspace on {0,2}:", sub.space, "  local 1 is global", sub.to_global(1))
