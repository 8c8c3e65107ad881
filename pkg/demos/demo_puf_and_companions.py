"""The principal ultrafilter topology, companion maps, and a cautionary tale.

P(X) becomes a space by declaring each point filter U(x) = { A : x in A }
subbasic open.  Every assignment of open sets then has a unique continuous
companion into that space, which is what the whole D-space calculus runs on.
"""

from topoforge import PointSet, build_puf_space, principal_ultrafilter, sierpinski, upset_oracle
from topoforge.assignments import (
    SetAssignment,
    classify_assignment,
    companion_map,
    restrict_assignment,
    verify_companion_unique,
)
from topoforge.category import ContinuousMap, check_continuous
from topoforge.puf import check_shrink_map

# The subbase on P({0,1}): U(0) holds the codes of {0} and {0,1}.
print("U(0) over a 2-point ground set:", principal_ultrafilter(2, 0).indices())

# Open families of the generated topology are exactly the up-closed
# collections of subsets; the open counts 3, 6, 20, 168 are the counts of
# monotone families, pinned by a brute-force oracle.
for n in range(1, 5):
    puf = build_puf_space(n)
    assert puf.space == upset_oracle(n)
    print(f"P(X) for |X| = {n}: {len(puf.space.opens)} open families")

# The companion of an assignment O sends x to the set of indices whose
# assigned set contains x; preimages of the point filters recover O exactly.
sier = sierpinski()
neighborhoods = SetAssignment(sier, 2, (0b01, 0b11))  # N(0) = {0}, N(1) = X
companion = companion_map(neighborhoods)
print("\ncompanion values (as index masks):", companion.values)
print("classification:", classify_assignment(neighborhoods))

# Uniqueness is checked by enumerating every candidate function.
uniqueness = verify_companion_unique(neighborhoods)
print(f"unique among {uniqueness.candidates_checked} candidates: {uniqueness.matches == 1}")

# Restricting the index set corresponds to intersecting companion values.
restriction = restrict_assignment(neighborhoods, PointSet.from_indices(2, [1]))
print("restriction to index 1 still covers:", restriction.is_covering)

# Cautionary tale: a self-map R of P(X) with R(A) inside A need not be
# continuous, and the identity R^-1(U(x)) = U(x) pins down the identity map.
# The workbench reports the preimages instead of assuming the identity.
table = (0, 1, 2, 0)  # shrink the top code {0,1} to the empty set
report = check_shrink_map(2, table)
print("\nshrink map with R({0,1}) = {}: preimage identity holds:", report.all_equal)
puf2 = build_puf_space(2)
print("and it is continuous:", check_continuous(ContinuousMap(puf2.space, puf2.space, table)).ok)
