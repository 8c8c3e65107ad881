"""Covering invariants: extent, Lindelof degree, exclusiveness, and the zoo
of sufficient conditions (left-separated, generalized left-separated, aD)."""

from topoforge import discrete_space, extent, indiscrete_space, lindelof_degree, sierpinski
from topoforge.assignments import SetAssignment
from topoforge.covering import (
    CoverFamily,
    exclusiveness,
    finiteness_profile,
    gls_search,
    is_aD,
    left_separated_search,
    metacompact_witness,
    paracompact_witness,
)
from topoforge.dspace import dspace_check

sier = sierpinski()
ind2 = indiscrete_space(2)
disc3 = discrete_space(3)

# extent = largest closed discrete subset; Lindelof degree = the worst
# irredundant cover.  The first never exceeds the second, and D-spaces
# close the gap.
for name, sp in [("Sierpinski", sier), ("indiscrete pair", ind2), ("discrete triple", disc3)]:
    print(f"{name}: extent {extent(sp)}, Lindelof degree {lindelof_degree(sp)},",
          f"D {dspace_check(sp).status}")

# Local and point finiteness are quantitative on finite spaces: the profile
# returns the best witness neighborhood and the counts themselves.
fam = CoverFamily(sier, (0b01, 0b11))
profile = finiteness_profile(sier, fam)
print("\nfamily {{0}, X} on Sierpinski: meet counts", profile.meet_counts,
      "memberships", profile.membership_counts)

# Witnesses behind the companion characterizations of paracompactness and
# metacompactness.  Finite spaces always have them; the bound and degree
# are minimized over the searched refinements.
cover = SetAssignment(sier, 2, (0b01, 0b11))
print("\nparacompact witness bound:", paracompact_witness(sier, cover).bound)
meta = metacompact_witness(sier, cover)
print("metacompact witness degree:", meta.degree, "via refinement", meta.refined.sets)

# Exclusiveness: the largest k with every set of at most k points closed.
# Positive exclusiveness is exactly T1, and finite T1 spaces are discrete.
print("\nexclusiveness:", {n: exclusiveness(sp) for n, sp in
                           [("sier", sier), ("ind2", ind2), ("disc3", disc3)]})

# The sufficient-condition zoo, machine-checked: a left-separating order
# induces a generalized-left-separated relation, and such a relation forces
# the D-property.  The indiscrete pair separates aD from D.
print("\nleft-separated order for Sierpinski:", left_separated_search(sier))
print("GLS relation up-sets for Sierpinski:", gls_search(sier).up_sets)
print("indiscrete pair: GLS:", gls_search(ind2), "- aD:", is_aD(ind2),
      "- D:", dspace_check(ind2).status)
