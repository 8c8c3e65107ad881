"""The finite category of spaces: limits with checked universal properties,
mono/epi double routes, and the power-set endofunctor."""

from topoforge import product, pullback, sierpinski
from topoforge.category import (
    ContinuousMap,
    constant_map,
    count_continuous_maps,
    equalizer,
    identity_map,
    initial_terminal,
    is_epi,
    is_mono,
)
from topoforge.puf import functor_check, puf_functor_map
from topoforge.space import PointSet, discrete_space, indiscrete_space, subspace

sier = sierpinski()

# Maps carry continuity certificates; certification names the offending
# open when it fails.
ident = identity_map(sier)
bad = ContinuousMap(sier, discrete_space(2), (0, 1))
try:
    bad.certify()
except AssertionError as exc:
    print("as expected:", exc)

# Initial and terminal objects with counted unique maps.
initial, terminal = initial_terminal()
print("\nmaps from the empty space into Sierpinski:", count_continuous_maps(initial, sier))
print("maps from Sierpinski into the point:", count_continuous_maps(sier, terminal))
print("maps from the point into Sierpinski:", count_continuous_maps(terminal, sier))

# Mono = injective and epi = surjective, but each is also re-derived from
# probe spaces of at most two points; the routes must agree.
point = subspace(sier, PointSet.singleton(2, 1))
inclusion = ContinuousMap(point.space, sier, (1,)).certify()
print("\ninclusion of the closed point: mono", is_mono(inclusion), "- epi", is_epi(inclusion))

# Products are generated by rectangles; the universal property certificate
# enumerates every cone from the probe battery and counts one mediator.
square = product(sier, sier)
print("\nSierpinski squared:", square.space.n, "points,", len(square.space.opens), "opens,",
      "UMP unique:", square.ump.unique)

# Equalizers carve out the agreement subspace; the classic example equalizes
# the constant 1 against the indicator of a subspace.
ind2 = indiscrete_space(2)
f = constant_map(sier, ind2, 1)
g = ContinuousMap(sier, ind2, (0, 1)).certify()
eq = equalizer(f, g)
print("equalizer carrier:", eq.carrier)

# Pullbacks are equalizers inside products; identity legs give the diagonal.
pb = pullback(ident, ident)
print("pullback of identities:", pb.pairs)

# The power-set endofunctor sends a space to the ultrafilter topology on its
# power set and a map to its direct image; the laws are checked pointwise.
swap = ContinuousMap(discrete_space(2), discrete_space(2), (1, 0)).certify()
lifted = puf_functor_map(swap)
print("\nimage of the swap on codes:", lifted.values)
print("functor laws:", functor_check(swap, swap).ok)
