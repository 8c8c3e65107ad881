"""The principal ultrafilter topology on P(X) and its structural maps.

Points of P(X) are integer codes in [0, 2^n): bit i of a code means ground
point i is a member.  The subbase is the family of point filters
U(x) = { A : x in A }; on a finite ground set the generated topology is
exactly the family of upward-closed collections of subsets, a fact this
module proves per instance against a brute-force up-set oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import config
from .category import ContinuousMap
from .errors import InputError, PreconditionError, ResourceLimitError
from .space import FiniteSpace, PointSet, canonical_opens, compress_mask, generate_topology


def principal_ultrafilter(n: int, x: int) -> PointSet:
    """All codes containing ground point x, as a subset of the 2^n-point universe."""
    if not 0 <= x < n:
        raise InputError(f"ground point {x} outside ground set of size {n}")
    mask = 0
    for code in range(1 << n):
        if code >> x & 1:
            mask |= 1 << code
    return PointSet(1 << n, mask)


def _subbase_masks(n: int) -> tuple[int, ...]:
    return tuple(principal_ultrafilter(n, x).bits for x in range(n))


@dataclass(frozen=True)
class PufSpace:
    ground_size: int
    space: FiniteSpace
    subbase: tuple[int, ...]

    @property
    def carrier_size(self) -> int:
        return 1 << self.ground_size

    def is_open_family(self, family_mask: int) -> bool:
        """Membership test without scanning the family list: open iff up-closed."""
        return is_upclosed(self.ground_size, family_mask)


def is_upclosed(n: int, family_mask: int) -> bool:
    """Whether a collection of codes is closed under adding ground points."""
    for code in range(1 << n):
        if family_mask >> code & 1:
            for x in range(n):
                if not code >> x & 1 and not family_mask >> (code | 1 << x) & 1:
                    return False
    return True


@lru_cache(maxsize=None)
def build_puf_space(n: int) -> PufSpace:
    """The topology on P(X) generated by the point filters, |X| = n."""
    if n < 0:
        raise InputError(f"ground size must be >= 0, got {n}")
    cap = config.cap_bits()
    if (1 << n) > cap:
        raise ResourceLimitError(
            f"P(X) for |X| = {n} needs {1 << n} points, above the cap of {cap} "
            f"(override with TOPOFORGE_CAP_BITS)"
        )
    subbase = _subbase_masks(n)
    space = generate_topology(1 << n, subbase)
    return PufSpace(n, space, subbase)


@lru_cache(maxsize=None)
def upset_oracle(n: int) -> FiniteSpace:
    """Brute-force enumeration of every up-closed family of subsets of X.

    Independent of the subbase-generation route; used to pin down the open
    count and membership of the generated topology exactly.
    """
    if n > 4:
        raise ResourceLimitError(f"up-set oracle enumerates 2^(2^{n}) families; capped at n <= 4")
    if n < 0:
        raise InputError(f"ground size must be >= 0, got {n}")
    carrier = 1 << n
    families = [fam for fam in range(1 << carrier) if is_upclosed(n, fam)]
    return FiniteSpace(carrier, canonical_opens(families))


@dataclass(frozen=True)
class ShrinkReport:
    """Per-point comparison of R^-1(U(x)) against U(x) for a shrinking self-map.

    The identity map satisfies the equality everywhere, but a general map
    with R(A) a subset of A need not: R mapping everything to the empty set
    has empty preimages.  Such maps are not even continuous in general, so
    the report carries the raw preimages for diagnosis rather than a verdict.
    """

    ground_size: int
    preimages: tuple[int, ...]
    expected: tuple[int, ...]
    equal_per_point: tuple[bool, ...]

    @property
    def all_equal(self) -> bool:
        return all(self.equal_per_point)


def check_shrink_map(n: int, R: Sequence[int]) -> ShrinkReport:
    """Analyze a self-map of P(X) with R(A) contained in A for every A."""
    carrier = 1 << n
    if len(R) != carrier:
        raise InputError(f"self-map of P(X) needs {carrier} values, got {len(R)}")
    offending = [code for code in range(carrier) if R[code] & ~code]
    if offending:
        raise PreconditionError(
            f"not a shrink map: R(A) is not a subset of A for codes {offending}"
        )
    subbase = _subbase_masks(n)
    preimages = []
    for x in range(n):
        pre = 0
        for code in range(carrier):
            if R[code] >> x & 1:
                pre |= 1 << code
        preimages.append(pre)
    equal = tuple(pre == exp for pre, exp in zip(preimages, subbase))
    return ShrinkReport(n, tuple(preimages), subbase, equal)


def shrink_morphism_table(n: int, f_values: Sequence[int], f_star_values: Sequence[int]) -> tuple[int, ...]:
    """The coslice self-map of P(X) sending f(x) to f_star(x), identity elsewhere.

    Requires f_star(x) a subset of f(x) pointwise so the result shrinks, and
    consistency whenever f collides (f(x1) = f(x2) forces f_star(x1) =
    f_star(x2), otherwise no single-valued map makes the triangle commute).
    """
    if len(f_values) != len(f_star_values):
        raise InputError("refinement table needs values for the same points")
    table = list(range(1 << n))
    assigned: dict[int, int] = {}
    for fx, gx in zip(f_values, f_star_values):
        if gx & ~fx:
            raise PreconditionError("not a refinement: image value not a subset")
        if fx in assigned and assigned[fx] != gx:
            raise PreconditionError(
                "no single-valued morphism: colliding companion values with "
                "different refinements"
            )
        assigned[fx] = gx
    for fx, gx in assigned.items():
        table[fx] = gx
    return tuple(table)


@dataclass(frozen=True)
class TraceMapResult:
    """The restriction map A -> A & D from P(X) to P(D), with its certificate."""

    mapping: ContinuousMap
    d_points: tuple[int, ...]
    preimage_identities: tuple[bool, ...]

    @property
    def certified(self) -> bool:
        return all(self.preimage_identities) and self.mapping.certified


def trace_map(n: int, d: PointSet) -> TraceMapResult:
    """Intersect every code with D, re-indexed into P(D).

    Certificate: the preimage of each point filter U_D(d) is exactly the
    ground filter U_X(d), checked per point of D.
    """
    if d.universe_size != n:
        raise InputError(f"subset over universe {d.universe_size}, ground set has {n} points")
    source = build_puf_space(n)
    target = build_puf_space(len(d))
    values = tuple(compress_mask(code & d.bits, d.bits) for code in range(1 << n))
    mapping = ContinuousMap(source.space, target.space, values).certify()
    identities = []
    for local, global_pt in enumerate(d.indices()):
        pre = mapping.preimage_mask(principal_ultrafilter(len(d), local).bits)
        identities.append(pre == source.subbase[global_pt])
    return TraceMapResult(mapping, d.indices(), tuple(identities))


@dataclass(frozen=True)
class ImageMapResult:
    """The direct-image map A -> t(A) from P(X) to P(Y), with its certificate."""

    mapping: ContinuousMap
    point_function: tuple[int, ...]
    preimage_identities: tuple[bool, ...]
    surjective: bool

    @property
    def certified(self) -> bool:
        return all(self.preimage_identities) and self.mapping.certified


def image_map(t: Sequence[int], dom_ground: int, cod_ground: int) -> ImageMapResult:
    """Push codes forward along a total point function t: X -> Y.

    Certificate: the preimage of U_Y(y) equals the union of U_X(x) over the
    fiber of y (the empty union when the fiber is empty).  A surjective t
    yields a surjective map of power sets.
    """
    if len(t) != dom_ground:
        raise InputError(f"point function on {dom_ground} points given {len(t)} values")
    for v in t:
        if not 0 <= v < cod_ground:
            raise InputError(f"point function value {v} outside ground set of size {cod_ground}")
    source = build_puf_space(dom_ground)
    target = build_puf_space(cod_ground)
    bit_images = [1 << t[x] for x in range(dom_ground)]
    values = []
    for code in range(1 << dom_ground):
        img = 0
        rest = code
        while rest:
            low = rest & -rest
            img |= bit_images[low.bit_length() - 1]
            rest ^= low
        values.append(img)
    mapping = ContinuousMap(source.space, target.space, tuple(values)).certify()
    identities = []
    for y in range(cod_ground):
        pre = mapping.preimage_mask(target.subbase[y])
        fiber_union = 0
        for x in range(dom_ground):
            if t[x] == y:
                fiber_union |= source.subbase[x]
        identities.append(pre == fiber_union)
    surjective = mapping.is_surjective()
    return ImageMapResult(mapping, tuple(t), tuple(identities), surjective)


def puf_object(space: FiniteSpace) -> PufSpace:
    """Object part of the power-set endofunctor; depends only on the point count."""
    return build_puf_space(space.n)


def puf_functor_map(t: ContinuousMap) -> ContinuousMap:
    """Arrow part of the power-set endofunctor: direct image on codes."""
    if not t.certified:
        raise PreconditionError("the endofunctor acts on certified continuous maps")
    return image_map(t.values, t.domain.n, t.codomain.n).mapping


@dataclass(frozen=True)
class FunctorLawReport:
    identity_ok: bool
    composition_ok: bool

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.composition_ok


def functor_check(t1: ContinuousMap, t2: ContinuousMap) -> FunctorLawReport:
    """Verify F(id) = id and F(t2 o t1) = F(t2) o F(t1) extensionally on all codes."""
    if not (t1.certified and t2.certified):
        raise PreconditionError("functor laws are checked on certified continuous maps")
    if t2.domain != t1.codomain:
        raise InputError("maps do not compose")
    from .category import identity_map

    identity_ok = True
    for sp in (t1.domain, t1.codomain, t2.codomain):
        lifted = puf_functor_map(identity_map(sp))
        if lifted.values != tuple(range(1 << sp.n)):
            identity_ok = False
    left = puf_functor_map(t1.then(t2))
    right = puf_functor_map(t1).then(puf_functor_map(t2))
    composition_ok = left.values == right.values
    return FunctorLawReport(identity_ok, composition_ok)
