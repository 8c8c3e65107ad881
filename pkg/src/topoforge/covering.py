"""Extent, Lindelöf degree, finiteness profiles, covering-property witnesses,
exclusiveness, and the aD / generalized-left-separated / left-separated zoo.

Everything here is exact: cardinal invariants are computed over all
witnesses, and each quantity with two equivalent definitions is computed
both ways with the routes required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .assignments import SetAssignment, classify_assignment, companion_values
from .errors import CertificationError, InputError, PreconditionError, ResourceLimitError
from .space import FiniteSpace, _is_closed_discrete_mask, indices_of


@dataclass(frozen=True)
class CoverFamily:
    """A duplicate-free family of opens whose union is the whole space."""

    space: FiniteSpace
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        union = 0
        seen = set()
        for m in self.members:
            if not self.space.is_open(m):
                raise InputError(f"cover member {m:#x} is not open")
            if m in seen:
                raise InputError(f"cover member {m:#x} repeated")
            seen.add(m)
            union |= m
        if union != self.space.full_mask:
            raise InputError("family does not cover the space")


def extent(space: FiniteSpace) -> int:
    """Largest cardinality of a closed discrete subset (the empty set always counts)."""
    best = 0
    for mask in range(1 << space.n):
        size = mask.bit_count()
        if size > best and _is_closed_discrete_mask(space, mask):
            best = size
    return best


def _private_choice_union(space: FiniteSpace, p_mask: int, x: int) -> int:
    """Union of all opens meeting P exactly in {x}; the best single choice for x."""
    bit = 1 << x
    out = 0
    for m in space.opens:
        if m & p_mask == bit:
            out |= m
    return out


def _max_irredundant_cover(space: FiniteSpace) -> int:
    """Largest irredundant open cover, via its private points.

    An open cover is irredundant (no proper subfamily still covers) exactly
    when every member owns a private point, covered by no other member.
    Distinct members own distinct private points, so an irredundant cover of
    size k is the same thing as a point set P of size k where every x in P
    has an open meeting P only in x, together with one such choice per x
    that jointly covers the space.  Taking for each x the union of all
    admissible opens is the best possible choice, so P works iff its minimal
    neighborhoods separate P pointwise and those unions cover.
    """
    if space.n == 0:
        return 0
    mins = space.minimal_neighborhoods
    best = 0
    for p_mask in range((1 << space.n) - 1, 0, -1):
        size = p_mask.bit_count()
        if size <= best:
            continue
        ok = True
        rest = p_mask
        while rest:
            low = rest & -rest
            if mins[low.bit_length() - 1] & p_mask != low:
                ok = False
                break
            rest ^= low
        if not ok:
            continue
        union = 0
        rest = p_mask
        while rest:
            low = rest & -rest
            union |= _private_choice_union(space, p_mask, low.bit_length() - 1)
            rest ^= low
        if union == space.full_mask:
            best = size
    return best


def _lindelof_by_quantifier(space: FiniteSpace) -> int:
    """Direct reading of the definition: least bound on minimal subcovers.

    Enumerates every cover and every subfamily; only sane for spaces with a
    handful of opens, where it guards the irredundant-cover reformulation.
    """
    opens = space.opens
    k = len(opens)
    worst = 0
    for fam_bits in range(1 << k):
        union = 0
        members = []
        for i in range(k):
            if fam_bits >> i & 1:
                union |= opens[i]
                members.append(i)
        if union != space.full_mask:
            continue
        best = len(members)
        for sub_bits in range(1 << len(members)):
            sub_union = 0
            count = 0
            for j, i in enumerate(members):
                if sub_bits >> j & 1:
                    sub_union |= opens[i]
                    count += 1
            if sub_union == space.full_mask and count < best:
                best = count
        worst = max(worst, best)
    return worst


def lindelof_degree(space: FiniteSpace) -> int:
    """Least bound k such that every open cover has a subcover of size <= k.

    Computed as the maximum cardinality over irredundant covers; on spaces
    with at most six opens the quantifier definition is evaluated too and
    must agree.
    """
    value = _max_irredundant_cover(space)
    if len(space.opens) <= 6:
        direct = _lindelof_by_quantifier(space)
        if direct != value:
            raise CertificationError(
                f"Lindelöf degree routes disagree: irredundant {value}, quantifier {direct}"
            )
    return value


@dataclass(frozen=True)
class FinitenessProfile:
    """Quantitative local/point finiteness data for a family of opens.

    meet_sets holds, per point, the indices of family members meeting the
    chosen witness neighborhood (as a bit word over member positions).
    """

    witnesses: tuple[int, ...]  # per point, a neighborhood minimizing the meet set
    meet_sets: tuple[int, ...]
    membership_counts: tuple[int, ...]  # members containing the point

    @property
    def meet_counts(self) -> tuple[int, ...]:
        return tuple(s.bit_count() for s in self.meet_sets)

    @property
    def locally_finite_bound(self) -> int:
        return max(self.meet_counts, default=0)

    @property
    def point_finite_degree(self) -> int:
        return max(self.membership_counts, default=0)


def finiteness_profile(space: FiniteSpace, fam: CoverFamily) -> FinitenessProfile:
    """Per point: the best witness neighborhood and its meeting set, plus memberships.

    The meeting set { a : U_a meets V } grows with V, so the minimal
    neighborhood of the point is always an optimal witness.
    """
    if fam.space != space:
        raise InputError("family belongs to a different space")
    mins = space.minimal_neighborhoods
    witnesses = []
    meet_sets = []
    membership = []
    for x in range(space.n):
        v = mins[x]
        witnesses.append(v)
        meets = 0
        for a, m in enumerate(fam.members):
            if m & v:
                meets |= 1 << a
        meet_sets.append(meets)
        membership.append(sum(1 for m in fam.members if m >> x & 1))
    return FinitenessProfile(tuple(witnesses), tuple(meet_sets), tuple(membership))


def companion_bound_identity(
    space: FiniteSpace, covering: SetAssignment, neighborhoods: SetAssignment
) -> bool:
    """Union of companion values over N(x) equals the meeting set of N(x).

    With f the companion of the covering assignment, the union of f(y) over
    y in N(x) collects exactly the indices whose sets meet N(x); both
    inclusions are forced, so the two sides must coincide everywhere.
    """
    if not classify_assignment(covering).is_covering:
        raise PreconditionError("first assignment must cover the space")
    if not classify_assignment(neighborhoods).is_neighborhood:
        raise PreconditionError("second assignment must be a neighborhood assignment")
    f = companion_values(space.n, covering.sets)
    for x in range(space.n):
        nx = neighborhoods.sets[x]
        lhs = 0
        rest = nx
        while rest:
            low = rest & -rest
            lhs |= f[low.bit_length() - 1]
            rest ^= low
        rhs = 0
        for a, m in enumerate(covering.sets):
            if m & nx:
                rhs |= 1 << a
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class ParacompactWitness:
    refined: SetAssignment
    neighborhoods: SetAssignment
    bound: int


def paracompact_witness(space: FiniteSpace, covering: SetAssignment) -> ParacompactWitness:
    """A refining covering assignment plus neighborhoods bounding the meeting sets.

    On a finite space the covering assignment itself already refines, and
    the per-point bound |union of f(y) over y in N(x)| is monotone in N(x),
    so assigning every point its minimal neighborhood realizes the least
    bound for that refinement.
    """
    if not classify_assignment(covering).is_covering:
        raise PreconditionError("paracompactness witness needs a covering assignment")
    mins = space.minimal_neighborhoods
    neighborhoods = SetAssignment(space, space.n, tuple(mins))
    f = companion_values(space.n, covering.sets)
    bound = 0
    for x in range(space.n):
        acc = 0
        rest = mins[x]
        while rest:
            low = rest & -rest
            acc |= f[low.bit_length() - 1]
            rest ^= low
        bound = max(bound, acc.bit_count())
    if not companion_bound_identity(space, covering, neighborhoods):
        raise CertificationError("meeting-set identity failed for the chosen witness")
    return ParacompactWitness(covering, neighborhoods, bound)


@dataclass(frozen=True)
class MetacompactWitness:
    refined: SetAssignment
    degree: int


def _degree(space_n: int, sets: tuple[int, ...]) -> int:
    return max(
        (v.bit_count() for v in companion_values(space_n, sets)),
        default=0,
    )


def metacompact_witness(
    space: FiniteSpace, covering: SetAssignment, search_cap: int = 20000
) -> MetacompactWitness:
    """A same-indexed refining covering assignment minimizing the point degree.

    Exhausts per-index shrinkings (any open inside the original set, the
    empty set included) while the choice space fits the cap; above it a
    deterministic greedy descent shrinks the worst offender first.
    """
    if not classify_assignment(covering).is_covering:
        raise PreconditionError("metacompactness witness needs a covering assignment")
    m = covering.domain_size
    candidates = [
        tuple(o for o in space.opens if o & ~covering.sets[a] == 0) for a in range(m)
    ]
    total = 1
    for c in candidates:
        total *= len(c)
        if total > search_cap:
            break
    full = space.full_mask
    if total <= search_cap:
        from itertools import product as iproduct

        best_sets = covering.sets
        best_degree = _degree(space.n, covering.sets)
        for sets in iproduct(*candidates):
            union = 0
            for s in sets:
                union |= s
            if union != full:
                continue
            deg = _degree(space.n, sets)
            if deg < best_degree:
                best_degree = deg
                best_sets = tuple(sets)
        refined = SetAssignment(space, m, best_sets)
        return MetacompactWitness(refined, best_degree)
    # greedy: repeatedly shrink a set through the worst-loaded point
    sets = list(covering.sets)
    improved = True
    while improved:
        improved = False
        degrees = companion_values(space.n, tuple(sets))
        worst = max(range(space.n), key=lambda x: degrees[x].bit_count(), default=None)
        if worst is None:
            break
        for a in range(m):
            if not sets[a] >> worst & 1:
                continue
            shrunk = list(sets)
            others = 0
            for b in range(m):
                if b != a:
                    others |= sets[b]
            for option in candidates[a]:
                if not option >> worst & 1 and others | option == full:
                    shrunk[a] = option
                    if _degree(space.n, tuple(shrunk)) < _degree(space.n, tuple(sets)):
                        sets = shrunk
                        improved = True
                        break
            if improved:
                break
    refined = SetAssignment(space, m, tuple(sets))
    return MetacompactWitness(refined, _degree(space.n, tuple(sets)))


def _exclusive_by_definition(space: FiniteSpace, k: int) -> bool:
    """Direct reading: small sets can be carved out of any neighborhood.

    For every x, every open U containing x, and every A inside U avoiding x
    with |A| <= k, some open V satisfies x in V inside U minus A.  Shrinking
    A only makes the carve-out easier, so only the maximal admissible A
    (size exactly min(k, |U| - 1)) need checking.
    """
    from itertools import combinations

    for x in range(space.n):
        bit = 1 << x
        for u in space.opens:
            if not u & bit:
                continue
            removable = indices_of(u & ~bit)
            size = min(k, len(removable))
            for combo in combinations(removable, size):
                a_mask = 0
                for a in combo:
                    a_mask |= 1 << a
                target = u & ~a_mask
                if not any(v & bit and v & ~target == 0 for v in space.opens):
                    return False
    return True


def exclusiveness(space: FiniteSpace) -> int:
    """Largest k with every subset of size at most k closed.

    Double-route: the closed-subsets characterization computes k, then the
    carve-out definition is evaluated at k (must hold) and at k + 1 (must
    fail while k < n).
    """
    k = space.n
    for mask in range(1 << space.n):
        if not space.is_closed_mask(mask):
            k = min(k, mask.bit_count() - 1)
    if not _exclusive_by_definition(space, k):
        raise CertificationError(f"exclusiveness routes disagree at k = {k}")
    if k < space.n and _exclusive_by_definition(space, k + 1):
        raise CertificationError(f"exclusiveness routes disagree at k = {k + 1}")
    return k


def _iter_irredundant_covers(space: FiniteSpace):
    """All irredundant open covers: every member keeps a private point."""
    opens = [m for m in space.opens if m]
    k = len(opens)
    for fam_bits in range(1 << k):
        members = [opens[i] for i in range(k) if fam_bits >> i & 1]
        union = 0
        for m in members:
            union |= m
        if union != space.full_mask:
            continue
        irredundant = True
        for i, m in enumerate(members):
            others = 0
            for j, o in enumerate(members):
                if j != i:
                    others |= o
            if m & ~others == 0:
                irredundant = False
                break
        if irredundant:
            yield tuple(members)


def _ad_witness(space: FiniteSpace, f_mask: int, cover: tuple[int, ...]) -> bool:
    """A discrete subset of F choosing one cover member per point, covering F.

    Each selected point must pick a single member containing it, so
    coverage is decided by sweeping the reachable covered-parts-of-F, one
    selected point at a time.
    """
    if f_mask == 0:
        return True
    from itertools import combinations

    mins = space.minimal_neighborhoods
    f_points = indices_of(f_mask)
    choices = {
        a: tuple({m & f_mask for m in cover if m >> a & 1}) for a in f_points
    }
    for size in range(1, len(f_points) + 1):
        for combo in combinations(f_points, size):
            a_mask = 0
            for a in combo:
                a_mask |= 1 << a
            discrete = True
            for a in combo:
                if mins[a] & a_mask != 1 << a:
                    discrete = False
                    break
            if not discrete:
                continue
            reachable = {0}
            for a in combo:
                reachable = {s | c for s in reachable for c in choices[a]}
            if f_mask in reachable:
                return True
    return False


def is_aD(space: FiniteSpace, subfamily_cap: int = 1 << 13) -> bool:
    """For every closed set and every cover, a discrete selection covers the closed set.

    Irredundant covers suffice: any witness against a subcover works for the
    cover.  When the open family is too rich to enumerate subfamilies, it
    further suffices to test the single cover of minimal neighborhoods,
    since every cover member containing a point contains that point's
    minimal neighborhood and witnesses transfer along that containment.
    """
    closed_sets = [space.full_mask & ~u for u in space.opens]
    if (1 << len(space.opens)) <= subfamily_cap:
        covers = list(_iter_irredundant_covers(space))
    else:
        mins = space.minimal_neighborhoods
        covers = [tuple(sorted(set(mins)))] if space.n else [()]
    for f_mask in closed_sets:
        for cover in covers:
            if not _ad_witness(space, f_mask, cover):
                return False
    return True


@dataclass(frozen=True)
class GlsRelation:
    """A reflexive relation with open up-sets, given by the up-set of each point."""

    up_sets: tuple[int, ...]

    def holds(self, x: int, y: int) -> bool:
        return bool(self.up_sets[x] >> y & 1)


def _has_minimal_element(up_sets, f_mask: int) -> bool:
    # m is minimal in F when no other point of F relates below it
    rest = f_mask
    while rest:
        low = rest & -rest
        m = low.bit_length() - 1
        others = f_mask & ~low
        good = True
        r2 = others
        while r2:
            l2 = r2 & -r2
            if up_sets[l2.bit_length() - 1] & low:
                good = False
                break
            r2 ^= l2
        if good:
            return True
        rest ^= low
    return False


def gls_search(space: FiniteSpace, cap: int = 4) -> GlsRelation | None:
    """Hunt for a reflexive relation with open up-sets under which every
    nonempty closed set has a minimal element.

    Any admissible relation is determined by choosing, per point, an open
    up-set containing the point, so the search walks those choices directly
    (this prunes every pair the openness constraint forbids).  Smaller
    up-sets are tried first: they relate fewer points below others and are
    likelier to leave minimal elements.
    """
    if space.n > cap:
        raise ResourceLimitError(f"relation search capped at {cap} points, space has {space.n}")
    closed = [space.full_mask & ~u for u in space.opens if space.full_mask & ~u]
    choices = [space.opens_containing(x) for x in range(space.n)]
    if any(not c for c in choices):
        return None

    up_sets = [0] * space.n

    def rec(x: int) -> GlsRelation | None:
        if x == space.n:
            sets = tuple(up_sets)
            if all(_has_minimal_element(sets, f) for f in closed):
                return GlsRelation(sets)
            return None
        for option in choices[x]:
            up_sets[x] = option
            found = rec(x + 1)
            if found is not None:
                return found
        return None

    if space.n == 0:
        return GlsRelation(())
    return rec(0)


def left_separated_search(space: FiniteSpace, cap: int = 8) -> tuple[int, ...] | None:
    """A point ordering whose every final segment is open, if one exists."""
    if space.n > cap:
        raise ResourceLimitError(f"ordering search capped at {cap} points, space has {space.n}")
    if space.n == 0:
        return ()
    for order in permutations(range(space.n)):
        ok = True
        for start in range(space.n):
            seg = 0
            for i in range(start, space.n):
                seg |= 1 << order[i]
            if not space.is_open(seg):
                ok = False
                break
        if ok:
            return order
    return None


def gls_from_order(order: tuple[int, ...], n: int) -> GlsRelation:
    """The relation induced by a left-separating order: up-set = final segment."""
    up_sets = [0] * n
    for i, x in enumerate(order):
        seg = 0
        for j in range(i, n):
            seg |= 1 << order[j]
        up_sets[x] = seg
    return GlsRelation(tuple(up_sets))


@dataclass(frozen=True)
class Fingerprint:
    """The standard invariant bundle for one space."""

    t0: bool
    t1: bool
    extent: int
    lindelof_degree: int
    exclusiveness: int
    is_d: str  # "yes" / "no" / "unknown"
    is_ad: bool
    gls: bool
    left_separated: bool
    open_count: int

    def __post_init__(self) -> None:
        if self.extent > self.lindelof_degree:
            raise CertificationError(
                f"extent {self.extent} exceeds Lindelöf degree {self.lindelof_degree}"
            )
        if self.is_d == "yes" and self.extent != self.lindelof_degree:
            raise CertificationError(
                "a D-space must have extent equal to its Lindelöf degree, got "
                f"{self.extent} and {self.lindelof_degree}"
            )
