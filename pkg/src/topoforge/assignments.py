"""Open set / covering / neighborhood assignments and their companion maps.

An assignment O sends each index a in {0..m-1} to an open set of a fixed
space.  Its companion is the map x -> { a : x in O(a) } into P(A); it is the
unique continuous map into the principal-ultrafilter topology whose
subbasic preimages recover the assigned sets, and the whole calculus of
kernels, refinements and sticky sets runs through it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CertificationError, InputError, PreconditionError
from .space import (
    FiniteSpace,
    PointSet,
    classify_subset,
    compress_mask,
    indices_of,
)


@dataclass(frozen=True)
class SetAssignment:
    """An indexed family of open sets of a space; sets are stored as bit words."""

    space: FiniteSpace
    domain_size: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sets) != self.domain_size:
            raise InputError(
                f"assignment with domain size {self.domain_size} given {len(self.sets)} sets"
            )
        for a, m in enumerate(self.sets):
            if not self.space.is_open(m):
                raise InputError(f"assigned set at index {a} is not open in the space")

    @classmethod
    def from_point_sets(
        cls, space: FiniteSpace, sets: Iterable[PointSet | int]
    ) -> "SetAssignment":
        masks = []
        for s in sets:
            if isinstance(s, PointSet):
                if s.universe_size != space.n:
                    raise InputError(
                        f"assigned set over universe {s.universe_size} in a space on "
                        f"{space.n} points"
                    )
                masks.append(s.bits)
            else:
                masks.append(s)
        return cls(space, len(masks), tuple(masks))

    def union_mask(self) -> int:
        out = 0
        for m in self.sets:
            out |= m
        return out

    def point_sets(self) -> tuple[PointSet, ...]:
        return tuple(PointSet(self.space.n, m) for m in self.sets)


def neighborhood_assignment(space: FiniteSpace, sets: Iterable[PointSet | int]) -> SetAssignment:
    """Build an assignment and insist it is in neighborhood form (x in N(x), m = n)."""
    assignment = SetAssignment.from_point_sets(space, sets)
    report = classify_assignment(assignment)
    if not report.is_neighborhood:
        raise PreconditionError("assignment is not a neighborhood assignment")
    return assignment


@dataclass(frozen=True)
class CompanionMap:
    """x -> { a : x in O(a) }, stored densely as one index subset per point.

    certified means both halves of the contract were checked: the preimage
    of each index filter { f(x) contains a } reproduces the assigned set, and
    each of those preimages is open (continuity into the ultrafilter
    topology on P(A), which a subbase check settles).
    """

    space: FiniteSpace
    domain_size: int
    values: tuple[int, ...]
    certified: bool = False

    def preimage_of_index(self, a: int) -> int:
        out = 0
        for x, fx in enumerate(self.values):
            if fx >> a & 1:
                out |= 1 << x
        return out


def companion_values(space_n: int, sets: tuple[int, ...]) -> tuple[int, ...]:
    """Mask-level companion computation, shared by the hot sweeps."""
    values = []
    for x in range(space_n):
        bit = 1 << x
        fx = 0
        for a, m in enumerate(sets):
            if m & bit:
                fx |= 1 << a
        values.append(fx)
    return tuple(values)


def companion_map(assignment: SetAssignment) -> CompanionMap:
    values = companion_values(assignment.space.n, assignment.sets)
    comp = CompanionMap(assignment.space, assignment.domain_size, values)
    for a in range(assignment.domain_size):
        pre = comp.preimage_of_index(a)
        if pre != assignment.sets[a]:
            raise CertificationError(
                f"companion preimage at index {a} differs from the assigned set"
            )
        if not assignment.space.is_open(pre):
            raise CertificationError(f"companion preimage at index {a} is not open")
    return CompanionMap(assignment.space, assignment.domain_size, values, certified=True)


def companion_continuous_map(assignment: SetAssignment):
    """The companion as a certified map into the ultrafilter topology on P(A).

    Materializes the target space, so the index set must fit the universe
    cap; the mask-level :class:`CompanionMap` carries the same content
    without that cost.
    """
    from .category import ContinuousMap
    from .puf import build_puf_space

    comp = companion_map(assignment)
    target = build_puf_space(assignment.domain_size)
    return ContinuousMap(assignment.space, target.space, comp.values).certify()


@dataclass(frozen=True)
class AssignmentClassification:
    is_covering: bool
    is_neighborhood: bool


def classify_assignment(assignment: SetAssignment) -> AssignmentClassification:
    """Covering: the sets exhaust the space.  Neighborhood: m = n and x in O(x).

    Each kind is decided twice, once on the sets and once through the
    companion map (covering iff the companion never takes the empty value;
    neighborhood iff additionally x is in f(x) for every x), and the two
    routes must agree.
    """
    space = assignment.space
    covering_direct = assignment.union_mask() == space.full_mask
    values = companion_values(space.n, assignment.sets)
    covering_companion = all(v != 0 for v in values)
    if covering_direct != covering_companion:
        raise CertificationError("covering classification routes disagree")
    neighborhood_direct = assignment.domain_size == space.n and all(
        assignment.sets[x] >> x & 1 for x in range(space.n)
    )
    neighborhood_companion = assignment.domain_size == space.n and all(
        values[x] >> x & 1 for x in range(space.n)
    )
    if neighborhood_direct != neighborhood_companion:
        raise CertificationError("neighborhood classification routes disagree")
    return AssignmentClassification(covering_direct, neighborhood_direct)


@dataclass(frozen=True)
class UniquenessReport:
    regime: str  # "exhaustive" or "sampled"
    candidates_checked: int
    matches: int

    @property
    def ok(self) -> bool:
        return self.matches == 1


def _candidate_satisfies(space_n: int, sets: tuple[int, ...], values: tuple[int, ...]) -> bool:
    for a, target in enumerate(sets):
        pre = 0
        for x in range(space_n):
            if values[x] >> a & 1:
                pre |= 1 << x
        if pre != target:
            return False
    return True


def verify_companion_unique(
    assignment: SetAssignment,
    exhaustive_cap: int = 1 << 16,
    seed: int = 0,
    samples: int = 200,
) -> UniquenessReport:
    """Count the functions X -> P(A) satisfying every preimage identity.

    Below the cap every one of the (2^m)^n candidates is enumerated and the
    count must be exactly one.  Above it, the companion is verified and
    distinct random candidates are each shown to violate some identity; the
    report says which regime ran.
    """
    n = assignment.space.n
    m = assignment.domain_size
    total = (1 << m) ** n
    comp = companion_values(n, assignment.sets)
    if total <= exhaustive_cap:
        matches = 0
        values = [0] * n
        for code in range(total):
            c = code
            for i in range(n):
                values[i] = c & ((1 << m) - 1)
                c >>= m
            if _candidate_satisfies(n, assignment.sets, tuple(values)):
                matches += 1
        return UniquenessReport("exhaustive", total, matches)
    rng = random.Random(seed)
    matches = 1 if _candidate_satisfies(n, assignment.sets, comp) else 0
    checked = 1
    for _ in range(samples):
        cand = tuple(rng.randrange(1 << m) for _ in range(n))
        if cand == comp:
            continue
        checked += 1
        if _candidate_satisfies(n, assignment.sets, cand):
            matches += 1
    return UniquenessReport("sampled", checked, matches)


@dataclass(frozen=True)
class RestrictionResult:
    assignment: SetAssignment
    companion: CompanionMap
    trace_values: tuple[int, ...]
    is_covering: bool


def restrict_assignment(assignment: SetAssignment, d: PointSet) -> RestrictionResult:
    """Restrict the index set to D and compare against the trace of the companion.

    The companion of the restriction must equal x -> f(x) & D after index
    translation; the restriction covers exactly when that trace never takes
    the empty value.
    """
    if d.universe_size != assignment.domain_size:
        raise InputError(
            f"index subset over universe {d.universe_size}, domain has "
            f"{assignment.domain_size} indices"
        )
    picked = indices_of(d.bits)
    restricted = SetAssignment(
        assignment.space, len(picked), tuple(assignment.sets[a] for a in picked)
    )
    full = companion_values(assignment.space.n, assignment.sets)
    trace = tuple(compress_mask(fx & d.bits, d.bits) for fx in full)
    comp = companion_map(restricted)
    if comp.values != trace:
        raise CertificationError("restriction companion differs from the companion trace")
    return RestrictionResult(restricted, comp, trace, all(t != 0 for t in trace))


def is_kernel(assignment: SetAssignment, d: PointSet) -> bool:
    """Whether the sets assigned to D cover the whole space.

    Kernels are pure covering witnesses; being closed discrete is always a
    separate check.
    """
    report = classify_assignment(assignment)
    if not report.is_neighborhood:
        raise PreconditionError("kernels are defined for neighborhood assignments")
    if d.universe_size != assignment.space.n:
        raise InputError(
            f"kernel candidate over universe {d.universe_size} in a space on "
            f"{assignment.space.n} points"
        )
    return union_over(assignment.sets, d.bits) == assignment.space.full_mask


def union_over(sets: tuple[int, ...], index_mask: int) -> int:
    out = 0
    rest = index_mask
    while rest:
        low = rest & -rest
        out |= sets[low.bit_length() - 1]
        rest ^= low
    return out


def is_refinement(candidate: SetAssignment, base: SetAssignment) -> bool:
    """candidate(a) inside base(a) for every a; double-checked via companions.

    The companion route is pointwise containment f_candidate(x) within
    f_base(x); both routes must agree.
    """
    if candidate.space != base.space or candidate.domain_size != base.domain_size:
        raise InputError("refinement comparison requires the same space and index set")
    direct = all(c & ~b == 0 for c, b in zip(candidate.sets, base.sets))
    fc = companion_values(candidate.space.n, candidate.sets)
    fb = companion_values(base.space.n, base.sets)
    via_companions = all(c & ~b == 0 for c, b in zip(fc, fb))
    if direct != via_companions:
        raise CertificationError("refinement routes disagree")
    return direct


def is_neighborhood_refinement(candidate: SetAssignment, base: SetAssignment) -> bool:
    """A refinement that still assigns each point a set containing it."""
    if not is_refinement(candidate, base):
        return False
    return classify_assignment(candidate).is_neighborhood


def puncture_refinement(assignment: SetAssignment, d: PointSet) -> SetAssignment:
    """Remove the other kernel points from each kernel point's neighborhood.

    N*(x) = N(x) for x outside D and N*(x) = N(x) \\ (D \\ {x}) on D.  Needs
    D to be a closed discrete kernel: closedness and discreteness make the
    punctured sets open, and the kernel property survives puncturing.
    """
    report = classify_assignment(assignment)
    if not report.is_neighborhood:
        raise PreconditionError("puncturing is defined for neighborhood assignments")
    cls = classify_subset(assignment.space, d)
    problems = []
    if not cls.is_closed:
        problems.append("not closed")
    if not cls.is_discrete:
        problems.append("not discrete")
    if union_over(assignment.sets, d.bits) != assignment.space.full_mask:
        problems.append("not a kernel")
    if problems:
        raise PreconditionError(f"puncture set is {', '.join(problems)}")
    new_sets = []
    for x, m in enumerate(assignment.sets):
        if d.bits >> x & 1:
            new_sets.append(m & ~(d.bits & ~(1 << x)))
        else:
            new_sets.append(m)
    return SetAssignment(assignment.space, assignment.domain_size, tuple(new_sets))


def is_u_sticky(assignment: SetAssignment, d: PointSet) -> bool:
    """D closed discrete, and any point whose set meets D is already covered by D's sets."""
    report = classify_assignment(assignment)
    if not report.is_neighborhood:
        raise PreconditionError("stickiness is defined for neighborhood assignments")
    if d.universe_size != assignment.space.n:
        raise InputError(
            f"sticky candidate over universe {d.universe_size} in a space on "
            f"{assignment.space.n} points"
        )
    if not classify_subset(assignment.space, d).is_closed_discrete:
        return False
    covered = union_over(assignment.sets, d.bits)
    for x in range(assignment.space.n):
        if assignment.sets[x] & d.bits and not covered >> x & 1:
            return False
    return True


def sticky_order(assignment: SetAssignment, d: PointSet, d2: PointSet) -> bool:
    """D before D2 when D is contained in D2 and D2's new points avoid D's covered region."""
    if not is_u_sticky(assignment, d) or not is_u_sticky(assignment, d2):
        raise PreconditionError("sticky order compares sticky sets only")
    if d.bits & ~d2.bits:
        return False
    covered = union_over(assignment.sets, d.bits)
    return (d2.bits & ~d.bits) & covered == 0


def iter_set_assignments(space: FiniteSpace, domain_size: int) -> Iterator[SetAssignment]:
    """Every assignment of opens to {0..m-1}, in lexicographic open order."""
    opens = space.opens

    def rec(prefix: list[int]) -> Iterator[SetAssignment]:
        if len(prefix) == domain_size:
            yield SetAssignment(space, domain_size, tuple(prefix))
            return
        for m in opens:
            prefix.append(m)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def iter_neighborhood_assignments(space: FiniteSpace) -> Iterator[SetAssignment]:
    """Every neighborhood assignment, ordered by per-point open choice."""
    choices = [space.opens_containing(x) for x in range(space.n)]

    def rec(prefix: list[int]) -> Iterator[SetAssignment]:
        x = len(prefix)
        if x == space.n:
            yield SetAssignment(space, space.n, tuple(prefix))
            return
        for m in choices[x]:
            prefix.append(m)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])
