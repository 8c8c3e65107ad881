"""Deciding the D-property and its companion-map characterization.

A space is D when every neighborhood assignment admits a closed discrete
kernel.  The engine decides this exhaustively below a configurable budget,
runs the greedy point-picking recursion, extracts the punctured-refinement
witness behind the characterization theorem, and checks the theorem's
pullback form: the diagonal of the kernel sits inside the pullback of the
trace companion against the singleton embedding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .assignments import (
    CompanionMap,
    SetAssignment,
    classify_assignment,
    companion_map,
    puncture_refinement,
    union_over,
)
from .category import ContinuousMap, is_closed_map, pullback
from .errors import CertificationError, InputError, PreconditionError, ResourceLimitError
from .puf import build_puf_space
from .space import (
    FiniteSpace,
    PointSet,
    _is_closed_discrete_mask,
    classify_subset,
    compress_mask,
    indices_of,
    subspace,
)


def neighborhood_assignment_count(space: FiniteSpace) -> int:
    total = 1
    for x in range(space.n):
        total *= len(space.opens_containing(x))
    return total


@lru_cache(maxsize=None)
def _masks_by_size(n: int) -> tuple[int, ...]:
    return tuple(sorted(range(1 << n), key=lambda m: (m.bit_count(), m)))


def _require_neighborhood(assignment: SetAssignment) -> None:
    if not classify_assignment(assignment).is_neighborhood:
        raise PreconditionError("operation requires a neighborhood assignment")


def kernel_search(assignment: SetAssignment) -> PointSet | None:
    """Smallest closed discrete kernel, scanning subsets by size then index."""
    _require_neighborhood(assignment)
    space = assignment.space
    full = space.full_mask
    for mask in _masks_by_size(space.n):
        if union_over(assignment.sets, mask) == full and _is_closed_discrete_mask(space, mask):
            return PointSet(space.n, mask)
    return None


def _kernel_mask(space: FiniteSpace, sets: tuple[int, ...]) -> int | None:
    full = space.full_mask
    for mask in _masks_by_size(space.n):
        if union_over(sets, mask) == full and _is_closed_discrete_mask(space, mask):
            return mask
    return None


@dataclass(frozen=True)
class DVerdict:
    """Outcome of a D-property check with explicit coverage bookkeeping.

    "yes" is only ever emitted after every assignment was checked; sampling
    that finds no counterexample reports "unknown".
    """

    status: str  # "yes" / "no" / "unknown"
    witnesses: tuple[int, ...] | None
    counterexample: SetAssignment | None
    assignments_checked: int
    assignments_total: int


def _iter_assignment_tuples(space: FiniteSpace):
    choices = [space.opens_containing(x) for x in range(space.n)]
    sets = [0] * space.n

    def rec(x: int):
        if x == space.n:
            yield tuple(sets)
            return
        for m in choices[x]:
            sets[x] = m
            yield from rec(x + 1)

    yield from rec(0)


@lru_cache(maxsize=None)
def dspace_check(
    space: FiniteSpace, cap: int = 1_000_000, seed: int = 0, samples: int = 200
) -> DVerdict:
    """Exhaust all neighborhood assignments when the count fits the cap.

    Above the cap, seeded sampling can still produce a definitive "no" (a
    counterexample assignment validates by exhaustive subset scan) but a
    clean sweep only yields "unknown".
    """
    total = neighborhood_assignment_count(space)
    if total <= cap:
        witnesses = []
        for sets in _iter_assignment_tuples(space):
            mask = _kernel_mask(space, sets)
            if mask is None:
                return DVerdict("no", None, SetAssignment(space, space.n, sets), total, total)
            witnesses.append(mask)
        return DVerdict("yes", tuple(witnesses), None, total, total)
    rng = random.Random(seed)
    choices = [space.opens_containing(x) for x in range(space.n)]
    for i in range(samples):
        sets = tuple(rng.choice(choices[x]) for x in range(space.n))
        if _kernel_mask(space, sets) is None:
            return DVerdict("no", None, SetAssignment(space, space.n, sets), i + 1, total)
    return DVerdict("unknown", None, None, samples, total)


@dataclass(frozen=True)
class GreedyStep:
    picked: int
    neighborhood_before: int
    neighborhood_after: int
    covered_after: int


@dataclass(frozen=True)
class GreedyResult:
    success: bool
    kernel: PointSet | None
    final_sets: tuple[int, ...]
    trace: tuple[GreedyStep, ...]
    failure: str | None

    def refinement(self, space: FiniteSpace) -> SetAssignment:
        """The punctured assignment; only well-formed when every set is open."""
        return SetAssignment(space, space.n, self.final_sets)

    def trace_bytes(self) -> bytes:
        """Stable serialization; identical inputs give identical bytes."""
        return repr((self.trace, self.success, self.failure)).encode()


def greedy_kernel(assignment: SetAssignment, order: tuple[int, ...]) -> GreedyResult:
    """Pick the order-first uncovered point, puncture its set by the picked-so-far.

    Termination verifies the picked set is a closed discrete kernel of the
    punctured family and that the punctured sets stayed open; a failed
    verification is returned as a trace, not raised, since off T1 the
    recursion is genuinely incomplete.  (When the picked set does verify as
    closed discrete, its initial segments are closed by heredity, so the
    punctured sets are open automatically.)
    """
    _require_neighborhood(assignment)
    space = assignment.space
    if tuple(sorted(order)) != tuple(range(space.n)):
        raise InputError("order must be a permutation of the points")
    sets = list(assignment.sets)
    d_mask = 0
    covered = 0
    steps = []
    while covered != space.full_mask:
        picked = next(x for x in order if not covered >> x & 1)
        before = sets[picked]
        sets[picked] = before & ~d_mask
        d_mask |= 1 << picked
        covered |= sets[picked]
        steps.append(GreedyStep(picked, before, sets[picked], covered))
    final_sets = tuple(sets)
    cls = classify_subset(space, PointSet(space.n, d_mask))
    kernel_ok = union_over(final_sets, d_mask) == space.full_mask
    problems = []
    if not cls.is_closed:
        problems.append("picked set is not closed")
    if not cls.is_discrete:
        problems.append("picked set is not discrete")
    if not kernel_ok:
        problems.append("picked set does not kernel the refinement")
    non_open = [x for x in range(space.n) if not space.is_open(final_sets[x])]
    if non_open:
        problems.append(f"punctured sets not open at points {non_open}")
    if problems:
        return GreedyResult(False, None, final_sets, tuple(steps), "; ".join(problems))
    return GreedyResult(True, PointSet(space.n, d_mask), final_sets, tuple(steps), None)


@dataclass(frozen=True)
class AllOrdersResult:
    success: bool
    order: tuple[int, ...] | None
    result: GreedyResult | None
    orders_tried: int
    finding: str | None


def greedy_kernel_all_orders(assignment: SetAssignment, cap: int = 7) -> AllOrdersResult:
    """First succeeding point order in lexicographic sequence, or an all-fail report.

    All orders failing while a closed discrete kernel exists by brute force
    is surfaced as a structured finding.
    """
    space = assignment.space
    if space.n > cap:
        raise ResourceLimitError(f"factorial order search capped at {cap} points")
    tried = 0
    for order in permutations(range(space.n)):
        tried += 1
        result = greedy_kernel(assignment, order)
        if result.success:
            return AllOrdersResult(True, order, result, tried, None)
    finding = None
    if kernel_search(assignment) is not None:
        finding = "all greedy orders fail although a closed discrete kernel exists"
    return AllOrdersResult(False, None, None, tried, finding)


def forced_points(assignment: SetAssignment) -> PointSet:
    """Points whose own set is the only assigned set containing them.

    Such a point belongs to every kernel: anything else covering it would
    contradict uniqueness.  Verified here against every covering kernel.
    """
    _require_neighborhood(assignment)
    space = assignment.space
    forced = 0
    for d in range(space.n):
        if all(not assignment.sets[x] >> d & 1 for x in range(space.n) if x != d):
            forced |= 1 << d
    full = space.full_mask
    for mask in range(1 << space.n):
        if union_over(assignment.sets, mask) == full and forced & ~mask:
            raise CertificationError("a forced point is missing from some kernel")
    return PointSet(space.n, forced)


@dataclass(frozen=True)
class CriterionReport:
    applicable: bool
    conclusion: bool
    detail: str


def closed_discrete_criterion(assignment: SetAssignment, d: PointSet) -> CriterionReport:
    """On a T1 space, a kernel whose points avoid each other's sets is closed discrete.

    Outside T1 the criterion is inapplicable and the actual classification
    is reported for diagnosis.
    """
    _require_neighborhood(assignment)
    space = assignment.space
    if d.universe_size != space.n:
        raise InputError("kernel candidate universe mismatch")
    from .space import separation_level

    t1 = separation_level(space).t1
    kernel_ok = union_over(assignment.sets, d.bits) == space.full_mask
    separated = True
    for dd in indices_of(d.bits):
        for x in indices_of(d.bits & ~(1 << dd)):
            if assignment.sets[x] >> dd & 1:
                separated = False
    cls = classify_subset(space, d)
    if t1 and kernel_ok and separated:
        if not cls.is_closed_discrete:
            raise CertificationError(
                "criterion conditions hold on a T1 space but the set is not closed discrete"
            )
        return CriterionReport(True, True, "conditions hold; set certified closed discrete")
    detail = (
        f"t1={t1}, kernel={kernel_ok}, separated={separated}, "
        f"closed={cls.is_closed}, discrete={cls.is_discrete}"
    )
    return CriterionReport(False, cls.is_closed_discrete, detail)


@dataclass(frozen=True)
class CharacterizationWitness:
    """The data behind the companion characterization of the D-property.

    kernel: a closed discrete kernel of the assignment;
    refinement: the punctured refinement;
    f_star: its companion;
    trace_values: x -> f*(x) & D re-indexed into P(D);
    the certificates say the trace never hits the empty value and fixes
    every kernel point.
    """

    kernel: PointSet
    refinement: SetAssignment
    f_star: CompanionMap
    trace_values: tuple[int, ...]
    never_empty: bool
    fixes_kernel: bool


def characterization_witness(assignment: SetAssignment) -> CharacterizationWitness | None:
    _require_neighborhood(assignment)
    d = kernel_search(assignment)
    if d is None:
        return None
    refinement = puncture_refinement(assignment, d)
    f_star = companion_map(refinement)
    trace = tuple(compress_mask(fx & d.bits, d.bits) for fx in f_star.values)
    never_empty = all(t != 0 for t in trace)
    fixes = all(trace[dd] == 1 << local for local, dd in enumerate(d.indices()))
    return CharacterizationWitness(d, refinement, f_star, trace, never_empty, fixes)


@dataclass(frozen=True)
class PullbackDiagnostic:
    diagonal_in_carrier: bool
    embedding_injective: bool
    embedding_continuous: bool
    trace_continuous: bool

    @property
    def ok(self) -> bool:
        return (
            self.diagonal_in_carrier
            and self.embedding_injective
            and self.embedding_continuous
            and self.trace_continuous
        )


def pullback_diagonal_check(witness: CharacterizationWitness) -> PullbackDiagnostic:
    """Build the pullback of the trace companion against the singleton embedding.

    The embedding sends each kernel point d (with its subspace topology,
    discrete here) to the code {d} in P(D).  The pullback is computed as an
    equalizer inside the product, and the kernel diagonal must land in its
    carrier.
    """
    space = witness.refinement.space
    d = witness.kernel
    sub = subspace(space, d)
    target = build_puf_space(len(d))
    g = ContinuousMap(space, target.space, witness.trace_values)
    g_report_ok = True
    try:
        g = g.certify()
    except AssertionError:
        g_report_ok = False
    embed = ContinuousMap(sub.space, target.space, tuple(1 << i for i in range(sub.space.n)))
    embed_ok = True
    try:
        embed = embed.certify()
    except AssertionError:
        embed_ok = False
    injective = len(set(embed.values)) == sub.space.n
    if not (g_report_ok and embed_ok):
        return PullbackDiagnostic(False, injective, embed_ok, g_report_ok)
    pb = pullback(g, embed)
    carrier = set(pb.pairs)
    diagonal = {(dd, sub.to_local(dd)) for dd in d.indices()}
    return PullbackDiagnostic(diagonal <= carrier, injective, embed_ok, g_report_ok)


def decode_pullback_pairs(
    witness: CharacterizationWitness, pairs: tuple[tuple[int, int], ...]
) -> tuple[tuple[int, int], ...]:
    """Translate (space point, local kernel index) pairs to global point pairs."""
    sub_points = witness.kernel.indices()
    return tuple((x, sub_points[i]) for x, i in pairs)


@dataclass(frozen=True)
class TransferReport:
    domain_verdict: DVerdict
    codomain_verdict: DVerdict
    violation: bool


def closed_image_transfer(
    mapping: ContinuousMap, cap: int = 1_000_000, seed: int = 0
) -> TransferReport:
    """Check preservation of the D-property along a closed continuous surjection."""
    if not mapping.certified:
        raise PreconditionError("transfer requires a certified continuous map")
    if not mapping.is_surjective():
        raise PreconditionError("transfer requires a surjective map")
    if not is_closed_map(mapping):
        raise PreconditionError("transfer requires a closed map")
    dom = dspace_check(mapping.domain, cap, seed)
    cod = dspace_check(mapping.codomain, cap, seed)
    violation = dom.status == "yes" and cod.status == "no"
    return TransferReport(dom, cod, violation)
