"""Finite topological spaces over indexed ground sets.

Points are bare indices 0..n-1 and every subset is a bit word: bit i set
means point i is a member.  All set algebra is bitwise, which keeps the
power-set universes of the ultrafilter layer and the catalog sweeps cheap.
Open families are stored sorted by (popcount, numeric value) so that equal
spaces compare equal and hash alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import InputError


def mask_of(indices: Iterable[int], universe_size: int) -> int:
    value = 0
    for i in indices:
        if not 0 <= i < universe_size:
            raise InputError(f"point index {i} outside universe of size {universe_size}")
        value |= 1 << i
    return value


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class PointSet:
    """A subset of the ground set {0, ..., universe_size - 1}."""

    universe_size: int
    bits: int

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise InputError(f"universe size must be >= 0, got {self.universe_size}")
        if not 0 <= self.bits < (1 << self.universe_size):
            raise InputError(
                f"bit word {self.bits:#x} does not fit a universe of size {self.universe_size}"
            )

    @classmethod
    def from_indices(cls, universe_size: int, indices: Iterable[int]) -> "PointSet":
        return cls(universe_size, mask_of(indices, universe_size))

    @classmethod
    def empty(cls, universe_size: int) -> "PointSet":
        return cls(universe_size, 0)

    @classmethod
    def full(cls, universe_size: int) -> "PointSet":
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def singleton(cls, universe_size: int, point: int) -> "PointSet":
        return cls(universe_size, mask_of((point,), universe_size))

    def _check_same_universe(self, other: "PointSet") -> None:
        if self.universe_size != other.universe_size:
            raise InputError(
                f"universe mismatch: {self.universe_size} vs {other.universe_size}"
            )

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet(self.universe_size, self.bits | other.bits)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet(self.universe_size, self.bits & other.bits)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet(self.universe_size, self.bits & ~other.bits)

    def complement(self) -> "PointSet":
        return PointSet(self.universe_size, ((1 << self.universe_size) - 1) & ~self.bits)

    def issubset(self, other: "PointSet") -> bool:
        self._check_same_universe(other)
        return self.bits & ~other.bits == 0

    def __contains__(self, point: int) -> bool:
        return 0 <= point < self.universe_size and bool(self.bits >> point & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        return indices_of(self.bits)

    def is_empty(self) -> bool:
        return self.bits == 0

    def __repr__(self) -> str:
        return f"PointSet({self.universe_size}, {{{', '.join(map(str, self.indices()))}}})"


def canonical_opens(masks: Iterable[int]) -> tuple[int, ...]:
    """Canonical open-family order: by popcount, then numeric value, no duplicates."""
    return tuple(sorted(set(masks), key=lambda m: (m.bit_count(), m)))


@dataclass(frozen=True)
class FiniteSpace:
    """A finite topological space: point count plus its full open family.

    ``opens`` holds bit words in canonical order.  The constructor checks
    only structural well-formedness (range, ordering); the topology axioms
    themselves are the business of :func:`verify_axioms`, so that malformed
    families can be represented and diagnosed.
    """

    n: int
    opens: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"point count must be >= 0, got {self.n}")
        full = (1 << self.n) - 1
        for m in self.opens:
            if not 0 <= m <= full:
                raise InputError(f"open {m:#x} does not fit a space on {self.n} points")
        if self.opens != canonical_opens(self.opens):
            raise InputError("opens must be duplicate-free and in canonical order")

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[int | PointSet]) -> "FiniteSpace":
        masks = [o.bits if isinstance(o, PointSet) else o for o in opens]
        return cls(n, canonical_opens(masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def opens_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, s: int | PointSet) -> bool:
        mask = s.bits if isinstance(s, PointSet) else s
        return mask in self.opens_set

    def is_closed_mask(self, mask: int) -> bool:
        return (self.full_mask & ~mask) in self.opens_set

    def points(self) -> range:
        return range(self.n)

    def open_point_sets(self) -> tuple[PointSet, ...]:
        return tuple(PointSet(self.n, m) for m in self.opens)

    @cached_property
    def minimal_neighborhoods(self) -> tuple[int, ...]:
        """Per point, the intersection of all opens containing it.

        In a genuine finite topology this intersection is itself open and is
        the inclusion-least neighborhood of the point; it drives most of the
        fast paths (discreteness tests, locally-finite witnesses).
        """
        out = []
        for x in range(self.n):
            bit = 1 << x
            acc = self.full_mask
            for m in self.opens:
                if m & bit:
                    acc &= m
            out.append(acc)
        return tuple(out)

    def opens_containing(self, x: int) -> tuple[int, ...]:
        bit = 1 << x
        return tuple(m for m in self.opens if m & bit)

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, indices_of(m))) + "}" for m in self.opens)
        return f"FiniteSpace(n={self.n}, opens=[{shown}])"


def _close_family(n: int, masks: set[int]) -> set[int]:
    """Close a family of bit words under pairwise union and intersection.

    Round-based: each round pairs the last round's new members against a
    snapshot of everything known, so every pair is eventually considered.
    """
    family = set(masks)
    frontier = list(family)
    while frontier:
        fresh: list[int] = []
        snapshot = list(family)
        for a in frontier:
            for b in snapshot:
                u = a | b
                if u not in family:
                    family.add(u)
                    fresh.append(u)
                i = a & b
                if i not in family:
                    family.add(i)
                    fresh.append(i)
        frontier = fresh
    return family


def generate_topology(n: int, subbase: Iterable[PointSet | int]) -> FiniteSpace:
    """Smallest topology on n points containing every subbase member.

    The empty family generates the indiscrete topology: the empty set and the
    whole space are always forced in.  Finiteness lets closure under
    arbitrary unions reduce to pairwise closure.
    """
    masks: set[int] = set()
    full = (1 << n) - 1
    for s in subbase:
        if isinstance(s, PointSet):
            if s.universe_size != n:
                raise InputError(
                    f"subbase member over universe {s.universe_size} in a space on {n} points"
                )
            masks.add(s.bits)
        else:
            if not 0 <= s <= full:
                raise InputError(f"subbase mask {s:#x} does not fit a space on {n} points")
            masks.add(s)
    masks.add(0)
    masks.add(full)
    return FiniteSpace(n, canonical_opens(_close_family(n, masks)))


@dataclass(frozen=True)
class AxiomReport:
    has_empty: bool
    has_full: bool
    union_closed: bool
    intersection_closed: bool
    offending_pair: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.has_empty and self.has_full and self.union_closed and self.intersection_closed


def verify_axioms(space: FiniteSpace) -> AxiomReport:
    """Diagnose whether the stored family really is a topology."""
    members = space.opens_set
    has_empty = 0 in members
    has_full = space.full_mask in members
    union_closed = True
    intersection_closed = True
    offender = None
    for i, a in enumerate(space.opens):
        for b in space.opens[i + 1 :]:
            if a | b not in members:
                union_closed = False
                offender = offender or (a, b)
            if a & b not in members:
                intersection_closed = False
                offender = offender or (a, b)
    return AxiomReport(has_empty, has_full, union_closed, intersection_closed, offender)


@dataclass(frozen=True)
class SubsetClassification:
    is_closed: bool
    is_discrete: bool

    @property
    def is_closed_discrete(self) -> bool:
        return self.is_closed and self.is_discrete


def _is_discrete_mask(space: FiniteSpace, mask: int) -> bool:
    # s has an isolating open U (U & mask == {s}) iff its minimal
    # neighborhood already isolates it.
    mins = space.minimal_neighborhoods
    rest = mask
    while rest:
        low = rest & -rest
        if mins[low.bit_length() - 1] & mask != low:
            return False
        rest ^= low
    return True


def _is_closed_discrete_mask(space: FiniteSpace, mask: int) -> bool:
    return space.is_closed_mask(mask) and _is_discrete_mask(space, mask)


def classify_subset(space: FiniteSpace, s: PointSet) -> SubsetClassification:
    """Closed: complement open.  Discrete: every member is isolated by some open."""
    if s.universe_size != space.n:
        raise InputError(f"subset over universe {s.universe_size} in a space on {space.n} points")
    return SubsetClassification(
        is_closed=space.is_closed_mask(s.bits),
        is_discrete=_is_discrete_mask(space, s.bits),
    )


def closure_mask(space: FiniteSpace, mask: int) -> int:
    # complement of the largest open disjoint from the set
    away = 0
    for m in space.opens:
        if m & mask == 0:
            away |= m
    return space.full_mask & ~away


def closure(space: FiniteSpace, s: PointSet) -> PointSet:
    """Smallest closed superset of s."""
    if s.universe_size != space.n:
        raise InputError(f"subset over universe {s.universe_size} in a space on {space.n} points")
    return PointSet(space.n, closure_mask(space, s.bits))


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    t1: bool


def separation_level(space: FiniteSpace) -> SeparationReport:
    """T1: every singleton closed.  T0: points have distinct open-neighborhood families."""
    t1 = all(space.is_closed_mask(1 << x) for x in range(space.n))
    mins = space.minimal_neighborhoods
    # two points see the same opens exactly when their minimal neighborhoods agree
    t0 = len(set(mins)) == space.n
    return SeparationReport(t0=t0, t1=t1)


@dataclass(frozen=True)
class Subspace:
    """A subspace together with the index re-mapping back into the parent."""

    space: FiniteSpace
    global_points: tuple[int, ...]

    def to_local(self, global_point: int) -> int:
        return self.global_points.index(global_point)

    def to_global(self, local_point: int) -> int:
        return self.global_points[local_point]


def compress_mask(mask: int, selected: int) -> int:
    """Pack the bits of mask at the positions of selected into low bits."""
    out = 0
    pos = 0
    rest = selected
    while rest:
        low = rest & -rest
        if mask & low:
            out |= 1 << pos
        pos += 1
        rest ^= low
    return out


def subspace(space: FiniteSpace, s: PointSet) -> Subspace:
    """Trace topology on s, re-indexed to 0..|s|-1."""
    if s.universe_size != space.n:
        raise InputError(f"subset over universe {s.universe_size} in a space on {space.n} points")
    pts = s.indices()
    traces = {compress_mask(m & s.bits, s.bits) for m in space.opens}
    return Subspace(FiniteSpace(len(pts), canonical_opens(traces)), pts)


def sierpinski() -> FiniteSpace:
    """Two points with opens {}, {0}, {0,1}: point 0 open, point 1 closed."""
    return FiniteSpace.from_opens(2, [0b00, 0b01, 0b11])


def discrete_space(n: int) -> FiniteSpace:
    return FiniteSpace(n, canonical_opens(range(1 << n)))


def indiscrete_space(n: int) -> FiniteSpace:
    return FiniteSpace.from_opens(n, [0, (1 << n) - 1])
