"""Enumerate every finite topology at desk scale and replay the theorem suite.

Labeled enumeration backtracks over candidate open families with
union/intersection closure propagated eagerly, so the search never visits a
family that cannot be completed.  Canonical form is the lexicographically
least open-family encoding over all point relabelings, which makes
homeomorphism a string comparison.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

from .covering import (
    Fingerprint,
    exclusiveness,
    extent,
    gls_search,
    is_aD,
    left_separated_search,
    lindelof_degree,
)
from .dspace import dspace_check, kernel_search
from .assignments import SetAssignment
from .errors import ResourceLimitError
from .space import FiniteSpace, canonical_opens, separation_level

LABELED_CAP = 5
UNLABELED_CAP = 5


def _closure_with(family: frozenset[int], new: int) -> frozenset[int]:
    out = set(family)
    frontier = [new]
    out.add(new)
    while frontier:
        a = frontier.pop()
        adds = []
        for b in out:
            u = a | b
            if u not in out:
                adds.append(u)
            i = a & b
            if i not in out:
                adds.append(i)
        for c in adds:
            if c not in out:
                out.add(c)
                frontier.append(c)
    return frozenset(out)


def enumerate_topologies(n: int, mode: str = "labeled") -> Iterator[FiniteSpace]:
    """Yield every topology on n labeled points, or one space per relabeling class.

    Candidate masks are decided in increasing numeric order; including one
    closes the family immediately, and any closure product falling below the
    current candidate must already be included, otherwise the branch dies.
    """
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown enumeration mode {mode!r}")
    cap = LABELED_CAP if mode == "labeled" else UNLABELED_CAP
    if n > cap:
        raise ResourceLimitError(f"topology enumeration capped at {cap} points")
    if n < 0:
        raise ValueError("point count must be >= 0")
    full = (1 << n) - 1
    base = frozenset({0, full})
    candidates = [m for m in range(1, full)]

    def rec(i: int, family: frozenset[int]) -> Iterator[frozenset[int]]:
        if i == len(candidates):
            yield family
            return
        m = candidates[i]
        if m in family:
            yield from rec(i + 1, family)
            return
        yield from rec(i + 1, family)
        closed = _closure_with(family, m)
        if all(c in family or c >= m for c in closed):
            yield from rec(i + 1, closed)

    seen: set[tuple[int, ...]] = set()
    for family in rec(0, base):
        space = FiniteSpace(n, canonical_opens(family))
        if mode == "labeled":
            yield space
        else:
            canon = canonical_form(space)
            if canon.opens not in seen:
                seen.add(canon.opens)
                yield canon


def _relabel_opens(opens: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for m in opens:
        v = 0
        rest = m
        while rest:
            low = rest & -rest
            v |= 1 << perm[low.bit_length() - 1]
            rest ^= low
        out.append(v)
    return canonical_opens(out)


def canonical_form(space: FiniteSpace) -> FiniteSpace:
    """Lexicographically least open-family encoding over all relabelings."""
    best = None
    for perm in permutations(range(space.n)):
        cand = _relabel_opens(space.opens, perm)
        if best is None or cand < best:
            best = cand
    return FiniteSpace(space.n, best if best is not None else space.opens)


def canonical_hash(space: FiniteSpace) -> str:
    canon = canonical_form(space)
    payload = json.dumps({"n": canon.n, "opens": list(canon.opens)}).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


@dataclass(frozen=True)
class Budget:
    dspace_cap: int = 1_000_000
    seed: int = 0
    samples: int = 200


@dataclass(frozen=True)
class CatalogRecord:
    space: FiniteSpace
    canonical_hash: str
    fingerprint: Fingerprint
    witnesses: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        fp = self.fingerprint
        return json.dumps(
            {
                "n": self.space.n,
                "opens": [sorted_indices(m) for m in self.space.opens],
                "hash": self.canonical_hash,
                "t0": fp.t0,
                "t1": fp.t1,
                "extent": fp.extent,
                "lindelof_degree": fp.lindelof_degree,
                "exclusiveness": fp.exclusiveness,
                "is_d": fp.is_d,
                "is_ad": fp.is_ad,
                "gls": fp.gls,
                "left_separated": fp.left_separated,
                "open_count": fp.open_count,
                "witnesses": self.witnesses,
            },
            sort_keys=True,
        )


def sorted_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def fingerprint(space: FiniteSpace, budget: Budget = Budget()) -> CatalogRecord:
    """Populate every invariant of one space under the given effort budget."""
    sep = separation_level(space)
    verdict = dspace_check(space, budget.dspace_cap, budget.seed, budget.samples)
    gls = gls_search(space, cap=max(4, space.n))
    left = left_separated_search(space, cap=max(8, space.n))
    witnesses: dict = {}
    if gls is not None:
        witnesses["gls_up_sets"] = [sorted_indices(m) for m in gls.up_sets]
    if left is not None:
        witnesses["left_separated_order"] = list(left)
    if verdict.status == "yes" and space.n:
        sample = SetAssignment(space, space.n, tuple(space.minimal_neighborhoods))
        kern = kernel_search(sample)
        if kern is not None:
            witnesses["kernel_for_minimal_assignment"] = sorted_indices(kern.bits)
    if verdict.status == "no" and verdict.counterexample is not None:
        witnesses["no_kernel_assignment"] = [
            sorted_indices(m) for m in verdict.counterexample.sets
        ]
    fp = Fingerprint(
        t0=sep.t0,
        t1=sep.t1,
        extent=extent(space),
        lindelof_degree=lindelof_degree(space),
        exclusiveness=exclusiveness(space),
        is_d=verdict.status,
        is_ad=is_aD(space),
        gls=gls is not None,
        left_separated=left is not None,
        open_count=len(space.opens),
    )
    return CatalogRecord(space, canonical_hash(space), fp, witnesses)


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 3
    seed: int = 0
    samples: int = 200
    dspace_cap: int = 1_000_000
    corrupt_hook: Callable[[list[FiniteSpace]], list[FiniteSpace]] | None = None


@dataclass
class CheckEntry:
    name: str
    instances: int
    violations: int
    seconds: float
    detail: str = ""


@dataclass
class SuiteReport:
    entries: list[CheckEntry]
    seed: int

    @property
    def violations_total(self) -> int:
        return sum(e.violations for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.violations_total == 0

    def table(self) -> str:
        lines = [f"{'check':44} {'instances':>9} {'violations':>10} {'seconds':>8}"]
        for e in self.entries:
            lines.append(f"{e.name:44} {e.instances:>9} {e.violations:>10} {e.seconds:>8.2f}")
            if e.detail:
                lines.append(f"    {e.detail}")
        lines.append(f"total violations: {self.violations_total}")
        return "\n".join(lines)


def run_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Replay the law checks over the enumerated catalog; deterministic per seed."""
    from . import suite_checks

    spaces: list[FiniteSpace] = []
    for n in range(1, cfg.max_n + 1):
        spaces.extend(enumerate_topologies(n))
    if cfg.corrupt_hook is not None:
        spaces = cfg.corrupt_hook(spaces)
    rng = random.Random(cfg.seed)
    entries = []
    for name, check in suite_checks.ALL_CHECKS:
        start = time.perf_counter()
        try:
            instances, violations, detail = check(spaces, cfg, rng)
        except Exception as exc:  # a crash on corrupted input is a violation too
            instances, violations, detail = 0, 1, f"check aborted: {exc}"
        entries.append(
            CheckEntry(name, instances, violations, time.perf_counter() - start, detail)
        )
    return SuiteReport(entries, cfg.seed)
