"""The finite category of spaces: continuous maps, limits, universal properties.

Maps carry a continuity certificate.  Composition of certified maps stays
certified without re-checking, because (g o f)^-1(U) = f^-1(g^-1(U)) is a
preimage of an open under a certified map.  Universal-property certificates
enumerate every continuous candidate from probe spaces of at most two points
and count exactly one mediating map.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import CertificationError, InputError, PreconditionError
from .space import (
    FiniteSpace,
    PointSet,
    canonical_opens,
    discrete_space,
    indiscrete_space,
    sierpinski,
    subspace,
)


@dataclass(frozen=True)
class ContinuousMap:
    """A point function between finite spaces, with a continuity certificate."""

    domain: FiniteSpace
    codomain: FiniteSpace
    values: tuple[int, ...]
    certified: bool = False

    def __post_init__(self) -> None:
        if len(self.values) != self.domain.n:
            raise InputError(
                f"map on {self.domain.n} points given {len(self.values)} values"
            )
        for v in self.values:
            if not 0 <= v < self.codomain.n:
                raise InputError(f"value {v} outside codomain of {self.codomain.n} points")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def preimage_mask(self, codomain_mask: int) -> int:
        out = 0
        for x, v in enumerate(self.values):
            if codomain_mask >> v & 1:
                out |= 1 << x
        return out

    def image_mask(self) -> int:
        out = 0
        for v in self.values:
            out |= 1 << v
        return out

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.domain.n

    def is_surjective(self) -> bool:
        return self.image_mask() == self.codomain.full_mask

    def then(self, other: "ContinuousMap") -> "ContinuousMap":
        """Composite self followed by other; certification carries over."""
        if other.domain != self.codomain:
            raise InputError("composition mismatch: codomain differs from next domain")
        values = tuple(other.values[v] for v in self.values)
        return ContinuousMap(
            self.domain, other.codomain, values, certified=self.certified and other.certified
        )

    def certify(self) -> "ContinuousMap":
        report = check_continuous(self)
        if not report.ok:
            raise CertificationError(
                f"map is not continuous; offending open mask {report.offending_open:#x}"
            )
        return replace(self, certified=True)


@dataclass(frozen=True)
class ContinuityReport:
    ok: bool
    offending_open: int | None = None


def check_continuous(
    mapping: ContinuousMap, codomain_subbase: tuple[int, ...] | None = None
) -> ContinuityReport:
    """Preimage of every codomain open must be open.

    When the codomain carries a declared subbase it suffices to check the
    subbasic opens: preimages commute with unions and intersections.
    """
    targets = codomain_subbase if codomain_subbase is not None else mapping.codomain.opens
    for m in targets:
        if not mapping.domain.is_open(mapping.preimage_mask(m)):
            return ContinuityReport(False, m)
    return ContinuityReport(True)


def identity_map(space: FiniteSpace) -> ContinuousMap:
    return ContinuousMap(space, space, tuple(range(space.n)), certified=True)


def constant_map(domain: FiniteSpace, codomain: FiniteSpace, value: int) -> ContinuousMap:
    return ContinuousMap(domain, codomain, (value,) * domain.n).certify()


def compose(outer: ContinuousMap, inner: ContinuousMap) -> ContinuousMap:
    return inner.then(outer)


@lru_cache(maxsize=None)
def continuous_point_functions(domain: FiniteSpace, codomain: FiniteSpace) -> tuple[tuple[int, ...], ...]:
    """All continuous point functions domain -> codomain, lexicographically."""
    if domain.n == 0:
        return ((),)
    out = []
    values = [0] * domain.n
    total = codomain.n ** domain.n
    if codomain.n == 0:
        return ()
    for code in range(total):
        c = code
        for i in range(domain.n):
            values[i] = c % codomain.n
            c //= codomain.n
        cand = ContinuousMap(domain, codomain, tuple(values))
        if check_continuous(cand).ok:
            out.append(tuple(values))
    return tuple(out)


def count_continuous_maps(domain: FiniteSpace, codomain: FiniteSpace) -> int:
    return len(continuous_point_functions(domain, codomain))


@lru_cache(maxsize=None)
def probe_spaces() -> tuple[FiniteSpace, ...]:
    """Every space on at most two points, the probe battery for UMP certificates."""
    empty = FiniteSpace.from_opens(0, [0])
    point = indiscrete_space(1)
    two = [
        indiscrete_space(2),
        sierpinski(),
        FiniteSpace.from_opens(2, [0b00, 0b10, 0b11]),
        discrete_space(2),
    ]
    return (empty, point, *two)


def is_mono(mapping: ContinuousMap) -> bool:
    """Monomorphism test: injectivity, cross-checked categorically via probes."""
    if not mapping.certified:
        raise PreconditionError("mono test requires a certified continuous map")
    concrete = mapping.is_injective()
    categorical = True
    for probe in probe_spaces():
        fns = continuous_point_functions(probe, mapping.domain)
        for g in fns:
            for h in fns:
                if g == h:
                    continue
                if all(mapping.values[g[z]] == mapping.values[h[z]] for z in range(probe.n)):
                    categorical = False
                    break
            if not categorical:
                break
        if not categorical:
            break
    if concrete != categorical:
        raise CertificationError(
            f"mono routes disagree: injective={concrete}, categorical={categorical}"
        )
    return concrete


def is_epi(mapping: ContinuousMap) -> bool:
    """Epimorphism test: surjectivity, cross-checked categorically via probes."""
    if not mapping.certified:
        raise PreconditionError("epi test requires a certified continuous map")
    concrete = mapping.is_surjective()
    categorical = True
    image = mapping.image_mask()
    for probe in probe_spaces():
        fns = continuous_point_functions(mapping.codomain, probe)
        for g in fns:
            for h in fns:
                if g == h:
                    continue
                if all(g[y] == h[y] for y in range(mapping.codomain.n) if image >> y & 1):
                    categorical = False
                    break
            if not categorical:
                break
        if not categorical:
            break
    if concrete != categorical:
        raise CertificationError(
            f"epi routes disagree: surjective={concrete}, categorical={categorical}"
        )
    return concrete


def initial_terminal() -> tuple[FiniteSpace, FiniteSpace]:
    """The empty space and the one-point space."""
    return FiniteSpace.from_opens(0, [0]), indiscrete_space(1)


def initial_certificate(test_space: FiniteSpace) -> int:
    """Number of continuous maps out of the empty space (expected: exactly 1)."""
    initial, _ = initial_terminal()
    return count_continuous_maps(initial, test_space)


def terminal_certificate(test_space: FiniteSpace) -> int:
    """Number of continuous maps into the one-point space (expected: exactly 1)."""
    _, terminal = initial_terminal()
    return count_continuous_maps(test_space, terminal)


@dataclass(frozen=True)
class UmpCertificate:
    probes_checked: int
    cones_checked: int
    unique: bool


@dataclass(frozen=True)
class Product:
    space: FiniteSpace
    left: FiniteSpace
    right: FiniteSpace
    proj1: ContinuousMap
    proj2: ContinuousMap
    ump: UmpCertificate

    def pair_index(self, a: int, b: int) -> int:
        return a * self.right.n + b

    def decode(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right.n) if self.right.n else (0, 0)


def _unique_commuting_map(
    probe: FiniteSpace,
    target: FiniteSpace,
    wanted: tuple[tuple[ContinuousMap, tuple[int, ...]], ...],
) -> bool:
    """Exactly one continuous u: probe -> target with leg(u(z)) == want[z] for each leg."""
    count = 0
    for values in continuous_point_functions(probe, target):
        if all(
            all(leg.values[values[z]] == want[z] for z in range(probe.n))
            for leg, want in wanted
        ):
            count += 1
            if count > 1:
                return False
    return count == 1


@lru_cache(maxsize=None)
def product(left: FiniteSpace, right: FiniteSpace) -> Product:
    """Product space on row-major index pairs, generated by rectangle opens."""
    n = left.n * right.n
    rectangles = set()
    for u in left.opens:
        for v in right.opens:
            rect = 0
            for a in range(left.n):
                if u >> a & 1:
                    for b in range(right.n):
                        if v >> b & 1:
                            rect |= 1 << (a * right.n + b)
            rectangles.add(rect)
    # rectangles are closed under intersection, so unions of them already
    # form the generated topology
    family = {0, (1 << n) - 1}
    frontier = list(rectangles | family)
    family.update(frontier)
    while frontier:
        fresh = []
        for a in frontier:
            for b in rectangles:
                u = a | b
                if u not in family:
                    family.add(u)
                    fresh.append(u)
        frontier = fresh
    space = FiniteSpace(n, canonical_opens(family))
    proj1 = ContinuousMap(space, left, tuple(p // right.n for p in range(n))).certify()
    proj2 = ContinuousMap(space, right, tuple(p % right.n for p in range(n))).certify()

    probes = probe_spaces()
    cones = 0
    unique = True
    for probe in probes:
        for pa in continuous_point_functions(probe, left):
            for pb in continuous_point_functions(probe, right):
                cones += 1
                wanted = ((proj1, pa), (proj2, pb))
                if not _unique_commuting_map(probe, space, wanted):
                    unique = False
    # the construction's own cone mediates through the identity, which is
    # determined pointwise and trivially continuous
    cert = UmpCertificate(len(probes), cones, unique)
    if not unique:
        raise CertificationError("product universal property failed")
    return Product(space, left, right, proj1, proj2, cert)


@dataclass(frozen=True)
class Equalizer:
    space: FiniteSpace
    inclusion: ContinuousMap
    carrier: tuple[int, ...]
    ump: UmpCertificate


def equalizer(f: ContinuousMap, g: ContinuousMap) -> Equalizer:
    """Subspace where two parallel maps agree, with its inclusion."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise InputError("equalizer requires parallel maps")
    if not (f.certified and g.certified):
        raise PreconditionError("equalizer requires certified maps")
    carrier = tuple(x for x in range(f.domain.n) if f.values[x] == g.values[x])
    sub = subspace(f.domain, PointSet.from_indices(f.domain.n, carrier))
    inclusion = ContinuousMap(sub.space, f.domain, sub.global_points).certify()

    probes = probe_spaces()
    cones = 0
    unique = True
    for probe in probes:
        for z in continuous_point_functions(probe, f.domain):
            if not all(f.values[z[p]] == g.values[z[p]] for p in range(probe.n)):
                continue
            cones += 1
            if not _unique_commuting_map(probe, sub.space, (((inclusion), z),)):
                unique = False
    cert = UmpCertificate(len(probes), cones, unique)
    if not unique:
        raise CertificationError("equalizer universal property failed")
    return Equalizer(sub.space, inclusion, carrier, cert)


@dataclass(frozen=True)
class Pullback:
    space: FiniteSpace
    p1: ContinuousMap
    p2: ContinuousMap
    pairs: tuple[tuple[int, int], ...]
    ump: UmpCertificate


def pullback(f: ContinuousMap, g: ContinuousMap) -> Pullback:
    """Pullback of f: A -> C and g: B -> C as the equalizer of f o pi1 and g o pi2."""
    if f.codomain != g.codomain:
        raise InputError("pullback requires a common codomain")
    if not (f.certified and g.certified):
        raise PreconditionError("pullback requires certified maps")
    prod = product(f.domain, g.domain)
    eq = equalizer(prod.proj1.then(f), prod.proj2.then(g))
    p1 = eq.inclusion.then(prod.proj1)
    p2 = eq.inclusion.then(prod.proj2)
    pairs = tuple(prod.decode(p) for p in eq.carrier)
    if any(f.values[a] != g.values[b] for a, b in pairs):
        raise CertificationError("pullback square does not commute")

    probes = probe_spaces()
    cones = 0
    unique = True
    for probe in probes:
        for za in continuous_point_functions(probe, f.domain):
            for zb in continuous_point_functions(probe, g.domain):
                if not all(f.values[za[p]] == g.values[zb[p]] for p in range(probe.n)):
                    continue
                cones += 1
                wanted = ((p1, za), (p2, zb))
                if not _unique_commuting_map(probe, eq.space, wanted):
                    unique = False
    cert = UmpCertificate(len(probes), cones, unique)
    if not unique:
        raise CertificationError("pullback universal property failed")
    return Pullback(eq.space, p1, p2, pairs, cert)


def coslice_commute(f: ContinuousMap, h: ContinuousMap, m: ContinuousMap) -> bool:
    """Whether m o f = h, i.e. m is a morphism from f to h under their shared domain."""
    for mapping in (f, h, m):
        if not mapping.certified:
            raise PreconditionError("coslice check requires certified maps")
    if f.domain != h.domain or m.domain != f.codomain or m.codomain != h.codomain:
        raise InputError("coslice triangle has mismatched endpoints")
    return all(m.values[f.values[x]] == h.values[x] for x in range(f.domain.n))


def is_closed_map(mapping: ContinuousMap) -> bool:
    """Image of every closed set is closed (checked over all closed sets)."""
    dom, cod = mapping.domain, mapping.codomain
    for u in dom.opens:
        closed = dom.full_mask & ~u
        img = 0
        rest = closed
        while rest:
            low = rest & -rest
            img |= 1 << mapping.values[low.bit_length() - 1]
            rest ^= low
        if not cod.is_closed_mask(img):
            return False
    return True


def find_homeomorphism(a: FiniteSpace, b: FiniteSpace) -> tuple[int, ...] | None:
    """A relabeling bijection carrying opens onto opens, if one exists."""
    from itertools import permutations

    if a.n != b.n or len(a.opens) != len(b.opens):
        return None
    for perm in permutations(range(a.n)):
        mapped = set()
        for m in a.opens:
            out = 0
            rest = m
            while rest:
                low = rest & -rest
                out |= 1 << perm[low.bit_length() - 1]
                rest ^= low
            mapped.add(out)
        if mapped == b.opens_set:
            return perm
    return None
