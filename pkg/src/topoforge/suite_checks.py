"""The law battery replayed by catalog.run_suite.

Each check is a function (spaces, cfg, rng) -> (instances, violations, detail).
Checks whose classical statements only bite through an infinite cardinal
bound say so in their detail string instead of silently passing.
"""

from __future__ import annotations

from itertools import product as iproduct

from .assignments import (
    SetAssignment,
    classify_assignment,
    companion_map,
    companion_values,
    is_refinement,
    is_u_sticky,
    iter_neighborhood_assignments,
    puncture_refinement,
    restrict_assignment,
    sticky_order,
    union_over,
    verify_companion_unique,
)
from .category import ContinuousMap, is_closed_map, is_epi, is_mono
from .covering import (
    companion_bound_identity,
    exclusiveness,
    extent,
    gls_search,
    left_separated_search,
    lindelof_degree,
    metacompact_witness,
    paracompact_witness,
)
from .dspace import (
    characterization_witness,
    dspace_check,
    forced_points,
    greedy_kernel,
    greedy_kernel_all_orders,
    kernel_search,
    pullback_diagonal_check,
)
from .puf import build_puf_space, functor_check, image_map, trace_map, upset_oracle
from .space import (
    FiniteSpace,
    PointSet,
    _is_closed_discrete_mask,
    classify_subset,
    closure_mask,
    generate_topology,
    separation_level,
    subspace,
    verify_axioms,
)

MAX_ASSIGNMENT_DOMAIN = 3


def _small(spaces, bound=3):
    return [sp for sp in spaces if sp.n <= bound]


def _iter_assignments(space: FiniteSpace, max_m: int):
    for m in range(max_m + 1):
        for sets in iproduct(space.opens, repeat=m):
            yield SetAssignment(space, m, tuple(sets))


def check_axioms(spaces, cfg, rng):
    bad = sum(0 if verify_axioms(sp).ok else 1 for sp in spaces)
    return len(spaces), bad, ""


def check_generation_subbases(spaces, cfg, rng):
    """Every topology generated from a subbase passes the axiom check (n <= 2
    exhaustive over all subbases; for n = 3 over sampled subbases)."""
    instances = 0
    violations = 0
    for n in (1, 2):
        for bits in range(1 << (1 << n)):
            subbase = [m for m in range(1 << n) if bits >> m & 1]
            instances += 1
            if not verify_axioms(generate_topology(n, subbase)).ok:
                violations += 1
    for _ in range(cfg.samples):
        k = rng.randrange(4)
        subbase = [rng.randrange(8) for _ in range(k)]
        instances += 1
        if not verify_axioms(generate_topology(3, subbase)).ok:
            violations += 1
    return instances, violations, ""


def check_closed_discrete_heredity(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        for mask in range(1 << sp.n):
            if not _is_closed_discrete_mask(sp, mask):
                continue
            sub = mask
            while True:
                instances += 1
                if not _is_closed_discrete_mask(sp, sub):
                    violations += 1
                if sub == 0:
                    break
                sub = (sub - 1) & mask
    return instances, violations, ""


def check_t1_discrete(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        if not separation_level(sp).t1:
            continue
        for mask in range(1 << sp.n):
            instances += 1
            if not sp.is_closed_mask(mask):
                violations += 1
    return instances, violations, "finite T1 forces the discrete topology"


def check_closure_laws(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        for mask in range(1 << sp.n):
            instances += 1
            cl = closure_mask(sp, mask)
            if mask & ~cl:
                violations += 1  # extensive
            if closure_mask(sp, cl) != cl:
                violations += 1  # idempotent
            bigger = mask | (1 << rng.randrange(sp.n)) if sp.n else mask
            if cl & ~closure_mask(sp, bigger):
                violations += 1  # monotone
    return instances, violations, ""


def check_subspace_composition(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for outer in range(1 << sp.n):
            sub1 = subspace(sp, PointSet(sp.n, outer))
            for inner_local in range(1 << sub1.space.n):
                instances += 1
                sub2 = subspace(sub1.space, PointSet(sub1.space.n, inner_local))
                inner_global = 0
                for i in range(sub1.space.n):
                    if inner_local >> i & 1:
                        inner_global |= 1 << sub1.to_global(i)
                direct = subspace(sp, PointSet(sp.n, inner_global))
                if direct.space != sub2.space:
                    violations += 1
    return instances, violations, ""


def check_puf_oracle(spaces, cfg, rng):
    expected = {0: 2, 1: 3, 2: 6, 3: 20, 4: 168}
    top = min(cfg.max_n + 1, 4)
    instances = 0
    violations = 0
    for n in range(top + 1):
        instances += 1
        built = build_puf_space(n).space
        oracle = upset_oracle(n)
        if built != oracle or len(built.opens) != expected[n]:
            violations += 1
    return instances, violations, "open families equal the up-set enumeration exactly"


def check_puf_filter_intersections(spaces, cfg, rng):
    instances = 0
    violations = 0
    for n in range(1, min(cfg.max_n, 4) + 1):
        puf = build_puf_space(n)
        for picked in range(1, 1 << n):
            instances += 1
            inter = puf.space.full_mask
            expected = 0
            for code in range(1 << n):
                if code & picked == picked:
                    expected |= 1 << code
            for x in range(n):
                if picked >> x & 1:
                    inter &= puf.subbase[x]
            if inter != expected:
                violations += 1
    return instances, violations, "subbasic intersections are exactly the principal filters"


def check_trace_image_maps(spaces, cfg, rng):
    instances = 0
    violations = 0
    for n in range(min(cfg.max_n, 3) + 1):
        for d_bits in range(1 << n):
            instances += 1
            res = trace_map(n, PointSet(n, d_bits))
            if not res.certified:
                violations += 1
    for dom in range(min(cfg.max_n, 3) + 1):
        for cod in range(1, min(cfg.max_n, 3) + 1):
            for t in iproduct(range(cod), repeat=dom):
                instances += 1
                res = image_map(t, dom, cod)
                if not res.certified:
                    violations += 1
                surjective_t = set(t) == set(range(cod))
                if surjective_t and not res.surjective:
                    violations += 1
    return instances, violations, ""


def check_companion_calculus(spaces, cfg, rng):
    """Preimage identity, continuity, uniqueness and restriction-trace
    agreement over every assignment with small index set."""
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for assignment in _iter_assignments(sp, MAX_ASSIGNMENT_DOMAIN):
            instances += 1
            try:
                comp = companion_map(assignment)
                classify_assignment(assignment)
            except AssertionError:
                violations += 1
                continue
            if not comp.certified:
                violations += 1
            report = verify_companion_unique(assignment)
            if not (report.regime == "exhaustive" and report.matches == 1):
                violations += 1
            for d_bits in range(1 << assignment.domain_size):
                try:
                    restrict_assignment(assignment, PointSet(assignment.domain_size, d_bits))
                except AssertionError:
                    violations += 1
    return instances, violations, ""


def check_refinement_routes(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for m in range(MAX_ASSIGNMENT_DOMAIN + 1):
            assignments = [
                SetAssignment(sp, m, tuple(sets)) for sets in iproduct(sp.opens, repeat=m)
            ]
            companions = [companion_values(sp.n, a.sets) for a in assignments]
            for i, cand in enumerate(assignments):
                for j, base in enumerate(assignments):
                    instances += 1
                    direct = all(c & ~b == 0 for c, b in zip(cand.sets, base.sets))
                    via = all(c & ~b == 0 for c, b in zip(companions[i], companions[j]))
                    if direct != via:
                        violations += 1
    return instances, violations, "pointwise companion containment matches setwise refinement"


def check_puncture_properties(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for assignment in iter_neighborhood_assignments(sp):
            for d_bits in range(1 << sp.n):
                if union_over(assignment.sets, d_bits) != sp.full_mask:
                    continue
                if not _is_closed_discrete_mask(sp, d_bits):
                    continue
                instances += 1
                d = PointSet(sp.n, d_bits)
                punctured = puncture_refinement(assignment, d)
                ok = is_refinement(punctured, assignment)
                ok = ok and classify_assignment(punctured).is_neighborhood
                ok = ok and union_over(punctured.sets, d_bits) == sp.full_mask
                for dd in d.indices():
                    if punctured.sets[dd] & d_bits != 1 << dd:
                        ok = False
                if not ok:
                    violations += 1
    return instances, violations, ""


def check_sticky_union(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for assignment in iter_neighborhood_assignments(sp):
            sticky = [
                m
                for m in range(1 << sp.n)
                if is_u_sticky(assignment, PointSet(sp.n, m))
            ]
            for a in sticky:
                for b in sticky:
                    pa, pb = PointSet(sp.n, a), PointSet(sp.n, b)
                    if not sticky_order(assignment, pa, pb):
                        continue
                    instances += 1
                    if not is_u_sticky(assignment, PointSet(sp.n, a | b)):
                        violations += 1
    return (
        instances,
        violations,
        "finite chains: the union of a comparable sticky pair stays sticky",
    )


def check_extent_lindelof(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        instances += 1
        if extent(sp) > lindelof_degree(sp):
            violations += 1
    return instances, violations, ""


def check_d_extent_equality(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        verdict = dspace_check(sp, cfg.dspace_cap, cfg.seed, cfg.samples)
        if verdict.status != "yes":
            continue
        instances += 1
        if extent(sp) != lindelof_degree(sp):
            violations += 1
    return instances, violations, ""


def check_exclusiveness(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        instances += 1
        k = exclusiveness(sp)  # raises if the two routes disagree
        t1 = separation_level(sp).t1
        if (k >= 1) != t1:
            violations += 1
        if t1 and k != sp.n:
            violations += 1
    return instances, violations, "definitional and closed-subset routes agree"


def check_gls_chain(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in spaces:
        gls = gls_search(sp)
        left = left_separated_search(sp)
        instances += 1
        if left is not None and gls is None:
            violations += 1
        if gls is not None:
            verdict = dspace_check(sp, cfg.dspace_cap, cfg.seed, cfg.samples)
            if verdict.status == "no":
                violations += 1
    return instances, violations, "left-separated implies GLS implies the D-property"


def check_companion_bound_identity(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        coverings = [
            a
            for a in _iter_assignments(sp, min(sp.n, 2))
            if classify_assignment(a).is_covering
        ]
        neighborhoods = list(iter_neighborhood_assignments(sp))
        for o in coverings:
            for nb in neighborhoods:
                instances += 1
                if not companion_bound_identity(sp, o, nb):
                    violations += 1
    return instances, violations, ""


def check_covering_witnesses(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        if sp.n == 0:
            continue
        coverings = [
            a
            for a in _iter_assignments(sp, min(sp.n, 2))
            if classify_assignment(a).is_covering
        ]
        for c in coverings:
            instances += 1
            para = paracompact_witness(sp, c)
            if not classify_assignment(para.refined).is_covering:
                violations += 1
            if para.bound > c.domain_size:
                violations += 1
            meta = metacompact_witness(sp, c)
            if not classify_assignment(meta.refined).is_covering:
                violations += 1
            if not is_refinement(meta.refined, c):
                violations += 1
    return (
        instances,
        violations,
        "finitely vacuous: every finite cover is locally and point finite, so the "
        "witnesses must always exist and certify",
    )


def check_d_characterization(spaces, cfg, rng):
    """D verdict, witness construction and the pullback-diagonal form agree."""
    instances = 0
    violations = 0
    for sp in _small(spaces):
        verdict = dspace_check(sp, cfg.dspace_cap, cfg.seed, cfg.samples)
        all_witnessed = True
        for assignment in iter_neighborhood_assignments(sp):
            instances += 1
            witness = characterization_witness(assignment)
            kern = kernel_search(assignment)
            if (witness is None) != (kern is None):
                violations += 1
            if witness is None:
                all_witnessed = False
                continue
            if not (witness.never_empty and witness.fixes_kernel):
                violations += 1
            diag = pullback_diagonal_check(witness)
            if not diag.ok:
                violations += 1
        if verdict.status in ("yes", "no"):
            if (verdict.status == "yes") != all_witnessed:
                violations += 1
    return instances, violations, ""


def check_greedy(spaces, cfg, rng):
    from itertools import permutations

    instances = 0
    violations = 0
    findings = 0
    picked = [sp for sp in spaces if sp.n <= 3 or separation_level(sp).t1]
    for sp in picked:
        t1 = separation_level(sp).t1
        for assignment in iter_neighborhood_assignments(sp):
            report = greedy_kernel_all_orders(assignment)
            instances += 1
            if report.success:
                res = report.result
                cls = classify_subset(sp, res.kernel)
                kernel_ok = union_over(res.final_sets, res.kernel.bits) == sp.full_mask
                if not (cls.is_closed_discrete and kernel_ok):
                    violations += 1
            elif report.finding is not None:
                findings += 1  # all orders failed although a kernel exists
            if t1:
                for order in permutations(range(sp.n)):
                    if not greedy_kernel(assignment, order).success:
                        violations += 1
    detail = "greedy succeeds for every order on T1 spaces"
    if findings:
        detail += f"; {findings} assignments defeat every greedy order despite a kernel"
    return instances, violations, detail


def check_forced_points(spaces, cfg, rng):
    instances = 0
    violations = 0
    for sp in _small(spaces):
        for assignment in iter_neighborhood_assignments(sp):
            instances += 1
            forced = forced_points(assignment)  # raises if a kernel misses one
            kern = kernel_search(assignment)
            if kern is not None and forced.bits & ~kern.bits:
                violations += 1
    return instances, violations, ""


def check_closed_images(spaces, cfg, rng):
    instances = 0
    violations = 0
    small = _small(spaces)
    for dom in small:
        dom_verdict = dspace_check(dom, cfg.dspace_cap, cfg.seed, cfg.samples)
        if dom_verdict.status != "yes":
            continue
        for cod in small:
            for values in iproduct(range(cod.n), repeat=dom.n):
                mapping = ContinuousMap(dom, cod, values)
                from .category import check_continuous

                if not check_continuous(mapping).ok:
                    continue
                mapping = mapping.certify()
                if not mapping.is_surjective() or not is_closed_map(mapping):
                    continue
                instances += 1
                cod_verdict = dspace_check(cod, cfg.dspace_cap, cfg.seed, cfg.samples)
                if cod_verdict.status == "no":
                    violations += 1
    return instances, violations, "closed continuous surjections preserve the D-property"


def check_mono_epi(spaces, cfg, rng):
    instances = 0
    violations = 0
    small = _small(spaces)
    for dom in small:
        for cod in small:
            for values in iproduct(range(cod.n), repeat=dom.n):
                mapping = ContinuousMap(dom, cod, values)
                from .category import check_continuous

                if not check_continuous(mapping).ok:
                    continue
                mapping = mapping.certify()
                instances += 1
                try:
                    is_mono(mapping)
                    is_epi(mapping)
                except AssertionError:
                    violations += 1
    return instances, violations, "concrete and categorical routes agree"


def check_initial_terminal(spaces, cfg, rng):
    from .category import initial_certificate, terminal_certificate

    instances = 0
    violations = 0
    for sp in spaces:
        instances += 1
        if initial_certificate(sp) != 1:
            violations += 1
        if terminal_certificate(sp) != 1:
            violations += 1
    return instances, violations, ""


def check_functor_laws(spaces, cfg, rng):
    small = [sp for sp in spaces if sp.n <= 2]
    instances = 0
    violations = 0
    for a in small:
        for b in small:
            for c in small:
                from .category import continuous_point_functions

                for v1 in continuous_point_functions(a, b):
                    t1 = ContinuousMap(a, b, v1, certified=True)
                    for v2 in continuous_point_functions(b, c):
                        t2 = ContinuousMap(b, c, v2, certified=True)
                        instances += 1
                        if not functor_check(t1, t2).ok:
                            violations += 1
    return instances, violations, ""


def check_catalog_counts(spaces, cfg, rng):
    from .catalog import enumerate_topologies

    labeled_expected = {1: 1, 2: 4, 3: 29, 4: 355}
    unlabeled_expected = {1: 1, 2: 3, 3: 9, 4: 33}
    instances = 0
    violations = 0
    for n in range(1, min(cfg.max_n, 4) + 1):
        instances += 2
        labeled = list(enumerate_topologies(n))
        unlabeled = list(enumerate_topologies(n, "unlabeled"))
        if len(labeled) != labeled_expected[n] or len(set(labeled)) != len(labeled):
            violations += 1
        if len(unlabeled) != unlabeled_expected[n]:
            violations += 1
        if n <= 4:
            oracle = _brute_force_topology_count(n)
            instances += 1
            if oracle != len(labeled):
                violations += 1
    return instances, violations, "counts match the brute-force closure filter"


def _brute_force_topology_count(n: int) -> int:
    full = (1 << n) - 1
    count = 0
    for fam_bits in range(1 << (full + 1)):
        if not fam_bits >> 0 & 1 or not fam_bits >> full & 1:
            continue
        members = [m for m in range(full + 1) if fam_bits >> m & 1]
        ok = True
        for a in members:
            for b in members:
                if not fam_bits >> (a | b) & 1 or not fam_bits >> (a & b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def check_canonical_hash(spaces, cfg, rng):
    from .catalog import canonical_form, canonical_hash
    from .category import find_homeomorphism

    instances = 0
    violations = 0
    by_hash: dict[str, list[FiniteSpace]] = {}
    for sp in spaces:
        canon = canonical_form(sp)
        instances += 1
        if canonical_form(canon) != canon:
            violations += 1
        by_hash.setdefault(canonical_hash(sp), []).append(sp)
    for group in by_hash.values():
        head = group[0]
        for other in group[1:]:
            instances += 1
            if find_homeomorphism(head, other) is None:
                violations += 1
    return instances, violations, "hash equality certified by explicit relabelings"


def check_fingerprints(spaces, cfg, rng):
    from .catalog import Budget, fingerprint

    budget = Budget(cfg.dspace_cap, cfg.seed, cfg.samples)
    instances = 0
    violations = 0
    ad_not_d = 0
    for sp in spaces:
        instances += 1
        record = fingerprint(sp, budget)  # constructor enforces the invariants
        if record.fingerprint.is_ad and record.fingerprint.is_d == "no":
            ad_not_d += 1
    if cfg.max_n >= 2 and ad_not_d == 0:
        violations += 1
    return instances, violations, f"aD-but-not-D spaces found: {ad_not_d}"


ALL_CHECKS = [
    ("space: axioms hold on the catalog", check_axioms),
    ("space: generated topologies satisfy axioms", check_generation_subbases),
    ("space: subsets of closed discrete sets", check_closed_discrete_heredity),
    ("space: finite T1 is discrete", check_t1_discrete),
    ("space: closure laws", check_closure_laws),
    ("space: subspace composition", check_subspace_composition),
    ("puf: generated equals up-set oracle", check_puf_oracle),
    ("puf: subbasic intersections", check_puf_filter_intersections),
    ("puf: trace and image certificates", check_trace_image_maps),
    ("companion: identity/continuity/uniqueness", check_companion_calculus),
    ("companion: refinement double route", check_refinement_routes),
    ("companion: puncture properties", check_puncture_properties),
    ("companion: sticky chain union", check_sticky_union),
    ("covering: extent <= Lindelof degree", check_extent_lindelof),
    ("covering: D forces extent = Lindelof degree", check_d_extent_equality),
    ("covering: exclusiveness routes and T1", check_exclusiveness),
    ("covering: left-separated -> GLS -> D", check_gls_chain),
    ("covering: companion bound identity", check_companion_bound_identity),
    ("covering: para/metacompact witnesses", check_covering_witnesses),
    ("dspace: characterization and pullback", check_d_characterization),
    ("dspace: greedy recursion", check_greedy),
    ("dspace: forced points in kernels", check_forced_points),
    ("dspace: closed images preserve D", check_closed_images),
    ("category: mono/epi double routes", check_mono_epi),
    ("category: initial and terminal objects", check_initial_terminal),
    ("category: power-set functor laws", check_functor_laws),
    ("catalog: enumeration counts", check_catalog_counts),
    ("catalog: canonical hashing", check_canonical_hash),
    ("catalog: fingerprint invariants", check_fingerprints),
]
