from itertools import product as iproduct

import pytest

from topoforge.assignments import (
    SetAssignment,
    classify_assignment,
    companion_continuous_map,
    companion_map,
    is_kernel,
    is_neighborhood_refinement,
    is_refinement,
    is_u_sticky,
    iter_neighborhood_assignments,
    neighborhood_assignment,
    puncture_refinement,
    restrict_assignment,
    sticky_order,
    verify_companion_unique,
)
from topoforge.errors import InputError, PreconditionError
from topoforge.space import (
    PointSet,
    discrete_space,
    generate_topology,
    indiscrete_space,
    sierpinski,
)


def sier_neighborhoods():
    # N(0) = {0}, N(1) = {0,1}
    return SetAssignment(sierpinski(), 2, (0b01, 0b11))


class TestCompanion:
    def test_sierpinski_values(self):
        comp = companion_map(sier_neighborhoods())
        assert comp.values == (0b11, 0b10)  # f(0) = {0,1}, f(1) = {1}
        assert comp.certified

    def test_chain_space(self):
        space = generate_topology(3, [0b011, 0b110])
        assignment = SetAssignment(space, 2, (0b011, 0b110))
        comp = companion_map(assignment)
        assert comp.values == (0b01, 0b11, 0b10)

    def test_empty_domain(self, sier):
        assignment = SetAssignment(sier, 0, ())
        comp = companion_map(assignment)
        assert comp.values == (0, 0)
        assert comp.certified

    def test_non_open_set_rejected(self, sier):
        with pytest.raises(InputError):
            SetAssignment(sier, 1, (0b10,))

    def test_companion_as_continuous_map(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for m in range(min(sp.n, 2) + 1):
                for sets in iproduct(sp.opens, repeat=m):
                    assignment = SetAssignment(sp, m, tuple(sets))
                    assert companion_continuous_map(assignment).certified


class TestClassify:
    def test_neighborhood_implies_covering(self):
        report = classify_assignment(sier_neighborhoods())
        assert report.is_neighborhood and report.is_covering

    def test_set_only(self, sier):
        report = classify_assignment(SetAssignment(sier, 1, (0b01,)))
        assert not report.is_covering and not report.is_neighborhood
        comp = companion_map(SetAssignment(sier, 1, (0b01,)))
        assert comp.values[1] == 0  # the uncovered point has the empty value

    def test_covering_not_neighborhood(self, sier):
        report = classify_assignment(SetAssignment(sier, 2, (0b01, 0b11)))
        assert report.is_covering
        # abstract 2-index version with the sets swapped: 0 not in O(0)
        swapped = SetAssignment(sier, 2, (0b11, 0b01))
        got = classify_assignment(swapped)
        assert got.is_covering and not got.is_neighborhood

    def test_neighborhood_constructor_rejects(self, sier):
        with pytest.raises(PreconditionError):
            neighborhood_assignment(sier, [0b01, 0b01])


class TestUniqueness:
    def test_sierpinski_exhaustive(self):
        report = verify_companion_unique(sier_neighborhoods())
        assert report.regime == "exhaustive"
        assert report.candidates_checked == 16
        assert report.matches == 1

    def test_one_point(self):
        space = indiscrete_space(1)
        report = verify_companion_unique(SetAssignment(space, 1, (0b1,)))
        assert report.candidates_checked == 2
        assert report.matches == 1

    def test_discrete_three(self):
        space = discrete_space(3)
        assignment = SetAssignment(space, 3, (0b001, 0b010, 0b100))
        report = verify_companion_unique(assignment)
        assert report.candidates_checked == 512
        assert report.matches == 1

    def test_sampled_regime_reports(self):
        space = discrete_space(3)
        assignment = SetAssignment(space, 3, (0b001, 0b010, 0b100))
        report = verify_companion_unique(assignment, exhaustive_cap=10, seed=5)
        assert report.regime == "sampled"
        assert report.matches == 1

    def test_exhaustive_everywhere_small(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for m in range(min(sp.n, 3) + 1):
                for sets in iproduct(sp.opens, repeat=m):
                    report = verify_companion_unique(SetAssignment(sp, m, tuple(sets)))
                    assert report.regime == "exhaustive" and report.matches == 1


class TestRestriction:
    def test_sierpinski_restriction_covers(self):
        result = restrict_assignment(sier_neighborhoods(), PointSet.from_indices(2, [1]))
        assert result.is_covering
        assert result.assignment.sets == (0b11,)

    def test_empty_restriction_never_covers(self, sier):
        result = restrict_assignment(sier_neighborhoods(), PointSet.empty(2))
        assert not result.is_covering

    def test_chain_restriction(self):
        space = generate_topology(3, [0b011, 0b110])
        assignment = SetAssignment(space, 2, (0b011, 0b110))
        result = restrict_assignment(assignment, PointSet.from_indices(2, [0]))
        assert not result.is_covering
        assert result.assignment.sets == (0b011,)

    def test_trace_equals_companion_everywhere(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for m in range(min(sp.n, 2) + 1):
                for sets in iproduct(sp.opens, repeat=m):
                    assignment = SetAssignment(sp, m, tuple(sets))
                    for d_bits in range(1 << m):
                        restrict_assignment(assignment, PointSet(m, d_bits))

    def test_out_of_range(self):
        with pytest.raises(InputError):
            restrict_assignment(sier_neighborhoods(), PointSet.from_indices(3, [2]))


class TestKernels:
    def test_sierpinski_kernels(self):
        assignment = sier_neighborhoods()
        kernels = [
            bits
            for bits in range(4)
            if is_kernel(assignment, PointSet(2, bits))
        ]
        assert kernels == [0b10, 0b11]

    def test_empty_never_kernels_nonempty(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for assignment in iter_neighborhood_assignments(sp):
                assert not is_kernel(assignment, PointSet.empty(sp.n))

    def test_indiscrete_singleton(self, ind2):
        assignment = SetAssignment(ind2, 2, (0b11, 0b11))
        assert is_kernel(assignment, PointSet.singleton(2, 0))

    def test_requires_neighborhood(self, sier):
        with pytest.raises(PreconditionError):
            is_kernel(SetAssignment(sier, 1, (0b01,)), PointSet.empty(2))


class TestRefinement:
    def test_equal_is_refinement(self):
        base = sier_neighborhoods()
        assert is_refinement(base, base)
        assert is_neighborhood_refinement(base, base)

    def test_refinement_but_not_neighborhood(self, sier):
        base = sier_neighborhoods()
        candidate = SetAssignment(sier, 2, (0b01, 0b01))
        assert is_refinement(candidate, base)
        assert not is_neighborhood_refinement(candidate, base)

    def test_non_refinement(self, sier):
        base = SetAssignment(sier, 2, (0b01, 0b01))
        candidate = sier_neighborhoods()
        assert not is_refinement(candidate, base)

    def test_double_route_all_pairs_small(self, spaces_up_to_3):
        for sp in (s for s in spaces_up_to_3 if s.n <= 2):
            for m in range(min(sp.n, 2) + 1):
                assignments = [
                    SetAssignment(sp, m, tuple(sets))
                    for sets in iproduct(sp.opens, repeat=m)
                ]
                for cand in assignments:
                    for base in assignments:
                        is_refinement(cand, base)  # raises if routes split

    def test_shape_mismatch(self, sier, disc2):
        with pytest.raises(InputError):
            is_refinement(sier_neighborhoods(), SetAssignment(disc2, 2, (0b01, 0b10)))


class TestPuncture:
    def test_sierpinski_no_change(self):
        assignment = sier_neighborhoods()
        punctured = puncture_refinement(assignment, PointSet.singleton(2, 1))
        assert punctured.sets == assignment.sets

    def test_discrete_full_kernel(self, disc2):
        assignment = SetAssignment(disc2, 2, (0b11, 0b11))
        punctured = puncture_refinement(assignment, PointSet.full(2))
        assert punctured.sets == (0b01, 0b10)
        assert is_kernel(punctured, PointSet.full(2))

    def test_discrete_three_full(self, disc3):
        full = (1 << 3) - 1
        assignment = SetAssignment(disc3, 3, (full, full, full))
        punctured = puncture_refinement(assignment, PointSet.full(3))
        assert punctured.sets == (0b001, 0b010, 0b100)

    def test_rejects_non_closed_discrete(self, ind2):
        assignment = SetAssignment(ind2, 2, (0b11, 0b11))
        with pytest.raises(PreconditionError) as err:
            puncture_refinement(assignment, PointSet.full(2))
        assert "not discrete" in str(err.value)

    def test_rejects_non_kernel(self, disc2):
        assignment = SetAssignment(disc2, 2, (0b01, 0b10))
        with pytest.raises(PreconditionError) as err:
            puncture_refinement(assignment, PointSet.singleton(2, 0))
        assert "not a kernel" in str(err.value)

    def test_properties_everywhere(self, spaces_up_to_3):
        from topoforge.assignments import union_over
        from topoforge.space import _is_closed_discrete_mask

        for sp in spaces_up_to_3:
            for assignment in iter_neighborhood_assignments(sp):
                for d_bits in range(1 << sp.n):
                    if union_over(assignment.sets, d_bits) != sp.full_mask:
                        continue
                    if not _is_closed_discrete_mask(sp, d_bits):
                        continue
                    d = PointSet(sp.n, d_bits)
                    punctured = puncture_refinement(assignment, d)
                    assert is_neighborhood_refinement(punctured, assignment)
                    assert is_kernel(punctured, d)
                    for dd in d.indices():
                        assert punctured.sets[dd] & d_bits == 1 << dd


class TestSticky:
    def test_discrete_singleton(self, disc2):
        assignment = SetAssignment(disc2, 2, (0b01, 0b10))
        assert is_u_sticky(assignment, PointSet.singleton(2, 0))

    def test_empty_always_sticky(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for assignment in iter_neighborhood_assignments(sp):
                assert is_u_sticky(assignment, PointSet.empty(sp.n))

    def test_non_closed_not_sticky(self, ind2):
        assignment = SetAssignment(ind2, 2, (0b11, 0b11))
        assert not is_u_sticky(assignment, PointSet.singleton(2, 0))

    def test_order_from_empty(self, disc2):
        assignment = SetAssignment(disc2, 2, (0b01, 0b10))
        assert sticky_order(assignment, PointSet.empty(2), PointSet.singleton(2, 0))

    def test_order_example(self, disc2):
        assignment = SetAssignment(disc2, 2, (0b01, 0b10))
        assert sticky_order(assignment, PointSet.singleton(2, 0), PointSet.full(2))
        wide = SetAssignment(disc2, 2, (0b11, 0b10))
        assert not sticky_order(wide, PointSet.singleton(2, 0), PointSet.full(2))

    def test_order_requires_sticky(self, ind2):
        assignment = SetAssignment(ind2, 2, (0b11, 0b11))
        with pytest.raises(PreconditionError):
            sticky_order(assignment, PointSet.singleton(2, 0), PointSet.full(2))

    def test_chain_union_sticky(self, spaces_up_to_3):
        for sp in spaces_up_to_3:
            for assignment in iter_neighborhood_assignments(sp):
                sticky = [
                    bits
                    for bits in range(1 << sp.n)
                    if is_u_sticky(assignment, PointSet(sp.n, bits))
                ]
                for a in sticky:
                    for b in sticky:
                        if sticky_order(assignment, PointSet(sp.n, a), PointSet(sp.n, b)):
                            assert is_u_sticky(assignment, PointSet(sp.n, a | b))
