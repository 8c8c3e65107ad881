from itertools import product as iproduct

import pytest

from topoforge.category import ContinuousMap, check_continuous, identity_map
from topoforge.errors import InputError, PreconditionError, ResourceLimitError
from topoforge.puf import (
    build_puf_space,
    check_shrink_map,
    functor_check,
    image_map,
    is_upclosed,
    principal_ultrafilter,
    puf_functor_map,
    shrink_morphism_table,
    trace_map,
    upset_oracle,
)
from topoforge.space import PointSet, discrete_space, subspace

EXPECTED_OPEN_COUNTS = {0: 2, 1: 3, 2: 6, 3: 20, 4: 168}


class TestPrincipalUltrafilter:
    def test_n2_point0(self):
        u = principal_ultrafilter(2, 0)
        assert u.indices() == (0b01, 0b11)  # the codes of {0} and {0,1}

    def test_n2_point1(self):
        assert principal_ultrafilter(2, 1).indices() == (0b10, 0b11)

    def test_cardinality_is_half(self):
        for n in range(1, 5):
            for x in range(n):
                assert len(principal_ultrafilter(n, x)) == 1 << (n - 1)
                assert all(code >> x & 1 for code in principal_ultrafilter(n, x))

    def test_out_of_range(self):
        with pytest.raises(InputError):
            principal_ultrafilter(2, 2)


class TestPufSpace:
    def test_subbase_suffices_for_continuity(self, sier):
        # checking continuity against the declared subbase agrees with the
        # full open-family check on ultrafilter targets
        from topoforge.assignments import SetAssignment, companion_map

        puf = build_puf_space(2)
        comp = companion_map(SetAssignment(sier, 2, (0b01, 0b11)))
        mapping = ContinuousMap(sier, puf.space, comp.values)
        assert check_continuous(mapping).ok
        assert check_continuous(mapping, codomain_subbase=puf.subbase).ok
        broken = ContinuousMap(sier, puf.space, (0b10, 0b01))
        assert not check_continuous(broken).ok
        assert not check_continuous(broken, codomain_subbase=puf.subbase).ok

    def test_cap_override_via_environment(self, monkeypatch):
        monkeypatch.setenv("TOPOFORGE_CAP_BITS", "8")
        build_puf_space.cache_clear()
        with pytest.raises(ResourceLimitError) as err:
            build_puf_space(4)
        assert "TOPOFORGE_CAP_BITS" in str(err.value)
        monkeypatch.delenv("TOPOFORGE_CAP_BITS")
        build_puf_space.cache_clear()
        assert len(build_puf_space(4).space.opens) == 168

    def test_open_counts_match_oracle(self):
        for n, expected in EXPECTED_OPEN_COUNTS.items():
            built = build_puf_space(n)
            oracle = upset_oracle(n)
            assert built.space == oracle
            assert len(built.space.opens) == expected

    def test_membership_mode_matches_family(self):
        for n in range(4):
            puf = build_puf_space(n)
            for fam in range(1 << puf.carrier_size):
                assert puf.is_open_family(fam) == puf.space.is_open(fam)

    def test_subbasic_intersections_are_principal_filters(self):
        for n in range(1, 5):
            puf = build_puf_space(n)
            for picked in range(1, 1 << n):
                inter = puf.space.full_mask
                for x in range(n):
                    if picked >> x & 1:
                        inter &= puf.subbase[x]
                expected = 0
                for code in range(1 << n):
                    if code & picked == picked:
                        expected |= 1 << code
                assert inter == expected

    def test_oracle_cap(self):
        with pytest.raises(ResourceLimitError):
            upset_oracle(5)


class TestShrinkMaps:
    def test_identity_satisfies_preimage_identity(self):
        for n in range(1, 4):
            report = check_shrink_map(n, tuple(range(1 << n)))
            assert report.all_equal

    def test_empty_valued_map_violates_identity(self):
        # R(A) = empty set is a shrink map, yet every subbasic preimage is
        # empty rather than the point filter the would-be identity promises
        for n in range(1, 4):
            report = check_shrink_map(n, (0,) * (1 << n))
            assert not report.all_equal
            assert all(pre == 0 for pre in report.preimages)

    def test_remove_largest_element_violates_identity(self):
        for n in range(1, 4):
            table = tuple(code & ~(1 << (code.bit_length() - 1)) if code else 0
                          for code in range(1 << n))
            report = check_shrink_map(n, table)
            for x in range(n):
                expected = 0
                for code in range(1 << n):
                    if table[code] >> x & 1:
                        expected |= 1 << code
                assert report.preimages[x] == expected
            assert not report.all_equal

    def test_non_shrink_rejected(self):
        with pytest.raises(PreconditionError):
            check_shrink_map(1, (1, 1))

    def test_identity_characterizes_preimage_equality(self):
        # sweep all shrink self-maps of P({0,1}): the preimage identity
        # R^-1(U(x)) = U(x) holds exactly for the identity map, and some
        # shrink maps are not even continuous
        puf = build_puf_space(2)
        identity = tuple(range(4))
        discontinuous = []
        for values in iproduct(*[[r for r in range(4) if r & ~code == 0] for code in range(4)]):
            report = check_shrink_map(2, values)
            assert report.all_equal == (values == identity)
            mapping = ContinuousMap(puf.space, puf.space, values)
            if not check_continuous(mapping).ok:
                discontinuous.append(values)
        assert discontinuous, "some shrink self-maps fail continuity"

    def test_shrink_morphism_table_well_defined(self):
        table = shrink_morphism_table(2, (0b11, 0b10), (0b01, 0b10))
        assert table[0b11] == 0b01 and table[0b10] == 0b10
        with pytest.raises(PreconditionError):
            shrink_morphism_table(2, (0b11, 0b11), (0b01, 0b10))  # collision
        with pytest.raises(PreconditionError):
            shrink_morphism_table(2, (0b01, 0b10), (0b11, 0b10))  # not a refinement

    def test_puncture_coslice_map_commutes_but_can_lose_continuity(self):
        # a neighborhood assignment on the discrete triple whose punctured
        # refinement genuinely changes the companion: the induced coslice
        # self-map of P(X) makes the triangle commute pointwise, yet fails
        # continuity, so the triangle cannot always be certified in full
        from topoforge.assignments import SetAssignment, companion_map
        from topoforge.dspace import characterization_witness

        space = discrete_space(3)
        assignment = SetAssignment(space, 3, (0b011, 0b110, 0b101))
        witness = characterization_witness(assignment)
        assert witness.kernel.indices() == (0, 1)
        f = companion_map(assignment).values
        f_star = witness.f_star.values
        assert f != f_star
        table = shrink_morphism_table(3, f, f_star)
        assert all(table[f[x]] == f_star[x] for x in range(3))
        puf = build_puf_space(3)
        report = check_continuous(ContinuousMap(puf.space, puf.space, table))
        assert not report.ok


class TestTraceMap:
    def test_singleton_trace(self):
        result = trace_map(2, PointSet.from_indices(2, [0]))
        assert result.certified
        # preimage of the target point filter is exactly the source filter
        pre = result.mapping.preimage_mask(principal_ultrafilter(1, 0).bits)
        assert pre == principal_ultrafilter(2, 0).bits

    def test_full_set_gives_identity(self):
        result = trace_map(2, PointSet.full(2))
        assert result.certified
        assert result.mapping.values == tuple(range(4))

    def test_empty_set_gives_constant(self):
        result = trace_map(2, PointSet.empty(2))
        assert result.certified
        assert result.mapping.values == (0, 0, 0, 0)

    def test_all_subsets_certified(self):
        for n in range(4):
            for bits in range(1 << n):
                assert trace_map(n, PointSet(n, bits)).certified


class TestImageMap:
    def test_constant_collapse(self):
        result = image_map((0, 0), 2, 1)
        assert result.certified
        pre = result.mapping.preimage_mask(principal_ultrafilter(1, 0).bits)
        union = principal_ultrafilter(2, 0).bits | principal_ultrafilter(2, 1).bits
        assert pre == union

    def test_identity(self):
        result = image_map((0, 1), 2, 2)
        assert result.mapping.values == tuple(range(4))

    def test_swap_is_code_bit_swap(self):
        result = image_map((1, 0), 2, 2)
        assert result.certified
        assert result.mapping.values == (0b00, 0b10, 0b01, 0b11)
        assert result.surjective

    def test_surjections_give_surjections(self):
        for dom in range(1, 4):
            for cod in range(1, dom + 1):
                for t in iproduct(range(cod), repeat=dom):
                    result = image_map(t, dom, cod)
                    assert result.certified
                    if set(t) == set(range(cod)):
                        assert result.surjective

    def test_empty_fiber_gives_empty_preimage(self):
        result = image_map((0,), 1, 2)
        pre = result.mapping.preimage_mask(principal_ultrafilter(2, 1).bits)
        assert pre == 0
        assert result.certified


class TestFunctor:
    def test_identity_laws_on_sierpinski(self, sier):
        ident = identity_map(sier)
        report = functor_check(ident, ident)
        assert report.ok

    def test_swap_then_constant(self, disc2):
        one = discrete_space(1)
        swap = ContinuousMap(disc2, disc2, (1, 0)).certify()
        collapse = ContinuousMap(disc2, one, (0, 0)).certify()
        assert functor_check(swap, collapse).ok

    def test_inclusion_then_collapse(self, sier):
        point = subspace(sier, PointSet.singleton(2, 1))
        one = discrete_space(1)
        incl = ContinuousMap(point.space, sier, (1,)).certify()
        collapse = ContinuousMap(sier, one, (0, 0)).certify()
        assert functor_check(incl, collapse).ok

    def test_uncertified_rejected(self, sier):
        raw = ContinuousMap(sier, sier, (0, 0))
        with pytest.raises(PreconditionError):
            puf_functor_map(raw)

    def test_upclosed_helper(self):
        assert is_upclosed(2, 0b1000)  # just the top code {0,1}
        assert not is_upclosed(2, 0b0010)  # {0} without {0,1}
