import pytest

from topoforge.category import (
    ContinuousMap,
    check_continuous,
    constant_map,
    continuous_point_functions,
    count_continuous_maps,
    coslice_commute,
    equalizer,
    find_homeomorphism,
    identity_map,
    initial_terminal,
    is_closed_map,
    is_epi,
    is_mono,
    product,
    pullback,
)
from topoforge.errors import InputError, PreconditionError
from topoforge.space import PointSet, discrete_space, indiscrete_space, subspace


def count_upsets_of_product_preorder(a, b):
    """Oracle for the product open count via the product of specialization
    preorders: opens of a finite space are exactly the up-sets."""
    mins_a = a.minimal_neighborhoods
    mins_b = b.minimal_neighborhoods
    n = a.n * b.n

    def below(p, q):  # p in the minimal neighborhood of q, componentwise
        pa, pb = divmod(p, b.n)
        qa, qb = divmod(q, b.n)
        return bool(mins_a[qa] >> pa & 1 and mins_b[qb] >> pb & 1)

    count = 0
    for fam in range(1 << n):
        ok = True
        for q in range(n):
            if not fam >> q & 1:
                continue
            # an open set containing q must contain its minimal neighborhood
            for p in range(n):
                if below(p, q) and not fam >> p & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestContinuity:
    def test_identity(self, sier):
        assert check_continuous(identity_map(sier)).ok

    def test_identity_point_map_to_discrete_fails(self, sier, disc2):
        mapping = ContinuousMap(sier, disc2, (0, 1))
        report = check_continuous(mapping)
        assert not report.ok
        assert report.offending_open == 0b10  # the open {1} pulls back to {1}, not open

    def test_constant_maps(self, sier, ind2):
        for value in range(2):
            assert check_continuous(ContinuousMap(sier, ind2, (value, value))).ok

    def test_certify_raises(self, sier, disc2):
        with pytest.raises(AssertionError):
            ContinuousMap(sier, disc2, (0, 1)).certify()

    def test_composition_keeps_certificate(self, sier):
        one = indiscrete_space(1)
        f = identity_map(sier)
        g = constant_map(sier, one, 0)
        assert f.then(g).certified

    def test_out_of_range_values(self, sier):
        with pytest.raises(InputError):
            ContinuousMap(sier, sier, (0, 2))


class TestMonoEpi:
    def test_inclusion_is_mono_not_epi(self, sier):
        point = subspace(sier, PointSet.singleton(2, 1))
        incl = ContinuousMap(point.space, sier, (1,)).certify()
        assert is_mono(incl)
        assert not is_epi(incl)

    def test_constant_to_point_is_epi(self, disc2):
        one = indiscrete_space(1)
        mapping = constant_map(disc2, one, 0)
        assert is_epi(mapping)
        assert not is_mono(mapping)

    def test_swap_is_iso(self, disc2):
        swap = ContinuousMap(disc2, disc2, (1, 0)).certify()
        assert is_mono(swap) and is_epi(swap)

    def test_requires_certificate(self, sier):
        with pytest.raises(PreconditionError):
            is_mono(ContinuousMap(sier, sier, (0, 0)))

    def test_routes_agree_everywhere(self, spaces_up_to_3):
        small = [sp for sp in spaces_up_to_3 if sp.n <= 2]
        for dom in small:
            for cod in small:
                for values in continuous_point_functions(dom, cod):
                    mapping = ContinuousMap(dom, cod, values, certified=True)
                    is_mono(mapping)  # raises on route disagreement
                    is_epi(mapping)


class TestInitialTerminal:
    def test_unique_maps(self, sier):
        initial, terminal = initial_terminal()
        assert count_continuous_maps(initial, sier) == 1
        assert count_continuous_maps(sier, terminal) == 1

    def test_reverse_direction_not_unique(self, sier):
        _, terminal = initial_terminal()
        assert count_continuous_maps(terminal, sier) == 2


class TestProduct:
    def test_sierpinski_squared_has_six_opens(self, sier):
        prod = product(sier, sier)
        assert prod.space.n == 4
        assert len(prod.space.opens) == 6
        assert len(prod.space.opens) == count_upsets_of_product_preorder(sier, sier)

    def test_unit_law(self, sier):
        one = indiscrete_space(1)
        prod = product(sier, one)
        assert find_homeomorphism(prod.space, sier) is not None

    def test_discrete_times_discrete(self, disc2):
        prod = product(disc2, disc2)
        assert prod.space == discrete_space(4)

    def test_projections_certified_and_ump(self, sier, ind2):
        prod = product(sier, ind2)
        assert prod.proj1.certified and prod.proj2.certified
        assert prod.ump.unique
        assert len(prod.space.opens) == count_upsets_of_product_preorder(sier, ind2)


class TestEqualizer:
    def test_subspace_inclusion_example(self, sier, ind2):
        # indicator of {1} versus the constant 1 into the two-point
        # indiscrete space equalize exactly on {1}
        f = constant_map(sier, ind2, 1)
        g = ContinuousMap(sier, ind2, (0, 1)).certify()
        eq = equalizer(f, g)
        assert eq.carrier == (1,)
        assert eq.space == subspace(sier, PointSet.singleton(2, 1)).space
        assert eq.ump.unique

    def test_equal_maps_give_whole_domain(self, sier):
        f = identity_map(sier)
        eq = equalizer(f, f)
        assert eq.carrier == (0, 1)
        assert find_homeomorphism(eq.space, sier) is not None

    def test_distinct_constants_give_empty(self, disc2):
        f = constant_map(disc2, disc2, 0)
        g = constant_map(disc2, disc2, 1)
        eq = equalizer(f, g)
        assert eq.carrier == ()
        assert eq.space.n == 0

    def test_parallel_required(self, sier, disc2):
        with pytest.raises(InputError):
            equalizer(identity_map(sier), identity_map(disc2))


class TestPullback:
    def test_of_identities_is_diagonal(self, sier):
        pb = pullback(identity_map(sier), identity_map(sier))
        assert pb.pairs == ((0, 0), (1, 1))
        assert find_homeomorphism(pb.space, sier) is not None

    def test_fiber_over_a_point(self, sier):
        one = indiscrete_space(1)
        pick = ContinuousMap(one, sier, (1,)).certify()
        pb = pullback(identity_map(sier), pick)
        assert pb.pairs == ((1, 0),)

    def test_carrier_is_agreement_set(self, spaces_up_to_3):
        small = [sp for sp in spaces_up_to_3 if sp.n <= 2][:4]
        for a in small:
            for c in small:
                fs = continuous_point_functions(a, c)
                if not fs:
                    continue
                f = ContinuousMap(a, c, fs[0], certified=True)
                g = ContinuousMap(a, c, fs[-1], certified=True)
                pb = pullback(f, g)
                expected = tuple(
                    (x, y)
                    for x in range(a.n)
                    for y in range(a.n)
                    if f.values[x] == g.values[y]
                )
                assert pb.pairs == expected

    def test_codomain_mismatch(self, sier, disc2):
        with pytest.raises(InputError):
            pullback(identity_map(sier), identity_map(disc2))


class TestCosliceAndClosedMaps:
    def test_identity_triangle(self, sier):
        from topoforge.assignments import SetAssignment, companion_continuous_map
        from topoforge.puf import build_puf_space

        n_assign = SetAssignment(sier, 2, (0b01, 0b11))
        f = companion_continuous_map(n_assign)
        ident = identity_map(build_puf_space(2).space)
        assert coslice_commute(f, f, ident)

    def test_trace_triangle(self, sier):
        from topoforge.assignments import SetAssignment, companion_continuous_map
        from topoforge.puf import trace_map

        n_assign = SetAssignment(sier, 2, (0b01, 0b11))
        f = companion_continuous_map(n_assign)
        tr = trace_map(2, PointSet.from_indices(2, [1]))
        g = f.then(tr.mapping)
        assert coslice_commute(f, g, tr.mapping)

    def test_closed_map_detection(self, sier):
        one = indiscrete_space(1)
        assert is_closed_map(constant_map(sier, one, 0))
        # embedding the open point into the two-point indiscrete space is
        # not closed: the image of the closed singleton is not closed
        emb = ContinuousMap(indiscrete_space(1), sier, (0,)).certify()
        assert not is_closed_map(emb)
