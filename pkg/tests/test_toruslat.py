from fractions import Fraction

import pytest

from kummer.catalog import catalog, standard_rep_matrix, standard_sn
from kummer.exactalg import identity_matrix, mat_det, mat_sub
from kummer.groupcore import generate_group
from kummer.mckay import partitions
from kummer.toruslat import (
    AffineSubtorus,
    EnumerationTooLarge,
    NotIsolated,
    component_count,
    fix_locus,
    generic_isotropy,
    intersect,
    isolated_count,
    orbifold_euler,
    subtorus_contains,
    torsion_oracle,
)


@pytest.fixture(scope="module")
def octa():
    return catalog("octahedral_s4_sl3")


@pytest.fixture(scope="module")
def z6():
    return catalog("z6_sl2")


def cycle_type_rep(partition, n):
    """A permutation of 0..n-1 whose cycles have the given lengths."""
    perm = []
    start = 0
    for part in partition:
        block = list(range(start + 1, start + part)) + [start]
        perm.extend(block)
        start += part
    return tuple(perm)


class TestFixLocus:
    def test_octahedral_sign_pair(self, octa):
        g = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
        locus = fix_locus(octa, octa.subgroup_closure([g]))
        assert len(locus) == 16
        assert locus.dimension == 1
        assert all(c.complex_dim(octa.d) == 1 for c in locus)

    def test_whole_symmetric_group(self):
        s4 = catalog("s4_standard_d2")
        locus = fix_locus(s4, s4.elements)
        assert len(locus) == 256
        assert locus.dimension == 0

    def test_trivial_subgroup(self, octa):
        locus = fix_locus(octa, [octa.identity])
        assert len(locus) == 1
        assert locus.components[0].rank == 3


class TestCounts:
    def test_z6_isolated_counts(self, z6):
        by_order = {}
        for g in z6.elements:
            if g == z6.identity:
                continue
            by_order.setdefault(z6.element_order(g), set()).add(isolated_count(z6, g))
        assert by_order == {6: {1}, 3: {9}, 2: {16}}

    def test_double_transposition_components(self):
        s4 = catalog("s4_standard_d2")
        sigma = standard_rep_matrix((1, 0, 3, 2), 4)
        assert component_count(s4, sigma) == 16
        locus = fix_locus(s4, s4.subgroup_closure([sigma]))
        assert len(locus) == 16
        assert locus.dimension == 1  # sixteen abelian-surface copies

    def test_identity_single_component(self, octa):
        assert component_count(octa, octa.identity) == 1
        with pytest.raises(NotIsolated):
            isolated_count(octa, octa.identity)

    def test_component_count_agrees_when_isolated(self, z6):
        for g in z6.elements:
            if g == z6.identity:
                continue
            assert component_count(z6, g) == isolated_count(z6, g)

    def test_component_count_matches_materialized_locus(self, octa):
        for g in octa.class_representatives():
            locus = fix_locus(octa, octa.subgroup_closure([g]))
            assert len(locus) == component_count(octa, g)

    def test_component_counts_match_partition_gcd(self):
        # the number of components of a cycle-type fixed locus is gcd^4
        from math import gcd
        from functools import reduce

        s4 = catalog("s4_standard_d2")
        for partition in partitions(4):
            sigma = standard_rep_matrix(cycle_type_rep(partition, 4), 4)
            expected = reduce(gcd, partition) ** 4
            assert component_count(s4, sigma) == expected

    def test_dimension_matches_partition_length(self):
        s4 = catalog("s4_standard_d2")
        for partition in partitions(4):
            sigma = standard_rep_matrix(cycle_type_rep(partition, 4), 4)
            locus = fix_locus(s4, s4.subgroup_closure([sigma]))
            assert locus.components[0].complex_dim(2) == 2 * (len(partition) - 1)


class TestIncidence:
    def test_diagonal_in_plane(self):
        diag = AffineSubtorus.from_lattice_and_translate(
            [(1, 1, 1)], [(0, 0, 0), (0, 0, 0)], 3, 2)
        plane = AffineSubtorus.from_lattice_and_translate(
            [(1, 1, 0), (0, 0, 1)], [(0, 0, 0), (0, 0, 0)], 3, 2)
        assert subtorus_contains(diag, plane)
        assert not subtorus_contains(plane, diag)

    def test_parallel_translates_disjoint(self):
        half = Fraction(1, 2)
        a = AffineSubtorus.from_lattice_and_translate(
            [(1, 0)], [(0, 0), (0, 0)], 2, 2)
        b = AffineSubtorus.from_lattice_and_translate(
            [(1, 0)], [(0, half), (0, 0)], 2, 2)
        assert a != b
        assert intersect(a, b) == ()

    def test_d8_transversal_intersection_counts(self):
        d8 = catalog("d8_b2")
        a = ((1, 0), (0, -1))
        b = ((0, 1), (1, 0))
        fix_a = fix_locus(d8, d8.subgroup_closure([a]))
        fix_b = fix_locus(d8, d8.subgroup_closure([b]))
        assert len(fix_a) == 16 and len(fix_b) == 1
        points = set()
        for ca in fix_a:
            for cb in fix_b:
                for p in intersect(ca, cb):
                    assert p.rank == 0
                    points.add(p)
        assert len(points) == 16  # the fully fixed 2-torsion points

    def test_conjugation_equivariance(self, octa):
        g = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
        h = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
        sub = octa.subgroup_closure([g])
        conj = octa.conjugate_subgroup(sub, h)
        direct = {c.key for c in fix_locus(octa, conj)}
        moved = {c.apply_matrix(h).key for c in fix_locus(octa, sub)}
        assert direct == moved


class TestGenericIsotropy:
    def test_whole_torus_trivial(self, octa):
        whole = AffineSubtorus.whole_torus(3, 2)
        assert generic_isotropy(octa, whole) == frozenset({octa.identity})

    def test_origin_has_full_isotropy(self, octa):
        origin = AffineSubtorus.from_point([(0, 0, 0), (0, 0, 0)], 3, 2)
        assert len(generic_isotropy(octa, origin)) == 24

    def test_diagonal_is_three_fold(self, octa):
        diag = AffineSubtorus.from_lattice_and_translate(
            [(1, 1, 1)], [(0, 0, 0), (0, 0, 0)], 3, 2)
        iso = generic_isotropy(octa, diag)
        assert len(iso) == 3


class TestTorsionOracle:
    def test_z6_small_levels(self, z6):
        order3 = ((-1, -1), (1, 0))
        assert torsion_oracle(z6, 3)[order3] == 9
        minus = ((-1, 0), (0, -1))
        assert torsion_oracle(z6, 2)[minus] == 16

    def test_identity_counts_everything(self, z6):
        for n in (1, 2, 3):
            assert torsion_oracle(z6, n)[z6.identity] == n ** (2 * z6.d * z6.r)

    def test_budget(self, z6):
        with pytest.raises(EnumerationTooLarge):
            torsion_oracle(z6, 100, budget=100)

    def test_matches_isolated_count_at_determinant_level(self):
        for name in ["z2_sl2", "z3_sl2", "z4_sl2", "z6_sl2", "d8_b2"]:
            action = catalog(name)
            ident = identity_matrix(action.r)
            oracles = {}
            for g in action.elements:
                det = mat_det(mat_sub(ident, g))
                if det == 0:
                    continue
                n = abs(det)
                if n not in oracles:
                    oracles[n] = torsion_oracle(action, n)
                assert oracles[n][g] == isolated_count(action, g)


class TestOrbifoldEuler:
    def test_z6_is_k3(self, z6):
        assert orbifold_euler(z6) == 24

    def test_trivial_group_torus(self):
        triv = generate_group([identity_matrix(2)], d=1)
        assert orbifold_euler(triv) == 0

    def test_octahedral(self, octa):
        assert orbifold_euler(octa) == 28
