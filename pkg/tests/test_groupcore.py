import pytest

from kummer.catalog import (
    binary_tetrahedral_group,
    catalog,
    natural_rep_matrix,
    natural_sn,
    quotient_rep_matrix,
    quotient_sn,
    standard_rep_matrix,
    standard_sn,
    wreath,
)
from kummer.exactalg import char_poly, cyclotomic_factor, identity_matrix
from kummer.groupcore import (
    NonInvertible,
    NotFiniteWithinCap,
    NotNormalizer,
    SpecialityViolation,
    element_conjugacy_classes,
    generate_group,
    subgroup_class_poset,
    weyl_action_on_classes,
)

import itertools


class TestGenerateGroup:
    def test_cyclic_closures(self):
        assert generate_group([((0, -1), (1, 1))]).order == 6
        assert generate_group([((0, -1), (1, 0))]).order == 4
        assert generate_group([((0, -1), (1, -1))]).order == 3
        assert generate_group([identity_matrix(2)]).order == 1

    def test_octahedral_closure(self):
        assert catalog("octahedral_s4_sl3").order == 24

    def test_non_invertible_rejected(self):
        with pytest.raises(NonInvertible):
            generate_group([((2, 0), (0, 1))])

    def test_infinite_group_hits_cap(self):
        with pytest.raises(NotFiniteWithinCap):
            generate_group([((1, 1), (0, 1))], cap=500)

    def test_speciality(self):
        with pytest.raises(SpecialityViolation):
            generate_group([((0, 1), (1, 0))], special=True)
        assert catalog("z6_sl2").special

    def test_restrict(self):
        octa = catalog("octahedral_s4_sl3")
        sub = octa.subgroup_closure([((0, 0, 1), (1, 0, 0), (0, 1, 0))])
        assert octa.restrict(sub).order == 3


class TestConjugacyClasses:
    def test_octahedral_five_classes(self):
        assert len(element_conjugacy_classes(catalog("octahedral_s4_sl3"))) == 5

    def test_abelian_singletons(self):
        z6 = catalog("z6_sl2")
        classes = element_conjugacy_classes(z6)
        assert len(classes) == 6
        assert all(len(c) == 1 for c in classes)

    def test_d8_five_classes(self):
        assert len(element_conjugacy_classes(catalog("d8_b2"))) == 5

    def test_class_equation(self):
        for name in ["octahedral_s4_sl3", "d8_b2", "s4_standard_d2"]:
            g = catalog(name)
            assert sum(len(c) for c in g.conjugacy_classes()) == g.order
            assert all(g.order % len(c) == 0 for c in g.conjugacy_classes())


class TestSubgroupPoset:
    def test_s3_four_classes(self):
        poset = subgroup_class_poset(standard_sn(3, d=2))
        assert [c.order for c in poset.classes] == [1, 2, 3, 6]
        assert [c.size for c in poset.classes] == [1, 3, 1, 1]

    def test_z6_divisor_classes(self):
        poset = subgroup_class_poset(catalog("z6_sl2"))
        assert [c.order for c in poset.classes] == [1, 2, 3, 6]
        assert all(c.size == 1 for c in poset.classes)

    def test_binary_tetrahedral_lattice(self):
        group = binary_tetrahedral_group()
        poset = subgroup_class_poset(group)
        profile = [(c.order, c.size) for c in poset.classes]
        assert profile == [(1, 1), (2, 1), (3, 4), (4, 3), (6, 4), (8, 1), (24, 1)]
        by_order = {c.order: i for i, c in enumerate(poset.classes)}
        leq = poset.leq
        # chains: Z3 < Z6 < T and Z4 < Q8; the involution is central, inside
        # every subgroup of order not equal to 3
        assert leq[by_order[3]][by_order[6]]
        assert leq[by_order[6]][by_order[24]]
        assert leq[by_order[4]][by_order[8]]
        assert leq[by_order[2]][by_order[4]]
        assert leq[by_order[2]][by_order[6]]
        assert not leq[by_order[2]][by_order[3]]
        assert not leq[by_order[8]][by_order[6]]

    def test_orbit_stabilizer_and_extremes(self):
        for name in ["octahedral_s4_sl3", "d8_b2"]:
            g = catalog(name)
            poset = subgroup_class_poset(g)
            for c in poset.classes:
                assert c.size * len(c.normalizer) == g.order
            assert poset.classes[poset.minimum()].order == 1
            assert poset.classes[poset.maximum()].order == g.order
            n = len(poset.classes)
            for i in range(n):
                assert poset.leq[poset.minimum()][i]
                assert poset.leq[i][poset.maximum()]


class TestWeylAction:
    def test_z4_in_octahedral(self):
        octa = catalog("octahedral_s4_sl3")
        z4 = octa.subgroup_closure([((0, -1, 0), (1, 0, 0), (0, 0, 1))])
        _, reps, perms = weyl_action_on_classes(octa, z4)
        assert len(perms) == 2
        orders = [octa.element_order(r) for r in reps]
        assert orders == [1, 2, 4, 4]
        assert perms[0] == (0, 1, 2, 3)
        assert perms[1] == (0, 1, 3, 2)  # swaps the two order-4 classes

    def test_z3_in_octahedral(self):
        octa = catalog("octahedral_s4_sl3")
        z3 = octa.subgroup_closure([((0, 0, 1), (1, 0, 0), (0, 1, 0))])
        _, _, perms = weyl_action_on_classes(octa, z3)
        assert perms[1] == (0, 2, 1)

    def test_self_normalizing_trivial_action(self):
        s3 = standard_sn(3, d=2)
        transposition = standard_rep_matrix((1, 0, 2), 3)
        sub = s3.subgroup_closure([transposition])
        cosets, _, perms = weyl_action_on_classes(s3, sub)
        assert len(cosets) == 1
        assert perms == ((0, 1),)

    def test_not_normalizer_rejected(self):
        octa = catalog("octahedral_s4_sl3")
        z3 = octa.subgroup_closure([((0, 0, 1), (1, 0, 0), (0, 1, 0))])
        with pytest.raises(NotNormalizer):
            weyl_action_on_classes(octa, z3, normalizer=octa.elements)


class TestCatalogRepresentations:
    def test_standard_s4(self):
        s4 = standard_sn(4)
        assert s4.r == 3
        assert s4.order == 24
        assert not s4.has_nonzero_fixed_vector()

    def test_natural_has_fixed_vector(self):
        assert natural_sn(3).has_nonzero_fixed_vector()

    def test_wreath_orders(self):
        assert wreath(2, 2).order == 8
        assert wreath(3, 2).order == 48
        with pytest.raises(ValueError):
            wreath(2, 3)

    def test_natural_splits_off_standard(self):
        # trace of the natural action = 1 + trace of the standard action
        for perm in itertools.permutations(range(3)):
            nat = natural_rep_matrix(perm, 3)
            std = standard_rep_matrix(perm, 3)
            assert sum(nat[i][i] for i in range(3)) == 1 + sum(
                std[i][i] for i in range(2)
            )

    def test_standard_quotient_same_characters(self):
        # complexifications agree although the integral actions differ
        for n in (3, 4):
            for perm in itertools.permutations(range(n)):
                assert char_poly(standard_rep_matrix(perm, n)) == char_poly(
                    quotient_rep_matrix(perm, n)
                )
        assert quotient_sn(4).order == 24

    def test_one_dimensional_fixed_sets_in_sl3(self):
        # every non-identity element of the SL(3,Z) catalog entries has
        # eigenvalue 1 with multiplicity exactly one
        for name in ["octahedral_s4_sl3", "d4_sl3"]:
            action = catalog(name)
            for g in action.elements:
                if g == action.identity:
                    continue
                factors = cyclotomic_factor(char_poly(g))
                assert factors.get(1, 0) == 1
