import pytest

from kummer.catalog import catalog
from kummer.exactalg import IntPolynomial
from kummer.repring import quotient_poincare
from kummer.strata import (
    MalformedLedger,
    assemble_from_ledger,
    assemble_resolution_poincare,
    open_stratum_virtual,
    stratify,
    stratum_closure_quotient_poincare,
)
from kummer.toruslat import orbifold_euler

A = IntPolynomial([1, 4, 6, 4, 1])          # abelian surface
B = IntPolynomial([1, 0, 6, 0, 1])          # surface modulo -1
C = IntPolynomial([1, 0, 7, 4, 8, 4, 7, 0, 1])
F211 = IntPolynomial([1, 0, 1])
F22 = IntPolynomial([1, 0, 2, 0, 1])
F31 = IntPolynomial([1, 0, 1, 0, 1])
F4 = IntPolynomial([1, 0, 1, 0, 2, 0, 1])


def poly(*coeffs):
    return IntPolynomial(coeffs)


class TestEllipticCurveCases:
    def test_z6_resolution(self, reports):
        report = reports["z6_sl2"]
        assert report.quotient == poly(1, 0, 4, 0, 1)
        assert report.resolution == poly(1, 0, 22, 0, 1)

    def test_z6_exceptional_decomposition(self, reports):
        report = reports["z6_sl2"]
        contributions = {
            s.order: (s.orbit_count, s.fiber_plain[2])
            for s in report.strata if s.rank == 0
        }
        assert contributions == {2: (5, 1), 3: (4, 2), 6: (1, 5)}
        total = sum(n * c for n, c in contributions.values())
        assert total == 18
        assert report.resolution == report.quotient + poly(0, 0, total)

    def test_other_elliptic_quotients_are_k3(self):
        for name in ["z2_sl2", "z3_sl2", "z4_sl2"]:
            report = stratify(catalog(name))
            assert report.resolution == poly(1, 0, 22, 0, 1)
            assert report.resolution(-1) == orbifold_euler(catalog(name)) == 24


class TestOctahedral:
    def test_resolution(self, reports):
        assert reports["octahedral_s4_sl3"].resolution == poly(1, 0, 20, 14, 20, 0, 1)

    def test_open_stratum(self, reports):
        report = reports["octahedral_s4_sl3"]
        (s3,) = report.stratum_by(order=1)
        expected = poly(1, 0, 1, 4, 1, 0, 1) - (
            15 * (poly(1, 0, 1) - 4) + 20
        )
        assert s3.x_poly == expected

    def test_curve_strata(self, reports):
        report = reports["octahedral_s4_sl3"]
        s12 = sum((s.x_poly for s in report.stratum_by(order=2, rank=1)),
                  IntPolynomial.zero())
        assert s12 == 10 * (poly(1, 0, 1) * poly(1, 0, 1) - 4 * poly(1, 0, 1))
        (z3,) = report.stratum_by(order=3, rank=1)
        assert z3.x_poly == poly(1, 0, 2, 2, 1) - 4 * poly(1, 0, 1)
        (z4,) = report.stratum_by(order=4, rank=1)
        assert z4.x_poly == 4 * (poly(1, 0, 3, 2, 2) - 4 * poly(1, 0, 2))

    def test_point_strata(self, reports):
        report = reports["octahedral_s4_sl3"]
        (klein,) = report.stratum_by(order=4, rank=0)
        (d8,) = report.stratum_by(order=8, rank=0)
        (full,) = report.stratum_by(order=24, rank=0)
        s0 = klein.x_poly + d8.x_poly + full.x_poly
        assert s0 == 4 * poly(1, 0, 3) + (12 + 4) * poly(1, 0, 4)

    def test_component_orbit_counts(self, reports):
        report = reports["octahedral_s4_sl3"]
        curve_counts = sorted(
            s.orbit_count for s in report.strata if s.rank == 1
        )
        assert curve_counts == [1, 4, 4, 6]
        point_counts = sorted(
            s.orbit_count for s in report.strata if s.rank == 0
        )
        assert point_counts == [4, 4, 12]


class TestGeneralizedKummer:
    def test_resolution(self, reports):
        expected = poly(1, 0, 7, 8, 51, 56, 458, 56, 51, 8, 7, 0, 1)
        assert reports["s4_standard_d2"].resolution == expected

    def test_quotient_strata(self, reports):
        report = reports["s4_standard_d2"]
        (pairs,) = report.stratum_by(order=2)          # one two-cycle
        (double,) = report.stratum_by(order=4)         # two two-cycles
        (triple,) = report.stratum_by(order=6)         # one three-cycle
        (full,) = report.stratum_by(order=24)
        assert full.y_poly == poly(256)
        assert triple.y_poly == A - 256
        assert double.y_poly == 16 * B - 256
        assert pairs.y_poly == A * (B - 16) - (A - 256)

    def test_resolution_strata(self, reports):
        report = reports["s4_standard_d2"]
        (pairs,) = report.stratum_by(order=2)
        (double,) = report.stratum_by(order=4)
        (triple,) = report.stratum_by(order=6)
        (full,) = report.stratum_by(order=24)
        assert full.x_poly == 256 * F4
        assert triple.x_poly == (A - 256) * F31
        assert double.x_poly == 16 * C - 256 * F31
        assert pairs.x_poly == (A * (B - 16) - (A - 256)) * F211

    def test_closure_quotients(self, reports):
        report = reports["s4_standard_d2"]
        (double,) = report.stratum_by(order=4)
        closure = stratum_closure_quotient_poincare(double.orbits[0], d=2)
        assert closure == B
        (pairs,) = report.stratum_by(order=2)
        closure = stratum_closure_quotient_poincare(pairs.orbits[0], d=2)
        assert closure == A * B


class TestDihedralFourfolds:
    def test_d6_integral_model(self, reports):
        expected = poly(1, 0, 7, 8, 108, 8, 7, 0, 1)
        assert reports["s3_standard_d2"].resolution == expected

    def test_d8_integral_model(self, reports):
        report = reports["d8_b2"]
        assert report.quotient == poly(1, 0, 6, 0, 22, 0, 6, 0, 1)
        assert report.resolution == poly(1, 0, 23, 0, 276, 0, 23, 0, 1)

    def test_d8_strata_shape(self, reports):
        report = reports["d8_b2"]
        surfaces = report.stratum_by(order=2)
        assert sorted(s.orbit_count for s in surfaces) == [1, 16]
        for s in surfaces:
            assert s.x_poly == s.orbit_count * (B - 16) * poly(1, 0, 1)
        (klein,) = report.stratum_by(order=4)
        assert klein.orbit_count == 120
        assert klein.x_poly == 120 * poly(1, 0, 2, 0, 1)
        (full,) = report.stratum_by(order=8)
        assert full.x_poly == 16 * poly(1, 0, 2, 0, 2)


class TestGlobalInvariants:
    def test_partition_of_quotient(self, actions, reports):
        for name, report in reports.items():
            total = sum((open_stratum_virtual(s) for s in report.strata),
                        IntPolynomial.zero())
            assert total == report.y_total == quotient_poincare(actions[name])
            weighted = sum(
                (open_stratum_virtual(s, fiber_weighted=True)
                 for s in report.strata),
                IntPolynomial.zero(),
            )
            assert weighted == report.resolution

    def test_euler_cross_check(self, actions, reports):
        for name, report in reports.items():
            assert report.resolution(-1) == orbifold_euler(actions[name])

    def test_shape_of_assembled_polynomials(self, actions, reports):
        for name, report in reports.items():
            action = actions[name]
            p = report.resolution
            assert p[0] == 1
            assert p[1] == 0
            assert p.degree == 2 * action.r * action.d
            assert p.is_palindromic()

    def test_closure_poset_has_minimum(self, reports):
        report = reports["octahedral_s4_sl3"]
        # every orbit node lies in the closure of the open stratum
        open_index = next(
            i for i, s in enumerate(report.strata) if s.order == 1
        )
        targets = {edge[1] for edge in report.closure_edges
                   if edge[0] == (open_index, 0)}
        nodes = {
            (si, oi)
            for si, s in enumerate(report.strata)
            for oi in range(len(s.orbits))
            if s.order != 1
        }
        assert targets == nodes

    def test_trivial_action_single_stratum(self):
        from kummer.groupcore import generate_group
        from kummer.exactalg import identity_matrix

        triv = generate_group([identity_matrix(2)], d=1)
        report = stratify(triv)
        assert len(report.strata) == 1
        assert report.resolution == report.quotient == poly(1, 2, 1) ** 2


class TestLedger:
    def test_empty_ledger(self):
        assert assemble_from_ledger({"entries": []}).value == IntPolynomial.zero()

    def test_d6_symbolic_formula(self):
        ledger = {
            "parameter": "m",
            "substitution": {"m": 1},
            "entries": [
                {"base": list(quotient_poincare(catalog("s3_standard_d2")).coeffs),
                 "subtract": [{"multiplicity": {"param": 1},
                               "poly": list(A.coeffs)}]},
                {"base": {"param": list(A.coeffs)},
                 "fiber": [1, 0, 1],
                 "subtract": [{"multiplicity": 81, "poly": [1]}]},
                {"base": [81], "fiber": [1, 0, 1, 0, 1]},
            ],
        }
        result = assemble_from_ledger(ledger)
        assert result.symbolic.const == poly(1, 0, 6, 4, 102, 4, 6, 0, 1)
        assert result.symbolic.linear == poly(0, 0, 1, 4, 6, 4, 1)
        assert result.value == poly(1, 0, 7, 8, 108, 8, 7, 0, 1)

    def test_d8_pieces(self):
        ledger = {
            "entries": [
                {"base": [1, 0, 6, 0, 22, 0, 6, 0, 1],
                 "subtract": [
                     {"multiplicity": 17, "poly": [-15, 0, 6, 0, 1]},
                     {"multiplicity": 136, "poly": [1]},
                 ]},
                {"base": [17, 0, 102, 0, 17],
                 "fiber": [1, 0, 1],
                 "subtract": [{"multiplicity": 272, "poly": [1]}]},
                {"base": [120], "fiber": [1, 0, 2, 0, 1]},
                {"base": [16], "fiber": [1, 0, 2, 0, 2]},
            ],
        }
        result = assemble_from_ledger(ledger)
        assert result.value == poly(1, 0, 23, 0, 276, 0, 23, 0, 1)

    def test_molien_base(self):
        ledger = {
            "entries": [
                {"base": {"molien": {"generators": [[[0, -1], [1, 1]]], "d": 1}}},
            ],
        }
        assert assemble_from_ledger(ledger).value == poly(1, 0, 4, 0, 1)

    def test_malformed(self):
        for doc in [
            {},
            {"entries": [{"fiber": [1]}]},
            {"entries": [{"base": [1], "subtract": [{"multiplicity": 2}]}]},
            {"entries": [{"base": {"param": [1]}}]},   # undeclared parameter
            {"entries": [{"base": {"molien": {"d": 1}}}]},
        ]:
            with pytest.raises(MalformedLedger):
                assemble_from_ledger(doc)

    def test_assemble_resolution_helper(self):
        assert assemble_resolution_poincare(catalog("z6_sl2")) == poly(1, 0, 22, 0, 1)
