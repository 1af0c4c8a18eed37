"""The classical story in rank two: K3 surfaces from products of elliptic curves.

Each finite cyclic subgroup of SL(2,Z) acts on the square of an elliptic
curve.  The quotient is a singular surface whose minimal resolution is a
K3: the script walks through the fixed points, the isotropy strata, the
exceptional curve count, and two independent confirmations (the torsion
brute-force oracle and the orbifold Euler number).
"""

from kummer import (
    catalog,
    fiber_poincare,
    isolated_count,
    orbifold_euler,
    quotient_poincare,
    stratify,
    torsion_oracle,
)

for name in ["z2_sl2", "z3_sl2", "z4_sl2", "z6_sl2"]:
    action = catalog(name)
    print(f"== {name}: cyclic group of order {action.order} on a torus square")

    oracle = torsion_oracle(action, 6)
    for g in action.class_representatives():
        if g == action.identity:
            continue
        count = isolated_count(action, g)
        print(f"   element of order {action.element_order(g)}: "
              f"{count} fixed points (6-torsion oracle sees {oracle[g]})")

    report = stratify(action)
    print(f"   quotient polynomial   : {report.quotient}")
    for s in report.strata:
        if s.rank == 0:
            chains = fiber_poincare(action.restrict(s.isotropy)).plain
            print(f"   {s.orbit_count} singular points with isotropy of order "
                  f"{s.order}, each resolved with fiber {chains}")
    print(f"   resolution polynomial : {report.resolution}")
    assert report.resolution(-1) == orbifold_euler(action) == 24
    print("   Euler number 24 confirmed by the commuting-pair average")
    print()

print("every case resolves to the K3 polynomial 1 + 22*t^2 + t^4")
