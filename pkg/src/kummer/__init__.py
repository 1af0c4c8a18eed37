"""Exact cohomology of torus quotients by finite integral group actions.

The package computes, with exact integer arithmetic throughout:

* fixed loci of finite groups of integer matrices acting on a power of
  an abelian variety, as canonical rational translates of subtori;
* the stratification of the quotient by isotropy classes;
* Poincaré polynomials of the quotient (Molien averages) and, under the
  locally-product and McKay hypotheses, of a crepant resolution;
* obstruction checks for symplectic resolutions from analytic
  eigenvalue data alone.
"""

from .exactalg import (
    ExponentMultiset,
    IntPolynomial,
    SmithDecomposition,
    age,
    char_poly,
    cyclotomic_factor,
    cyclotomic_polynomial,
    exponent_multiset,
    hermite_normal_form,
    smith_normal_form,
)
from .groupcore import (
    AbstractGroup,
    IntegralAction,
    element_conjugacy_classes,
    generate_group,
    subgroup_class_poset,
    weyl_action_on_classes,
)
from .catalog import (
    catalog,
    list_catalog,
    natural_sn,
    quotient_sn,
    standard_sn,
    wreath,
)
from .repring import (
    ClassFunction,
    EquivariantPolynomial,
    equivariant_product_invariants,
    mu0,
    quotient_poincare,
    torus_equivariant_polynomial,
)
from .toruslat import (
    AffineSubtorus,
    FixLocus,
    component_count,
    fix_locus,
    generic_isotropy,
    intersect,
    isolated_count,
    orbifold_euler,
    subtorus_contains,
    torsion_oracle,
)
from .mckay import (
    FiberPolynomial,
    fiber_poincare,
    fiber_poincare_equivariant,
    partition_fiber,
    young_fiber,
)
from .strata import (
    ComponentOrbit,
    StrataReport,
    Stratum,
    assemble_from_ledger,
    assemble_resolution_poincare,
    open_stratum_virtual,
    stratify,
    stratum_closure_quotient_poincare,
)
from .symcheck import (
    AnalyticEigenData,
    CountingConstraint,
    bls_classify,
    codim2_purity_report,
    counting_feasibility,
    lefschetz_count,
    symplectic_reflection_generated,
)

__version__ = "0.1.0"
