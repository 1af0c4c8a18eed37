"""Analytic-mode fixed-point counting and symplectic-resolution obstructions.

Some actions on a complex torus are specified only through the eigenvalue
exponents of each conjugacy class on the tangent space, with no integral
matrix model.  This module counts fixed points by the holomorphic
Lefschetz formula directly from that cyclotomic data, reports codimension
tables, tests generation by symplectic reflections, matches the action
against the classified list of quotients admitting symplectic
resolutions, and settles the small integer counting identities that such
a resolution would force.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exactalg import euler_phi
from .groupcore import FiniteGroup, IntegralAction
from .mckay import partitions


class ShapeMismatch(ValueError):
    """Eigenvalue data is not of the self-dual shape V + V*."""


class UnboundedSearch(ValueError):
    """A counting search was requested without bounds on the unknowns."""


class AnalyticEigenData:
    """Per-conjugacy-class tangent eigenvalue exponents for a group.

    ``exponents[i]`` is the sorted tuple of Fractions in [0, 1) for the
    i-th conjugacy class of ``group``; its length is the complex torus
    dimension.
    """

    __slots__ = ("group", "exponents")

    def __init__(self, group: FiniteGroup, exponents):
        classes = group.conjugacy_classes()
        exps = tuple(tuple(sorted(Fraction(x) for x in e)) for e in exponents)
        if len(exps) != len(classes):
            raise ValueError("one exponent multiset per conjugacy class")
        dims = {len(e) for e in exps}
        if len(dims) != 1:
            raise ValueError("all classes must act on the same dimension")
        ident_idx = group.class_index(group.identity)
        if any(x != 0 for x in exps[ident_idx]):
            raise ValueError("the identity class must have all-zero exponents")
        for cls, e in zip(classes, exps):
            order = group.element_order(cls[0])
            if any((x * order).denominator != 1 for x in e):
                raise ValueError(
                    f"exponents {e} incompatible with element order {order}"
                )
        self.group = group
        self.exponents = exps

    @classmethod
    def from_integral(cls, action: IntegralAction) -> "AnalyticEigenData":
        """Tangent data of an integral action: d copies of each matrix."""
        from .exactalg import exponent_multiset

        exps = []
        for rep in action.class_representatives():
            e = exponent_multiset(rep)
            exps.append((e * action.d).entries)
        return cls(action, tuple(exps))

    @property
    def dimension(self) -> int:
        return len(self.exponents[0])

    def class_exponents(self, g) -> tuple:
        return self.exponents[self.group.class_index(g)]

    def codimension(self, index: int) -> int:
        """Complex codimension of the fixed locus of the class."""
        e = self.exponents[index]
        return len(e) - sum(1 for x in e if x == 0)

    def is_self_dual(self) -> bool:
        """Whether every class multiset is stable under a -> 1 - a."""
        for e in self.exponents:
            mirrored = tuple(sorted((1 - x) % 1 for x in e))
            if mirrored != e:
                return False
        return True


class LefschetzCount:
    """Outcome of the fixed-point formula for one class."""

    __slots__ = ("isolated", "count", "dimension")

    def __init__(self, isolated, count, dimension):
        self.isolated = isolated
        self.count = count
        self.dimension = dimension

    def __repr__(self):
        if self.isolated:
            return f"LefschetzCount(isolated, {self.count})"
        return f"LefschetzCount(dimension={self.dimension})"


def lefschetz_count(data: AnalyticEigenData, g_or_index) -> LefschetzCount:
    """|det(1 - action on H^1)| of a class, or its fixed dimension.

    The action on first cohomology is the tangent representation plus
    its conjugate, so the count is a product of cyclotomic values
    Phi_k(1) and is computed exactly.

    >>> from .catalog import binary_tetrahedral_eigendata
    >>> group, exps = binary_tetrahedral_eigendata()
    >>> data = AnalyticEigenData(group, exps)
    >>> minus_one = next(g for g in group.elements
    ...                  if g != group.identity and group.element_order(g) == 2)
    >>> lefschetz_count(data, minus_one).count
    256
    """
    if isinstance(g_or_index, int):
        index = g_or_index
    else:
        index = data.group.class_index(g_or_index)
    exps = data.exponents[index]
    zero = sum(1 for x in exps if x == 0)
    if zero:
        return LefschetzCount(False, None, zero)
    doubled = list(exps) + [(1 - x) % 1 for x in exps]
    by_order: dict[int, int] = {}
    for x in doubled:
        by_order[x.denominator] = by_order.get(x.denominator, 0) + 1
    count = 1
    for k, mult in by_order.items():
        phi = euler_phi(k)
        assert mult % phi == 0, "multiset not Galois closed"
        count *= _cyclotomic_at_one(k) ** (mult // phi)
    return LefschetzCount(True, count, 0)


def _cyclotomic_at_one(k: int) -> int:
    """Phi_k(1): p for prime-power k = p^e, else 1 (k > 1)."""
    if k == 1:
        return 0
    n = k
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else 1
        p += 1
    return n  # k prime


class ReflectionReport:
    """Result of the reflection-generation test."""

    __slots__ = ("generated", "reflections", "subgroup")

    def __init__(self, generated, reflections, subgroup):
        self.generated = generated
        self.reflections = reflections
        self.subgroup = subgroup

    def __bool__(self):
        return self.generated


def symplectic_reflection_generated(data: AnalyticEigenData) -> ReflectionReport:
    """Do the codimension-2 classes generate the group?

    Returns the generating reflections, or the proper subgroup they
    generate as a certificate of failure.

    >>> from .catalog import catalog
    >>> d = AnalyticEigenData.from_integral(catalog("s4_standard_d2"))
    >>> bool(symplectic_reflection_generated(d))
    True
    """
    group = data.group
    reflections = []
    for i, cls in enumerate(group.conjugacy_classes()):
        if data.codimension(i) == 2:
            reflections.extend(cls)
    sub = group.subgroup_closure(reflections)
    return ReflectionReport(len(sub) == group.order, tuple(reflections), sub)


class CodimRow:
    __slots__ = ("index", "element_order", "class_size", "codimension", "count")

    def __init__(self, index, element_order, class_size, codimension, count):
        self.index = index
        self.element_order = element_order
        self.class_size = class_size
        self.codimension = codimension
        self.count = count


class PurityReport:
    """Codimension table of all non-identity classes."""

    __slots__ = ("rows", "all_codim_two")

    def __init__(self, rows, all_codim_two):
        self.rows = rows
        self.all_codim_two = all_codim_two


def codim2_purity_report(data: AnalyticEigenData) -> PurityReport:
    """Codimension of every non-identity fixed locus, plus isolated counts.

    The verdict flag only records whether every class is a reflection;
    finer coverage arguments belong to :func:`counting_feasibility`.
    """
    group = data.group
    rows = []
    for i, cls in enumerate(group.conjugacy_classes()):
        if cls[0] == group.identity:
            continue
        codim = data.codimension(i)
        res = lefschetz_count(data, cls[0])
        rows.append(CodimRow(
            i, group.element_order(cls[0]), len(cls), codim,
            res.count if res.isolated else None,
        ))
    return PurityReport(tuple(rows), all(r.codimension == 2 for r in rows))


class BLSResult:
    """Best-effort match against the symplectic-resolution classification."""

    __slots__ = ("kind", "n", "m")

    def __init__(self, kind, n=None, m=None):
        self.kind = kind  # "TypeA" | "TypeBC" | "BinaryTetrahedral" | "NoMatch"
        self.n = n
        self.m = m

    def __repr__(self):
        if self.kind == "TypeA":
            return f"TypeA({self.n})"
        if self.kind == "TypeBC":
            return f"TypeBC({self.n}, {self.m})"
        return self.kind

    def __eq__(self, other):
        return (
            isinstance(other, BLSResult)
            and (self.kind, self.n, self.m) == (other.kind, other.n, other.m)
        )


def bls_classify(data: AnalyticEigenData) -> BLSResult:
    """Fingerprint the action against the groups whose doubled quotient
    admits a symplectic resolution.

    Checks structural invariants only (order, class count, a normal
    abelian subgroup, the unique involution); ``NoMatch`` never asserts
    impossibility.

    >>> from .catalog import catalog
    >>> bls_classify(AnalyticEigenData.from_integral(catalog("s4_standard_d2")))
    TypeA(3)
    >>> bls_classify(AnalyticEigenData.from_integral(catalog("d8_b2")))
    TypeBC(2, 2)
    """
    if not data.is_self_dual():
        raise ShapeMismatch("eigenvalue data is not of shape V + V*")
    if data.dimension % 2:
        raise ShapeMismatch("self-dual data must have even dimension")
    group = data.group
    n = data.dimension // 2
    order = group.order
    classes = len(group.conjugacy_classes())
    # symmetric group on n+1 letters in its standard reflection action
    if order == factorial(n + 1) and classes == sum(1 for _ in partitions(n + 1)):
        if symplectic_reflection_generated(data):
            return BLSResult("TypeA", n=n)
    # wreath-type: normal abelian subgroup of order m^n, quotient order n!
    target = order // factorial(n) if order % factorial(n) == 0 else 0
    if target >= 2:
        m = round(target ** (1.0 / n))
        for cand in (m - 1, m, m + 1):
            if cand >= 2 and cand**n == target:
                if _has_normal_abelian(group, cand**n) and \
                        symplectic_reflection_generated(data):
                    return BLSResult("TypeBC", n=n, m=cand)
    # binary tetrahedral: order 24, n = 2, a unique involution
    if order == 24 and n == 2:
        involutions = [
            g for g in group.elements
            if g != group.identity and group.element_order(g) == 2
        ]
        if len(involutions) == 1:
            return BLSResult("BinaryTetrahedral")
    return BLSResult("NoMatch")


def _has_normal_abelian(group: FiniteGroup, order: int) -> bool:
    for sub in group.all_subgroups():
        if len(sub) != order:
            continue
        if any(
            group._mul(a, b) != group._mul(b, a) for a in sub for b in sub
        ):
            continue
        if group.normalizer(sub) == group._element_set:
            return True
    return False


# ---------------------------------------------------------------------------
# bounded integer counting


class CountingConstraint:
    """Linear identities over bounded non-negative integer unknowns.

    ``unknowns`` maps names to (lower, upper) bounds; ``equations`` is a
    list of (coefficient dict, constant) meaning sum + constant = 0;
    ``conditions`` maps a name to one "power_of_<p>" string or a list of
    them (all must hold).
    """

    __slots__ = ("unknowns", "equations", "conditions")

    def __init__(self, unknowns, equations, conditions=None):
        self.unknowns = dict(unknowns)
        self.equations = [
            ({k: int(v) for k, v in coeffs.items()}, int(const))
            for coeffs, const in equations
        ]
        self.conditions = {
            name: (conds,) if isinstance(conds, str) else tuple(conds)
            for name, conds in (conditions or {}).items()
        }
        for name, bounds in self.unknowns.items():
            if bounds is None:
                raise UnboundedSearch(f"no bounds declared for {name!r}")
            lo, hi = bounds
            if lo > hi:
                raise ValueError(f"empty range for {name!r}")
            if lo < 0:
                raise ValueError("unknowns are non-negative integers")


class FeasibilityResult:
    __slots__ = ("feasible", "solutions", "witness")

    def __init__(self, feasible, solutions, witness):
        self.feasible = feasible
        self.solutions = solutions
        self.witness = witness

    def __bool__(self):
        return self.feasible

    def __repr__(self):
        if self.feasible:
            return f"feasible({list(self.solutions)})"
        return f"infeasible({self.witness})"


def _is_power_of(x: int, p: int) -> bool:
    if x < 1:
        return False
    while x % p == 0:
        x //= p
    return x == 1


def counting_feasibility(constraint: CountingConstraint) -> FeasibilityResult:
    """Exhaustive search for solutions within the declared bounds.

    >>> c = CountingConstraint({"s": (0, 300)}, [({"s": 3}, 192)])
    >>> bool(counting_feasibility(c))
    False
    >>> c = CountingConstraint({"a": (1, 256), "b": (1, 256)},
    ...                        [({"a": 1, "b": 1}, -17)],
    ...                        {"a": "power_of_2", "b": "power_of_2"})
    >>> counting_feasibility(c).solutions
    ({'a': 1, 'b': 16}, {'a': 16, 'b': 1})
    """
    names = sorted(constraint.unknowns)
    ranges = []
    for name in names:
        lo, hi = constraint.unknowns[name]
        values = list(range(lo, hi + 1))
        for cond in constraint.conditions.get(name, ()):
            if not cond.startswith("power_of_"):
                raise ValueError(f"unknown condition {cond!r}")
            p = int(cond.rsplit("_", 1)[1])
            values = [v for v in values if _is_power_of(v, p)]
        ranges.append(values)
    solutions = []
    stack = [{}]
    for name, values in zip(names, ranges):
        stack = [dict(s, **{name: v}) for s in stack for v in values]
    for assignment in stack:
        ok = True
        for coeffs, const in constraint.equations:
            total = const + sum(c * assignment[k] for k, c in coeffs.items())
            if total != 0:
                ok = False
                break
        if ok:
            solutions.append(assignment)
    if solutions:
        return FeasibilityResult(True, tuple(solutions), None)
    witness = _infeasibility_witness(constraint, names)
    return FeasibilityResult(False, (), witness)


def _infeasibility_witness(constraint: CountingConstraint, names) -> str:
    if len(names) == 1 and len(constraint.equations) == 1:
        name = names[0]
        coeffs, const = constraint.equations[0]
        c = coeffs.get(name, 0)
        return (
            f"{c}*{name} = {-const} has no admissible solution with "
            f"{name} in {constraint.unknowns[name]}"
        )
    return "no assignment within the declared bounds satisfies the identities"


def tetrahedral_obstruction_constraint() -> CountingConstraint:
    """The fixed-point count identity a symplectic resolution would force
    on the binary tetrahedral action: 256 = 4*(16 - s) + s, s >= 0."""
    return CountingConstraint({"s": (0, 256)}, [({"s": 3}, 256 - 64)])
