"""Fiber Poincaré polynomials of crepant resolutions of C^n / H.

For a finite group H acting with determinant one, conjugacy classes of H
are graded by the age of their eigenvalue exponents, and the central
fiber of a crepant resolution carries one cohomology class per conjugacy
class, in degree twice the age.  When a Weyl group permutes the classes
the fiber polynomial refines to a permutation character in each degree.

The symmetric-group case has an independent combinatorial description by
partition lengths, used as an oracle against the age computation.
"""

from __future__ import annotations

from .exactalg import IntPolynomial, age, exponent_multiset
from .groupcore import FiniteGroup, IntegralAction


class NonIntegerAge(ValueError):
    """An element has fractional age: the action is not Gorenstein."""


class FiberPolynomial:
    """Cohomology of the central resolution fiber, with optional Weyl data.

    ``plain`` is the ordinary Poincaré polynomial.  When built
    equivariantly, ``values`` maps each Weyl coset index to the
    polynomial of traces of that coset on fiber cohomology, and
    ``characters`` lists the permutation-character values per degree.
    """

    __slots__ = ("plain", "class_ages", "values", "characters")

    def __init__(self, plain, class_ages, values=None, characters=None):
        self.plain = plain
        self.class_ages = tuple(class_ages)
        self.values = None if values is None else tuple(values)
        self.characters = None if characters is None else tuple(characters)

    @property
    def class_count(self) -> int:
        return len(self.class_ages)

    def value_at_coset(self, index: int) -> IntPolynomial:
        if self.values is None:
            return self.plain
        return self.values[index]

    def __repr__(self):
        return f"FiberPolynomial({self.plain})"


def _class_ages(group: FiniteGroup, elements_to_matrix, d: int):
    ages = []
    for rep in group.class_representatives():
        exps = exponent_multiset(elements_to_matrix(rep))
        a = age(exps, d)
        if a.denominator != 1:
            raise NonIntegerAge(
                f"class of order {group.element_order(rep)} has age {a}; "
                "the restricted action is not Gorenstein"
            )
        ages.append(int(a))
    return tuple(ages)


def fiber_poincare(subaction: IntegralAction, d: int | None = None) -> FiberPolynomial:
    """Fiber polynomial of the quotient by a matrix group, graded by age.

    ``d`` defaults to the d carried by the action.  Ages are computed
    from the full matrices; fixed directions only contribute zero
    exponents, so the transverse grading is unchanged.

    >>> from .catalog import catalog
    >>> print(fiber_poincare(catalog("d4_sl3")).plain)
    1 + 3*t^2
    >>> print(fiber_poincare(catalog("s4_standard_d2")).plain)
    1 + t^2 + 2*t^4 + t^6
    """
    if d is None:
        d = subaction.d
    ages = _class_ages(subaction, lambda g: g, d)
    coeffs = [0] * (2 * max(ages, default=0) + 1)
    for a in ages:
        coeffs[2 * a] += 1
    plain = IntPolynomial(coeffs)
    assert plain(1) == len(subaction.conjugacy_classes())
    return FiberPolynomial(plain, ages)


def fiber_poincare_equivariant(group: FiniteGroup, sub: frozenset,
                               weyl_cosets, d: int,
                               matrix_of=None) -> FiberPolynomial:
    """Fiber polynomial of C^n / H with the Weyl permutation action.

    ``weyl_cosets`` are cosets of H in its normalizer (tuples with a
    representative first); the coefficient of t^(2a) is the permutation
    character of the Weyl group on the age-a classes of H.

    >>> from .catalog import catalog
    >>> octa = catalog("octahedral_s4_sl3")
    >>> z4 = octa.subgroup_closure([((0, -1, 0), (1, 0, 0), (0, 0, 1))])
    >>> cosets = octa.cosets(z4, within=octa.normalizer(z4))
    >>> fib = fiber_poincare_equivariant(octa, z4, cosets, d=1)
    >>> print(fib.plain); print(fib.values[1])
    1 + 3*t^2
    1 + t^2
    """
    if matrix_of is None:
        matrix_of = lambda g: g
    sub_sorted = sorted(sub)
    # conjugacy classes of the subgroup as a group of its own
    seen = set()
    classes = []
    for g in sub_sorted:
        if g in seen:
            continue
        orbit = {group._mul(group._mul(h, g), group._inv(h)) for h in sub_sorted}
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (group.element_order(c[0]), c[0]))
    index_of = {h: i for i, cls in enumerate(classes) for h in cls}
    ages = []
    for cls in classes:
        a = age(exponent_multiset(matrix_of(cls[0])), d)
        if a.denominator != 1:
            raise NonIntegerAge(f"class has fractional age {a}")
        ages.append(int(a))
    top = 2 * max(ages, default=0)
    plain = IntPolynomial([sum(1 for a in ages if 2 * a == i) for i in range(top + 1)])
    values = []
    characters = []
    for coset in weyl_cosets:
        n = coset[0]
        ninv = group._inv(n)
        fixed = [
            index_of[group._mul(group._mul(n, cls[0]), ninv)] == i
            for i, cls in enumerate(classes)
        ]
        coeffs = [0] * (top + 1)
        for i, a in enumerate(ages):
            if fixed[i]:
                coeffs[2 * a] += 1
        values.append(IntPolynomial(coeffs))
        characters.append(tuple(coeffs))
    return FiberPolynomial(plain, ages, values, characters)


# ---------------------------------------------------------------------------
# partition combinatorics: the symmetric-group oracle


def partitions(n: int):
    """All partitions of n as non-increasing tuples.

    >>> sorted(partitions(4))
    [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    """
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


class PartitionData:
    """Bookkeeping for one partition (a_i^{b_i}) of n."""

    __slots__ = ("partition", "n")

    def __init__(self, partition):
        p = tuple(sorted(partition, reverse=True))
        if any(a < 1 for a in p):
            raise ValueError("parts must be positive")
        self.partition = p
        self.n = sum(p)

    @property
    def length(self) -> int:
        return len(self.partition)

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for a in self.partition:
            out[a] = out.get(a, 0) + 1
        return out

    def weyl_orders(self) -> tuple[int, ...]:
        """Factorials of the multiplicities: the order of each S_{b_i}."""
        from math import factorial

        return tuple(factorial(b) for b in self.multiplicities.values())

    def __repr__(self):
        return f"PartitionData({self.partition})"


def partition_fiber(n: int) -> IntPolynomial:
    """Sum of t^(2i) over partitions of n, graded by co-length.

    The coefficient of t^(2i) counts partitions of n of length n - i.

    >>> print(partition_fiber(4))
    1 + t^2 + 2*t^4 + t^6
    >>> print(partition_fiber(1))
    1
    """
    if n < 1:
        raise ValueError("n must be positive")
    kappa = [0] * n
    for p in partitions(n):
        kappa[n - len(p)] += 1
    return IntPolynomial(
        [kappa[i // 2] if i % 2 == 0 else 0 for i in range(2 * (n - 1) + 1)]
    )


def young_fiber(partition) -> IntPolynomial:
    """Product of partition fibers over the parts.

    >>> print(young_fiber((3, 1)))
    1 + t^2 + t^4
    >>> print(young_fiber((2, 2)))
    1 + 2*t^2 + t^4
    """
    data = PartitionData(partition)
    out = IntPolynomial.one()
    for a, b in data.multiplicities.items():
        out = out * partition_fiber(a) ** b
    return out
