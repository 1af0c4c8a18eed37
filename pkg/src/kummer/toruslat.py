"""Exact geometry of fixed loci on a power of an abelian variety.

A power of a d-dimensional abelian variety is modelled through its
lattice shadow: the real torus R^r/Z^r taken ``2d`` independent times
(one per generator of first homology of the variety factor).  A
component of a fixed locus is then a rational translate of a subtorus,

    S = { x : N x = shift (mod Z) in every copy },

where N is the saturated annihilator of the tangent lattice.  The pair
(N in Hermite form, shifts reduced to [0,1)) is a canonical form, so
components can be hashed, compared, intersected and mapped around by
group elements with no ambiguity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .exactalg import (
    annihilator_basis,
    hermite_normal_form,
    identity_matrix,
    kernel_basis,
    mat_det,
    mat_mul,
    mat_sub,
    mat_vec,
    smith_normal_form,
)
from .groupcore import IntegralAction

DEFAULT_ENUMERATION_BUDGET = 10_000_000


class NotIsolated(ValueError):
    """The fixed locus is positive dimensional."""


class EnumerationTooLarge(ValueError):
    """A brute-force enumeration exceeds the configured budget."""


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


_annihilator_cache: dict = {}


def _cached_annihilator(basis_rows, width: int):
    key = (basis_rows, width)
    try:
        return _annihilator_cache[key]
    except KeyError:
        normal = _annihilator_cache[key] = annihilator_basis(basis_rows, width)
        return normal


class AffineSubtorus:
    """A rational translate of a saturated subtorus, in canonical form.

    ``normal`` is the Hermite basis of the annihilator of the tangent
    lattice; ``shifts`` holds, for each of the ``copies`` circle factors,
    the value of ``normal @ translate`` reduced into [0, 1).
    """

    __slots__ = (
        "r", "copies", "normal", "shifts", "_basis", "_points", "_eta",
        "_scaled",
    )

    def __init__(self, r: int, copies: int, normal, shifts):
        self.r = r
        self.copies = copies
        self.normal = tuple(tuple(int(x) for x in row) for row in normal)
        self.shifts = tuple(tuple(Fraction(s) for s in copy) for copy in shifts)
        self._eta = {}
        self._scaled = None
        if len(self.shifts) != copies:
            raise ValueError("one shift vector per copy required")
        for copy in self.shifts:
            if len(copy) != len(self.normal):
                raise ValueError("shift length must match the number of equations")
            if any(not 0 <= s < 1 for s in copy):
                raise ValueError("shifts must be reduced into [0, 1)")
        self._basis = None
        self._points = None

    # -- construction --------------------------------------------------------

    @classmethod
    def whole_torus(cls, r: int, copies: int) -> "AffineSubtorus":
        return cls(r, copies, (), ((),) * copies)

    @classmethod
    def from_point(cls, point_per_copy, r: int, copies: int) -> "AffineSubtorus":
        """The single point with the given rational coordinates."""
        ident = identity_matrix(r)
        shifts = tuple(
            tuple(_frac(Fraction(x)) for x in pt) for pt in point_per_copy
        )
        return cls(r, copies, ident, shifts)

    @classmethod
    def from_lattice_and_translate(cls, basis_rows, translates, r: int,
                                   copies: int) -> "AffineSubtorus":
        basis_rows = tuple(tuple(int(x) for x in row) for row in basis_rows)
        normal = _cached_annihilator(basis_rows, r)
        shifts = tuple(
            tuple(_frac(sum(n * v for n, v in zip(row, tr)))
                  for row in normal)
            for tr in translates
        )
        return cls(r, copies, normal, shifts)

    # -- basic data -----------------------------------------------------------

    @property
    def lattice_basis(self):
        """Hermite basis rows of the tangent lattice (empty for a point)."""
        if self._basis is None:
            self._basis = kernel_basis(self.normal, self.r) if self.normal else identity_matrix(self.r)
        return self._basis

    @property
    def rank(self) -> int:
        return self.r - len(self.normal)

    def complex_dim(self, d: int) -> int:
        return d * self.rank

    @property
    def is_point(self) -> bool:
        return self.rank == 0

    def representative_points(self):
        """A canonical rational representative translate per copy."""
        if self._points is None:
            if not self.normal:
                self._points = ((Fraction(0),) * self.r,) * self.copies
            else:
                snf = smith_normal_form(self.normal)
                assert set(snf.divisors) <= {1}, "annihilator must be saturated"
                k = len(self.normal)
                pts = []
                for shift in self.shifts:
                    c = [sum(Fraction(snf.u[i][j]) * shift[j] for j in range(k))
                         for i in range(k)]
                    z = list(c) + [Fraction(0)] * (self.r - k)
                    pts.append(tuple(
                        sum(Fraction(snf.v[i][j]) * z[j] for j in range(self.r))
                        for i in range(self.r)
                    ))
                self._points = tuple(pts)
        return self._points

    def scaled_points(self):
        """(denominator, integer point per copy), for fast modular tests."""
        if self._scaled is None:
            den = 1
            for pt in self.representative_points():
                for x in pt:
                    d = x.denominator
                    den = den * d // gcd(den, d)
            ipts = tuple(
                tuple(int(x * den) for x in pt)
                for pt in self.representative_points()
            )
            self._scaled = (den, ipts)
        return self._scaled

    # -- canonical identity ----------------------------------------------------

    @property
    def key(self):
        return (self.normal, self.shifts)

    def __eq__(self, other):
        return isinstance(other, AffineSubtorus) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return (
            f"AffineSubtorus(rank={self.rank}, normal={self.normal}, "
            f"shifts={self.shifts})"
        )

    # -- geometry ---------------------------------------------------------------

    def contains_point(self, point_per_copy) -> bool:
        for shift, pt in zip(self.shifts, point_per_copy):
            for row, s in zip(self.normal, shift):
                val = sum(n * x for n, x in zip(row, pt))
                if _frac(val - s) != 0:
                    return False
        return True

    def contains(self, other: "AffineSubtorus") -> bool:
        """Whether ``other`` is a subset of this subtorus."""
        if (other.r, other.copies) != (self.r, self.copies):
            raise ValueError("different ambient tori")
        for row in other.lattice_basis:
            if any(sum(n * b for n, b in zip(nr, row)) != 0 for nr in self.normal):
                return False
        oden, opts = other.scaled_points()
        sden, _ = self.scaled_points()
        den = oden * sden // gcd(oden, sden)
        scale = den // oden
        for shift, pt in zip(self.shifts, opts):
            for row, s in zip(self.normal, shift):
                val = sum(n * x for n, x in zip(row, pt)) * scale
                if (val - int(s * den)) % den:
                    return False
        return True

    def apply_matrix(self, g) -> "AffineSubtorus":
        """Image under the lattice automorphism g (same matrix in each copy)."""
        basis = tuple(mat_vec(g, row) for row in self.lattice_basis) \
            if self.rank else ()
        translates = tuple(mat_vec(g, pt) for pt in self.representative_points())
        return AffineSubtorus.from_lattice_and_translate(
            basis, translates, self.r, self.copies
        )

    def induced_lattice_matrix(self, g):
        """Matrix of g on the tangent lattice, in the Hermite basis.

        Requires g to map the subtorus to itself; the result is the
        integer matrix M with g . basis_j = sum_i M[i][j] basis_i.
        """
        if g in self._eta:
            return self._eta[g]
        k = self.rank
        if k == 0:
            self._eta[g] = ()
            return ()
        basis = self.lattice_basis
        images = [mat_vec(g, row) for row in basis]
        # solve basis^T M^T = images^T row by row via Gaussian elimination
        cols = [[Fraction(basis[i][j]) for i in range(k)] for j in range(self.r)]
        out = []
        for img in images:
            sol = _solve_rational(cols, [Fraction(x) for x in img])
            if sol is None or any(s.denominator != 1 for s in sol):
                raise ValueError("matrix does not preserve the lattice")
            out.append(tuple(int(s) for s in sol))
        # out[i] expresses image of basis_i; we want column convention
        eta = tuple(tuple(out[j][i] for j in range(k)) for i in range(k))
        self._eta[g] = eta
        return eta

    def intersect(self, other: "AffineSubtorus") -> tuple["AffineSubtorus", ...]:
        """All components of the intersection, in canonical form."""
        if (other.r, other.copies) != (self.r, self.copies):
            raise ValueError("different ambient tori")
        system = self.normal + other.normal
        rhs = tuple(
            tuple(sa) + tuple(sb) for sa, sb in zip(self.shifts, other.shifts)
        )
        return solve_torus_system(system, rhs, self.r, self.copies)


def _solve_rational(rows, rhs):
    """Solve rows . x = rhs exactly; rows is a list of lists of Fractions."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    ri = 0
    for c in range(ncols):
        piv = next((i for i in range(ri, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[ri], m[piv] = m[piv], m[ri]
        inv = 1 / m[ri][c]
        m[ri] = [v * inv for v in m[ri]]
        for i in range(nrows):
            if i != ri and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[ri])]
        pivots.append(c)
        ri += 1
        if ri == nrows:
            break
    for i in range(ri, nrows):
        if m[i][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def solve_torus_system(system_rows, rhs_per_copy, r: int, copies: int,
                       budget: int = DEFAULT_ENUMERATION_BUDGET):
    """Components of { x : A x = b (mod Z) in each copy }.

    ``system_rows`` is an integer matrix A with r columns; ``rhs_per_copy``
    gives the rational right-hand side for each circle copy.  Returns a
    tuple of canonical components (empty when inconsistent).
    """
    rows = tuple(tuple(int(x) for x in row) for row in system_rows)
    if not rows:
        return (AffineSubtorus.whole_torus(r, copies),)
    snf = smith_normal_form(rows)
    rank = snf.rank
    m = len(rows)
    lattice = tuple(
        tuple(snf.v[i][j] for i in range(r)) for j in range(rank, r)
    )
    normal = _cached_annihilator(
        hermite_normal_form(lattice, r) if lattice else (), r
    )
    per_copy = []
    count = 1
    for rhs in rhs_per_copy:
        c = [sum(snf.u[i][j] * Fraction(rhs[j]) for j in range(m))
             for i in range(m)]
        # zero rows of D demand integral right-hand side
        for i in range(rank, m):
            if _frac(c[i]) != 0:
                return ()
        choices = [[]]
        for i in range(rank):
            di = snf.d[i][i]
            new = []
            for partial in choices:
                for j in range(di):
                    new.append(partial + [(c[i] + j) / di])
            choices = new
        count *= len(choices)
        if count > budget:
            raise EnumerationTooLarge(
                f"component enumeration exceeds budget {budget}"
            )
        shift_options = []
        for z in choices:
            v = [sum(snf.v[i][j] * z[j] for j in range(rank)) for i in range(r)]
            shift_options.append(tuple(
                _frac(sum(n * x for n, x in zip(nrow, v))) for nrow in normal
            ))
        per_copy.append(sorted(set(shift_options)))
    components = []
    stack = [()]
    for shift_options in per_copy:
        stack = [partial + (s,) for partial in stack for s in shift_options]
    for combo in stack:
        components.append(AffineSubtorus(r, copies, normal, combo))
    return tuple(sorted(components, key=lambda s: s.key))


class FixLocus:
    """The full fixed-point set of a subgroup, as canonical components."""

    __slots__ = ("components", "source")

    def __init__(self, components, source):
        self.components = tuple(components)
        self.source = source

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def dimension(self) -> int:
        """Common tangent rank of the components (lattice coordinates)."""
        return self.components[0].rank if self.components else -1

    def __repr__(self):
        return f"FixLocus({len(self.components)} components, rank {self.dimension})"


def fix_locus(action: IntegralAction, subgroup) -> FixLocus:
    """Components of the common fixed locus of a set of group elements.

    >>> from .catalog import catalog
    >>> octa = catalog("octahedral_s4_sl3")
    >>> g = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
    >>> len(fix_locus(octa, [g]))
    16
    """
    elements = sorted(frozenset(subgroup) | {action.identity})
    rows = []
    ident = identity_matrix(action.r)
    for h in elements:
        if h == action.identity:
            continue
        rows.extend(mat_sub(ident, h))
    copies = 2 * action.d
    rhs = tuple((Fraction(0),) * len(rows) for _ in range(copies))
    comps = solve_torus_system(tuple(rows), rhs, action.r, copies)
    return FixLocus(comps, frozenset(elements))


def component_count(action: IntegralAction, g) -> int:
    """Number of components of Fix(g), from Smith divisors of I - g.

    >>> from .catalog import catalog
    >>> octa = catalog("octahedral_s4_sl3")
    >>> component_count(octa, ((-1, 0, 0), (0, -1, 0), (0, 0, 1)))
    16
    """
    m = mat_sub(identity_matrix(action.r), g)
    snf = smith_normal_form(m)
    prod = 1
    for dv in snf.divisors:
        prod *= abs(dv)
    return prod ** (2 * action.d)


def isolated_count(action: IntegralAction, g) -> int:
    """|det(I - g)| ** 2d; raises :class:`NotIsolated` when singular."""
    m = mat_sub(identity_matrix(action.r), g)
    det = mat_det(m)
    if det == 0:
        raise NotIsolated("fixed locus is positive dimensional")
    return abs(det) ** (2 * action.d)


def subtorus_contains(s1: AffineSubtorus, s2: AffineSubtorus) -> bool:
    """Whether s1 is contained in s2 (both in a common ambient torus)."""
    return s2.contains(s1)


def intersect(s1: AffineSubtorus, s2: AffineSubtorus):
    return s1.intersect(s2)


def generic_isotropy(action: IntegralAction, s: AffineSubtorus) -> frozenset:
    """The subgroup fixing the component pointwise.

    >>> from .catalog import catalog
    >>> octa = catalog("octahedral_s4_sl3")
    >>> whole = AffineSubtorus.whole_torus(3, 2)
    >>> sorted(generic_isotropy(octa, whole)) == [octa.identity]
    True
    """
    ident = identity_matrix(action.r)
    out = []
    basis = s.lattice_basis
    den, ipts = s.scaled_points()
    for g in action.elements:
        m = mat_sub(ident, g)
        if any(any(x != 0 for x in mat_vec(m, row)) for row in basis):
            continue
        ok = True
        for pt in ipts:
            if any(v % den for v in mat_vec(m, pt)):
                ok = False
                break
        if ok:
            out.append(g)
    return frozenset(out)


def torsion_oracle(action: IntegralAction, n: int,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> dict:
    """Count n-torsion fixed points of every element by brute force.

    Enumerates (Z/n)^r once per element and counts solutions of
    (I - g) x = 0, then raises to the power 2d for the independent
    homology copies.  Independent of all normal-form machinery, so it
    cross-checks the determinant and Smith counts.

    >>> from .catalog import catalog
    >>> z6 = catalog("z6_sl2")
    >>> oracle = torsion_oracle(z6, 2)
    >>> oracle[((-1, 0), (0, -1))]
    16
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n ** action.r > budget:
        raise EnumerationTooLarge(f"{n}^{action.r} exceeds budget {budget}")
    ident = identity_matrix(action.r)
    vectors = [[]]
    for _ in range(action.r):
        vectors = [v + [c] for v in vectors for c in range(n)]
    result = {}
    for g in action.elements:
        m = mat_sub(ident, g)
        count = 0
        for v in vectors:
            if all(sum(row[j] * v[j] for j in range(action.r)) % n == 0 for row in m):
                count += 1
        result[g] = count ** (2 * action.d)
    return result


def orbifold_euler(action: IntegralAction) -> int:
    """Orbifold Euler number: average over commuting pairs of chi(common fix).

    A positive-dimensional union of subtori has Euler characteristic 0;
    a finite fixed set contributes its cardinality.

    >>> from .catalog import catalog
    >>> orbifold_euler(catalog("z6_sl2"))
    24
    """
    ident = identity_matrix(action.r)
    total = 0
    diffs = {g: mat_sub(ident, g) for g in action.elements}
    for g in action.elements:
        for h in action.elements:
            if action._mul(g, h) != action._mul(h, g):
                continue
            rows = tuple(diffs[g]) + tuple(diffs[h])
            snf = smith_normal_form(rows)
            if snf.rank < action.r:
                continue  # positive-dimensional: chi = 0
            prod = 1
            for dv in snf.divisors:
                prod *= abs(dv)
            total += prod ** (2 * action.d)
    assert total % action.order == 0
    return total // action.order
