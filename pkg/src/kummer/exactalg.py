"""Exact integer and rational linear algebra.

Everything downstream (fixed-point counts, Molien averages, age gradings)
must be bit-exact, so this module works with plain Python integers,
``fractions.Fraction`` and hand-rolled normal forms instead of floating
point.  Matrices are immutable tuples of tuples of ints, row-major.

The main exports are

* :class:`IntPolynomial` -- dense polynomials over the integers,
* :func:`char_poly` / :func:`det_one_plus_t` -- characteristic data of an
  integer matrix, computed fraction-free,
* :func:`cyclotomic_factor` / :func:`exponent_multiset` -- exact
  eigenvalue exponents of finite-order matrices,
* :func:`smith_normal_form` / :func:`hermite_normal_form` -- unimodular
  normal forms with transforms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class NotProductOfCyclotomics(ValueError):
    """The polynomial has a root that is not a root of unity."""


Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# integer matrices


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b) -> Matrix:
    """Product of two matrices (tuples of rows; entries int or Fraction)."""
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_sub(a, b) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_transpose(a) -> Matrix:
    return tuple(zip(*a))


def mat_det(m) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    >>> mat_det(((0, -1), (1, 1)))
    1
    >>> mat_det(((2, 0, 0), (0, 3, 0), (0, 0, 4)))
    24
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inverse_unimodular(m: Matrix) -> Matrix:
    """Inverse of an integer matrix with determinant +-1, again integral."""
    n = len(m)
    d = mat_det(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    # adjugate / det
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(
                tuple(m[r][c] for c in range(n) if c != j)
                for r in range(n)
                if r != i
            )
            cof[i][j] = (-1) ** (i + j) * mat_det(minor)
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# integer polynomials


class IntPolynomial:
    """A polynomial with integer coefficients, stored low degree first.

    >>> p = IntPolynomial([1, 0, 2])
    >>> p
    IntPolynomial([1, 0, 2])
    >>> print(p)
    1 + 2*t^2
    >>> print(p * p)
    1 + 4*t^2 + 4*t^4
    >>> (p * p)(1)
    9
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    continue
                raise TypeError(f"non-integer coefficient {c!r}")
        self.coeffs = tuple(int(c) for c in cs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, degree, coefficient=1):
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_exact(self, n: int) -> "IntPolynomial":
        """Divide every coefficient by ``n``, which must be exact."""
        if any(c % n for c in self.coeffs):
            raise ValueError(f"coefficients {self.coeffs} not divisible by {n}")
        return IntPolynomial([c // n for c in self.coeffs])

    def divmod_monic(self, divisor: "IntPolynomial"):
        """Polynomial division by a monic divisor, staying in Z[t].

        >>> num = IntPolynomial([-1, 0, 0, 0, 0, 0, 1])   # t^6 - 1
        >>> q, r = num.divmod_monic(IntPolynomial([-1, 1]))
        >>> print(q); bool(r)
        1 + t + t^2 + t^3 + t^4 + t^5
        False
        """
        if not divisor.coeffs or divisor.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if dd == 0:
            return self, IntPolynomial.zero()
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            quot[i - dd] = c
            for j, dcoef in enumerate(divisor.coeffs):
                rem[i - dd + j] -= c * dcoef
        return IntPolynomial(quot), IntPolynomial(rem)

    def is_palindromic(self) -> bool:
        """Whether coefficients read the same from both ends.

        >>> IntPolynomial([1, 0, 4, 0, 1]).is_palindromic()
        True
        """
        return self.coeffs == tuple(reversed(self.coeffs))

    def reciprocal(self, degree: int) -> "IntPolynomial":
        """Coefficients reversed relative to the given top degree."""
        if degree < self.degree:
            raise ValueError("degree too small")
        return IntPolynomial(tuple(self[degree - i] for i in range(degree + 1)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}t" if i == 1 else f"{mag}t^{i}"
                if not parts:
                    parts.append(term if c > 0 else f"-{term}")
                    continue
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# characteristic polynomials


@lru_cache(maxsize=None)
def char_poly(m: Matrix) -> IntPolynomial:
    """det(x*I - M) by the Faddeev-LeVerrier recursion; always monic.

    >>> print(char_poly(((0, -1), (1, 1))))
    1 - t + t^2
    >>> print(char_poly(identity_matrix(3)))
    -1 + 3*t - 3*t^2 + t^3
    """
    n = len(m)
    if n == 0:
        return IntPolynomial.one()
    coeffs = [Fraction(1)]  # descending: x^n, x^{n-1}, ...
    cur = [[Fraction(v) for v in row] for row in m]
    c = -sum(cur[i][i] for i in range(n))
    coeffs.append(c)
    for k in range(2, n + 1):
        tmp = [[cur[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        cur = [
            [sum(Fraction(m[i][t]) * tmp[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        c = -sum(cur[i][i] for i in range(n)) / k
        coeffs.append(c)
    return IntPolynomial(list(reversed(coeffs)))


@lru_cache(maxsize=None)
def det_one_plus_t(m: Matrix, power: int = 1) -> IntPolynomial:
    """det(I + t*M) ** power, the Lefschetz trace series of M on a torus.

    The coefficient of t^i is the trace of M on the i-th exterior power.

    >>> print(det_one_plus_t(((0, -1), (1, 1))))
    1 + t + t^2
    >>> print(det_one_plus_t(identity_matrix(1), 2))
    1 + 2*t + t^2
    """
    n = len(m)
    cp = char_poly(m)
    base = IntPolynomial([(-1) ** i * cp[n - i] for i in range(n + 1)])
    return base**power


# ---------------------------------------------------------------------------
# cyclotomic machinery

_cyclotomic_cache: dict[int, IntPolynomial] = {}


def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of t^n - 1.

    >>> print(cyclotomic_polynomial(6))
    1 - t + t^2
    >>> print(cyclotomic_polynomial(1))
    -1 + t
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    p = IntPolynomial([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            q, r = p.divmod_monic(cyclotomic_polynomial(d))
            assert not r
            p = q
    _cyclotomic_cache[n] = p
    return p


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def cyclotomic_factor(p: IntPolynomial) -> dict[int, int]:
    """Factor a monic polynomial as a product of cyclotomics.

    Returns ``{k: multiplicity}`` with p = prod Phi_k^m_k, or raises
    :class:`NotProductOfCyclotomics`.

    >>> cyclotomic_factor(IntPolynomial([1, -1, 1]))
    {6: 1}
    >>> cyclotomic_factor(char_poly(identity_matrix(3)))
    {1: 3}
    >>> cyclotomic_factor(IntPolynomial([1, 1, 1, 1]))
    {2: 1, 4: 1}
    """
    if not p.coeffs or p.coeffs[-1] != 1:
        raise NotProductOfCyclotomics("polynomial is not monic")
    result: dict[int, int] = {}
    rem = p
    k = 1
    while rem.degree > 0:
        if euler_phi(k) <= rem.degree:
            while True:
                q, r = rem.divmod_monic(cyclotomic_polynomial(k))
                if r:
                    break
                result[k] = result.get(k, 0) + 1
                rem = q
                if rem.degree == 0:
                    break
        k += 1
        # every root of unity of order k needs phi(k) <= deg; phi(k) >= sqrt(k/2)
        if k > 2 * p.degree * p.degree + 2:
            raise NotProductOfCyclotomics(f"no cyclotomic factorization of {p}")
    if rem != IntPolynomial.one():
        raise NotProductOfCyclotomics(f"no cyclotomic factorization of {p}")
    return result


class ExponentMultiset:
    """Eigenvalues of a finite-order matrix, as exponents a/m in [0, 1).

    An eigenvalue exp(2*pi*i*a/m) is stored as the reduced Fraction a/m.
    The multiset is closed under the Galois action within each cyclotomic
    factor, so it is determined by the factor multiplicities.

    >>> e = ExponentMultiset.from_matrix(((0, -1), (1, 1)))
    >>> e.entries
    (Fraction(1, 6), Fraction(5, 6))
    >>> e.order
    6
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(sorted(Fraction(e) for e in entries))
        for e in self.entries:
            if not 0 <= e < 1:
                raise ValueError("exponents must lie in [0, 1)")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "ExponentMultiset":
        factors = cyclotomic_factor(char_poly(m))
        entries = []
        for k, mult in factors.items():
            prim = [Fraction(j, k) for j in range(k) if gcd(j, k) == 1]
            entries.extend(prim * mult)
        return cls(entries)

    @classmethod
    def from_cyclotomic_factors(cls, factors: dict[int, int]) -> "ExponentMultiset":
        entries = []
        for k, mult in factors.items():
            entries.extend([Fraction(j, k) for j in range(k) if gcd(j, k) == 1] * mult)
        return cls(entries)

    @property
    def order(self) -> int:
        """Least common denominator: the multiplicative order."""
        n = 1
        for e in self.entries:
            n = n * e.denominator // gcd(n, e.denominator)
        return n

    def zero_multiplicity(self) -> int:
        return sum(1 for e in self.entries if e == 0)

    def conjugate(self) -> "ExponentMultiset":
        """Exponents of the complex-conjugate matrix (a -> 1-a)."""
        return ExponentMultiset([(1 - e) % 1 for e in self.entries])

    def __add__(self, other: "ExponentMultiset") -> "ExponentMultiset":
        return ExponentMultiset(self.entries + other.entries)

    def __mul__(self, n: int) -> "ExponentMultiset":
        return ExponentMultiset(self.entries * n)

    __rmul__ = __mul__

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, ExponentMultiset) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExponentMultiset({list(self.entries)!r})"


def exponent_multiset(m: Matrix) -> ExponentMultiset:
    """Exact eigenvalue exponents of a finite-order integer matrix.

    >>> exponent_multiset(((-1, 0, 0), (0, -1, 0), (0, 0, 1))).entries
    (Fraction(0, 1), Fraction(1, 2), Fraction(1, 2))
    """
    return ExponentMultiset.from_matrix(m)


def age(exponents: ExponentMultiset, copies: int = 1) -> Fraction:
    """Sum of the exponent representatives, taken ``copies`` times.

    For a matrix acting diagonally on ``copies`` coordinate blocks this is
    the grading weight the McKay correspondence assigns to its class.

    >>> age(exponent_multiset(((-1, 0, 0), (0, -1, 0), (0, 0, 1))))
    Fraction(1, 1)
    """
    return Fraction(copies) * sum(exponents.entries, Fraction(0))


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ...

    Zero diagonal entries come last; ``divisors`` lists the nonzero ones.
    """

    __slots__ = ("u", "d", "v", "rows", "cols")

    def __init__(self, u, d, v, rows, cols):
        self.u = u
        self.d = d
        self.v = v
        self.rows = rows
        self.cols = cols

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(self.rows, self.cols)))

    @property
    def divisors(self) -> tuple[int, ...]:
        return tuple(x for x in self.diagonal if x != 0)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def __repr__(self):
        return f"SmithDecomposition(diagonal={list(self.diagonal)})"


def smith_normal_form(m) -> SmithDecomposition:
    """Smith normal form with exact transforms.

    >>> snf = smith_normal_form(((2, 0), (0, 2)))
    >>> snf.divisors
    (2, 2)
    >>> snf = smith_normal_form(((2, 1), (-1, 1)))
    >>> snf.divisors
    (1, 3)
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(cols):
            a[i][k] -= q * a[j][k]
        for k in range(rows):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(rows):
            a[k][i] -= q * a[k][j]
        for k in range(cols):
            v[k][i] -= q * v[k][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for k in range(rows):
            a[k][i], a[k][j] = a[k][j], a[k][i]
        for k in range(cols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < min(rows, cols):
        # find a pivot: nonzero entry of smallest absolute value
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility: a[t][t] must divide everything below-right
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # fold the offending row in, redo pivot
            continue
        if a[t][t] < 0:
            for k in range(cols):
                a[t][k] = -a[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1

    um = tuple(tuple(r) for r in u)
    vm = tuple(tuple(r) for r in v)
    dm = tuple(tuple(r) for r in a)
    snf = SmithDecomposition(um, dm, vm, rows, cols)
    assert mat_mul(mat_mul(um, m), vm) == dm
    divs = snf.divisors
    assert all(divs[i + 1] % divs[i] == 0 for i in range(len(divs) - 1)), divs
    return snf


def hermite_normal_form(rows_in, width: int | None = None) -> Matrix:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive, entries above a pivot are reduced to [0, pivot).
    The result is a canonical basis of the row span.

    >>> hermite_normal_form(((2, 4), (1, 1)))
    ((1, 1), (0, 2))
    """
    rows = [list(r) for r in rows_in]
    if width is None:
        width = len(rows[0]) if rows else 0
    out: list[list[int]] = []
    for vec in rows:
        v = list(vec)
        for row in out:
            j = next(k for k, x in enumerate(row) if x)
            if v[j]:
                if v[j] % row[j] == 0:
                    q = v[j] // row[j]
                    for k in range(width):
                        v[k] -= q * row[k]
                else:
                    # gcd step
                    g, x, y = _xgcd(row[j], v[j])
                    r2 = [x * row[k] + y * v[k] for k in range(width)]
                    q1, q2 = row[j] // g, v[j] // g
                    v = [q1 * v[k] - q2 * row[k] for k in range(width)]
                    row[:] = r2
        if any(v):
            out.append(v)
    # order by pivot column, make pivots positive, reduce upwards
    out.sort(key=lambda r: next(k for k, x in enumerate(r) if x))
    for row in out:
        j = next(k for k, x in enumerate(row) if x)
        if row[j] < 0:
            for k in range(width):
                row[k] = -row[k]
    for i in range(len(out) - 1, -1, -1):
        j = next(k for k, x in enumerate(out[i]) if x)
        for i2 in range(i):
            if out[i2][j]:
                q = out[i2][j] // out[i][j]
                for k in range(width):
                    out[i2][k] -= q * out[i][k]
    return tuple(tuple(r) for r in out)


def _xgcd(a: int, b: int):
    """g, x, y with x*a + y*b == g == gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def kernel_basis(m, width: int | None = None) -> Matrix:
    """Basis (HNF rows) of the integer kernel {x : M x = 0}; saturated.

    >>> kernel_basis(((1, 1, 1),))
    ((1, 0, -1), (0, 1, -1))
    """
    rows = len(m)
    if width is None:
        width = len(m[0]) if rows else 0
    if rows == 0:
        return identity_matrix(width)
    snf = smith_normal_form(m)
    rank = snf.rank
    cols = [tuple(snf.v[i][j] for i in range(width)) for j in range(rank, width)]
    if not cols:
        return ()
    return hermite_normal_form(cols, width)


def annihilator_basis(rows, width: int) -> Matrix:
    """Basis of {a in Z^width : a . v = 0 for all given rows}; saturated."""
    if not rows:
        return identity_matrix(width)
    return kernel_basis(rows, width)


def saturate(rows, width: int) -> Matrix:
    """Saturation of the lattice spanned by the rows, as HNF rows."""
    return annihilator_basis(annihilator_basis(rows, width), width)
