"""Isotropy stratification and the resolution Poincaré polynomial.

The quotient of the torus power decomposes into locally closed strata,
one per conjugacy class of occurring isotropy groups.  Everything is
computed upstairs, on the torus, with exact equivariant bookkeeping:

* the canonical components of all element fixed loci are closed under
  intersection into an arrangement ("the family");
* each component's pointwise stabilizer singles out the strata, and the
  normalizer orbits of components give the downstairs components;
* on each orbit representative, the points with strictly larger isotropy
  form a union of family members, and an inclusion-exclusion over the
  poset of members fixed by a Weyl element yields that element's trace
  on the cohomology (with compact supports) of the open part;
* averaging traces over the stabilizer computes the quotient polynomial
  of the stratum, and weighting by the fiber polynomial first computes
  the stratum of the resolution.

Summing the unweighted strata must reproduce the quotient polynomial,
and the weighted total evaluated at -1 must match the orbifold Euler
number; both identities are asserted by the test suite on every catalog
action.  The resolution total is what the locally-product and McKay
hypotheses predict; the hypotheses themselves are recorded, not checked.
"""

from __future__ import annotations

from .exactalg import IntPolynomial, det_one_plus_t
from .groupcore import IntegralAction
from .mckay import fiber_poincare_equivariant
from .repring import quotient_poincare
from .toruslat import AffineSubtorus, fix_locus, generic_isotropy


class MalformedLedger(ValueError):
    """A ledger document does not follow the expected schema."""


class ComponentOrbit:
    """One normalizer orbit of components with a fixed exact isotropy."""

    __slots__ = (
        "representative", "members", "stabilizer_cosets", "fiber",
        "y_poly", "x_poly",
    )

    def __init__(self, representative, members, stabilizer_cosets, fiber,
                 y_poly, x_poly):
        self.representative = representative
        self.members = members
        self.stabilizer_cosets = stabilizer_cosets
        self.fiber = fiber
        self.y_poly = y_poly
        self.x_poly = x_poly

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def stabilizer_order(self) -> int:
        return len(self.stabilizer_cosets)


class Stratum:
    """All orbits sharing one conjugacy class of isotropy groups."""

    __slots__ = (
        "isotropy", "label", "class_size", "weyl_order", "rank", "orbits",
        "fiber_plain",
    )

    def __init__(self, isotropy, label, class_size, weyl_order, rank, orbits,
                 fiber_plain):
        self.isotropy = isotropy
        self.label = label
        self.class_size = class_size
        self.weyl_order = weyl_order
        self.rank = rank
        self.orbits = orbits
        self.fiber_plain = fiber_plain

    @property
    def order(self) -> int:
        return len(self.isotropy)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def component_count(self) -> int:
        return sum(o.size for o in self.orbits)

    @property
    def y_poly(self) -> IntPolynomial:
        return sum((o.y_poly for o in self.orbits), IntPolynomial.zero())

    @property
    def x_poly(self) -> IntPolynomial:
        return sum((o.x_poly for o in self.orbits), IntPolynomial.zero())

    def __repr__(self):
        return (
            f"Stratum({self.label}, order={self.order}, rank={self.rank}, "
            f"orbits={self.orbit_count})"
        )


class StrataReport:
    """Result of :func:`stratify`: strata, totals, and the closure poset."""

    __slots__ = ("action", "strata", "quotient", "resolution", "closure_edges")

    def __init__(self, action, strata, quotient, resolution, closure_edges):
        self.action = action
        self.strata = strata
        self.quotient = quotient
        self.resolution = resolution
        self.closure_edges = closure_edges

    def stratum_by(self, order: int, rank: int | None = None):
        """All strata with the given isotropy order (and tangent rank)."""
        return tuple(
            s for s in self.strata
            if s.order == order and (rank is None or s.rank == rank)
        )

    @property
    def y_total(self) -> IntPolynomial:
        return sum((s.y_poly for s in self.strata), IntPolynomial.zero())

    @property
    def x_total(self) -> IntPolynomial:
        return self.resolution

    def __repr__(self):
        return f"StrataReport({self.action.label!r}, {len(self.strata)} strata)"


# ---------------------------------------------------------------------------
# the arrangement of fixed loci


def _fixed_arrangement(action: IntegralAction):
    """All canonical components of intersections of element fixed loci."""
    seen: dict = {}
    for g in action.elements:
        if g == action.identity:
            continue
        for comp in fix_locus(action, action.subgroup_closure([g])):
            seen.setdefault(comp.key, comp)
    items = list(seen.values())
    # close under intersection; only positive-dimensional pairs can create
    # anything new (points meet other members in themselves or not at all)
    queue = [
        (a, b)
        for i, a in enumerate(items) if a.rank > 0
        for b in items[i + 1:] if b.rank > 0
    ]
    while queue:
        a, b = queue.pop()
        if a.contains(b) or b.contains(a):
            continue
        for comp in a.intersect(b):
            if comp.key in seen:
                continue
            seen[comp.key] = comp
            if comp.rank > 0:
                queue.extend((comp, other) for other in items if other.rank > 0)
            items.append(comp)
    items.sort(key=lambda s: (-s.rank, s.key))
    return items


def _conjugacy_class_of_subgroup(action, sub):
    reps = {action.conjugate_subgroup(sub, g) for g in action.elements}
    return min(reps, key=lambda s: sorted(s)), len(reps)


def _moebius_trace(action, subtorus, deeper, supersets, fixed_set, images, n):
    """Trace of the coset of n on the open part of the subtorus.

    ``deeper`` lists family indices strictly inside the subtorus;
    inclusion-exclusion runs over those fixed by n.
    """
    power = 2 * action.d
    eta = subtorus.induced_lattice_matrix(n)
    total = det_one_plus_t(eta, power)
    fixed = [i for i in deeper if images[i] == i]
    fixed_ranked = sorted(fixed, key=lambda i: -fixed_set[i].rank)
    in_fixed = set(fixed)
    coeff: dict[int, int] = {}
    for i in fixed_ranked:
        c = 1
        for j in supersets[i]:
            if j in in_fixed and j in coeff:
                c -= coeff[j]
        coeff[i] = c
    for i in fixed_ranked:
        if coeff[i] == 0:
            continue
        eta_i = fixed_set[i].induced_lattice_matrix(n)
        total = total - coeff[i] * det_one_plus_t(eta_i, power)
    return total


def stratify(action: IntegralAction, check_frobenius: bool = True) -> StrataReport:
    """Full isotropy stratification with per-stratum polynomials.

    >>> from .catalog import catalog
    >>> report = stratify(catalog("z6_sl2"))
    >>> print(report.resolution)
    1 + 22*t^2 + t^4
    """
    family = _fixed_arrangement(action)
    index_of = {t.key: i for i, t in enumerate(family)}
    whole = AffineSubtorus.whole_torus(action.r, 2 * action.d)

    # pointwise stabilizers
    isotropy = [generic_isotropy(action, t) for t in family]

    # strict containments: supersets[i] = indices of members strictly above i
    by_rank: dict[int, list[int]] = {}
    for i, t in enumerate(family):
        by_rank.setdefault(t.rank, []).append(i)
    supersets: list[list[int]] = [[] for _ in family]
    for i, t in enumerate(family):
        for rk, idxs in by_rank.items():
            if rk <= t.rank:
                continue
            for j in idxs:
                if family[j].contains(t):
                    supersets[i].append(j)

    # group components by their exact isotropy subgroup
    by_subgroup: dict[frozenset, list[int]] = {}
    for i, h in enumerate(isotropy):
        by_subgroup.setdefault(h, []).append(i)

    # conjugacy classes of occurring subgroups
    class_reps: dict[frozenset, tuple[frozenset, int]] = {}
    for h in by_subgroup:
        rep, size = _conjugacy_class_of_subgroup(action, h)
        class_reps[h] = (rep, size)
    occurring = sorted(
        {rep_size for rep_size in class_reps.values()},
        key=lambda rs: (len(rs[0]), sorted(rs[0])),
    )

    image_cache: dict = {}

    def image_index(n, i):
        key = (n, i)
        if key not in image_cache:
            img = family[i].apply_matrix(n)
            image_cache[key] = index_of.get(img.key, -1)
        return image_cache[key]

    strata = []
    label_count: dict[int, int] = {}

    # the open stratum: trivial isotropy, the whole torus
    all_entries = [((frozenset({action.identity}), 1), [None])]
    for rep, size in occurring:
        # the family is stable under the group action, so the minimal
        # conjugate of every occurring stabilizer occurs itself
        all_entries.append(((rep, size), by_subgroup[rep]))

    for (subgroup, class_size), comp_indices in all_entries:
        trivial = len(subgroup) == 1
        normalizer = action.elements if trivial else sorted(
            action.normalizer(subgroup)
        )
        weyl_cosets = action.cosets(subgroup, within=normalizer)
        if trivial:
            components = [whole]
            member_index = {whole.key: 0}
        else:
            components = [family[i] for i in comp_indices]
            member_index = {family[i].key: k for k, i in enumerate(comp_indices)}

        # orbits of the normalizer on the components
        unassigned = set(range(len(components)))
        orbits_idx = []
        while unassigned:
            start = min(unassigned)
            orbit = {start}
            frontier = [start]
            while frontier:
                cur = frontier.pop()
                for coset in weyl_cosets:
                    n = coset[0]
                    img = components[cur].apply_matrix(n)
                    k = member_index[img.key]
                    if k not in orbit:
                        orbit.add(k)
                        frontier.append(k)
            unassigned -= orbit
            orbits_idx.append(sorted(orbit))

        orbits = []
        fiber_plain = None
        for orbit in orbits_idx:
            k0 = orbit[0]
            rep_torus = components[k0]
            # stabilizer of the representative inside the Weyl group
            stab_cosets = tuple(
                coset for coset in weyl_cosets
                if member_index[rep_torus.apply_matrix(coset[0]).key] == k0
            )
            assert len(stab_cosets) * len(orbit) == len(weyl_cosets)
            fiber = fiber_poincare_equivariant(
                action, subgroup, stab_cosets, action.d
            )
            fiber_plain = fiber.plain
            if trivial:
                deeper = list(range(len(family)))
            else:
                deeper = [
                    j for j in range(len(family))
                    if family[j].rank < rep_torus.rank
                    and rep_torus.contains(family[j])
                ]
            y_sum = IntPolynomial.zero()
            x_sum = IntPolynomial.zero()
            for ci, coset in enumerate(stab_cosets):
                n = coset[0]
                images = {i: image_index(n, i) for i in deeper}
                open_trace = _moebius_trace(
                    action, rep_torus, deeper, supersets, family, images, n
                )
                y_sum = y_sum + open_trace
                x_sum = x_sum + open_trace * fiber.values[ci]
            y_poly = y_sum.divide_exact(len(stab_cosets))
            x_poly = x_sum.divide_exact(len(stab_cosets))
            orbits.append(ComponentOrbit(
                rep_torus, tuple(components[i] for i in orbit),
                stab_cosets, fiber, y_poly, x_poly,
            ))

        if check_frobenius and not trivial:
            _assert_frobenius(
                action, components, weyl_cosets, member_index, family,
                supersets, image_index, orbits,
            )

        order = len(subgroup)
        label_count[order] = label_count.get(order, 0) + 1
        suffix = chr(ord("a") + label_count[order] - 1)
        label = "1" if trivial else f"o{order}{suffix}"
        strata.append(Stratum(
            subgroup, label, class_size, len(weyl_cosets),
            components[0].rank if components else 0,
            tuple(orbits), fiber_plain,
        ))

    quotient = quotient_poincare(action)
    resolution = sum((s.x_poly for s in strata), IntPolynomial.zero())

    # closure poset: orbit node a lies in the closure of orbit node b
    edges = []
    nodes = [
        (si, oi, orbit)
        for si, s in enumerate(strata)
        for oi, orbit in enumerate(s.orbits)
    ]
    for ai, (si, oi, oa) in enumerate(nodes):
        for bi, (sj, oj, ob) in enumerate(nodes):
            if ai == bi:
                continue
            if any(m.contains(oa.representative) for m in ob.members):
                edges.append(((sj, oj), (si, oi)))

    report = StrataReport(action, tuple(strata), quotient, resolution, tuple(edges))
    assert report.y_total == quotient, (
        "strata do not partition the quotient polynomial"
    )
    return report


def _assert_frobenius(action, components, weyl_cosets, member_index, family,
                      supersets, image_index, orbits):
    """Summing over all components with the full Weyl group must agree
    with summing orbit representatives over their stabilizers."""
    per_component_deeper = []
    for comp in components:
        per_component_deeper.append([
            j for j in range(len(family))
            if family[j].rank < comp.rank and comp.contains(family[j])
        ])
    y_alt = IntPolynomial.zero()
    for coset in weyl_cosets:
        n = coset[0]
        for k, comp in enumerate(components):
            if member_index[comp.apply_matrix(n).key] != k:
                continue
            deeper = per_component_deeper[k]
            images = {i: image_index(n, i) for i in deeper}
            y_alt = y_alt + _moebius_trace(
                action, comp, deeper, supersets, family, images, n
            )
    y_alt = y_alt.divide_exact(len(weyl_cosets))
    y_orbits = sum((o.y_poly for o in orbits), IntPolynomial.zero())
    assert y_alt == y_orbits, "orbit/stabilizer bookkeeping is inconsistent"


def stratum_closure_quotient_poincare(orbit: ComponentOrbit, d: int) -> IntPolynomial:
    """Quotient polynomial of the closed image of one component orbit.

    Averages the torus traces of the stabilizer over the representative,
    with no deeper-locus subtraction (translations do not act on
    cohomology).
    """
    power = 2 * d
    total = IntPolynomial.zero()
    for coset in orbit.stabilizer_cosets:
        eta = orbit.representative.induced_lattice_matrix(coset[0])
        total = total + det_one_plus_t(eta, power)
    return total.divide_exact(len(orbit.stabilizer_cosets))


def open_stratum_virtual(stratum: Stratum, fiber_weighted: bool = False) -> IntPolynomial:
    """Virtual polynomial of the open part of a stratum, downstairs.

    With ``fiber_weighted`` the resolution fiber multiplies each Weyl
    trace first, giving the stratum's share of the resolution polynomial.
    """
    return stratum.x_poly if fiber_weighted else stratum.y_poly


def assemble_resolution_poincare(action: IntegralAction) -> IntPolynomial:
    """Poincaré polynomial predicted for a crepant resolution of the quotient.

    Valid under the locally-product and McKay hypotheses on the
    resolution, which are assumptions of the computation, not conclusions.

    >>> from .catalog import catalog
    >>> print(assemble_resolution_poincare(catalog("octahedral_s4_sl3")))
    1 + 20*t^2 + 14*t^3 + 20*t^4 + t^6
    """
    return stratify(action).resolution


# ---------------------------------------------------------------------------
# manual strata ledgers


class ParamPoly:
    """A polynomial with coefficients linear in one integer parameter."""

    __slots__ = ("const", "linear")

    def __init__(self, const=None, linear=None):
        self.const = const if const is not None else IntPolynomial.zero()
        self.linear = linear if linear is not None else IntPolynomial.zero()

    def __add__(self, other):
        return ParamPoly(self.const + other.const, self.linear + other.linear)

    def __sub__(self, other):
        return ParamPoly(self.const - other.const, self.linear - other.linear)

    def times_poly(self, p: IntPolynomial) -> "ParamPoly":
        return ParamPoly(self.const * p, self.linear * p)

    def substitute(self, value: int) -> IntPolynomial:
        return self.const + value * self.linear

    def __eq__(self, other):
        return (
            isinstance(other, ParamPoly)
            and self.const == other.const
            and self.linear == other.linear
        )

    def __repr__(self):
        return f"ParamPoly(const={self.const!r}, linear={self.linear!r})"


class LedgerResult:
    __slots__ = ("symbolic", "value", "parameter", "substitution")

    def __init__(self, symbolic, value, parameter, substitution):
        self.symbolic = symbolic
        self.value = value
        self.parameter = parameter
        self.substitution = substitution


def _ledger_poly(obj, parameter) -> ParamPoly:
    if isinstance(obj, list):
        return ParamPoly(IntPolynomial(obj))
    if isinstance(obj, dict):
        if "molien" in obj:
            spec = obj["molien"]
            try:
                gens = [tuple(tuple(int(x) for x in row) for row in g)
                        for g in spec["generators"]]
                d = int(spec["d"])
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedLedger(f"bad molien spec: {exc}") from None
            from .groupcore import generate_group

            return ParamPoly(quotient_poincare(generate_group(gens, d=d)))
        const = IntPolynomial(obj.get("const", []))
        lin = IntPolynomial(obj.get("param", []))
        if lin and parameter is None:
            raise MalformedLedger("parameter used but not declared")
        return ParamPoly(const, lin)
    raise MalformedLedger(f"cannot read polynomial from {obj!r}")


def _ledger_scalar(obj, parameter):
    if isinstance(obj, int):
        return (obj, 0)
    if isinstance(obj, dict):
        c = int(obj.get("const", 0))
        m = int(obj.get("param", 0))
        if m and parameter is None:
            raise MalformedLedger("parameter used but not declared")
        return (c, m)
    raise MalformedLedger(f"cannot read multiplicity from {obj!r}")


def assemble_from_ledger(doc: dict) -> LedgerResult:
    """Evaluate a hand-authored strata ledger.

    Each entry contributes ``(base - sum(mult * poly)) * fiber``; base
    coefficients and multiplicities may be linear in one declared integer
    parameter, and an optional substitution map produces a plain result.

    >>> res = assemble_from_ledger({"entries": []})
    >>> res.symbolic.const
    IntPolynomial([])
    """
    if not isinstance(doc, dict) or "entries" not in doc:
        raise MalformedLedger("ledger must be a mapping with an 'entries' list")
    parameter = doc.get("parameter")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise MalformedLedger("'entries' must be a list")
    total = ParamPoly()
    for entry in entries:
        if not isinstance(entry, dict) or "base" not in entry:
            raise MalformedLedger(f"bad entry {entry!r}")
        base = _ledger_poly(entry["base"], parameter)
        fiber = IntPolynomial(entry.get("fiber", [1]))
        for sub in entry.get("subtract", ()):
            if not isinstance(sub, dict) or "poly" not in sub:
                raise MalformedLedger(f"bad subtraction {sub!r}")
            c, m = _ledger_scalar(sub.get("multiplicity", 1), parameter)
            poly = IntPolynomial(sub["poly"])
            base = base - ParamPoly(c * poly, m * poly)
        total = total + base.times_poly(fiber)
    substitution = doc.get("substitution")
    value = None
    if substitution is not None:
        if parameter is None:
            value = total.substitute(0)
            if total.linear:
                raise MalformedLedger("substitution given but no parameter declared")
        else:
            try:
                value = total.substitute(int(substitution[parameter]))
            except (KeyError, TypeError, ValueError):
                raise MalformedLedger(
                    f"substitution must give an integer for {parameter!r}"
                ) from None
    elif not total.linear:
        value = total.const
    return LedgerResult(total, value, parameter, substitution)
