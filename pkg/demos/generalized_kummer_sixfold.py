"""The six-dimensional generalized Kummer manifold, stratum by stratum.

The symmetric group on four letters acts on the sum-zero sublattice of
its permutation lattice; tensoring with an abelian surface gives an
action on a six-dimensional torus whose crepant resolution is the
dimension-6 member of the generalized Kummer series.  The strata are
indexed by the partitions of 4, and every partition-combinatorics fact
has an exact geometric counterpart computed here.
"""

from math import gcd
from functools import reduce

from kummer import catalog, component_count, partition_fiber, stratify, young_fiber
from kummer.catalog import standard_rep_matrix
from kummer.mckay import partitions

s4 = catalog("s4_standard_d2")
print(f"group: order {s4.order} on a rank-3 lattice, abelian-surface factor")
print()

print("partition | components (= gcd^4) | fiber polynomial")
for partition in sorted(partitions(4), reverse=True):
    perm = []
    start = 0
    for part in partition:
        perm.extend(list(range(start + 1, start + part)) + [start])
        start += part
    sigma = standard_rep_matrix(tuple(perm), 4)
    comps = component_count(s4, sigma)
    assert comps == reduce(gcd, partition) ** 4
    print(f"  {str(partition):>12} | {comps:>4} | {young_fiber(partition)}")
print()
assert partition_fiber(4) == young_fiber((4,))

report = stratify(s4)
print("strata (isotropy order | quotient stratum | resolution stratum):")
for s in report.strata:
    print(f"  {s.order:>2} | {s.y_poly} | {s.x_poly}")
print()
print(f"quotient polynomial  : {report.quotient}")
print(f"resolution polynomial: {report.resolution}")
print(f"Euler number         : {report.resolution(-1)}")
