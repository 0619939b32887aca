"""
Koszul objects S/I
==================

S/I is the tensor product of the cones of the generators. Its bottom
homology is Z/n / I, its top homology is ann(I), and eta z is
null-homotopic exactly for z in I.
"""

from ghzn import homology, koszul, koszul_gh_suite, null_homotopy
from ghzn.complexes import unit_composite

b = koszul(12, [4, 6])
print("S/(4,6) over Z/12: H =", homology(b.complex).as_dict())
print("z with eta z ~ 0:", [z for z in range(12) if null_homotopy(unit_composite(b, z)) is not None])

for n, gens in [(6, [3]), (12, [4]), (8, [2])]:
    r = koszul_gh_suite(n, gens)
    print(f"Z/{n}, I={tuple(gens)}: structural={r.structural_pass} "
          f"relative={r.relative_gh} ({r.relative_reason.value})")
