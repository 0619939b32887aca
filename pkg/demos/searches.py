"""
Randomised searches
===================

Seeded searches draw homology-trivial maps between small random complexes
and decide null-homotopy exactly. Over squarefree n nothing is ever found.
Over Z/p^2 counterexamples appear, except when the target is S.
"""

from ghzn import SearchConfig, gh_search, target_sphere_search

for n in (6, 30, 4, 9):
    r = gh_search(SearchConfig(n, samples=300))
    where = f" at instance {r.witness_index}" if r.found else ""
    print(f"Z/{n:<3} {r.verdict}{where}  tested={r.instances_tested} nonzero={r.nonzero_maps}")

# maps into the sphere are always detected by homology, even over Z/4
r = target_sphere_search(SearchConfig(4, samples=300, mode="target_sphere"))
print("Z/4, target S:", r.verdict, f"({r.nonzero_maps} nonzero maps, all null-homotopic)")
