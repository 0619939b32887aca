"""
A map that is zero on homology but not null-homotopic
=====================================================

Over Z/p^2 take Y = (Z/n --g--> Z/n) with g = n/p and let h act by g in
the top degree and by 0 in the bottom one. Every cycle goes to a boundary,
yet no homotopy exists. The witness carries a dual certificate that can be
checked with plain matrix products.
"""

from ghzn import canonical_counterexample, induced_homology_map, null_homotopy

for n in (4, 9, 12):
    report = canonical_counterexample(n)
    w = report.witness
    f = w.map
    print(f"Z/{n}: components {{{', '.join(f'{i}: {m.tolist()}' for i, m in f.components().items())}}}")
    print("   zero on homology:", induced_homology_map(f).is_zero())
    print("   null-homotopy:   ", null_homotopy(f))
    print("   obstruction value <y, f> =", w.obstruction.value(), "verified:", w.verify())

try:
    canonical_counterexample(30)
except ValueError as exc:
    print("Z/30:", exc)
