"""
Which Z/n are von Neumann regular?
==================================

Regularity of Z/n is decided by brute force over the ring and compared with
squarefreeness of n. The annihilator criterion never fails over Z/n, so the
nilpotence criterion alone separates the two classes.
"""

from ghzn import ring_report

for n in (2, 4, 6, 8, 12, 30, 36, 105):
    r = ring_report(n)
    print(f"Z/{n:<4} regular={r.is_regular!s:5}  nilpotent-free={r.nilpotence_criterion!s:5}  "
          f"ann-ann={r.annihilator_criterion!s:5}  factors={list(r.prime_power_factors)}")

# the nilradical is generated by the product of the distinct primes
print("nilradical of Z/72:", ring_report(72).nilradical)
