"""
Cones, tensor products and homology
===================================

Complexes are bounded and degreewise free over Z/n, with homological
grading. Homology comes back as invariant factors per degree.
"""

from ghzn import cone, dualize, homology, is_contractible, scalar_map, sphere, suspend, tensor

n = 4
S = sphere(n)
C = cone(scalar_map(S, 2)).complex          # 0 -> Z/4 --2--> Z/4 -> 0
print("H(S)         =", homology(S).as_dict())
print("H(cone 2)    =", homology(C).as_dict())
print("H(Sigma^2 C) =", homology(suspend(C, 2)).as_dict())

# the tensor square has ranks 1, 2, 1
T = tensor(C, C)
print("ranks of C(x)C:", {i: T.rank(i) for i in T.degrees}, "H =", homology(T).as_dict())

# the dual mirrors degrees
print("H(DC)        =", homology(dualize(C)).as_dict())

# the cone of a unit is contractible, with an explicit contraction
h = is_contractible(cone(scalar_map(S, 3)).complex)
print("cone(3) contractible:", h is not None, "s =", {i: m.tolist() for i, m in h.components.items()})
