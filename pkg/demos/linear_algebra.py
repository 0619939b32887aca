"""
Linear algebra over a ring with zero divisors
=============================================

Row echelon forms are not canonical over Z/n. The Howell form is, and it
drives solving, kernels and the structure of finite modules.
"""

import numpy as np

from ghzn import MatZn, howell_form, kernel_basis, module_structure, solve_linear
from ghzn.linalg import left_obstruction

a = MatZn(4, [[1, 2], [0, 2]])
hf = howell_form(a)
print("Howell form over Z/4:\n", hf.h.a)
print("pivots (row, col, value):", hf.pivots)

# 2x = 2 has a solution mod 4, 2x = 1 does not
two = MatZn(4, [[2]])
print("solve 2x = 2:", solve_linear(two, [2]))
print("solve 2x = 1:", solve_linear(two, [1]))

# when there is no solution, a left certificate says why: y A = 0 but y b != 0
print("certificate for 2x = 1:", left_obstruction(two, [1]))

# kernels are generated by rows of the returned matrix
print("kernel of [[2, 4]] over Z/8:\n", kernel_basis(MatZn(8, [[2, 4]])).a)

# Z/6 / (2) + Z/6 / (3) is cyclic of order 6
print("invariant factors:", module_structure(2, MatZn(6, np.diag([2, 3]))).tolist())
