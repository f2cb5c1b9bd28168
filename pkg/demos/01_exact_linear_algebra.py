"""Exact integer linear algebra: Smith forms, kernels, cokernels, Gram.

Run:  python3 demos/01_exact_linear_algebra.py
"""

from k3motive import (
    IntMatrix,
    cokernel_structure,
    det,
    gram_determinant,
    kernel_basis,
    smith_normal_form,
)

# A Smith normal form is a diagonalization U A V = S by unimodular U, V,
# with the diagonal entries forming a divisibility chain.
a = IntMatrix([[2, 0], [0, 3]])
dec = smith_normal_form(a)
print("A =", a.tolist())
print("diagonal:", dec.diagonal)           # (1, 6), not (2, 3)
print("U =", dec.U.tolist())
print("V =", dec.V.tolist())
print("U A V == S:", (dec.U @ a @ dec.V) == dec.S)
print("det U =", det(dec.U), " det V =", det(dec.V))

# The cokernel Z^rows / im(A) in invariant-factor form.  For a square
# nonsingular matrix its order is |det A|.
b = IntMatrix([[6, 4, 2], [4, 8, 10], [2, 10, 4]])
print("\nB =", b.tolist())
print("coker(B):", cokernel_structure(b))
print("|det B| =", abs(det(b)))

# Integer kernels are saturated lattices: the basis below extends to a
# basis of the ambient lattice.
c = IntMatrix([[1, 2, 3], [2, 4, 6]])
k = kernel_basis(c)
print("\nkernel of", c.tolist(), "has basis columns", k.tolist())
print("C k == 0:", (c @ k).is_zero())

# Gram determinants drive the monodromy-pairing discriminants later on:
# eight faces with coefficients +-1 under the identity pairing give 8.
print("\nGram of the all-ones vector of length 8:",
      gram_determinant([[1] * 8], IntMatrix.identity(8)))

# Entries never overflow: everything runs on Python integers.
big = IntMatrix([[10 ** 40, 1], [1, 10 ** 40]])
print("\nSNF of a 40-digit matrix:", smith_normal_form(big).diagonal)
