"""The localized Grothendieck-ring fragment and its four realizations.

Run:  python3 demos/02_motive_ring.py
"""

from k3motive import EllipticCurveAtom, MotiveClass, UnsupportedProductError

L = MotiveClass.lefschetz          # L = [A^1]; L(n) is its n-th power
one = MotiveClass.one()
E = MotiveClass.of_atom(EllipticCurveAtom("E"))

# A rational surface with a = 16 exceptional contributions:
surface = one + L(1, 16) + L(2)
print("class:", surface)

# Tate twists multiply by L^(-n): twisting by -1 multiplies by L.
print("Z(0) twisted by -1:", one.twist(-1))
print("[E] twisted by -1:", E.twist(-1))

# Multiplication is partial by design.  Point-based factors distribute;
# a product of two curve atoms is rejected rather than guessed.
p1 = one + L(1)                     # class of the projective line
print("[E] * [P^1] =", E * p1)
try:
    E * E
except UnsupportedProductError as exc:
    print("E * E ->", type(exc).__name__)

# Realizations: E-polynomial, Euler characteristic, the reduction killing
# the Tate twist, and point counting with its residue at q = 1.
print("\ne-polynomial of the surface:", surface.e_polynomial())
print("chi:", surface.euler_characteristic())
print("serre reduction:", surface.serre_reduce())
counts = surface.point_count()
print("point count in q:", counts, " residue at 1:", counts.at_one())

# The elliptic curve visibly survives the reduction (u-dependence), while
# pure Tate classes collapse to their Euler characteristic.
print("serre reduction of [E]:", E.serre_reduce())
