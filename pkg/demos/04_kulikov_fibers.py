"""Degeneration fibers: validation, dual complexes, integrals, closed forms.

Run:  python3 demos/04_kulikov_fibers.py
"""

from k3motive import (
    EllipticCurveAtom,
    RamifiedParams,
    acampo_chi,
    build_type2_chain,
    build_type3,
    clemens_polytope,
    degeneration_type,
    integral_kulikov,
    recognize,
    serre_hodge_check,
    smooth_locus_class,
    strata_classes,
    closed_form_integral,
    validate,
    verify_fiber,
)

# A chain fiber: two rational ends, elliptic-ruled interior.
chain = build_type2_chain(3)
print("chain of length 3:", [c.kind for c in chain.components])
print("valid:", validate(chain) == [])
print("dual complex:", recognize(clemens_polytope(chain)).name)
print("type:", degeneration_type(chain))

# Its motivic integral is the class of the smooth locus, and matches the
# closed form with discriminant r1 = m^2 = 9.
integral = integral_kulikov(chain)
closed = closed_form_integral(
    RamifiedParams(e=1, s=2, r=9, elliptic_atom=EllipticCurveAtom("E")))
print("\nintegral:   ", integral)
print("closed form:", closed)
print("equal:", integral == closed)

# A sphere fiber over the octahedron: 8 triple points force r2 = 8.
sphere = build_type3("octahedron")
y0, y1, y2 = strata_classes(sphere)
print("\noctahedron fiber strata: ", y0, "|", y1, "|", y2)
print("smooth locus:", smooth_locus_class(sphere))
print("chi:", acampo_chi(sphere), " serre identity:",
      serre_hodge_check(sphere))

# The one-call pipeline.
report = verify_fiber(sphere)
print("\nverify: s=%d r=%d match=%s" %
      (report.type_s, report.r, report.match))

# The closed forms behave under base change: scaling the ramification by
# e is the same as scaling the discriminant by e^2.
from k3motive import scaling_check
print("scaling law at (e=2, r2=2):",
      scaling_check(RamifiedParams(e=2, s=3, r=2), 1))
