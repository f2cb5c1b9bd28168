"""Abstract triangulated sets: homology, recognition, refinement, quotients.

Run:  python3 demos/03_delta_sets_and_homology.py
"""

from k3motive import (
    DeltaSet,
    cycle_pairing,
    euler_characteristic,
    homology,
    octahedron,
    quotient_by_involution,
    recognize,
    refine_barycentric,
    top_cycle_generator,
    torus_negation,
)

# Delta-sets allow parallel edges: the 2-gon below is a circle.
circle2 = DeltaSet(2, [[(1, 0), (0, 1)]])
print("2-gon circle: H_0 =", homology(circle2, 0), " H_1 =",
      homology(circle2, 1))

# Octahedron: a sphere with all the expected homology.
sph = octahedron()
print("\noctahedron counts:", sph.counts, " chi =", euler_characteristic(sph))
print("shape:", recognize(sph).name)
for q in range(3):
    print("H_%d =" % q, homology(sph, q))

# The top homology generator of a sphere triangulation has all
# coefficients +-1, so its self-pairing counts the faces.
gen = top_cycle_generator(sph, 2)
print("generator coefficients:", gen.coefficients)
print("self-pairing:", cycle_pairing(gen, gen))

# Integral torsion is computed exactly: the projective plane.
rp2 = DeltaSet(2, [[(1, 0), (1, 0), (0, 0)], [(1, 0, 2), (0, 1, 2)]])
print("\nRP^2: H_1 =", homology(rp2, 1))

# Barycentric refinement does not change homology.
sd = refine_barycentric(rp2)
print("after refinement: counts", sd.counts, " H_1 =", homology(sd, 1))

# Quotients by involutions: the 2x2 grid torus modulo simultaneous
# negation is a tetrahedral sphere (fixed vertices are allowed; positive
# simplices must move freely).
torus, sigma = torus_negation(2, 2)
print("\ntorus counts:", torus.counts, " fixed vertices:",
      sigma.fixed_vertices())
nerve = quotient_by_involution(torus, sigma)
print("quotient counts:", nerve.counts, " shape:", recognize(nerve).name)
