"""Constructors for the example families: chains, sphere fibers, Kummer.

``build_type2_chain`` and ``build_type3`` produce honest Kulikov fibers.
``build_kummer`` models the torus-quotient degeneration of a Kummer surface:
the nerve is the quotient of an m1 x m2 grid torus by simultaneous negation,
the component census comes from the vertex orbits, and the integral is the
sum of the census classes.  The discriminant r2 is always computed from the
rank-one lattice pairing with value 1/(2 m1 m2), never from the grid-quotient
Gram pairing: the artificial triangulation is not the dual complex of a
semi-stable model, and its fiber is deliberately typed so that the Kulikov
evaluators reject it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .deltaset import (
    DeltaSet,
    Involution,
    Shape,
    quotient_by_involution,
    recognize,
    refine_barycentric,
    refine_edge_split,
)
from .fibers import (
    Component,
    DegenerationFiber,
    DoubleCurve,
    K3Smooth,
    Other,
    Rational,
    RuledElliptic,
    TriplePoint,
    WeakNeronData,
)
from .integrals import GeometricRealizabilityWarning
from .motives import MotiveClass

_L = MotiveClass.lefschetz

# open-stratum classes of the Kummer special fiber components: a two-torus
# for a generic vertex orbit; for a fixed vertex, the four-point blow-up of
# the two-torus modulo inversion, whose invariant E-polynomial is
# u^2 v^2 + 4uv + 1
KUMMER_GENERIC_CLASS = MotiveClass.one() + _L(1, -2) + _L(2)
KUMMER_SPECIAL_CLASS = MotiveClass.one() + _L(1, 4) + _L(2)

# classes of the complete components (closures in the model)
KUMMER_GENERIC_COMPLETE = MotiveClass.one() + _L(1, 2) + _L(2)
KUMMER_SPECIAL_COMPLETE = MotiveClass.one() + _L(1, 6) + _L(2)


# ---------------------------------------------------------------------------
# built-in sphere triangulations
# ---------------------------------------------------------------------------

def _from_facets(num_vertices: int, facets) -> DeltaSet:
    facets = [tuple(sorted(f)) for f in facets]
    edges = sorted({(f[i], f[j]) for f in facets
                    for i in range(3) for j in range(i + 1, 3)})
    eid = {e: i for i, e in enumerate(edges)}
    edge_faces = [(b, a) for a, b in edges]
    tri_faces = [(eid[(b, c)], eid[(a, c)], eid[(a, b)])
                 for a, b, c in facets]
    return DeltaSet(num_vertices, [edge_faces, tri_faces])


def tetrahedron() -> DeltaSet:
    return _from_facets(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def octahedron() -> DeltaSet:
    return _from_facets(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 1, 4),
                            (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 4, 5)])


def icosahedron() -> DeltaSet:
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 6), (2, 6, 7), (2, 3, 7), (3, 7, 8), (3, 4, 8),
              (4, 8, 9), (4, 5, 9), (5, 9, 10), (1, 5, 10), (1, 6, 10),
              (6, 7, 11), (7, 8, 11), (8, 9, 11), (9, 10, 11), (6, 10, 11)]
    return _from_facets(12, facets)


BUILTIN_SPHERES = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
}


# ---------------------------------------------------------------------------
# Kulikov fibers
# ---------------------------------------------------------------------------

class ProfileError(ValueError):
    """A surface-invariant profile has the wrong length or total."""


def _default_profile(count: int, total: int) -> list[int]:
    base, rem = divmod(total, count)
    return [base + 1 if i < rem else base for i in range(count)]


def build_type1_smooth() -> DegenerationFiber:
    """The trivial smooth fiber: a single K3 component."""
    return DegenerationFiber.of("type1", [Component(0, K3Smooth())])


def build_type2_chain(m: int, a_profile=None) -> DegenerationFiber:
    """Chain fiber with m double curves: rational ends, elliptic-ruled
    interior, every double curve a copy of one elliptic curve E.

    The profile lists the m+1 surface invariants a_i and must sum to 20;
    the default puts 10 on each end.
    """
    if m < 1:
        raise ValueError("chain length m must be >= 1")
    if a_profile is None:
        a_profile = [10] + [0] * (m - 1) + [10]
    a_profile = [int(a) for a in a_profile]
    if len(a_profile) != m + 1:
        raise ProfileError("profile needs %d entries, got %d"
                           % (m + 1, len(a_profile)))
    if sum(a_profile) != 20:
        raise ProfileError("profile must sum to 20, got %d" % sum(a_profile))
    if any(a < 0 for a in a_profile):
        raise ProfileError("profile entries must be non-negative")
    comps = [Component(0, Rational(a_profile[0]))]
    comps += [Component(i, RuledElliptic("E", a_profile[i]))
              for i in range(1, m)]
    comps.append(Component(m, Rational(a_profile[m])))
    curves = [DoubleCurve("c%d" % i, (i, i + 1), 1, curve="E")
              for i in range(m)]
    return DegenerationFiber.of("type2_m%d" % m, comps, curves)


def build_type3(tri, a_profile=None) -> DegenerationFiber:
    """Sphere fiber over a triangulation: rational components on vertices,
    rational double curves on edges, triple points on faces.

    ``tri`` is a Delta-set or a built-in name.  The profile must sum to
    20 + 2 * (number of faces); the default spreads it as evenly as
    integers allow.
    """
    if isinstance(tri, str):
        try:
            tri = BUILTIN_SPHERES[tri]()
        except KeyError:
            raise ValueError("unknown triangulation %r" % (tri,)) from None
    if recognize(tri) != Shape.SPHERE2:
        raise ValueError("triangulation is not a 2-sphere")
    nv, ne, nf = tri.n(0), tri.n(1), tri.n(2)
    total = 20 + 2 * nf
    if a_profile is None:
        a_profile = _default_profile(nv, total)
    a_profile = [int(a) for a in a_profile]
    if len(a_profile) != nv:
        raise ProfileError("profile needs %d entries, got %d"
                           % (nv, len(a_profile)))
    if sum(a_profile) != total:
        raise ProfileError("profile must sum to %d, got %d"
                           % (total, sum(a_profile)))
    if any(a < 0 for a in a_profile):
        raise ProfileError("profile entries must be non-negative")
    comps = [Component(v, Rational(a_profile[v])) for v in range(nv)]
    curves = []
    for e in range(ne):
        head, tail = tri.faces(1, e)
        curves.append(DoubleCurve(e, (tail, head), 0))
    triples = [TriplePoint(t, tri.faces(2, t)) for t in range(nf)]
    return DegenerationFiber.of("type3_f%d" % nf, comps, curves, triples)


def refine_sphere(tri: DeltaSet, steps: int, style: str = "barycentric"
                  ) -> DeltaSet:
    """Iterated refinement that stays a 2-sphere.

    ``style`` is "barycentric" (faces x6) or "edge_split" (faces x4).
    Beyond 20 faces the result exceeds the geometric K3 bound and is only
    good for complex-level property tests, not for fiber building.
    """
    if recognize(tri) != Shape.SPHERE2:
        raise ValueError("input is not a 2-sphere")
    refine = {"barycentric": refine_barycentric,
              "edge_split": refine_edge_split}[style]
    out = tri
    for _ in range(steps):
        out = refine(out)
    if steps and recognize(out) != Shape.SPHERE2:
        raise AssertionError("refinement left the 2-sphere class")
    return out


# ---------------------------------------------------------------------------
# Kummer fibers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KummerParams:
    """Diagonal valuations (m1, m2) of the period lattice; both even, so
    that the two-torsion is rational and negation fixes exactly four
    components."""

    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < 2 or self.m2 < 2:
            raise ValueError("valuations must be >= 2")
        if self.m1 % 2 or self.m2 % 2:
            raise ValueError("valuations must be even")


@dataclass(frozen=True)
class Census:
    generic: int
    special: int

    @property
    def total(self) -> int:
        return self.generic + self.special


@dataclass(frozen=True)
class KummerReport:
    fiber: DegenerationFiber
    nerve: DeltaSet
    component_census: Census
    r2_abelian: int
    r2_kummer: int
    integral: MotiveClass

    def neron_data(self) -> WeakNeronData:
        items = [(KUMMER_SPECIAL_CLASS, 0)] * self.component_census.special
        items += [(KUMMER_GENERIC_CLASS, 0)] * self.component_census.generic
        return WeakNeronData.of(items)


def _grid_tables(m1, m2):
    if m1 < 1 or m2 < 1:
        raise ValueError("grid sides must be positive")
    vid = lambda i, j: (i % m1) * m2 + (j % m2)
    edges = []
    eid = {}
    for i in range(m1):
        for j in range(m2):
            for kind, (a, b) in (("h", ((i, j), (i + 1, j))),
                                 ("v", ((i, j), (i, j + 1))),
                                 ("d", ((i, j), (i + 1, j + 1)))):
                eid[(kind, i, j)] = len(edges)
                edges.append((vid(*b), vid(*a)))
    tris = []
    tid = {}
    for i in range(m1):
        for j in range(m2):
            tid[("L", i, j)] = len(tris)
            tris.append((eid[("v", (i + 1) % m1, j)], eid[("d", i, j)],
                         eid[("h", i, j)]))
            tid[("U", i, j)] = len(tris)
            tris.append((eid[("h", i, (j + 1) % m2)], eid[("d", i, j)],
                         eid[("v", i, j)]))
    return DeltaSet(m1 * m2, [edges, tris]), vid, eid, tid


def torus_grid(m1: int, m2: int) -> DeltaSet:
    """m1 x m2 grid torus with the uniform main-diagonal split."""
    return _grid_tables(m1, m2)[0]


def torus_negation(m1: int, m2: int) -> tuple[DeltaSet, Involution]:
    """The grid torus together with (i, j) -> (-i, -j).

    The involution is only free on positive simplices for even sides.
    """
    ds, vid, eid, tid = _grid_tables(m1, m2)
    vmap = [0] * (m1 * m2)
    emap = [0] * ds.n(1)
    tmap = [0] * ds.n(2)
    for i in range(m1):
        for j in range(m2):
            vmap[vid(i, j)] = vid(-i, -j)
            emap[eid[("h", i, j)]] = eid[("h", (-i - 1) % m1, (-j) % m2)]
            emap[eid[("v", i, j)]] = eid[("v", (-i) % m1, (-j - 1) % m2)]
            emap[eid[("d", i, j)]] = eid[("d", (-i - 1) % m1, (-j - 1) % m2)]
            tmap[tid[("L", i, j)]] = tid[("U", (-i - 1) % m1, (-j - 1) % m2)]
            tmap[tid[("U", i, j)]] = tid[("L", (-i - 1) % m1, (-j - 1) % m2)]
    return ds, Involution(ds, [vmap, emap, tmap])


def kummer_r2_abelian(p: KummerParams) -> tuple[int, int]:
    """Discriminant invariants from the lattice pairing.

    The pairing on the rank-one top lattice of the abelian surface has Gram
    value 1/(2 m1 m2), so r2(A) = 2 m1 m2; the degree-two quotient halves
    it for the Kummer surface.
    """
    gram = Fraction(1, 2 * p.m1 * p.m2)
    disc = gram  # one basis vector
    r2_a = Fraction(1, 1) / disc
    if r2_a.denominator != 1:
        raise ArithmeticError("abelian discriminant is not an integer")
    r2_a = int(r2_a)
    r2_x = r2_a // 2
    if r2_x > 20:
        warnings.warn(
            "r2 = %d exceeds 20: no geometric K3 fiber realizes it" % r2_x,
            GeometricRealizabilityWarning, stacklevel=2)
    return r2_a, r2_x


def build_kummer(p: KummerParams) -> KummerReport:
    """Torus-quotient model of a degenerate Kummer surface.

    The negation action is free on positive-dimensional grid simplices
    (2i = -1 has no solution modulo an even number), so the quotient nerve
    exists; it must pass 2-sphere recognition.  The integral is the sum of
    the census classes; the fiber records the complete component classes
    and is intentionally not a Kulikov fiber.
    """
    ds, sigma = torus_negation(p.m1, p.m2)
    if not sigma.is_free_on_positive():
        raise AssertionError("negation stabilizes a positive-dim simplex")
    fixed = sigma.fixed_vertices()
    if len(fixed) != 4:
        raise AssertionError("expected 4 fixed vertices, found %d"
                             % len(fixed))
    nerve = quotient_by_involution(ds, sigma)
    if recognize(nerve) != Shape.SPHERE2:
        raise AssertionError("quotient nerve failed 2-sphere recognition")

    n_total = p.m1 * p.m2 // 2 + 2
    census = Census(generic=n_total - 4, special=4)

    integral = (census.special * KUMMER_SPECIAL_CLASS
                + census.generic * KUMMER_GENERIC_CLASS)

    # orbit ids follow sorted representatives
    reps = sorted(v for v in range(ds.n(0)) if sigma.maps[0][v] >= v)
    orbit = {v: reps.index(min(v, sigma.maps[0][v])) for v in range(ds.n(0))}
    fixed_orbits = {orbit[v] for v in fixed}

    comps = []
    for o in range(nerve.n(0)):
        if o in fixed_orbits:
            kind = Other(KUMMER_SPECIAL_COMPLETE, betti=(1, 0, 6))
        else:
            kind = Other(KUMMER_GENERIC_COMPLETE, betti=(1, 0, 2))
        comps.append(Component(o, kind))
    curves = []
    for e in range(nerve.n(1)):
        head, tail = nerve.faces(1, e)
        curves.append(DoubleCurve(e, (tail, head), 0))
    triples = [TriplePoint(t, nerve.faces(2, t)) for t in range(nerve.n(2))]
    fiber = DegenerationFiber.of("kummer_%dx%d" % (p.m1, p.m2),
                                 comps, curves, triples)

    r2_a, r2_x = kummer_r2_abelian(p)
    return KummerReport(fiber=fiber, nerve=nerve, component_census=census,
                        r2_abelian=r2_a, r2_kummer=r2_x, integral=integral)
