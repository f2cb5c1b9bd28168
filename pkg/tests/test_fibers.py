import random

import pytest

from k3motive.deltaset import Shape, homology, recognize
from k3motive.fibers import (
    Component,
    DegenerationFiber,
    DoubleCurve,
    InvalidFiberError,
    K3Smooth,
    NonKulikovError,
    Other,
    Rational,
    RuledElliptic,
    TriplePoint,
    clemens_polytope,
    component_betti,
    component_class,
    degeneration_type,
    open_component_classes,
    smooth_locus_class,
    strata_classes,
    validate,
)
from k3motive.motives import EllipticCurveAtom, MotiveClass, POINT

L = MotiveClass.lefschetz
E = EllipticCurveAtom("E")


def tetra_fiber(profile=(7, 7, 7, 7)):
    comps = [Component(i, Rational(profile[i])) for i in range(4)]
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    curves = [DoubleCurve("c%d%d" % p, p, 0) for p in pairs]
    cid = {frozenset(p): "c%d%d" % p for p in pairs}
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    triples = [TriplePoint("t%d" % i,
                           (cid[frozenset((a, b))], cid[frozenset((a, c))],
                            cid[frozenset((b, c))]))
               for i, (a, b, c) in enumerate(facets)]
    return DegenerationFiber.of("tetra", comps, curves, triples)


def chain_fiber(m, ends=(10, 10), middles=None):
    comps = [Component(0, Rational(ends[0]))]
    for i in range(1, m):
        comps.append(Component(i, RuledElliptic("E", 0 if middles is None
                                                else middles[i - 1])))
    comps.append(Component(m, Rational(ends[1])))
    curves = [DoubleCurve("c%d" % i, (i, i + 1), 1, curve="E")
              for i in range(m)]
    return DegenerationFiber.of("chain", comps, curves)


class TestValidate:
    def test_tetra_valid(self):
        assert validate(tetra_fiber()) == []

    def test_self_intersection(self):
        f = DegenerationFiber.of(
            "bad", [Component(0, Rational(0))],
            [DoubleCurve("c", (0, 0), 0)])
        msgs = validate(f)
        assert any("self-intersecting" in m for m in msgs)

    def test_non_adjacent_triple(self):
        comps = [Component(i, Rational(0)) for i in range(4)]
        curves = [DoubleCurve("a", (0, 1), 0), DoubleCurve("b", (1, 2), 0),
                  DoubleCurve("c", (2, 3), 0)]
        f = DegenerationFiber.of("bad", comps, curves,
                                 [TriplePoint("t", ("a", "b", "c"))])
        msgs = validate(f)
        assert len(msgs) == 1
        assert "pairwise adjacent" in msgs[0]

    def test_unknown_component(self):
        f = DegenerationFiber.of(
            "bad", [Component(0, Rational(0))],
            [DoubleCurve("c", (0, 9), 0)])
        assert any("unknown component" in m for m in validate(f))

    def test_genus_one_needs_atom(self):
        f = DegenerationFiber.of(
            "bad", [Component(0, Rational(0)), Component(1, Rational(0))],
            [DoubleCurve("c", (0, 1), 1)])
        assert any("elliptic atom" in m for m in validate(f))

    def test_other_betti_consistency(self):
        good = Other(MotiveClass.one() + L(1, 2) + L(2), betti=(1, 0, 2))
        bad = Other(MotiveClass.one() + L(1, 2) + L(2), betti=(1, 0, 5))
        f = DegenerationFiber.of("x", [Component(0, good)])
        assert validate(f) == []
        f = DegenerationFiber.of("x", [Component(0, bad)])
        assert any("Betti" in m for m in validate(f))


class TestComponentClasses:
    def test_rational(self):
        assert component_class(Rational(7)) == \
            MotiveClass.one() + L(1, 7) + L(2)
        assert component_betti(Rational(7)) == (1, 0, 7, 0, 1)

    def test_ruled_elliptic(self):
        cls = component_class(RuledElliptic("E", 3))
        e = MotiveClass.of_atom(E)
        assert cls == e + e.twist(-1) + L(1, 3)
        assert component_betti(RuledElliptic("E", 3)) == (1, 2, 5, 2, 1)

    def test_k3(self):
        cls = component_class(K3Smooth())
        assert cls.euler_characteristic() == 24
        assert component_betti(K3Smooth()) == (1, 0, 22, 0, 1)


class TestClemensPolytope:
    def test_tetra(self):
        cl = clemens_polytope(tetra_fiber())
        assert cl.counts == (4, 6, 4)
        assert recognize(cl) == Shape.SPHERE2

    def test_chain(self):
        cl = clemens_polytope(chain_fiber(2))
        assert cl.counts == (3, 2)
        assert recognize(cl) == Shape.INTERVAL

    def test_point(self):
        f = DegenerationFiber.of("smooth", [Component(0, K3Smooth())])
        assert recognize(clemens_polytope(f)) == Shape.POINT

    def test_invalid_rejected(self):
        f = DegenerationFiber.of(
            "bad", [Component(0, Rational(0))],
            [DoubleCurve("c", (0, 0), 0)])
        with pytest.raises(InvalidFiberError):
            clemens_polytope(f)

    def test_betti_invariant_under_relabelling(self):
        rng = random.Random(13)
        base = tetra_fiber()
        cl0 = clemens_polytope(base)
        ranks = [homology(cl0, q) for q in range(3)]
        names = ["x", "q", "zz", "m"]
        for _ in range(4):
            rng.shuffle(names)
            remap = {i: names[i] for i in range(4)}
            comps = [Component(remap[c.id], c.kind) for c in base.components]
            curves = [DoubleCurve(d.id, (remap[d.on[0]], remap[d.on[1]]),
                                  d.genus, d.curve)
                      for d in base.double_curves]
            f = DegenerationFiber.of("relabelled", comps, curves,
                                     base.triple_points)
            cl = clemens_polytope(f)
            assert [homology(cl, q) for q in range(3)] == ranks


class TestStrata:
    def test_tetra_profile_7777(self):
        y0, y1, y2 = strata_classes(tetra_fiber())
        assert y0 == 4 * MotiveClass.one() + L(1, 28) + L(2, 4)
        assert y1 == 6 * (MotiveClass.one() + L(1))
        assert y2 == 4 * MotiveClass.one()

    def test_chain_m2(self):
        f = chain_fiber(2, ends=(10, 10))
        y0, y1, y2 = strata_classes(f)
        e = MotiveClass.of_atom(E)
        assert y0 == e + e.twist(-1) + 2 * MotiveClass.one() + L(1, 20) + L(2, 2)
        assert y1 == 2 * e
        assert y2.is_zero()

    def test_no_triples(self):
        _, _, y2 = strata_classes(chain_fiber(3))
        assert y2.is_zero()


class TestSmoothLocus:
    def test_tetra(self):
        # profile sums to 28 = 20 + 2 * 4
        cls = smooth_locus_class(tetra_fiber())
        assert cls == 4 * MotiveClass.one() + L(1, 16) + L(2, 4)

    def test_chain_m2(self):
        cls = smooth_locus_class(chain_fiber(2))
        e = MotiveClass.of_atom(E)
        expected = 2 * MotiveClass.one() - 3 * e + L(1, 20) + e.twist(-1) \
            + L(2, 2)
        assert cls == expected

    def test_single_k3(self):
        f = DegenerationFiber.of("smooth", [Component(0, K3Smooth())])
        assert smooth_locus_class(f) == component_class(K3Smooth())

    def test_matches_per_component_enumeration(self):
        for f in [tetra_fiber(), chain_fiber(3),
                  tetra_fiber((10, 10, 8, 0))]:
            total = MotiveClass.zero()
            for piece in open_component_classes(f):
                total = total + piece
            assert total == smooth_locus_class(f)

    def test_chi_24(self):
        for f in [tetra_fiber(), chain_fiber(1), chain_fiber(4)]:
            assert smooth_locus_class(f).euler_characteristic() == 24


class TestDegenerationType:
    def test_chain_is_type2(self):
        assert degeneration_type(chain_fiber(3)) == 2

    def test_tetra_is_type3(self):
        assert degeneration_type(tetra_fiber()) == 3

    def test_point_is_type1(self):
        f = DegenerationFiber.of("smooth", [Component(0, K3Smooth())])
        assert degeneration_type(f) == 1

    def test_torus_shape_rejected(self):
        # 3x3 grid torus as a fiber: valid data, non-Kulikov dual complex
        m = 3
        vid = lambda i, j: (i % m) * m + (j % m)
        comps = [Component(v, Rational(0)) for v in range(m * m)]
        curves = []
        cix = {}
        for i in range(m):
            for j in range(m):
                for kind, (a, b) in (("h", ((i, j), (i + 1, j))),
                                     ("v", ((i, j), (i, j + 1))),
                                     ("d", ((i, j), (i + 1, j + 1)))):
                    name = "%s%d%d" % (kind, i, j)
                    cix[(kind, i, j)] = name
                    curves.append(DoubleCurve(name, (vid(*a), vid(*b)), 0))
        triples = []
        for i in range(m):
            for j in range(m):
                triples.append(TriplePoint(
                    "L%d%d" % (i, j),
                    (cix[("h", i, j)], cix[("d", i, j)],
                     cix[("v", (i + 1) % m, j)])))
                triples.append(TriplePoint(
                    "U%d%d" % (i, j),
                    (cix[("v", i, j)], cix[("d", i, j)],
                     cix[("h", i, (j + 1) % m)])))
        f = DegenerationFiber.of("torus", comps, curves, triples)
        assert validate(f) == []
        with pytest.raises(NonKulikovError):
            degeneration_type(f)

    def test_wrong_decorations_rejected(self):
        # chain with a rational middle component
        comps = [Component(0, Rational(10)), Component(1, Rational(0)),
                 Component(2, Rational(10))]
        curves = [DoubleCurve("c0", (0, 1), 1, curve="E"),
                  DoubleCurve("c1", (1, 2), 1, curve="E")]
        f = DegenerationFiber.of("bad", comps, curves)
        with pytest.raises(NonKulikovError):
            degeneration_type(f)

    def test_mixed_elliptic_atoms_rejected(self):
        comps = [Component(0, Rational(10)), Component(1, Rational(10))]
        curves = [DoubleCurve("c0", (0, 1), 1, curve="E1")]
        f1 = DegenerationFiber.of("ok", comps, curves)
        assert degeneration_type(f1) == 2
        comps3 = [Component(0, Rational(10)),
                  Component(1, RuledElliptic("E1")),
                  Component(2, Rational(10))]
        curves3 = [DoubleCurve("c0", (0, 1), 1, curve="E1"),
                   DoubleCurve("c1", (1, 2), 1, curve="E2")]
        f2 = DegenerationFiber.of("bad", comps3, curves3)
        with pytest.raises(NonKulikovError):
            degeneration_type(f2)

    def test_sphere_with_elliptic_curve_rejected(self):
        f = tetra_fiber()
        curves = list(f.double_curves)
        curves[0] = DoubleCurve(curves[0].id, curves[0].on, 1, curve="E")
        g = DegenerationFiber.of("bad", f.components, curves, f.triple_points)
        with pytest.raises(NonKulikovError):
            degeneration_type(g)


class TestEulerCount:
    def test_v_equals_f_half_plus_2(self):
        f = tetra_fiber()
        v = len(f.components)
        e = len(f.double_curves)
        faces = len(f.triple_points)
        assert v - e + faces == 2
        assert 3 * faces == 2 * e
        assert v == faces // 2 + 2
