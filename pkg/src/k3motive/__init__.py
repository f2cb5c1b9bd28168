"""Exact invariants of semi-stable K3 degenerations.

The package computes, from a purely combinatorial description of the special
fiber of a degeneration, the motivic integral in the localized Grothendieck
ring of varieties, the homology of the Clemens polytope, the combinatorial
rows of the integral weight spectral sequence, and the monodromy-pairing
discriminants -- and checks the closed-form evaluations against the direct
computations.
"""

from .intlinalg import (
    CokernelStructure,
    IntMatrix,
    SmithDecomposition,
    cokernel_structure,
    det,
    gram_determinant,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
)
from .motives import (
    EPolynomial,
    EllipticCurveAtom,
    MissingRealizationError,
    MotiveClass,
    OpaqueAtom,
    POINT,
    UnivariateLaurent,
    UnsupportedProductError,
)
from .deltaset import (
    CycleVector,
    DeltaSet,
    Involution,
    QuotientError,
    Shape,
    cohomology,
    cycle_pairing,
    euler_characteristic,
    homology,
    quotient_by_involution,
    recognize,
    refine_barycentric,
    refine_edge_split,
    relabel,
    top_cycle_generator,
)
from .fibers import (
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
    WeakNeronData,
    clemens_polytope,
    component_betti,
    component_class,
    degeneration_type,
    open_component_classes,
    smooth_locus_class,
    strata_classes,
    validate,
)
from .weightss import (
    E1Page,
    MonodromyGram,
    SpectralRow,
    boundary_rows,
    e1_page,
    e2_report,
    monodromy_gram,
    type2_h1_row,
)
from .integrals import (
    GeometricRealizabilityWarning,
    IntegralReport,
    RamifiedParams,
    acampo_chi,
    maximally_degenerate_closed_form,
    integral_from_neron,
    integral_kulikov,
    lim_class,
    scaling_check,
    serre_hodge_check,
    closed_form_integral,
    verify_fiber,
)
from .builders import (
    Census,
    KummerParams,
    KummerReport,
    build_kummer,
    build_type1_smooth,
    build_type2_chain,
    build_type3,
    icosahedron,
    kummer_r2_abelian,
    octahedron,
    refine_sphere,
    tetrahedron,
    torus_grid,
    torus_negation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
