"""Exact divisor-class and intersection arithmetic of simple polytopes, plus
lattice covering-theorem verifiers.  All arithmetic is rational; there are no
floats anywhere."""

from .polytope import (
    BudgetExhaustedError,
    EmptyPolytopeError,
    FaceDescriptor,
    NotSimpleError,
    SimplePolytope,
    UnboundedError,
    ZeroVectorError,
    construct_standard,
    cube_facet_id,
    faces,
    from_halfspaces,
    generic_normals_check,
    moment_map_eval,
    perturb,
    product,
)
from .chow import (
    Divisor,
    IntersectionQuery,
    NefLiftFailedError,
    Region,
    RingPresentation,
    ample_from_offsets,
    avoidance_certificate,
    inessential_touch_set,
    intersection_number,
    is_principal,
    linearly_equivalent,
    polytope_of_divisor,
    presentation,
    principal_divisor,
    self_intersection_top,
    volume,
)
from .covering import (
    BadSampleError,
    LatticeCover,
    LatticeModel,
    PointCloudCover,
    WitnessReport,
    WrongArityError,
    axes_witness,
    complement_components,
    complement_witness,
    kkm_lebesgue_witness,
    kkm_witness,
    lebesgue_witness,
    multiplicity,
    palais_coloring,
    set_components,
    spans_pair,
    touches_facet,
)
from .harness import (
    BadResolutionError,
    StampedCover,
    SuiteConfig,
    exhaustive_oracle_tiny,
    kkm_standard_cover,
    random_low_multiplicity_cover,
    run_property_suite,
    shifted_brick_cover,
)
