"""Exact verification of Einstein metrics on connected sums of S^2 x S^3.

Seifert bundles over blown-up quadric surfaces: Picard lattice arithmetic,
H_1 via Smith normal form, the w_2 and basis hypotheses, worst-case klt
inequalities, and certificates for the resulting 5-manifolds.
"""
from .exact_linalg import (
    FinAbGroup,
    IntMatrix,
    RatBox,
    cokernel_invariants,
    gcd_content,
    max_affine_over_box,
    maximize_affine,
    smith_normal_form,
)
from .picard import (
    DivisorClass,
    IntersectionLattice,
    Positivity,
    blowup_lattice,
    canonical_class,
    fiber_class,
    graph_class,
    is_part_of_basis,
    pairing,
    positivity_report,
)
from .seifert import (
    ClassificationReport,
    SeifertData,
    SeifertFlags,
    chern_class,
    classify,
    fiber_multiplicity,
    h1,
    h1_presentation,
    h3_rank,
    integral_class,
    lcm_a,
    make_seifert_data,
    not_divisible,
    w2_vanishes,
)
from .kahler_einstein import (
    PointConfig,
    klt_box_check,
    ke_certificate,
    nadel_threshold,
    symmetric_configuration,
)
from .certifier import (
    Certificate,
    FamilyParams,
    build_family,
    certify,
    emit_certificate,
    enumerate_parameters,
    family_params,
    parse_seifert_input,
    validate_parameters,
)

__version__ = "0.1.0"
