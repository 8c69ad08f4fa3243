"""Contact surgery calculus with exact arithmetic and certificates.

Converts rational contact surgery presentations along Legendrian links
into equivalent (+1)/(-1) presentations, enumerates the admissible
stabilization choices, and cross-checks everything through unimodular
matrix certificates, boundary slopes, tight-structure counts and first
homology.
"""

from .exact import (
    INF,
    Curve,
    IntMat2,
    boundary_slope,
    cf_eval,
    chain_matrix,
    kernel_backend,
    mobius_curve,
    neg_cf_expand,
    tight_count,
)
from .fronts import (
    FrontWord,
    OrientedFront,
    linking_number,
    realize_unknot,
    rotation,
    stabilize,
    standard_unknot,
    thurston_bennequin,
    validate,
)
from .surgery import (
    ContactDiagram,
    DiagramComponent,
    KnotData,
    PmOneDiagram,
    PmOneInstruction,
    cancel_pairs,
    convert,
    convert_negative,
    convert_positive,
    convert_zero,
    enumerate_conversions,
    lutz_full,
    lutz_simple,
    verify,
)
from .topology import (
    AbelianGroup,
    first_homology,
    generalized_linking_matrix,
    smith_normal_form,
    smooth_coefficient,
)

__version__ = "0.1.0"
