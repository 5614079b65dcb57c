"""Homogeneous integral kernels over measure spaces with dilation groups.

Subpackages: ``geometry`` (domains, actions, measures), ``kernels``
(construction and verification of homogeneous kernels), ``operators``
(grid operators, pullbacks, commutation checks), ``hardy_littlewood``
(sharp L^p bound constants), ``gl2`` (the orientation-invariant singular
operator), ``hadamard_bergman`` (disk convolutions), ``cli`` (batch
driver).
"""

from .geometry import (
    AdmissibilityError,
    CaseBError,
    CylElement,
    DilationRangeError,
    Domain,
    DomainSpec,
    MatElement,
    Point,
    RadialAnnulusSector,
    RectRegion,
    RegionError,
    act,
    bergman_disk,
    character,
    cylinder,
    gl2_plane,
    lobachevsky,
    measure_of,
    poincare_disk,
    punctured_plane,
    radial_cumulative,
    radial_cumulative_inv,
    radial_disk,
    verify_dilation,
)
from .kernels import (
    GeneratingFunction,
    Kernel,
    NoViolation,
    build_kernel,
    check_strong_homogeneity,
    floor_kernel,
    recover_generating,
    translation_violation,
)
from .operators import (
    GridFunction,
    QuadratureGrid,
    apply_operator,
    build_grid,
    check_convolution_reduction,
    check_operator_homogeneity,
    lp_reweight,
    pullback,
    tabulate,
)
from .hardy_littlewood import (
    HomogeneousKernel1D,
    HomogeneousKernel2D,
    kappa_1d,
    kappa_2d,
    norm_lower_bound,
    norm_upper_check,
)
from .gl2 import (
    PVConfig,
    apply_gl2_composed,
    apply_gl2_direct,
    cross,
    hilbert_pv,
    radon_origin,
    stabilizer_witness,
)
from .hadamard_bergman import DiskFunction, check_equivalence, convolve, as_kernel

__version__ = "0.1.0"
