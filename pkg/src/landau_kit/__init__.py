"""Landau-type radii for bounded bi-analytic and biharmonic maps, with numerical certificates."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BranchCutError,
    ClosedFormFunction,
    DomainError,
    IllConditionedError,
    PoleProximityError,
    SeriesFunction,
    as_series,
    derivative,
    evaluate,
    identity,
    landau_f0,
    lemma3_fn,
    load_series,
    taylor_coefficients,
)
from .radii import (  # noqa: E402
    RadiusResult,
    Theorem1Params,
    Theorem2Params,
    Theorem3Params,
    UniquenessDefect,
    rho1,
    rho2_sigma2,
    rho3,
    sigma1,
    sigma3,
    theorem1_radii,
    theorem3_radii,
    theorem4_radius,
    theoremA_constant,
    theoremA_radius,
    theoremB_radius,
    theoremC_radii,
    theoremD_radii,
    theoremE_radii,
)
from .maps import (  # noqa: E402
    BiAnalyticMap,
    WirtingerPair,
    jacobian,
    make_F0,
    make_F1,
    make_F2,
    make_F3,
    named_map,
    wirtinger,
)
from .certify import (  # noqa: E402
    CertificateReport,
    GridSpec,
    Witness,
    collision_witness_F2,
    coverage_min_modulus,
    injectivity_check,
    jacobian_positivity,
    lemma1_distortion_check,
    lemma4_radius,
    reverify,
    sharpness_witness_F1,
    starlike_boundary_check,
)
from .coeffs import (  # noqa: E402
    BMASample,
    SchurSample,
    check_carlson,
    check_lemma3,
    lift_to_BMA,
    sample_bma,
    sample_schur,
)
