"""Numerical toolkit for constant isotropic curvature hypersurfaces in space forms.

Curvature tensors and the orthonormal-frame probe live in `curvature`,
principal-curvature algebra in `spectra`, rotation-hypersurface profiles in
`profiles`, the (n, c, C) decision tree in `classify`, and the verification
suites in `checks`.
"""

from .classification import (
    ClassificationOutcome,
    ClassQuery,
    Interval,
    NonexistenceEvidence,
    classify,
    nonexistence_witness,
    query_to_json,
    witness,
)
from .curvature import (
    CurvatureTensor,
    Factor,
    FrameError,
    OrthoFrame4,
    ProbeReport,
    ProductSpec,
    SymmetryReport,
    build_constant_curvature,
    build_from_shape,
    build_product,
    check_symmetries,
    cic_probe,
    isotropic_component,
    sample_frames,
    sectional,
    tensor_from_json,
    tensor_to_json,
)
from .profiles import (
    AmbientSpec,
    DomainBreakdown,
    ExponentialProfile,
    FirstFailure,
    NonPositiveProfile,
    ParabolicProfile,
    ProfileFamily,
    ProfileSample,
    QuadraticProfile,
    TrigProfile,
    cic_along_profile,
    domain_check,
    integrate_profile,
    ode_residual,
    principal_curvatures,
    write_profile_csv,
)
from .spectra import (
    MinimalKind,
    MinimalVerdict,
    ShapeSpectrum,
    SpectrumError,
    TwoCurvatureForm,
    cic_from_spectrum,
    cmc_lambda_solve,
    mean_curvature,
    minimal_classify,
    pairing_test,
    two_curvature_form,
)

__version__ = "0.1.0"
