"""Stability of geodesic vectors on low-dimensional metric Lie algebras.

The package represents a metric Lie algebra by its structure constants and
inner product, finds the stationary points of the Euler equation
dY/dt = ad^t_Y Y, classifies their Lyapunov stability (complete criteria in
dimension <= 3 and all 4D unimodular cases), and cross-validates the verdicts
with a numerical perturbation probe.
"""

from .algebra_core import (
    DimensionMismatchError,
    MetricLieAlgebra,
    SpecFormatError,
    Subspace,
    ValidationReport,
    ad,
    ad_t,
    algebra_from_dict,
    algebra_to_dict,
    base_tolerance,
    bracket,
    center,
    conjugate,
    derived_algebra,
    inner,
    is_abelian,
    is_biinvariant,
    is_unimodular,
    load_algebra,
    norm,
    orthonormalize,
    save_algebra,
    trace_form,
    validate,
)
from .catalog import CatalogEntry, LabeledPoint, builtin_catalog, get_entry
from .classify import (
    NotStationaryError,
    SearchExhaustedError,
    StabilityVerdict,
    StationaryFamily,
    UnsupportedCaseError,
    classify_point,
    enumerate_stationary,
    find_stable_and_unstable,
)
from .euler import (
    Trajectory,
    euler_rhs,
    integrate,
    is_stationary,
    linearization,
    numerical_rank,
    quadratic_tensor,
    sigma_k,
)
from .normal_forms import (
    CenterSplit4D,
    DegenerateFormError,
    IdealSplit,
    MilnorFrame,
    NotUnimodularError,
    PhiCoefficients,
    StructureError,
    center_split_4d,
    codim1_split,
    matrix_exp,
    milnor_frame,
    no_imaginary_eigenvalues,
    phi_taylor,
)
from .probe import (
    AgreementReport,
    ProbeConfig,
    ProbeReport,
    agreement_report,
    integral_drift,
    integral_set_for,
    probe_point,
)

__version__ = "1.0.0"
