"""Static Einstein vacua with negative cosmological constant in rotational symmetry.

Finite-difference geometry of ``g = A dr^2 + B sigma_k`` with a lapse ``V``,
exact vacuum fixtures, the DeTurck-gauged static flow, and the boundary
expansion of static vacua with Einstein conformal infinity.
"""

from .errors import (
    DegenerateSystemError,
    DomainError,
    GridMismatchError,
    LapseError,
    NonFiniteError,
    SignatureError,
    StabilityError,
    StaticFlowError,
)
from .expansion import (
    EinsteinBoundary,
    ExpansionResult,
    closed_form_order2,
    expand,
    parity_check,
    reconstruct,
    reduce_equations,
    solvability_determinant,
    special_gauge_of_ads,
)
from .flow import (
    FlowControls,
    FlowReport,
    FlowState,
    Termination,
    evolve,
    lapse_growth,
    max_stable_dt,
    rhs,
    stationarity_drift,
    step,
)
from .geometry import (
    CurvatureComponents,
    RotSymMetric,
    StaticTriple,
    as_defect,
    deturck_field,
    hessian_radial,
    laplacian_radial,
    lie_derivative_radial,
    lift_block_check,
    residual_sup,
    ricci,
    sectional_defect,
    static_residual,
)
from .grid import Profile, RadialGrid, weighted_sup
from .io import emit_expansion_json, emit_flow_csv, read_expansion_json
from .series import TruncatedSeries
from .solutions import PerturbationSpec, ads, ads_area_radius, horizon_radius, perturb, schwarzschild_ads

__version__ = "0.1.0"
