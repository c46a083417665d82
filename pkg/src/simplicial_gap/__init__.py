"""Certificates and bounds for tour relaxations on grouped 0/1 instances.

The package constructs explicit feasible points ("certificates") for three
semidefinite relaxations of the traveling salesperson problem on simplicial
instances (vertices in groups, distance 0 inside a group and 1 across),
verifies them blockwise and against dense oracles, and evaluates the bounds
they certify: integrality-gap lower bounds that grow without limit with the
group count, and a non-monotonicity effect where adding a vertex lowers the
relaxation value.  Exact-TSP and subtour-LP baselines sit alongside for
contrast.
"""

from .anstreicher_sdp import AnstreicherReport, shifted_spectrum, verify_anstreicher
from .certificates import (
    CertCoeffs,
    CertificateY,
    CertSpectrum,
    FeasibilityReport,
    assemble,
    closed_form_spectrum,
    coeffs_general,
    coeffs_two_group,
    lower_bound_akk,
    objective_dense_trace,
    objective_povh_rendl,
    profile_identity_residuals,
    verify_povh_rendl,
)
from .circulant import SymmetricCirculant, cosine_profile, identity_suite
from .instances import (
    SimplicialInstance,
    TspValue,
    held_karp_cycle,
    is_metric,
    make_equal,
    make_one_extra,
    tsp_optimum,
)
from .matrix_core import ConvergenceError, SizeLimitError, dense_cap, sym_eigs
from .reduced_sdp import (
    GapRecord,
    Reduction,
    asymptote_value,
    bound_constants,
    build_reduction,
    gap_records_to_csv,
    gap_table,
    objective_reduced,
)
from .sdp_numeric import (
    NonMonotonicityReport,
    SdpProblem,
    SdpSolution,
    encode_reduced,
    nonmonotonicity_check,
)
from .sdp_numeric import solve as solve_sdp
from .subtour_lp import LpEdgeSolution, min_cut, solve_subtour

__version__ = "0.1.0"

__all__ = [
    "AnstreicherReport",
    "CertCoeffs",
    "CertSpectrum",
    "CertificateY",
    "ConvergenceError",
    "FeasibilityReport",
    "GapRecord",
    "LpEdgeSolution",
    "NonMonotonicityReport",
    "Reduction",
    "SdpProblem",
    "SdpSolution",
    "SimplicialInstance",
    "SizeLimitError",
    "SymmetricCirculant",
    "TspValue",
    "assemble",
    "asymptote_value",
    "bound_constants",
    "build_reduction",
    "closed_form_spectrum",
    "coeffs_general",
    "coeffs_two_group",
    "cosine_profile",
    "dense_cap",
    "encode_reduced",
    "gap_records_to_csv",
    "gap_table",
    "held_karp_cycle",
    "identity_suite",
    "is_metric",
    "lower_bound_akk",
    "make_equal",
    "make_one_extra",
    "min_cut",
    "nonmonotonicity_check",
    "objective_dense_trace",
    "objective_povh_rendl",
    "objective_reduced",
    "profile_identity_residuals",
    "shifted_spectrum",
    "solve_sdp",
    "solve_subtour",
    "sym_eigs",
    "tsp_optimum",
    "verify_anstreicher",
    "verify_povh_rendl",
]
