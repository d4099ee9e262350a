"""Boundary Schwarz-Pick and Pick matrices for finite Blaschke products.

The package computes Schwarz-Pick matrices of finite Blaschke products at
interior and boundary points by three independent routes, builds Pick
matrices from raw boundary jet data, and decides whether a set of boundary
contact conditions pins the product down uniquely within the Schur class,
emitting machine-checkable certificates either way.
"""

from .blaschke import (
    BlaschkeProduct,
    Jet,
    blaschke_from_json,
    blaschke_to_json,
    evaluate,
    level_set,
    make_blaschke,
    modulus_defect,
    poles,
    taylor_jet,
)
from .errors import (
    BlaschkePickError,
    CoincidentPoints,
    ConstantNotUnimodular,
    ConvergenceFailure,
    DegenerateDenominator,
    InsufficientJet,
    PoleEvaluation,
    PrincipalNotPD,
    RankMismatch,
    RootFindingFailure,
    SingularResolvent,
    ZeroLeadingValue,
    ZeroOnOrOutsideDisk,
)
from .hermitian import (
    HermitianMatrix,
    HermitianReport,
    eigen_h,
    make_hermitian,
    make_report,
    numerical_rank,
    schur_complement,
)
from .pick import (
    AdmissibilityReport,
    Completion,
    JetData,
    PickMatrix,
    admissible,
    build_pick,
    complete_to_pd,
    corner_value,
    extend_pick,
    extract_data,
    solve_supplementary,
)
from .realization import (
    UnitaryRealization,
    cascade,
    check_minimality,
    elementary_realization,
    realize,
    resolvent_rows,
    sp_via_realization,
    transfer_eval,
    unitarity_defect,
)
from .schwarz_pick import (
    BivariateJet,
    RadialDiagnostics,
    SchwarzPickMatrix,
    kernel_jet,
    membership_probe,
    psi_matrix,
    sp_boundary_radial,
    sp_boundary_structured,
    sp_interior,
)
from .uniqueness import (
    ContactProblem,
    NonUniqueCertificate,
    Tolerances,
    UniqueCertificate,
    Verdict,
    criterion,
    decide,
    derivative_orders,
    matches_jets,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "BivariateJet",
    "BlaschkePickError",
    "BlaschkeProduct",
    "CoincidentPoints",
    "Completion",
    "ConstantNotUnimodular",
    "ContactProblem",
    "ConvergenceFailure",
    "DegenerateDenominator",
    "HermitianMatrix",
    "HermitianReport",
    "InsufficientJet",
    "Jet",
    "JetData",
    "NonUniqueCertificate",
    "PickMatrix",
    "PoleEvaluation",
    "PrincipalNotPD",
    "RadialDiagnostics",
    "RankMismatch",
    "RootFindingFailure",
    "SchwarzPickMatrix",
    "SingularResolvent",
    "Tolerances",
    "UnitaryRealization",
    "UniqueCertificate",
    "Verdict",
    "ZeroLeadingValue",
    "ZeroOnOrOutsideDisk",
    "admissible",
    "blaschke_from_json",
    "blaschke_to_json",
    "build_pick",
    "cascade",
    "check_minimality",
    "complete_to_pd",
    "corner_value",
    "criterion",
    "decide",
    "derivative_orders",
    "eigen_h",
    "elementary_realization",
    "evaluate",
    "extend_pick",
    "extract_data",
    "kernel_jet",
    "level_set",
    "make_blaschke",
    "make_hermitian",
    "make_report",
    "matches_jets",
    "membership_probe",
    "modulus_defect",
    "numerical_rank",
    "poles",
    "psi_matrix",
    "realize",
    "resolvent_rows",
    "schur_complement",
    "solve_supplementary",
    "sp_boundary_radial",
    "sp_boundary_structured",
    "sp_interior",
    "sp_via_realization",
    "taylor_jet",
    "transfer_eval",
    "unitarity_defect",
]
