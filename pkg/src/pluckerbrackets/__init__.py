"""Rank-2 Poisson brackets parametrized by Plucker coordinates of
lines: construction and verification of the monomial bracket family,
its Casimirs and Nambu-type determinant form, compatibility tests, and
numerical integration of the associated Hamiltonian systems.
"""

from .plucker import (
    DegeneratePlaneError,
    NotDecomposableError,
    PlaneBasis,
    PluckerError,
    PluckerVector,
    intersection_residuals,
    is_decomposable,
    max_relation_residual,
    numerical_rank,
    plucker_residuals,
    recover_plane,
    representation_matrix,
    wedge,
)
from .poisson import (
    BracketSource,
    CanonicalBracket,
    ConstantBracket,
    E3Bracket,
    PluckerBracket,
    QuadraticForm,
    bracket_of,
    casimir_fijk,
    compatibility_residuals,
    coordinate_function,
    decompose_tensor,
    jacobian_bracket,
    jacobiator,
    jacobiator_tensor,
    kernel_casimirs,
    plucker_from_diagonal_quadrics,
    plucker_to_jacobian,
    rank_at,
    sum_bracket,
)
from .dynamics import (
    BlowUpError,
    ClebschParameters,
    HamiltonianSystem,
    IntegrationError,
    Trajectory,
    bihamiltonian_residual,
    clebsch_map,
    clebsch_system,
    elliptic_oracle,
    fairlie_system,
    integrate,
    invariant_drift,
    jacobi_elliptic,
    jacobi_system,
    quarter_period,
    realization_r4_map,
    realization_r4_system,
    vector_field,
)
from .scenarios import (
    ScenarioError,
    ScenarioSpec,
    VerificationReport,
    builtin_catalog,
    get_builtin,
)

__version__ = "1.0.0"
