"""Exact and approximate block-diagonalization of Dirac-type Hamiltonians.

Builds the unitary that takes a graded Hamiltonian H = beta m + E + O to
block-diagonal form in a single shot from the matrix sign function,
provides the closed forms available when E and O commute together with a
weak-field square root, and implements the classical iterative odd-part
elimination so the routes can be compared quantitatively on small models.
"""

from .algebra import (
    DiracDecomposition,
    Grading,
    anticommutator,
    commutator,
    even_projection,
    frobenius,
    hermiticity_defect,
    make_beta,
    odd_norm_ratio,
    odd_projection,
    relative_norm,
    split_even_odd,
)
from .eriksen import (
    METHOD_TAGS,
    DiagnosticSet,
    FWResult,
    compute_diagnostics,
    eriksen_condition_residual,
    eriksen_transform,
    eriksen_transform_alt,
    exponent_oddness,
    transform_state,
)
from .errors import (
    BranchCutProximity,
    DegenerateFactor,
    DimensionMismatch,
    FWLabError,
    InvalidGrid,
    NonHermitianInput,
    NotCommuting,
    NotPositiveSemidefinite,
    NotUnitary,
    OutsideValidityDomain,
    ParseError,
    SingularHamiltonian,
    SingularOperand,
)
from .exact_case import (
    CommutationReport,
    check_commutation,
    epsilon_operator,
    h_fw_exact,
    lambda_exact,
    sqrt_hd2_exact,
    u_fw_exact,
    weak_field_sqrt,
)
from .fileio import (
    format_complex,
    read_matrix,
    read_potential_table,
    write_matrix,
    write_text,
)
from .harness import (
    ComparisonReport,
    CrossRow,
    MethodRow,
    ToleranceConfig,
    emit_report,
    report_csv,
    report_json,
    run_comparison,
)
from .matfunc import (
    SpectralGapReport,
    inv_sqrt,
    matrix_exp,
    principal_sqrt,
    sign_operator,
    spectral_gap,
    unitary_log,
)
from .models import (
    ModelSpec,
    Potential,
    build_free_particle,
    build_lattice_1d,
    build_model,
    build_synthetic_commuting,
    load_explicit_matrix,
    parse_potential,
)
from .stepwise import (
    ComparisonRow,
    StepwiseTrace,
    stepwise_fw,
    stepwise_vs_eriksen,
)

__version__ = "0.1.0"
