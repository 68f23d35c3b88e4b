"""Kirkwood-Dirac quasiprobability classification and DFT uncertainty diagrams.

The package decides which support-size pairs (n_A, n_B) are achievable for
the discrete-Fourier-transform basis pair via certified rank searches, and
classifies pure states as KD classical or nonclassical from their
quasiprobability tables.
"""

from .cyclotomic import CycNum, IntPoly, cyclotomic_polynomial, divisors, is_zero, root_power
from .diagram import (
    DiagramPoint,
    EngineDisagreementError,
    IndeterminateDiagramError,
    PointCertificate,
    PointStatus,
    TheoremPrediction,
    UncertaintyDiagram,
    WitnessSamplingError,
    check_submatrix_conditions,
    diagram_to_csv,
    diagram_to_dict,
    enumerate_diagram,
    is_completely_incompatible,
    load_diagram,
    point_exists,
    predict_corollary1,
    predict_theorem1,
    predict_theorem2,
    predict_theorem3,
    save_diagram,
    witness_state,
)
from .kd import (
    Classicality,
    KDDist,
    StateVector,
    SupportProfile,
    SupportThresholdError,
    TransitionKind,
    TransitionMatrix,
    Verdict,
    b_amplitudes,
    basis_state,
    classify_state,
    dft_matrix,
    kd_distribution,
    load_state,
    predict_classicality_dft,
    save_state,
    state_from_amplitudes,
    support_profile,
    support_uncertainty_bound,
    theorem5_sufficient,
    transition_from_unitary,
)
from .linalg import (
    DEFAULT_RANK_TOL,
    CMatrix,
    RankCertificate,
    nullspace_basis,
    rank,
    submatrix,
)
from .plotting import diagram_svg
from .states import (
    CosetSpec,
    coset_classical_state,
    mub_from_parts,
    random_mub_pair,
    random_state_in_subspace,
)

__version__ = "0.1.0"

__all__ = [
    "CMatrix",
    "Classicality",
    "CosetSpec",
    "CycNum",
    "DEFAULT_RANK_TOL",
    "DiagramPoint",
    "EngineDisagreementError",
    "IndeterminateDiagramError",
    "IntPoly",
    "KDDist",
    "PointCertificate",
    "PointStatus",
    "RankCertificate",
    "StateVector",
    "SupportProfile",
    "SupportThresholdError",
    "TheoremPrediction",
    "TransitionKind",
    "TransitionMatrix",
    "UncertaintyDiagram",
    "Verdict",
    "WitnessSamplingError",
    "b_amplitudes",
    "basis_state",
    "check_submatrix_conditions",
    "classify_state",
    "coset_classical_state",
    "cyclotomic_polynomial",
    "dft_matrix",
    "diagram_svg",
    "diagram_to_csv",
    "diagram_to_dict",
    "divisors",
    "enumerate_diagram",
    "is_completely_incompatible",
    "is_zero",
    "kd_distribution",
    "load_diagram",
    "load_state",
    "mub_from_parts",
    "nullspace_basis",
    "point_exists",
    "predict_classicality_dft",
    "predict_corollary1",
    "predict_theorem1",
    "predict_theorem2",
    "predict_theorem3",
    "random_mub_pair",
    "random_state_in_subspace",
    "rank",
    "root_power",
    "save_diagram",
    "save_state",
    "state_from_amplitudes",
    "submatrix",
    "support_profile",
    "support_uncertainty_bound",
    "theorem5_sufficient",
    "transition_from_unitary",
    "witness_state",
]
