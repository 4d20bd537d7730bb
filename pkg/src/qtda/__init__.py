"""Betti numbers of point clouds, twice: exact linear algebra and phase estimation.

The classical route builds a Vietoris-Rips clique complex, takes signed
boundary operators and combinatorial Laplacians, and counts kernel dimensions
over exact integer arithmetic.  The quantum route pads and rescales the same
Laplacian into a Hamiltonian, runs phase estimation over a maximally mixed
state on a dense statevector simulator, and reads the Betti number off the
probability of the all-zeros phase outcome.  On top of both sit experiment
sweeps and a small time-series classification pipeline using the estimated
Betti numbers as features.
"""

__version__ = "0.1.0"

from .classify import (
    ClassificationReport,
    FeatureVector,
    LogisticHyper,
    LogisticModel,
    ScaleSweepResult,
    accuracy,
    classify_dataset,
    exact_features,
    extract_features,
    four_point_clouds,
    grouping_scale_sweep,
    predict,
    predict_proba,
    train_logistic,
)
from .complexes import (
    BoundaryMatrix,
    Laplacian,
    NeighborhoodGraph,
    PointCloud,
    SimplicialComplex,
    boundary_matrix,
    build_complex,
    build_rips_graph,
    complex_from_simplices,
    exact_betti,
    integer_rank,
    laplacian,
    random_complex,
)
from .embedding import (
    EmbeddingConfig,
    TimeSeriesSample,
    make_synthetic_corpus,
    takens_embed,
)
from .errors import DegenerateDataError, EmptyDimensionError, ResourceLimitError
from .example import demo_complex, demo_point_cloud, run_example
from .experiments import SweepConfig, SummaryRow, TrialRecord, run_sweep, summarize
from .hamiltonian import (
    PaddedHamiltonian,
    PauliDecomposition,
    PauliTerm,
    gershgorin_bound,
    pad_laplacian,
    pauli_decompose,
    prepare_hamiltonian,
    reconstruct,
    scale_hamiltonian,
)
from .qpe import (
    BettiEstimate,
    QpeConfig,
    analytic_estimate,
    analytic_zero_probability,
    estimate_betti,
    inverse_qft_circuit,
    mixed_state_distribution,
    prepare_mixed_state,
    qft_circuit,
    qpe_betti,
    qpe_circuit,
    trotter_circuit,
    unitary_from_hamiltonian,
)
from .simulator import MAX_SIM_QUBITS, Circuit, Gate, basis_state, probabilities

__all__ = [name for name in dir() if not name.startswith("_")]
