"""Built-in 5-vertex worked example with frozen expected values.

The complex lives on five points in the plane whose grouping-scale graph at
epsilon = 1.2 has edges {01, 02, 12, 23, 24, 34}; the triangle {0,1,2} is
filled and the triangle {2,3,4} is deliberately left hollow, so beta_1 = 1.
Note the hollow triangle means this complex is NOT the clique complex of its
own graph: it is constructed explicitly, not via clique expansion.

Every expected value below was computed by hand from the definitions and is
frozen here as the golden reference for the end-to-end check: boundary
operators, Laplacian, padding, spectral bound, the 24-term Pauli
decomposition, and the final estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import (
    PointCloud,
    SimplicialComplex,
    boundary_matrix,
    build_rips_graph,
    complex_from_simplices,
    exact_betti,
    laplacian,
)
from .hamiltonian import PaddedHamiltonian, PauliDecomposition, pauli_decompose, prepare_hamiltonian
from .qpe import BettiEstimate, QpeConfig, analytic_zero_probability, qpe_betti

DEMO_EPSILON = 1.2
DEMO_DELTA = 6.0

#: five plane points realizing the demo edge set at DEMO_EPSILON
DEMO_POINTS = np.array([
    [0.0, 1.0],
    [0.0, 0.0],
    [1.0, 0.5],
    [2.0, 1.0],
    [2.0, 0.0],
])

DEMO_EDGES = ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4))
DEMO_TRIANGLES = ((0, 1, 2),)

EXPECTED_D1 = np.array([
    [1, 1, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0],
    [0, -1, -1, 1, 1, 0],
    [0, 0, 0, -1, 0, 1],
    [0, 0, 0, 0, -1, -1],
])

EXPECTED_D2 = np.array([[1], [-1], [1], [0], [0], [0]])

EXPECTED_DELTA1 = np.array([
    [3, 0, 0, 0, 0, 0],
    [0, 3, 0, -1, -1, 0],
    [0, 0, 3, -1, -1, 0],
    [0, -1, -1, 2, 1, -1],
    [0, -1, -1, 1, 2, 1],
    [0, 0, 0, -1, 1, 2],
])

EXPECTED_LAMBDA_MAX = 6.0

EXPECTED_PADDED = np.zeros((8, 8))
EXPECTED_PADDED[:6, :6] = EXPECTED_DELTA1
EXPECTED_PADDED[6, 6] = 3.0
EXPECTED_PADDED[7, 7] = 3.0

#: all 24 Pauli terms of the rescaled Hamiltonian, sorted by word
EXPECTED_PAULI_TERMS = (
    ("III", 2.625),
    ("IIZ", 0.125),
    ("IXI", -0.25),
    ("IXZ", 0.25),
    ("IZI", -0.125),
    ("IZX", 0.5),
    ("IZZ", -0.125),
    ("XIX", -0.25),
    ("XXI", -0.5),
    ("XXX", 0.25),
    ("XYY", -0.25),
    ("XZX", -0.25),
    ("YIY", -0.25),
    ("YXY", 0.25),
    ("YYI", -0.5),
    ("YYX", 0.25),
    ("YZY", -0.25),
    ("ZII", 0.125),
    ("ZIX", -0.5),
    ("ZIZ", 0.125),
    ("ZXI", -0.25),
    ("ZXZ", 0.25),
    ("ZZI", 0.375),
    ("ZZZ", -0.125),
)

EXPECTED_BETTI_1 = 1

_GOLDEN_TOL = 1e-10


def demo_point_cloud() -> PointCloud:
    return PointCloud(DEMO_POINTS.copy())


def demo_complex() -> SimplicialComplex:
    """The worked-example complex, constructed explicitly (hollow {2,3,4})."""
    return complex_from_simplices(
        5,
        {1: list(DEMO_EDGES), 2: list(DEMO_TRIANGLES)},
        epsilon=DEMO_EPSILON,
    )


@dataclass(frozen=True)
class ExampleReport:
    """Everything the worked example computes, plus golden comparison."""

    cloud: PointCloud
    complex: SimplicialComplex
    d1: np.ndarray
    d2: np.ndarray
    delta1: np.ndarray
    hamiltonian: PaddedHamiltonian
    decomposition: PauliDecomposition
    exact_beta1: int
    analytic_p_zero: float
    estimate: BettiEstimate
    mismatches: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def _compare(report_parts) -> list[str]:
    """First-difference descriptions for every golden that fails to match."""
    (d1, d2, delta1, ham, decomp, beta1, estimate, graph_edges) = report_parts
    problems: list[str] = []

    def check_matrix(name, got, want, tol=0.0):
        got = np.asarray(got, dtype=float)
        want = np.asarray(want, dtype=float)
        if got.shape != want.shape:
            problems.append(f"{name}: shape {got.shape} != expected {want.shape}")
            return
        diff = np.abs(got - want)
        if diff.max(initial=0.0) > tol:
            i, j = np.unravel_index(int(diff.argmax()), diff.shape)
            problems.append(
                f"{name}[{i},{j}] = {got[i, j]!r}, expected {want[i, j]!r}"
            )

    if graph_edges != frozenset(DEMO_EDGES):
        problems.append(f"graph edges {sorted(graph_edges)} != expected {sorted(DEMO_EDGES)}")
    check_matrix("boundary_1", d1, EXPECTED_D1)
    check_matrix("boundary_2", d2, EXPECTED_D2)
    check_matrix("laplacian_1", delta1, EXPECTED_DELTA1)
    if abs(ham.lambda_max_bound - EXPECTED_LAMBDA_MAX) > _GOLDEN_TOL:
        problems.append(
            f"lambda_max_bound = {ham.lambda_max_bound!r}, expected {EXPECTED_LAMBDA_MAX!r}"
        )
    check_matrix("padded_hamiltonian", ham.matrix, EXPECTED_PADDED, tol=_GOLDEN_TOL)
    got_terms = [(t.string, t.coefficient) for t in decomp.terms]
    if len(got_terms) != len(EXPECTED_PAULI_TERMS):
        problems.append(
            f"pauli term count {len(got_terms)} != expected {len(EXPECTED_PAULI_TERMS)}"
        )
    else:
        for (gw, gc), (ew, ec) in zip(got_terms, EXPECTED_PAULI_TERMS):
            if gw != ew or abs(gc - ec) > _GOLDEN_TOL:
                problems.append(f"pauli term {gw} = {gc!r}, expected {ew} = {ec!r}")
                break
    if beta1 != EXPECTED_BETTI_1:
        problems.append(f"exact beta_1 = {beta1}, expected {EXPECTED_BETTI_1}")
    if estimate.beta != EXPECTED_BETTI_1:
        problems.append(f"estimated beta_1 rounds to {estimate.beta}, expected {EXPECTED_BETTI_1}")
    return problems


def run_example(precision: int = 3, shots: int = 1000, seed: int = 7) -> ExampleReport:
    """Run the worked example end to end and compare against the goldens."""
    cloud = demo_point_cloud()
    graph = build_rips_graph(cloud, DEMO_EPSILON)
    cx = demo_complex()
    d1 = boundary_matrix(cx, 1).matrix
    d2 = boundary_matrix(cx, 2).matrix
    delta1 = laplacian(cx, 1)
    ham = prepare_hamiltonian(delta1, DEMO_DELTA)
    decomp = pauli_decompose(ham)
    beta1 = exact_betti(cx, 1)
    p_zero = analytic_zero_probability(ham, precision)
    estimate = qpe_betti(ham, QpeConfig(precision=precision, shots=shots, seed=seed))
    mismatches = _compare(
        (d1, d2, delta1.matrix, ham, decomp, beta1, estimate, graph.edges)
    )
    return ExampleReport(
        cloud=cloud,
        complex=cx,
        d1=d1,
        d2=d2,
        delta1=delta1.matrix,
        hamiltonian=ham,
        decomposition=decomp,
        exact_beta1=beta1,
        analytic_p_zero=p_zero,
        estimate=estimate,
        mismatches=tuple(mismatches),
    )
