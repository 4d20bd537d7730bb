"""Shared fixtures: the built-in 5-vertex demo complex and its prepared Hamiltonian."""

import numpy as np
import pytest

from qtda.complexes import laplacian
from qtda.example import DEMO_DELTA, demo_complex
from qtda.hamiltonian import prepare_hamiltonian


@pytest.fixture(scope="session")
def demo_cx():
    return demo_complex()


@pytest.fixture(scope="session")
def demo_ham(demo_cx):
    return prepare_hamiltonian(laplacian(demo_cx, 1), DEMO_DELTA)


def partial_trace_last(state: np.ndarray, keep: int, drop: int) -> np.ndarray:
    """Density matrix of the first `keep` qubits after tracing out the last `drop`."""
    psi = state.reshape(1 << keep, 1 << drop)
    return psi @ psi.conj().T
