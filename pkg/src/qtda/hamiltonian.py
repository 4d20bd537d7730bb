"""Turn a combinatorial Laplacian into a Hamiltonian a phase estimator can read.

Three steps: bound the spectrum from above with the Gershgorin disc theorem,
pad the matrix with an identity block to the next power-of-two dimension
(using half the spectral bound on the diagonal, so padded rows stay far from
the kernel), and rescale so every eigenvalue fits inside [0, delta) with
delta strictly below 2*pi, because phases of e^{iH} wrap modulo 2*pi.

The Pauli decomposition writes the padded Hamiltonian as a sum of tensor
words over {I, X, Y, Z}.  Convention: the leftmost letter acts on qubit 0,
which carries the most significant bit of the basis index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .complexes import Laplacian

TWO_PI = 2.0 * math.pi
#: hard upper bound for the rescale target delta
MAX_DELTA = TWO_PI - 1e-6
#: default rescale target; keeps the top of the spectrum just below 2*pi
DEFAULT_DELTA = 6.0
#: coefficients at or below this magnitude are pruned from decompositions
PRUNE_THRESHOLD = 1e-12

_SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class PaddedHamiltonian:
    """A Laplacian padded to 2^num_qubits and (optionally) rescaled.

    ``delta`` is None until `scale_hamiltonian` has run; ``lambda_max_bound``
    is the Gershgorin bound of the original matrix, and rows/columns past
    ``original_dim`` belong to the identity padding block.
    """

    matrix: np.ndarray
    num_qubits: int
    lambda_max_bound: float
    original_dim: int
    delta: float | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    string: str


@dataclass(frozen=True)
class PauliDecomposition:
    num_qubits: int
    terms: tuple[PauliTerm, ...]

    def coefficient(self, word: str) -> float:
        for term in self.terms:
            if term.string == word:
                return term.coefficient
        return 0.0

    def to_lines(self) -> list[str]:
        """One term per line, ``<signed coefficient> <word>``, e.g. ``-0.5 XXI``."""
        return [f"{t.coefficient!r} {t.string}" for t in self.terms]


def gershgorin_bound(matrix: np.ndarray) -> float:
    """Upper bound on the largest eigenvalue: max_i (a_ii + sum_{j!=i} |a_ij|)."""
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("gershgorin_bound needs a square matrix")
    diag = np.diag(arr)
    radii = np.abs(arr).sum(axis=1) - np.abs(diag)
    return float(np.max(diag + radii))


def _as_matrix(lap: Laplacian | np.ndarray) -> np.ndarray:
    mat = lap.matrix if isinstance(lap, Laplacian) else lap
    arr = np.asarray(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(arr - arr.T), initial=0.0) > _SYMMETRY_TOL:
        raise ValueError("expected a symmetric matrix")
    return arr


def pad_laplacian(lap: Laplacian | np.ndarray) -> PaddedHamiltonian:
    """Embed the matrix in the next power-of-two dimension.

    Padded diagonal entries get lambda_max_bound / 2: they stay well inside
    the believed spectrum and never enlarge the kernel.  Padding with zeros
    would inflate the Betti count by the number of padded rows.  Degenerate
    case: a zero bound (zero Laplacian) pads with 1 for the same reason.
    A 1x1 input still gets one qubit; a 0-qubit register is meaningless.
    """
    arr = _as_matrix(lap)
    dim = arr.shape[0]
    bound = gershgorin_bound(arr)
    q = max(1, (dim - 1).bit_length())
    full = 1 << q
    fill = bound / 2.0 if bound > 0 else 1.0
    padded = np.diag(np.full(full, fill, dtype=float))
    padded[:dim, :dim] = arr
    return PaddedHamiltonian(
        matrix=padded,
        num_qubits=q,
        lambda_max_bound=float(bound),
        original_dim=dim,
        delta=None,
    )


def scale_hamiltonian(padded: PaddedHamiltonian, delta: float = DEFAULT_DELTA) -> PaddedHamiltonian:
    """Rescale by delta / lambda_max_bound so all eigenvalues land in [0, delta].

    delta must sit strictly inside (0, 2*pi); at 2*pi and beyond, distinct
    eigenvalues would alias onto the same phase.  A zero bound means the
    matrix is already all-zero in its original block: scaling is skipped and
    only the delta record is attached.
    """
    if not (0.0 < delta <= MAX_DELTA):
        raise ValueError(f"delta must lie in (0, {MAX_DELTA}], got {delta}")
    if padded.lambda_max_bound == 0.0:
        return replace(padded, delta=float(delta))
    factor = delta / padded.lambda_max_bound
    return replace(padded, matrix=padded.matrix * factor, delta=float(delta))


def prepare_hamiltonian(lap: Laplacian | np.ndarray, delta: float = DEFAULT_DELTA) -> PaddedHamiltonian:
    """pad_laplacian followed by scale_hamiltonian."""
    return scale_hamiltonian(pad_laplacian(lap), delta)


def _word_action(word: str) -> tuple[int, np.ndarray]:
    """Column action of a Pauli word: P|i> = phase[i] |i ^ xmask>.

    Qubit t reads bit (q-1-t) of the basis index, so the leftmost letter
    addresses the most significant bit.
    """
    q = len(word)
    idx = np.arange(1 << q)
    xmask = 0
    phases = np.ones(1 << q, dtype=complex)
    for pos, letter in enumerate(word):
        bit = (idx >> (q - 1 - pos)) & 1
        if letter == "X":
            xmask |= 1 << (q - 1 - pos)
        elif letter == "Y":
            xmask |= 1 << (q - 1 - pos)
            phases = phases * (1j * (1 - 2 * bit))
        elif letter == "Z":
            phases = phases * (1 - 2 * bit)
        elif letter != "I":
            raise ValueError(f"unknown Pauli letter {letter!r}")
    return xmask, phases


def pauli_decompose(
    ham: PaddedHamiltonian | np.ndarray,
    prune: float = PRUNE_THRESHOLD,
) -> PauliDecomposition:
    """Expand a 2^q x 2^q symmetric matrix over all 4^q Pauli words.

    Coefficients are Tr(P H) / 2^q; every word is enumerated and terms with
    |coefficient| <= prune are dropped.  Terms come out sorted by word string
    because itertools.product over "IXYZ" is already lexicographic.
    """
    mat = ham.matrix if isinstance(ham, PaddedHamiltonian) else np.asarray(ham, dtype=complex)
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("pauli_decompose needs a square matrix")
    dim = mat.shape[0]
    q = (dim - 1).bit_length() if dim > 1 else 0
    if dim != 1 << q or dim < 2:
        raise ValueError(f"matrix dimension {dim} is not a power of two >= 2")
    if np.max(np.abs(mat - mat.conj().T)) > _SYMMETRY_TOL:
        raise ValueError("matrix must be Hermitian")
    idx = np.arange(dim)
    terms = []
    for letters in itertools.product("IXYZ", repeat=q):
        word = "".join(letters)
        xmask, phases = _word_action(word)
        coeff = complex(np.dot(phases, mat[idx, idx ^ xmask])) / dim
        if abs(coeff.imag) > _SYMMETRY_TOL:
            raise ValueError(f"non-real coefficient for {word}: {coeff}")
        if abs(coeff.real) > prune:
            terms.append(PauliTerm(coefficient=float(coeff.real), string=word))
    return PauliDecomposition(num_qubits=q, terms=tuple(terms))


def reconstruct(decomp: PauliDecomposition) -> np.ndarray:
    """Dense matrix sum(c_P * P); inverse of pauli_decompose up to pruning."""
    dim = 1 << decomp.num_qubits
    idx = np.arange(dim)
    out = np.zeros((dim, dim), dtype=complex)
    for term in decomp.terms:
        xmask, phases = _word_action(term.string)
        out[idx ^ xmask, idx] += term.coefficient * phases
    return out
