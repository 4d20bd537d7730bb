"""Dense statevector simulator, just enough for phase estimation circuits.

Bit convention: qubit 0 owns the most significant bit of the basis index,
so |q0 q1 ... q_{n-1}> maps to index q0*2^(n-1) + ... + q_{n-1}.  Gates are
stored as explicit matrices on their target qubits plus a set of control
qubits; application reshapes the state into a rank-n tensor, slices the
control axes at 1, moves the target axes to the front, and matmuls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError

#: dense simulation above this register size would need > 256 MiB per state
MAX_SIM_QUBITS = 24

_UNITARY_CHECK_DIM = 64
_UNITARY_TOL = 1e-9
_NORM_TOL = 1e-6

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]


def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz_matrix(phi: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * phi), 0.0], [0.0, np.exp(0.5j * phi)]], dtype=complex)


def phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * phi)]], dtype=complex)


@dataclass(frozen=True)
class Gate:
    """A unitary on ``targets``, fired only where every control qubit is 1."""

    name: str
    matrix: np.ndarray
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        k = len(self.targets)
        if mat.shape != (1 << k, 1 << k):
            raise ValueError(f"gate {self.name}: matrix shape {mat.shape} does not fit {k} target(s)")
        seen = set(self.targets) | set(self.controls)
        if len(seen) != len(self.targets) + len(self.controls):
            raise ValueError(f"gate {self.name}: overlapping target/control qubits")
        if mat.shape[0] <= _UNITARY_CHECK_DIM:
            err = np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])))
            if err > _UNITARY_TOL:
                raise ValueError(f"gate {self.name}: matrix is not unitary (deviation {err:.2e})")

    def dagger(self) -> "Gate":
        return Gate(self.name + "'", self.matrix.conj().T, self.targets, self.controls)

    def shifted(self, offset: int, extra_control: int | None = None) -> "Gate":
        """Same gate with all qubits moved up by ``offset``; optionally add a control."""
        controls = tuple(c + offset for c in self.controls)
        if extra_control is not None:
            controls = (extra_control,) + controls
        return Gate(self.name, self.matrix, tuple(t + offset for t in self.targets), controls)


class Circuit:
    """An ordered gate list on a fixed register, plus a global phase."""

    def __init__(self, num_qubits: int):
        if num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        if num_qubits > MAX_SIM_QUBITS:
            raise ResourceLimitError(
                f"{num_qubits} qubits exceeds the dense simulation cap of {MAX_SIM_QUBITS}"
            )
        self.num_qubits = num_qubits
        self.gates: list[Gate] = []
        self.global_phase = 0.0

    def _check(self, *qubits: int):
        for q in qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit {q} outside register of size {self.num_qubits}")

    def add(self, gate: Gate) -> "Circuit":
        self._check(*gate.targets, *gate.controls)
        self.gates.append(gate)
        return self

    def h(self, q: int) -> "Circuit":
        return self.add(Gate("H", _H, (q,)))

    def x(self, q: int) -> "Circuit":
        return self.add(Gate("X", _X, (q,)))

    def z(self, q: int) -> "Circuit":
        return self.add(Gate("Z", _Z, (q,)))

    def rx(self, theta: float, q: int) -> "Circuit":
        return self.add(Gate(f"RX({theta:.6g})", rx_matrix(theta), (q,)))

    def rz(self, phi: float, q: int) -> "Circuit":
        return self.add(Gate(f"RZ({phi:.6g})", rz_matrix(phi), (q,)))

    def p(self, phi: float, q: int) -> "Circuit":
        return self.add(Gate(f"P({phi:.6g})", phase_matrix(phi), (q,)))

    def cp(self, phi: float, control: int, target: int) -> "Circuit":
        return self.add(Gate(f"P({phi:.6g})", phase_matrix(phi), (target,), (control,)))

    def cx(self, control: int, target: int) -> "Circuit":
        return self.add(Gate("X", _X, (target,), (control,)))

    def swap(self, a: int, b: int) -> "Circuit":
        return self.add(Gate("SWAP", _SWAP, (a, b)))

    def unitary(self, matrix: np.ndarray, targets: tuple[int, ...],
                controls: tuple[int, ...] = (), name: str = "U") -> "Circuit":
        return self.add(Gate(name, matrix, tuple(targets), tuple(controls)))

    def inverse(self) -> "Circuit":
        inv = Circuit(self.num_qubits)
        inv.gates = [g.dagger() for g in reversed(self.gates)]
        inv.global_phase = -self.global_phase
        return inv

    def controlled_gates(self, control: int, offset: int) -> list[Gate]:
        """This circuit's gates shifted by ``offset`` and controlled on one qubit.

        The global phase is not global any more once controlled: it becomes a
        phase gate on the control qubit.
        """
        out = [g.shifted(offset, extra_control=control) for g in self.gates]
        if self.global_phase != 0.0:
            out.append(Gate(f"P({self.global_phase:.6g})",
                            phase_matrix(self.global_phase), (control,)))
        return out

    def run(self, initial: np.ndarray | int | None = None) -> np.ndarray:
        """Evolve an initial state (basis index, vector, or |0...0>) through the gates."""
        dim = 1 << self.num_qubits
        if initial is None:
            state = np.zeros(dim, dtype=complex)
            state[0] = 1.0
        elif isinstance(initial, (int, np.integer)):
            if not 0 <= initial < dim:
                raise ValueError(f"basis index {initial} outside dimension {dim}")
            state = np.zeros(dim, dtype=complex)
            state[initial] = 1.0
        else:
            state = np.asarray(initial, dtype=complex).copy()
            if state.shape != (dim,):
                raise ValueError(f"state shape {state.shape} does not match {self.num_qubits} qubits")
            if abs(np.linalg.norm(state) - 1.0) > _NORM_TOL:
                raise ValueError("initial state is not normalized")
        for gate in self.gates:
            state = _apply_gate(state, self.num_qubits, gate)
        if self.global_phase != 0.0:
            state = state * np.exp(1j * self.global_phase)
        norm = np.linalg.norm(state)
        assert abs(norm - 1.0) < _NORM_TOL, f"state norm drifted to {norm}"
        return state


def _apply_gate(state: np.ndarray, num_qubits: int, gate: Gate) -> np.ndarray:
    tensor = state.reshape([2] * num_qubits)
    index: list[object] = [slice(None)] * num_qubits
    for c in gate.controls:
        index[c] = 1
    sub = tensor[tuple(index)]
    sub_axes = [t - sum(1 for c in gate.controls if c < t) for t in gate.targets]
    k = len(gate.targets)
    moved = np.moveaxis(sub, sub_axes, range(k))
    shape = moved.shape
    flat = moved.reshape(1 << k, -1)
    moved[...] = (gate.matrix @ flat).reshape(shape)
    return state


def basis_state(num_qubits: int, index: int = 0) -> np.ndarray:
    dim = 1 << num_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside dimension {dim}")
    state = np.zeros(dim, dtype=complex)
    state[index] = 1.0
    return state


def probabilities(state: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(state)) ** 2
