"""Phase estimation over a maximally mixed state, and the Betti estimate it yields.

The estimator runs quantum phase estimation on U = exp(iH), where H is the
padded, rescaled Laplacian, with the state register prepared maximally mixed.
The probability of reading 0 on the precision register approaches
(kernel dimension) / 2^q, so beta ~= 2^q * p(0).

Register layout: precision qubits come first (qubit 0 is the most significant
bit of the phase readout), then the q-qubit state register, then, when the
mixed state is prepared by purification, q auxiliary qubits entangled with it.

Evolution is either "exact" (dense exp(iH) via eigendecomposition, powers by
repeated squaring) or "trotter" (first-order product formula over the Pauli
decomposition of H).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hamiltonian import PaddedHamiltonian, PauliDecomposition, pauli_decompose
from .simulator import Circuit, probabilities

_UNITARY_TOL = 1e-9
_INTEGER_PHASE_TOL = 1e-12


@dataclass(frozen=True)
class QpeConfig:
    """Knobs for one estimation run.

    mixed_state_mode "auxiliary" entangles the state register with extra
    qubits (one circuit, exact outcome distribution); "sampled" draws a
    uniform basis state per shot instead and runs without auxiliaries.
    """

    precision: int
    shots: int
    seed: int | None = None
    evolution_mode: str = "exact"
    trotter_steps: int = 1
    mixed_state_mode: str = "auxiliary"

    def __post_init__(self):
        if not 1 <= self.precision <= 16:
            raise ValueError("precision must lie in [1, 16]")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.evolution_mode not in ("exact", "trotter"):
            raise ValueError(f"unknown evolution mode {self.evolution_mode!r}")
        if self.trotter_steps < 1:
            raise ValueError("trotter_steps must be >= 1")
        if self.method() is None:
            raise ValueError(f"unknown mixed-state mode {self.mixed_state_mode!r}")

    def method(self) -> str | None:
        return {
            "auxiliary": "purified",
            "auxiliary-circuit": "purified",
            "sampled": "sampled",
            "sampled-basis": "sampled",
        }.get(self.mixed_state_mode)


@dataclass(frozen=True)
class BettiEstimate:
    """Outcome of one estimation run; shots == 0 marks the analytic (no sampling) path."""

    num_state_qubits: int
    precision: int
    shots: int
    p_zero: Fraction | float
    beta_raw: Fraction | float
    beta: int
    zero_count: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "q": self.num_state_qubits,
            "p": self.precision,
            "shots": self.shots,
            "p_zero": float(self.p_zero),
            "beta_raw": float(self.beta_raw),
            "beta": self.beta,
        }


def qft_circuit(num_qubits: int) -> Circuit:
    """Fourier transform |m> -> 2^(-n/2) sum_x exp(2*pi*i*m*x/2^n) |x>, qubit 0 = MSB."""
    circ = Circuit(num_qubits)
    for i in range(num_qubits):
        circ.h(i)
        for j in range(i + 1, num_qubits):
            circ.cp(2.0 * math.pi / (1 << (j - i + 1)), j, i)
    for i in range(num_qubits // 2):
        circ.swap(i, num_qubits - 1 - i)
    return circ


def inverse_qft_circuit(num_qubits: int) -> Circuit:
    return qft_circuit(num_qubits).inverse()


def prepare_mixed_state(num_state_qubits: int) -> np.ndarray:
    """Purification of I/2^q: a 2q-qubit state whose first-q-qubit marginal is maximally mixed.

    Hadamard on each of the first q qubits, then CNOT onto the matching
    auxiliary qubit, yields 2^(-q/2) * sum_j |j>|j>.
    """
    if num_state_qubits < 1:
        raise ValueError("need at least one state qubit")
    q = num_state_qubits
    circ = Circuit(2 * q)
    for t in range(q):
        circ.h(t)
        circ.cx(t, q + t)
    return circ.run()


def unitary_from_hamiltonian(hamiltonian: np.ndarray) -> np.ndarray:
    """Dense exp(iH) for symmetric real H, via eigendecomposition."""
    hmat = np.asarray(hamiltonian, dtype=float)
    w, v = np.linalg.eigh(hmat)
    u = (v * np.exp(1j * w)) @ v.conj().T
    err = np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])))
    if err > _UNITARY_TOL:
        raise ValueError(f"exp(iH) failed the unitarity check (deviation {err:.2e})")
    return u


def trotter_circuit(decomp: PauliDecomposition, time: float = 1.0, steps: int = 1) -> Circuit:
    """First-order product formula for exp(i * time * H), H given by Pauli terms.

    Each step applies exp(i * theta * P) for every term with
    theta = coefficient * time / steps: diagonalize the word onto Z (H for X,
    RX(pi/2) for Y), accumulate parity with a CNOT ladder, rotate RZ(-2*theta)
    on the last active qubit, uncompute.  The identity word only contributes a
    phase, which matters once the circuit is controlled.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    circ = Circuit(decomp.num_qubits)
    half_pi = math.pi / 2.0
    for _ in range(steps):
        for term in decomp.terms:
            theta = term.coefficient * time / steps
            active = [t for t, letter in enumerate(term.string) if letter != "I"]
            if not active:
                circ.global_phase += theta
                continue
            for t in active:
                letter = term.string[t]
                if letter == "X":
                    circ.h(t)
                elif letter == "Y":
                    circ.rx(half_pi, t)
            last = active[-1]
            for t in active[:-1]:
                circ.cx(t, last)
            circ.rz(-2.0 * theta, last)
            for t in reversed(active[:-1]):
                circ.cx(t, last)
            for t in reversed(active):
                letter = term.string[t]
                if letter == "X":
                    circ.h(t)
                elif letter == "Y":
                    circ.rx(-half_pi, t)
    return circ


def _as_padded(hamiltonian: PaddedHamiltonian | np.ndarray) -> tuple[np.ndarray, int]:
    if isinstance(hamiltonian, PaddedHamiltonian):
        return hamiltonian.matrix, hamiltonian.num_qubits
    hmat = np.asarray(hamiltonian, dtype=float)
    dim = hmat.shape[0]
    q = (dim - 1).bit_length() if dim > 1 else 0
    if hmat.ndim != 2 or hmat.shape != (dim, dim) or dim != 1 << q or q < 1:
        raise ValueError("hamiltonian must be square with power-of-two dimension >= 2")
    return hmat, q


def qpe_circuit(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    precision: int,
    *,
    evolution: str = "exact",
    trotter_steps: int = 1,
    purify: bool = True,
) -> Circuit:
    """Full estimation circuit: state prep, controlled powers, inverse Fourier.

    With purify=True the state register is maximally mixed by entangling it
    with an auxiliary register (H then CNOT pairwise), costing q extra qubits.
    With purify=False no state prep is emitted; the caller picks the input
    basis state at run time.
    """
    hmat, q = _as_padded(hamiltonian)
    if precision < 1:
        raise ValueError("precision must be >= 1")
    p = precision
    total = p + (2 * q if purify else q)
    circ = Circuit(total)
    if purify:
        for t in range(q):
            circ.h(p + t)
            circ.cx(p + t, p + q + t)
    for i in range(p):
        circ.h(i)
    if evolution == "exact":
        u_pow = unitary_from_hamiltonian(hmat)
        powers = {0: u_pow}
        for e in range(1, p):
            u_pow = u_pow @ u_pow
            powers[e] = u_pow
        for i in range(p):
            e = p - 1 - i
            circ.unitary(powers[e], tuple(range(p, p + q)), controls=(i,),
                         name=f"U^{1 << e}")
    elif evolution == "trotter":
        decomp = pauli_decompose(hmat)
        step = trotter_circuit(decomp, time=1.0, steps=trotter_steps)
        for i in range(p):
            gates = step.controlled_gates(control=i, offset=p)
            for _ in range(1 << (p - 1 - i)):
                for g in gates:
                    circ.add(g)
    else:
        raise ValueError(f"unknown evolution mode {evolution!r}")
    for g in inverse_qft_circuit(p).gates:
        circ.add(g)
    return circ


def precision_distribution(state: np.ndarray, precision: int) -> np.ndarray:
    """Marginal outcome distribution of the first ``precision`` qubits."""
    probs = probabilities(state)
    return probs.reshape(1 << precision, -1).sum(axis=1)


def mixed_state_distribution(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    precision: int,
    *,
    evolution: str = "exact",
    trotter_steps: int = 1,
) -> np.ndarray:
    """Precision-register distribution with the state register maximally mixed."""
    circ = qpe_circuit(hamiltonian, precision,
                       evolution=evolution, trotter_steps=trotter_steps, purify=True)
    return precision_distribution(circ.run(), precision)


def _normalized(dist: np.ndarray) -> np.ndarray:
    dist = np.clip(np.asarray(dist, dtype=float), 0.0, None)
    return dist / dist.sum()


def estimate_betti(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    precision: int,
    shots: int,
    rng: np.random.Generator | None = None,
    *,
    evolution: str = "exact",
    trotter_steps: int = 1,
    method: str = "purified",
) -> BettiEstimate:
    """Estimate a Betti number by sampling the phase readout ``shots`` times.

    method="purified" runs one circuit with an entangled auxiliary register
    and samples its exact outcome distribution.  method="sampled" draws a
    uniform basis state per shot instead (grouped, one run per distinct basis
    state), which needs q fewer qubits and mirrors how a device would average
    over the mixed state.  shots=0 falls through to the analytic estimate.
    """
    hmat, q = _as_padded(hamiltonian)
    if shots < 0:
        raise ValueError("shots must be >= 0")
    if shots == 0:
        return analytic_estimate(hamiltonian, precision)
    if rng is None:
        rng = np.random.default_rng()
    if method == "purified":
        dist = mixed_state_distribution(hmat, precision,
                                        evolution=evolution, trotter_steps=trotter_steps)
        counts = rng.multinomial(shots, _normalized(dist))
        zeros = int(counts[0])
    elif method == "sampled":
        circ = qpe_circuit(hmat, precision,
                           evolution=evolution, trotter_steps=trotter_steps, purify=False)
        dim = 1 << q
        basis_counts = rng.multinomial(shots, np.full(dim, 1.0 / dim))
        zeros = 0
        for j in range(dim):
            if basis_counts[j] == 0:
                continue
            dist = precision_distribution(circ.run(int(j)), precision)
            outcome = rng.multinomial(int(basis_counts[j]), _normalized(dist))
            zeros += int(outcome[0])
    else:
        raise ValueError(f"unknown mixed-state method {method!r}")
    p_zero = Fraction(zeros, shots)
    beta_raw = Fraction(zeros * (1 << q), shots)
    return BettiEstimate(
        num_state_qubits=q,
        precision=precision,
        shots=shots,
        p_zero=p_zero,
        beta_raw=beta_raw,
        beta=round(beta_raw),
        zero_count=zeros,
    )


def qpe_betti(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    config: QpeConfig,
) -> BettiEstimate:
    """Run one configured estimation; identical configs give identical estimates."""
    rng = np.random.default_rng(config.seed)
    return estimate_betti(
        hamiltonian,
        config.precision,
        config.shots,
        rng,
        evolution=config.evolution_mode,
        trotter_steps=config.trotter_steps,
        method=config.method(),
    )


def analytic_zero_probability(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    precision: int,
) -> float:
    """Closed-form Pr(readout = 0) under exact evolution and a mixed state.

    For eigenphase theta = lambda / (2*pi), the all-zeros outcome has
    probability sin^2(2^p pi theta) / (4^p sin^2(pi theta)), which tends to 1
    as theta approaches an integer; the mixed state averages this over the
    spectrum.
    """
    hmat, q = _as_padded(hamiltonian)
    if precision < 1:
        raise ValueError("precision must be >= 1")
    eigs = np.linalg.eigvalsh(hmat)
    total = 0.0
    big = 1 << precision
    for lam in eigs:
        theta = lam / (2.0 * math.pi)
        s = math.sin(math.pi * theta)
        if abs(s) < _INTEGER_PHASE_TOL:
            total += 1.0
        else:
            ratio = math.sin(big * math.pi * theta) / (big * s)
            total += ratio * ratio
    return total / (1 << q)


def analytic_estimate(
    hamiltonian: PaddedHamiltonian | np.ndarray,
    precision: int,
) -> BettiEstimate:
    """Shot-free estimate from the closed-form readout distribution."""
    hmat, q = _as_padded(hamiltonian)
    p_zero = analytic_zero_probability(hmat, precision)
    beta_raw = p_zero * (1 << q)
    return BettiEstimate(
        num_state_qubits=q,
        precision=precision,
        shots=0,
        p_zero=p_zero,
        beta_raw=beta_raw,
        beta=int(round(beta_raw)),
    )
