"""Sweeps of the estimator over random complexes: shots x precision grids.

For each (n, instance) cell a random clique complex is generated, the exact
Betti number is computed as the oracle, and the phase-estimation pipeline is
run over every (shots, precision) grid point.  The absolute error
|beta_raw - beta_exact| is taken on the raw rational estimate, so sub-integer
improvements stay visible in the statistics.

Every cell owns an RNG stream derived from (base_seed, coordinates), so the
run is deterministic regardless of execution order or worker count; cells
may execute concurrently (QTDA_THREADS caps the pool).
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complexes import SimplicialComplex, exact_betti, laplacian, random_complex
from .hamiltonian import prepare_hamiltonian
from .qpe import QpeConfig, qpe_betti
from .simulator import MAX_SIM_QUBITS

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepConfig:
    """Grid definition for one sweep run.

    k_policy is either an explicit homology dimension or "auto": the largest
    k whose S_{k+1} is nonempty (so the Laplacian has both boundary terms),
    lowered until the qubit budget 2q + max(precision) fits the simulator.
    """

    n_values: tuple[int, ...] = (5, 10, 15)
    complexes_per_n: int = 20
    shot_grid: tuple[int, ...] = (100, 1000, 10000)
    precision_grid: tuple[int, ...] = (1, 2, 3, 4, 5)
    edge_prob: float = 0.5
    k_policy: int | str = "auto"
    base_seed: int = 0
    evolution_mode: str = "exact"
    mixed_state_mode: str = "auxiliary"
    trotter_steps: int = 1
    delta: float = 6.0

    def __post_init__(self):
        if not self.n_values or not self.shot_grid or not self.precision_grid:
            raise ValueError("all grids must be nonempty")
        if self.complexes_per_n < 1:
            raise ValueError("complexes_per_n must be >= 1")
        if any(n < 1 for n in self.n_values) or any(s < 1 for s in self.shot_grid):
            raise ValueError("n values and shot counts must be positive")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must lie in [0, 1]")
        if isinstance(self.k_policy, str) and self.k_policy != "auto":
            raise ValueError(f"unknown k_policy {self.k_policy!r}")


@dataclass(frozen=True)
class TrialRecord:
    """One estimator run against the oracle; abs_error = |beta_raw - exact_beta|."""

    n: int
    seed: int
    k: int
    exact_beta: int
    beta_raw: Fraction
    beta_rounded: int
    shots: int
    precision: int
    abs_error: Fraction
    wall_seconds: float


@dataclass(frozen=True)
class SummaryRow:
    """Five-number summary plus mean of abs_error within one (n, shots, p) cell."""

    n: int
    shots: int
    precision: int
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    mean: float
    count: int


def _derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _qubits_for(size: int) -> int:
    return max(1, (size - 1).bit_length())


def _pick_k(cx: SimplicialComplex, policy: int | str, max_precision: int) -> int | None:
    """Resolve the homology dimension for one complex, or None to skip it.

    "auto" walks down from the largest k with a nonempty S_{k+1} until the
    purified-register budget 2q + p fits; an explicit k is only checked.
    """
    if isinstance(policy, int):
        if cx.size(policy) == 0:
            return None
        if 2 * _qubits_for(cx.size(policy)) + max_precision > MAX_SIM_QUBITS:
            return None
        return policy
    top = max((k for k in range(cx.max_dim + 1) if cx.size(k) > 0), default=0)
    start = max(top - 1, 0)
    for k in range(start, -1, -1):
        if cx.size(k) == 0:
            continue
        if 2 * _qubits_for(cx.size(k)) + max_precision <= MAX_SIM_QUBITS:
            return k
    return None


def _worker_count() -> int:
    env = os.environ.get("QTDA_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer QTDA_THREADS=%r", env)
    return os.cpu_count() or 1


def run_sweep(cfg: SweepConfig) -> list[TrialRecord]:
    """Run the full grid; returns records in deterministic (n, instance, shots, p) order.

    Cells that cannot run (empty S_k at the policy dimension, or a register
    too large for the simulator) are skipped with a logged reason; the run
    continues.
    """
    max_p = max(cfg.precision_grid)
    prepared = []
    for n in cfg.n_values:
        for idx in range(cfg.complexes_per_n):
            complex_seed = _derive_seed(cfg.base_seed, n, idx)
            cx = random_complex(n, cfg.edge_prob, max_dim=n - 1, seed=complex_seed)
            k = _pick_k(cx, cfg.k_policy, max_p)
            if k is None:
                log.info("skipping n=%d instance %d (seed %d): "
                         "no feasible homology dimension under policy %r",
                         n, idx, complex_seed, cfg.k_policy)
                continue
            exact = exact_betti(cx, k)
            ham = prepare_hamiltonian(laplacian(cx, k), cfg.delta)
            prepared.append((n, idx, complex_seed, k, exact, ham))

    def run_cell(job):
        n, idx, complex_seed, k, exact, ham, shots, p = job
        config = QpeConfig(
            precision=p,
            shots=shots,
            seed=_derive_seed(cfg.base_seed, n, idx, shots, p),
            evolution_mode=cfg.evolution_mode,
            trotter_steps=cfg.trotter_steps,
            mixed_state_mode=cfg.mixed_state_mode,
        )
        started = time.perf_counter()
        estimate = qpe_betti(ham, config)
        elapsed = time.perf_counter() - started
        return TrialRecord(
            n=n,
            seed=complex_seed,
            k=k,
            exact_beta=exact,
            beta_raw=estimate.beta_raw,
            beta_rounded=estimate.beta,
            shots=shots,
            precision=p,
            abs_error=abs(estimate.beta_raw - exact),
            wall_seconds=elapsed,
        )

    jobs = [
        (n, idx, complex_seed, k, exact, ham, shots, p)
        for (n, idx, complex_seed, k, exact, ham) in prepared
        for shots in cfg.shot_grid
        for p in cfg.precision_grid
    ]
    workers = _worker_count()
    if workers == 1:
        return [run_cell(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, jobs))


def summarize(records: list[TrialRecord]) -> list[SummaryRow]:
    """Per-(n, shots, precision) stats of abs_error; quartiles linearly interpolated."""
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple[int, int, int], list[float]] = {}
    for rec in records:
        groups.setdefault((rec.n, rec.shots, rec.precision), []).append(float(rec.abs_error))
    rows = []
    for (n, shots, p) in sorted(groups):
        errs = np.array(groups[(n, shots, p)])
        mn, q1, med, q3, mx = np.percentile(errs, [0, 25, 50, 75, 100])
        rows.append(SummaryRow(
            n=n, shots=shots, precision=p,
            minimum=float(mn), q1=float(q1), median=float(med),
            q3=float(q3), maximum=float(mx),
            mean=float(errs.mean()), count=int(errs.size),
        ))
    return rows
