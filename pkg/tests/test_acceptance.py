"""Acceptance gate: seven end-to-end criteria, each with fixed tolerances and a
runtime budget. Every test prints exactly one PASS/FAIL line straight to the
terminal (bypassing capture) so a verbose run reads as a checklist.
"""

import time

import numpy as np
import pytest

from qtda.classify import classify_dataset, features_for_samples, grouping_scale_sweep
from qtda.complexes import (
    boundary_matrix,
    exact_betti,
    laplacian,
    random_complex,
)
from qtda.embedding import CORPUS_EMBEDDING, CORPUS_EPSILON, make_synthetic_corpus
from qtda.example import (
    EXPECTED_D1,
    EXPECTED_D2,
    EXPECTED_DELTA1,
    EXPECTED_LAMBDA_MAX,
    EXPECTED_PADDED,
    EXPECTED_PAULI_TERMS,
    run_example,
)
from qtda.experiments import SweepConfig, _pick_k, run_sweep
from qtda.hamiltonian import pauli_decompose, prepare_hamiltonian, reconstruct
from qtda.qpe import (
    QpeConfig,
    analytic_estimate,
    analytic_zero_probability,
    prepare_mixed_state,
    qpe_betti,
    trotter_circuit,
    unitary_from_hamiltonian,
)
from qtda.simulator import Circuit

GOLDEN_TOL = 1e-10


def report(capsys, name: str, ok: bool, detail: str, elapsed: float, budget: float):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"[{status}] {name}: {detail} ({elapsed:.1f}s, budget {budget:.0f}s)",
              flush=True)
    assert ok, detail
    assert elapsed < budget, f"{name} exceeded its {budget:.0f}s budget ({elapsed:.1f}s)"


def test_criterion_1_golden_example(capsys, demo_cx, demo_ham):
    started = time.perf_counter()
    problems = []

    np.testing.assert_array_equal(boundary_matrix(demo_cx, 1).matrix, EXPECTED_D1)
    np.testing.assert_array_equal(boundary_matrix(demo_cx, 2).matrix, EXPECTED_D2)
    np.testing.assert_array_equal(laplacian(demo_cx, 1).matrix, EXPECTED_DELTA1)
    np.testing.assert_array_equal(demo_ham.matrix, EXPECTED_PADDED)
    if demo_ham.lambda_max_bound != EXPECTED_LAMBDA_MAX:
        problems.append(f"spectral bound {demo_ham.lambda_max_bound} != 6")

    decomp = pauli_decompose(demo_ham)
    if len(decomp.terms) != 24:
        problems.append(f"{len(decomp.terms)} Pauli terms, expected 24")
    for term, (word, coeff) in zip(decomp.terms, EXPECTED_PAULI_TERMS):
        if term.string != word or abs(term.coefficient - coeff) > GOLDEN_TOL:
            problems.append(f"term {term.string}={term.coefficient} vs {word}={coeff}")
    for word, coeff in (("III", 2.625), ("XXI", -0.5), ("ZZI", 0.375)):
        if abs(decomp.coefficient(word) - coeff) > GOLDEN_TOL:
            problems.append(f"spot value {word} != {coeff}")

    # the packaged end-to-end check agrees with the by-hand comparisons above
    example = run_example(precision=3, shots=100, seed=0)
    problems.extend(example.mismatches)

    elapsed = time.perf_counter() - started
    detail = ("d1, d2, laplacian, padded matrix, bound 6, all 24 coefficients "
              "within 1e-10" if not problems else "; ".join(problems[:3]))
    report(capsys, "criterion 1 (worked-example goldens)", not problems, detail,
           elapsed, budget=5.0)


def test_criterion_2_stochastic_estimate(capsys, demo_ham):
    started = time.perf_counter()
    v = analytic_zero_probability(demo_ham, 3)
    shots = 1000
    sigma = np.sqrt(v * (1 - v) / shots)
    in_band = 0
    rounds_to_one = 0
    seeds = 100
    for seed in range(seeds):
        est = qpe_betti(demo_ham, QpeConfig(precision=3, shots=shots, seed=seed))
        if abs(float(est.p_zero) - v) <= 5 * sigma:
            in_band += 1
        if est.beta == 1:
            rounds_to_one += 1
    reference_draw = 0.149  # published single run at the same settings
    reference_gap = abs(reference_draw - v) / sigma
    ok = in_band == seeds and rounds_to_one >= 95 and reference_gap <= 5
    detail = (f"analytic p(0)={v:.6f}; {in_band}/{seeds} runs within 5 sigma, "
              f"{rounds_to_one}/{seeds} round to 1; reference draw 0.149 sits "
              f"{reference_gap:.2f} sigma away")
    if reference_gap > 5:
        detail += " (FINDING: published draw inconsistent with analytic value)"
    elapsed = time.perf_counter() - started
    report(capsys, "criterion 2 (sampled estimate, p=3, 1000 shots)", ok, detail,
           elapsed, budget=120.0)


def test_criterion_3_oracle_equivalence(capsys):
    started = time.perf_counter()
    p = 8
    threshold = 2 * np.pi / (1 << p)
    total = gap_failures = mismatches = 0
    for n in (5, 8):
        for idx in range(100):
            cx = random_complex(n, 0.5, max_dim=n - 1, seed=1000 * n + idx)
            k = _pick_k(cx, "auto", p)
            if k is None:
                continue
            total += 1
            ham = prepare_hamiltonian(laplacian(cx, k), 6.0)
            lam = np.linalg.eigvalsh(ham.matrix)
            positive = lam[lam > 1e-9]
            if positive.size and positive.min() <= threshold:
                gap_failures += 1
                continue
            est = analytic_estimate(ham, p)
            if round(est.beta_raw) != exact_betti(cx, k):
                mismatches += 1
    ok = mismatches == 0 and gap_failures < 0.10 * total
    detail = (f"{total} complexes; {total - gap_failures} passed the gap check "
              f"(2*pi/2^8) and all of those rounded to the exact value; "
              f"{gap_failures} gap failures ({100 * gap_failures / total:.1f}%), "
              f"{mismatches} rounding mismatches")
    elapsed = time.perf_counter() - started
    report(capsys, "criterion 3 (analytic oracle at p=8)", ok, detail,
           elapsed, budget=600.0)


def test_criterion_4_precision_trend_on_corpus(capsys):
    started = time.perf_counter()
    samples = make_synthetic_corpus(100, seed=20)
    exact = features_for_samples(samples, CORPUS_EMBEDDING, CORPUS_EPSILON, exact=True)
    truth = np.array([[f.beta0, f.beta1] for f in exact])
    maes = {}
    for p in range(1, 6):
        feats = features_for_samples(
            samples, CORPUS_EMBEDDING, CORPUS_EPSILON,
            qpe=QpeConfig(precision=p, shots=100), base_seed=4,
        )
        est = np.array([[f.beta0, f.beta1] for f in feats])
        maes[p] = float(np.mean(np.abs(est - truth)))
    extractions = truth.size
    decreasing = all(maes[p] > maes[p + 1] for p in range(1, 5))
    reduction = maes[1] / maes[5]
    ok = decreasing and reduction >= 5 and extractions >= 200
    trend = " > ".join(f"{maes[p]:.3f}" for p in range(1, 6))
    detail = (f"MAE over {extractions} extractions at 100 shots: {trend}; "
              f"{reduction:.1f}x reduction from p=1 to p=5")
    elapsed = time.perf_counter() - started
    report(capsys, "criterion 4 (precision trend, shots=100)", ok, detail,
           elapsed, budget=900.0)


def test_criterion_5_resource_monotonicity(capsys):
    started = time.perf_counter()
    cfg = SweepConfig(
        n_values=(5, 10),
        complexes_per_n=30,
        shot_grid=(100, 10000),
        precision_grid=(1, 5),
        base_seed=14,
    )
    records = run_sweep(cfg)
    details = []
    ok = True
    for n in cfg.n_values:
        cheap = [float(r.abs_error) for r in records
                 if r.n == n and r.shots == 100 and r.precision == 1]
        rich = [float(r.abs_error) for r in records
                if r.n == n and r.shots == 10000 and r.precision == 5]
        assert len(cheap) == len(rich) == 30
        ratio = np.mean(rich) / np.mean(cheap)
        ok = ok and ratio <= 0.20
        details.append(f"n={n}: mean AE {np.mean(cheap):.3f} -> {np.mean(rich):.3f} "
                       f"({100 * ratio:.1f}%)")
    elapsed = time.perf_counter() - started
    report(capsys, "criterion 5 (more shots and precision shrink the error)",
           ok, "; ".join(details), elapsed, budget=1200.0)


def test_criterion_6_property_suites(capsys, demo_ham):
    started = time.perf_counter()
    rng = np.random.default_rng(0)

    # chain complex identity and Laplacian shape on random clique complexes
    for seed in range(8):
        n = 5 + seed % 4
        cx = random_complex(n, 0.5, max_dim=n - 1, seed=seed)
        for k in range(1, cx.max_dim + 1):
            if cx.size(k) == 0:
                break
            if k >= 2:
                d_hi = boundary_matrix(cx, k).matrix
                d_lo = boundary_matrix(cx, k - 1).matrix
                assert not (d_lo @ d_hi).any()
        for k in range(cx.max_dim + 1):
            if cx.size(k) == 0:
                break
            mat = laplacian(cx, k).matrix
            np.testing.assert_array_equal(mat, mat.T)
            for _ in range(20):
                vec = rng.standard_normal(mat.shape[0])
                assert vec @ mat @ vec >= -1e-9 * (vec @ vec)
        # Euler-Poincare on the same instances (all n <= 8)
        chi_counts = sum((-1) ** k * cx.size(k) for k in range(cx.max_dim + 1))
        chi_betti = sum((-1) ** k * exact_betti(cx, k) for k in range(cx.max_dim + 1))
        assert chi_counts == chi_betti

    # Pauli expansion round trip
    for q in (1, 2, 3):
        dim = 1 << q
        raw = rng.standard_normal((dim, dim))
        sym = (raw + raw.T) / 2
        assert np.max(np.abs(reconstruct(pauli_decompose(sym)) - sym)) <= 1e-10

    # mixed-state partial trace
    for q in (1, 2, 3):
        state = prepare_mixed_state(q).reshape(1 << q, 1 << q)
        rho = state @ state.conj().T
        assert np.max(np.abs(rho - np.eye(1 << q) / (1 << q))) <= 1e-12

    # statevector norm preservation through a deep circuit
    circ = Circuit(4)
    for i in range(4):
        circ.h(i).rx(0.3 * (i + 1), i)
    for i in range(3):
        circ.cx(i, i + 1).cp(0.7, i, 3 - i if 3 - i != i else 0)
    state = circ.run()
    assert abs(np.vdot(state, state).real - 1.0) < 1e-9

    # first-order Trotter error halves when steps double
    decomp = pauli_decompose(demo_ham)
    exact_u = unitary_from_hamiltonian(demo_ham.matrix)
    dims = 1 << decomp.num_qubits
    distances = []
    for steps in (2, 4, 8):
        circ = trotter_circuit(decomp, steps=steps)
        u = np.column_stack([circ.run(j) for j in range(dims)])
        distances.append(np.linalg.norm(u - exact_u, 2))
    ratios = [a / b for a, b in zip(distances, distances[1:])]
    assert all(2 / 1.5 <= r <= 2 * 1.5 for r in ratios)

    elapsed = time.perf_counter() - started
    detail = ("boundary-of-boundary, Laplacian symmetry/PSD, Pauli round trip, "
              "partial trace, norm, Euler-Poincare, Trotter halving "
              f"(ratios {', '.join(f'{r:.2f}' for r in ratios)})")
    report(capsys, "criterion 6 (property suites)", True, detail,
           elapsed, budget=120.0)


def test_criterion_7_classification_end_to_end(capsys):
    started = time.perf_counter()
    samples = make_synthetic_corpus(40, seed=20)
    qpe = QpeConfig(precision=4, shots=100)
    outcome = classify_dataset(samples, CORPUS_EMBEDDING, CORPUS_EPSILON,
                               qpe=qpe, base_seed=6)
    exact_sweep = grouping_scale_sweep(samples, CORPUS_EMBEDDING, 0.5, 2.6, 4,
                                       exact=True)
    estimated_sweep = grouping_scale_sweep(samples, CORPUS_EMBEDDING, 0.5, 2.6, 4,
                                           qpe=qpe, exact=False, base_seed=6)
    ok = (outcome.validation_accuracy >= 0.95
          and estimated_sweep.best_epsilon == exact_sweep.best_epsilon)
    detail = (f"validation accuracy {outcome.validation_accuracy:.3f} at p=4, "
              f"100 shots; sweep argmax agrees at epsilon="
              f"{estimated_sweep.best_epsilon:.1f}")
    elapsed = time.perf_counter() - started
    report(capsys, "criterion 7 (two-class corpus end to end)", ok, detail,
           elapsed, budget=600.0)
