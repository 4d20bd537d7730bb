"""Betti-number features and a small logistic-regression classifier.

Feature extraction builds the clique complex of a point cloud at a grouping
scale and estimates Betti numbers for k = 0 and k = 1, either through the
phase-estimation pipeline (sampled or analytic) or through the exact integer
oracle.  Raw (unrounded) estimates are used as features; rounding loses the
sub-integer information that distinguishes a leaky near-loop from no loop.

The classifier is plain full-batch gradient descent on cross-entropy with L2,
standardizing features with training-set statistics.  No external ML
dependency: two features and a few hundred samples do not justify one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .complexes import PointCloud, build_complex, build_rips_graph, exact_betti, laplacian
from .embedding import EmbeddingConfig, TimeSeriesSample, takens_embed
from .errors import DegenerateDataError, ResourceLimitError
from .hamiltonian import prepare_hamiltonian
from .qpe import QpeConfig, analytic_estimate, qpe_betti
from .simulator import MAX_SIM_QUBITS


@dataclass(frozen=True)
class FeatureVector:
    """Raw Betti features of one point cloud at one grouping scale."""

    beta0: float
    beta1: float
    epsilon: float

    def as_array(self) -> np.ndarray:
        return np.array([self.beta0, self.beta1], dtype=float)


@dataclass(frozen=True)
class LogisticHyper:
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-3

    def __post_init__(self):
        if self.learning_rate <= 0 or self.epochs < 1 or self.l2 < 0:
            raise ValueError("invalid hyperparameters")


@dataclass(frozen=True)
class LogisticModel:
    """Weights over standardized features plus the standardization statistics."""

    weights: np.ndarray
    bias: float
    feature_mean: np.ndarray
    feature_std: np.ndarray
    hyper: LogisticHyper
    loss_history: np.ndarray


def _required_qubits(dim: int, precision: int, method: str) -> int:
    q = max(1, (dim - 1).bit_length())
    return precision + (2 * q if method == "purified" else q)


def _estimate_for_dim(cx, k: int, qpe: QpeConfig | None, precision: int | None) -> float:
    """Raw Betti estimate for one homology dimension; 0.0 when S_k is empty.

    The empty case matches the exact convention (no k-simplices, beta_k = 0)
    and simply never reaches the estimator.
    """
    m = cx.size(k)
    if m == 0:
        return 0.0
    p = qpe.precision if qpe is not None else precision
    method = qpe.method() if qpe is not None else "purified"
    needed = _required_qubits(m, p, method)
    if needed > MAX_SIM_QUBITS:
        raise ResourceLimitError(
            f"|S_{k}| = {m} needs {needed} qubits at precision {p}, "
            f"over the cap of {MAX_SIM_QUBITS}"
        )
    ham = prepare_hamiltonian(laplacian(cx, k))
    if qpe is not None:
        return float(qpe_betti(ham, qpe).beta_raw)
    return float(analytic_estimate(ham, precision).beta_raw)


def extract_features(
    cloud: PointCloud,
    epsilon: float,
    cfg: QpeConfig | None = None,
    *,
    precision: int | None = None,
) -> FeatureVector:
    """Estimated (beta0, beta1) of the clique complex of ``cloud`` at ``epsilon``.

    Pass a QpeConfig for the sampled estimator, or ``precision`` alone for the
    shot-free analytic one.
    """
    if (cfg is None) == (precision is None):
        raise ValueError("pass exactly one of cfg or precision")
    cx = build_complex(build_rips_graph(cloud, epsilon), min(2, cloud.n - 1))
    return FeatureVector(
        beta0=_estimate_for_dim(cx, 0, cfg, precision),
        beta1=_estimate_for_dim(cx, 1, cfg, precision),
        epsilon=float(epsilon),
    )


def exact_features(cloud: PointCloud, epsilon: float) -> FeatureVector:
    """Oracle (beta0, beta1) of the clique complex at ``epsilon``, as floats."""
    cx = build_complex(build_rips_graph(cloud, epsilon), min(2, cloud.n - 1))
    return FeatureVector(
        beta0=float(exact_betti(cx, 0)),
        beta1=float(exact_betti(cx, 1)),
        epsilon=float(epsilon),
    )


def four_point_clouds(features6: np.ndarray) -> PointCloud:
    """Turn six features into a 4-point cloud in R^3 via contiguous triples.

    Rows are (f0,f1,f2), (f1,f2,f3), (f2,f3,f4), (f3,f4,f5); the scheme is
    index-based, so permuting the input changes the cloud.
    """
    f = np.asarray(features6, dtype=float)
    if f.shape != (6,):
        raise ValueError(f"expected exactly 6 features, got shape {f.shape}")
    return PointCloud(np.stack([f[i:i + 3] for i in range(4)]))


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def train_logistic(
    features: np.ndarray,
    labels: np.ndarray,
    hyper: LogisticHyper = LogisticHyper(),
) -> LogisticModel:
    """Full-batch gradient descent from zero weights; deterministic.

    Features are standardized with the statistics of this training set (kept
    on the model for prediction time); the bias is not regularized.
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels, dtype=float)
    if x.ndim != 2 or y.shape != (x.shape[0],):
        raise ValueError("features must be (n, d) with one label per row")
    classes = np.unique(y)
    if classes.size < 2:
        raise DegenerateDataError("training labels contain a single class")
    if not np.all(np.isin(classes, (0.0, 1.0))):
        raise ValueError("labels must be 0 or 1")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    xs = (x - mean) / std
    n, d = xs.shape
    w = np.zeros(d)
    b = 0.0
    losses = np.empty(hyper.epochs + 1)
    for epoch in range(hyper.epochs + 1):
        z = xs @ w + b
        # cross-entropy in the stable log(1+e^z) - y*z form
        losses[epoch] = float(np.mean(np.logaddexp(0.0, z) - y * z)
                              + 0.5 * hyper.l2 * np.dot(w, w))
        if epoch == hyper.epochs:
            break
        residual = _sigmoid(z) - y
        w -= hyper.learning_rate * (xs.T @ residual / n + hyper.l2 * w)
        b -= hyper.learning_rate * float(residual.mean())
    return LogisticModel(
        weights=w,
        bias=b,
        feature_mean=mean,
        feature_std=std,
        hyper=hyper,
        loss_history=losses,
    )


def predict_proba(model: LogisticModel, features: np.ndarray) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    xs = (x - model.feature_mean) / model.feature_std
    return _sigmoid(xs @ model.weights + model.bias)


def predict(model: LogisticModel, features: np.ndarray) -> np.ndarray:
    return (predict_proba(model, features) >= 0.5).astype(int)


def accuracy(predicted: np.ndarray, true: np.ndarray) -> float:
    predicted = np.asarray(predicted)
    true = np.asarray(true)
    if predicted.shape != true.shape or predicted.size == 0:
        raise ValueError("prediction/label shape mismatch")
    return float(np.mean(predicted == true))


def split_dataset(
    labels: np.ndarray,
    train_fraction: float = 0.2,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Stratified index split: per class, a seeded shuffle then a fraction cut.

    Stratifying keeps both classes in a small training share, which a plain
    shuffle does not guarantee.
    """
    y = np.asarray(labels)
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    train_idx, val_idx = [], []
    for cls in np.unique(y):
        members = np.flatnonzero(y == cls)
        rng.shuffle(members)
        cut = max(1, int(round(train_fraction * members.size)))
        train_idx.extend(members[:cut])
        val_idx.extend(members[cut:])
    return np.sort(np.array(train_idx, dtype=int)), np.sort(np.array(val_idx, dtype=int))


def features_for_samples(
    samples: list[TimeSeriesSample],
    embed_cfg: EmbeddingConfig,
    epsilon: float,
    *,
    qpe: QpeConfig | None = None,
    precision: int | None = None,
    exact: bool = False,
    base_seed: int = 0,
) -> list[FeatureVector]:
    """Embed every sample and extract features with the chosen estimator.

    In sampled mode each sample gets its own RNG stream derived from
    (base_seed, sample index), so results do not depend on evaluation order.
    """
    out = []
    for i, sample in enumerate(samples):
        cloud = takens_embed(sample.values, embed_cfg)
        if exact:
            out.append(exact_features(cloud, epsilon))
        elif qpe is not None:
            seed = _derived_seed(base_seed, i, qpe.seed)
            out.append(extract_features(cloud, epsilon, replace(qpe, seed=seed)))
        else:
            out.append(extract_features(cloud, epsilon, precision=precision))
    return out


def _derived_seed(base_seed: int, index: int, config_seed: int | None) -> int:
    entropy = [base_seed, index] if config_seed is None else [base_seed, index, config_seed]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


@dataclass(frozen=True)
class ClassificationReport:
    epsilon: float
    train_accuracy: float
    validation_accuracy: float
    model: LogisticModel
    features: tuple[FeatureVector, ...]
    labels: tuple[int, ...]
    train_indices: tuple[int, ...]


def classify_dataset(
    samples: list[TimeSeriesSample],
    embed_cfg: EmbeddingConfig,
    epsilon: float,
    *,
    qpe: QpeConfig | None = None,
    precision: int | None = None,
    exact: bool = False,
    train_fraction: float = 0.2,
    split_seed: int = 0,
    hyper: LogisticHyper = LogisticHyper(),
    base_seed: int = 0,
) -> ClassificationReport:
    """End-to-end: embed, extract features, split, train, score both splits."""
    labels = np.array([s.label for s in samples], dtype=int)
    feats = features_for_samples(samples, embed_cfg, epsilon,
                                 qpe=qpe, precision=precision, exact=exact,
                                 base_seed=base_seed)
    x = np.array([f.as_array() for f in feats])
    train_idx, val_idx = split_dataset(labels, train_fraction, split_seed)
    model = train_logistic(x[train_idx], labels[train_idx], hyper)
    return ClassificationReport(
        epsilon=float(epsilon),
        train_accuracy=accuracy(predict(model, x[train_idx]), labels[train_idx]),
        validation_accuracy=accuracy(predict(model, x[val_idx]), labels[val_idx]),
        model=model,
        features=tuple(feats),
        labels=tuple(int(v) for v in labels),
        train_indices=tuple(int(i) for i in train_idx),
    )


@dataclass(frozen=True)
class ScaleSweepResult:
    epsilons: tuple[float, ...]
    accuracies: tuple[float, ...]
    best_epsilon: float

    def as_rows(self) -> list[tuple[float, float]]:
        return list(zip(self.epsilons, self.accuracies))


def grouping_scale_sweep(
    samples: list[TimeSeriesSample],
    embed_cfg: EmbeddingConfig,
    eps_min: float,
    eps_max: float,
    steps: int,
    *,
    qpe: QpeConfig | None = None,
    precision: int | None = None,
    exact: bool = True,
    hyper: LogisticHyper = LogisticHyper(),
    base_seed: int = 0,
) -> ScaleSweepResult:
    """Training accuracy across linearly spaced grouping scales.

    Defaults to the exact oracle (the fast path for scanning); pass a
    QpeConfig or an analytic precision to sweep with estimated features.
    The whole dataset is the training set here: the sweep picks a scale, it
    does not measure generalization.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if eps_min < 0 or eps_max <= eps_min:
        raise ValueError("need 0 <= eps_min < eps_max")
    labels = np.array([s.label for s in samples], dtype=int)
    epsilons = np.linspace(eps_min, eps_max, steps)
    use_exact = exact and qpe is None and precision is None
    accuracies = []
    for step_index, eps in enumerate(epsilons):
        feats = features_for_samples(
            samples, embed_cfg, float(eps),
            qpe=qpe, precision=precision, exact=use_exact,
            base_seed=_derived_seed(base_seed, step_index, None),
        )
        x = np.array([f.as_array() for f in feats])
        model = train_logistic(x, labels, hyper)
        accuracies.append(accuracy(predict(model, x), labels))
    best = int(np.argmax(accuracies))
    return ScaleSweepResult(
        epsilons=tuple(float(e) for e in epsilons),
        accuracies=tuple(float(a) for a in accuracies),
        best_epsilon=float(epsilons[best]),
    )
