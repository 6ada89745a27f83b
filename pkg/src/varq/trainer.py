"""Gradient-descent training over batched swap-test losses.

Each epoch partitions the training set into balanced 2^n-sample batches
(per-class shuffle seeded by seed+epoch, leftovers dropped for that
epoch), builds one store per batch, and walks theta down the numerical
gradient of the batched loss. Updates happen after every batch
("per_batch", the default) or once per epoch on the mean gradient
("per_epoch"). Everything is deterministic for a fixed config and seed
in exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .ansatz import AnsatzSpec, ParameterVector, apply_ansatz, init_parameters
from .encoding import EncodedSample
from .errors import ConfigurationError, DataError, OptimizationError
from .loss import EXACT, Shots, batched_loss
from .qram import QramStore, build_store
from .statevector import measure_probability

_CADENCES = ("per_batch", "per_epoch")


@dataclass(frozen=True)
class TrainConfig:
    n: int = 2
    epochs: int = 100
    learning_rate: float = 0.05
    fd_epsilon: float = 1e-3
    update_cadence: str = "per_batch"
    seed: int = 0
    mode: str | Shots = EXACT
    decision_threshold: float = 0.5
    readout_qubit: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if self.epochs < 1:
            raise ConfigurationError(f"epochs must be >= 1, got {self.epochs}")
        # 0 is allowed so the null-update sanity case stays constructible.
        if self.learning_rate < 0:
            raise ConfigurationError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.fd_epsilon <= 0:
            raise ConfigurationError(f"fd_epsilon must be > 0, got {self.fd_epsilon}")
        if self.update_cadence not in _CADENCES:
            raise ConfigurationError(
                f"update_cadence must be one of {_CADENCES}, got {self.update_cadence!r}"
            )
        if not 0.0 <= self.decision_threshold <= 1.0:
            raise ConfigurationError(
                f"decision_threshold must be in [0, 1], got {self.decision_threshold}"
            )
        if not (self.mode == EXACT or isinstance(self.mode, Shots)):
            raise ConfigurationError(f"mode must be 'exact' or Shots(...), got {self.mode!r}")


@dataclass(frozen=True)
class EpochMetrics:
    epoch: int  # 1-based
    train_loss: float
    train_accuracy: float
    test_accuracy: float | None


def numerical_gradient(
    loss_fn: Callable[[ParameterVector], float],
    theta: ParameterVector,
    fd_epsilon: float,
) -> np.ndarray:
    """Central differences per coordinate: (L(t+e) - L(t-e)) / 2e."""
    if fd_epsilon <= 0:
        raise ConfigurationError(f"fd_epsilon must be > 0, got {fd_epsilon}")
    base = theta.values
    grad = np.empty(base.shape[0], dtype=np.float64)
    for j in range(base.shape[0]):
        up = base.copy()
        up[j] += fd_epsilon
        down = base.copy()
        down[j] -= fd_epsilon
        lp = loss_fn(ParameterVector(up))
        lm = loss_fn(ParameterVector(down))
        if not (np.isfinite(lp) and np.isfinite(lm)):
            raise OptimizationError(
                f"non-finite loss while probing parameter {j}: {lp}, {lm}"
            )
        grad[j] = (lp - lm) / (2.0 * fd_epsilon)
    return grad


def make_batches(
    train_set: Sequence[EncodedSample], n: int, seed: int, epoch: int
) -> list[QramStore]:
    """Balanced batches of 2^n for one epoch, one store each.

    Classes are shuffled independently with default_rng(seed + epoch),
    then paired chunkwise; samples that cannot fill a final balanced
    batch are dropped until the next epoch's reshuffle.
    """
    half = 1 << (n - 1)
    class0 = [s for s in train_set if s.label == 0]
    class1 = [s for s in train_set if s.label == 1]
    if len(class0) < half or len(class1) < half:
        raise DataError(
            f"need at least {half} samples per class for n={n}, "
            f"got {len(class0)} / {len(class1)}"
        )
    rng = np.random.default_rng(seed + epoch)
    order0 = rng.permutation(len(class0))
    order1 = rng.permutation(len(class1))
    num_batches = min(len(class0), len(class1)) // half
    stores = []
    for b in range(num_batches):
        chunk0 = [class0[i] for i in order0[b * half : (b + 1) * half]]
        chunk1 = [class1[i] for i in order1[b * half : (b + 1) * half]]
        stores.append(build_store(chunk0 + chunk1))
    return stores


def classify(
    sample: EncodedSample,
    spec: AnsatzSpec,
    theta: ParameterVector,
    readout_qubit: int = 0,
    threshold: float = 0.5,
) -> int:
    """Run the bare sample through the ansatz and threshold p(readout=1).

    Ties at the threshold go to class 1.
    """
    if sample.state.num_qubits != spec.k:
        raise ConfigurationError(
            f"sample has {sample.state.num_qubits} qubits, ansatz spans {spec.k}"
        )
    out = apply_ansatz(spec, theta, sample.state, tuple(range(spec.k)))
    p_one = measure_probability(out, readout_qubit, 1)
    return 1 if p_one >= threshold else 0


def accuracy(
    samples: Sequence[EncodedSample],
    spec: AnsatzSpec,
    theta: ParameterVector,
    readout_qubit: int = 0,
    threshold: float = 0.5,
) -> float | None:
    """Fraction classified correctly; None for an empty sample list."""
    if not samples:
        return None
    hits = sum(
        1
        for s in samples
        if classify(s, spec, theta, readout_qubit, threshold) == s.label
    )
    return hits / len(samples)


def _step(theta: ParameterVector, delta: np.ndarray, epoch: int) -> ParameterVector:
    values = theta.values - delta
    if not np.all(np.isfinite(values)):
        raise OptimizationError(
            f"training diverged at epoch {epoch}: parameters became non-finite"
        )
    return ParameterVector(values)


def train(
    train_set: Sequence[EncodedSample],
    test_set: Sequence[EncodedSample],
    spec: AnsatzSpec,
    config: TrainConfig,
    initial_theta: ParameterVector | None = None,
) -> tuple[ParameterVector, list[EpochMetrics]]:
    """Optimize theta; returns the final angles and per-epoch metrics.

    initial_theta lets the caller seed initialization independently of
    the shuffle stream; by default theta is drawn from config.seed.
    """
    if not train_set:
        raise DataError("empty training set")
    theta = initial_theta if initial_theta is not None else init_parameters(spec, config.seed)
    if len(theta) != spec.parameter_count:
        raise ConfigurationError(
            f"initial theta has {len(theta)} angles, spec needs {spec.parameter_count}"
        )

    shots_rng = None
    if isinstance(config.mode, Shots):
        shots_rng = np.random.default_rng(config.mode.seed)

    def eval_mode() -> str | Shots:
        if shots_rng is None:
            return EXACT
        # Fresh sub-seed per evaluation, deterministic in sequence.
        return Shots(config.mode.count, int(shots_rng.integers(1 << 62)))

    def loss_at(store: QramStore, th: ParameterVector) -> float:
        return batched_loss(
            store, spec, th, mode=eval_mode(), readout_qubit=config.readout_qubit
        )

    metrics: list[EpochMetrics] = []
    for epoch in range(1, config.epochs + 1):
        stores = make_batches(train_set, config.n, config.seed, epoch)
        batch_losses = []
        if config.update_cadence == "per_batch":
            for store in stores:
                value = loss_at(store, theta)
                grad = numerical_gradient(lambda th: loss_at(store, th), theta, config.fd_epsilon)
                theta = _step(theta, config.learning_rate * grad, epoch)
                batch_losses.append(value)
        else:
            grad_sum = np.zeros(len(theta))
            for store in stores:
                batch_losses.append(loss_at(store, theta))
                grad_sum += numerical_gradient(
                    lambda th: loss_at(store, th), theta, config.fd_epsilon
                )
            theta = _step(theta, config.learning_rate * grad_sum / len(stores), epoch)
        mean_loss = float(np.mean(batch_losses))
        if not np.isfinite(mean_loss):
            raise OptimizationError(f"training diverged at epoch {epoch}: loss {mean_loss}")
        metrics.append(
            EpochMetrics(
                epoch=epoch,
                train_loss=mean_loss,
                train_accuracy=accuracy(
                    train_set, spec, theta, config.readout_qubit, config.decision_threshold
                ),
                test_accuracy=accuracy(
                    test_set, spec, theta, config.readout_qubit, config.decision_threshold
                ),
            )
        )
    return theta, metrics
