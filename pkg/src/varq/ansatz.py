"""Layered parameterized circuit applied to the data qubits.

The default template, "ry_cz_ring", repeats per layer: one RY rotation
per data qubit (trainable angles, layer-major / qubit-minor order), then
a ring of CZ entanglers. Rotations and entanglers are all real, so real
input amplitudes stay real. The trainer and loss code treat the template
opaquely through apply_ansatz; swapping templates requires no changes
there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigurationError
from .statevector import GateOp, StateVector, _apply_op, _check_qubits

DEFAULT_TEMPLATE = "ry_cz_ring"
DEFAULT_LAYERS = 4


def _ring_pairs(k: int) -> tuple[tuple[int, int], ...]:
    # k=1 has no entangler; k=2 collapses the ring to a single pair.
    if k == 1:
        return ()
    if k == 2:
        return ((0, 1),)
    return tuple((q, (q + 1) % k) for q in range(k))


@dataclass(frozen=True)
class AnsatzSpec:
    """Circuit skeleton: data-qubit count, layer count, template name."""

    k: int
    layers: int
    template: str = DEFAULT_TEMPLATE

    def __post_init__(self):
        if self.k < 1:
            raise ConfigurationError(f"ansatz needs k >= 1 data qubits, got {self.k}")
        if self.layers < 1:
            raise ConfigurationError(f"ansatz needs layers >= 1, got {self.layers}")
        if self.template != DEFAULT_TEMPLATE:
            raise ConfigurationError(f"unknown ansatz template {self.template!r}")

    @property
    def parameter_count(self) -> int:
        return self.k * self.layers

    @property
    def entangler_pairs(self) -> tuple[tuple[int, int], ...]:
        return _ring_pairs(self.k)

    @property
    def gate_count(self) -> int:
        """Gates per application: rotations plus entanglers, all layers."""
        return self.layers * (self.k + len(self.entangler_pairs))

    def operations(self, theta: "ParameterVector", data_qubits: Sequence[int]) -> tuple[GateOp, ...]:
        """The concrete gate sequence on the given qubits for angles theta."""
        if len(data_qubits) != self.k:
            raise ConfigurationError(
                f"ansatz spans {self.k} qubits, got {len(data_qubits)} data qubits"
            )
        if len(theta.values) != self.parameter_count:
            raise ConfigurationError(
                f"theta has {len(theta.values)} angles, spec needs {self.parameter_count}"
            )
        ops = []
        for layer in range(self.layers):
            base = layer * self.k
            for q in range(self.k):
                ops.append(GateOp.ry(data_qubits[q], theta.values[base + q]))
            for a, b in self.entangler_pairs:
                ops.append(GateOp.cz(data_qubits[a], data_qubits[b]))
        return tuple(ops)


@dataclass(frozen=True, eq=False)
class ParameterVector:
    """Trainable rotation angles, radians."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1:
            raise ConfigurationError(f"parameter vector must be 1-D, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ConfigurationError("parameter vector contains non-finite values")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.shape[0]


def default_ansatz(k: int, layers: int = DEFAULT_LAYERS) -> AnsatzSpec:
    """The stock RY-rotation / CZ-ring template."""
    return AnsatzSpec(k=k, layers=layers)


def init_parameters(spec: AnsatzSpec, seed: int | None = None) -> ParameterVector:
    """Independent uniform angles in [0, 2*pi), reproducible from seed."""
    rng = np.random.default_rng(seed)
    return ParameterVector(rng.uniform(0.0, 2.0 * np.pi, size=spec.parameter_count))


def apply_ansatz(
    spec: AnsatzSpec,
    theta: ParameterVector,
    state: StateVector,
    data_qubits: Sequence[int],
) -> StateVector:
    """Apply the parameterized circuit to `data_qubits`, identity elsewhere."""
    data_qubits = tuple(data_qubits)
    _check_qubits(state, data_qubits)
    ops = spec.operations(theta, data_qubits)
    psi = state.amplitudes.copy().reshape([2] * state.num_qubits)
    for op in ops:
        _apply_op(psi, op)
    return StateVector(state.num_qubits, psi.reshape(-1))
