"""Label-state preparation, swap-test overlap estimation, batched loss.

The label state on 1+n qubits puts the class bit in perfect correlation
with the address half: data qubit 0 for the lower 2^(n-1) addresses, 1
for the upper half. Training minimizes

    loss = 1 - overlap,   overlap = Tr(rho_sub |label><label|)

where rho_sub is the reduced state of the batched circuit output on the
readout qubit plus the control qubits. The overlap is measured by the
standard ancilla swap test (H, one CSWAP per compared pair, H, readout):
p(ancilla=0) = (1 + overlap) / 2. Since the compared subsystems differ
only when the data register has more than one qubit, this reduces to the
pure-state overlap |<data|label>|^2 for a single data qubit.

Exact mode reads the ancilla probability from the statevector; shots
mode draws Bernoulli outcomes at that probability and reports the
empirical frequency.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzSpec, ParameterVector, apply_ansatz
from .errors import ConfigurationError
from .qram import QramStore, query_superposed
from .statevector import (
    GateOp,
    StateVector,
    _apply_cnot,
    _apply_cswap,
    _apply_h,
    _axis_slices,
)

EXACT = "exact"


@dataclass(frozen=True)
class Shots:
    """Sampled-readout mode: number of ancilla measurements and RNG seed."""

    count: int
    seed: int | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ConfigurationError(f"shot count must be >= 1, got {self.count}")


@dataclass(frozen=True, eq=False)
class LabelState:
    """Target state on 1+n qubits: data qubit 0 (MSB), then n controls."""

    state: StateVector

    @property
    def n(self) -> int:
        return self.state.num_qubits - 1


@dataclass(frozen=True)
class SwapTestResult:
    """Ancilla-zero probability and the overlap it encodes."""

    p_zero: float
    shots: int | None = None  # None means exact readout

    @property
    def overlap(self) -> float:
        return 2.0 * self.p_zero - 1.0


@functools.lru_cache(maxsize=None)
def prepare_label_state(n: int) -> LabelState:
    """Circuit construction: H on every control, CNOT from control 0 to
    the data qubit. Control 0 is the address MSB, so the data qubit ends
    up 0 exactly on the lower address half."""
    if n < 1:
        raise ConfigurationError(f"label state needs n >= 1 control qubits, got {n}")
    state = StateVector.zero(n + 1)
    psi = state.amplitudes.copy().reshape([2] * (n + 1))
    for q in range(1, n + 1):
        _apply_h(psi, q)
    # Control 0 of the address register is register qubit 1 (the address MSB).
    _apply_cnot(psi, 1, 0)
    return LabelState(StateVector(n + 1, psi.reshape(-1)))


def label_state_closed_form(n: int) -> StateVector:
    """Direct amplitude placement; serves as the oracle for the circuit route."""
    if n < 1:
        raise ConfigurationError(f"label state needs n >= 1 control qubits, got {n}")
    size = 1 << n
    half = size // 2
    amps = np.zeros(2 * size, dtype=np.complex128)
    scale = 1.0 / math.sqrt(size)
    amps[0:half] = scale            # data bit 0, addresses 0 .. half-1
    amps[size + half : 2 * size] = scale  # data bit 1, upper addresses
    return StateVector(n + 1, amps)


def label_circuit_gates(n: int) -> tuple[GateOp, ...]:
    """Gate sequence of the preparation circuit, for cost accounting."""
    return tuple(GateOp.h(q) for q in range(1, n + 1)) + (GateOp.cnot(1, 0),)


def swap_test_gate_count(n: int) -> int:
    """2 Hadamards plus (n+1) CSWAPs, one per compared qubit pair."""
    return 2 + (n + 1)


def swap_test(
    data_state: StateVector,
    label: LabelState,
    readout_qubit: int,
    control_qubits: list[int] | tuple[int, ...],
    mode: str | Shots = EXACT,
) -> SwapTestResult:
    """Ancilla swap test between the label state and the subsystem
    (readout qubit + control qubits) of the data state.

    The joint register is ancilla (qubit 0), the data state, then the
    label state. CSWAPs pair the readout qubit with the label's data
    qubit and each control with its label counterpart.
    """
    n = label.n
    control_qubits = tuple(control_qubits)
    if len(control_qubits) != n:
        raise ConfigurationError(
            f"label expects {n} control qubits, got {len(control_qubits)}"
        )
    dq = data_state.num_qubits
    k = dq - n
    if k < 1:
        raise ConfigurationError(
            f"data state has {dq} qubits, too few for {n} controls plus a readout"
        )
    compared = (readout_qubit,) + control_qubits
    if len(set(compared)) != len(compared):
        raise ConfigurationError(f"readout/control qubits overlap: {compared}")
    if not 0 <= readout_qubit < k:
        raise ConfigurationError(
            f"readout qubit {readout_qubit} is not a data qubit (data qubits are 0..{k - 1})"
        )
    for q in control_qubits:
        if not 0 <= q < dq:
            raise ConfigurationError(f"control qubit {q} out of range for {dq}-qubit state")

    total = 1 + dq + (n + 1)
    joint = np.kron(
        np.kron(np.array([1.0, 0.0], dtype=np.complex128), data_state.amplitudes),
        label.state.amplitudes,
    ).reshape([2] * total)
    data_off, label_off = 1, 1 + dq

    _apply_h(joint, 0)
    _apply_cswap(joint, 0, data_off + readout_qubit, label_off + 0)
    for j, q in enumerate(control_qubits):
        _apply_cswap(joint, 0, data_off + q, label_off + 1 + j)
    _apply_h(joint, 0)

    sel = joint[_axis_slices(total, [(0, 0)])]
    p_zero = float(np.sum(np.abs(sel) ** 2))

    if mode == EXACT:
        return SwapTestResult(p_zero=p_zero, shots=None)
    if isinstance(mode, Shots):
        rng = np.random.default_rng(mode.seed)
        hits = int(np.count_nonzero(rng.random(mode.count) < p_zero))
        return SwapTestResult(p_zero=hits / mode.count, shots=mode.count)
    raise ConfigurationError(f"unknown swap-test mode {mode!r}")


def batched_loss(
    store: QramStore,
    spec: AnsatzSpec,
    theta: ParameterVector,
    mode: str | Shots = EXACT,
    readout_qubit: int = 0,
) -> float:
    """1 - overlap for one batch: retrieve, apply the ansatz to the data
    qubits, swap-test against the label state for the store's n."""
    if store.k != spec.k:
        raise ConfigurationError(
            f"store holds {store.k}-qubit samples but ansatz spans {spec.k} qubits"
        )
    state = query_superposed(store)
    state = apply_ansatz(spec, theta, state, tuple(range(spec.k)))
    label = prepare_label_state(store.n)
    controls = tuple(range(store.k, store.k + store.n))
    result = swap_test(state, label, readout_qubit, controls, mode)
    return 1.0 - result.overlap
