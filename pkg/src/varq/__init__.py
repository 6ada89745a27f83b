"""Statevector simulator and training harness for a batched variational
classifier.

The pipeline: amplitude-encode feature vectors, store a balanced batch in
a superposition-addressed register, run a shared parameterized circuit on
the data qubits, and score the whole batch with one swap test against an
address-correlated label state. Training is plain gradient descent on
numerical gradients of that batched loss.
"""

from .ansatz import (
    AnsatzSpec,
    ParameterVector,
    apply_ansatz,
    default_ansatz,
    init_parameters,
)
from .costmodel import cost_table, forward_pass_cost, sequential_baseline
from .dataset import BinaryTask, IrisRecord, default_data_path, load_iris, make_task
from .encoding import EncodedSample, FeatureVector, amplitude_encode, encode_dataset, num_qubits_for
from .errors import (
    ConfigurationError,
    DataError,
    EncodingError,
    OptimizationError,
    QramError,
    VarqError,
)
from .loss import (
    EXACT,
    LabelState,
    Shots,
    SwapTestResult,
    batched_loss,
    prepare_label_state,
    swap_test,
)
from .qram import QramStore, QueryCost, build_store, load_store, query_cost, query_superposed, save_store
from .statevector import (
    DensityMatrix,
    GateOp,
    StateVector,
    apply_gate,
    apply_gates,
    hadamard_layer,
    inner_product,
    measure_probability,
    partial_trace,
)
from .trainer import (
    EpochMetrics,
    TrainConfig,
    accuracy,
    classify,
    make_batches,
    numerical_gradient,
    train,
)

__version__ = "1.0.0"

__all__ = [
    "AnsatzSpec",
    "BinaryTask",
    "ConfigurationError",
    "DataError",
    "DensityMatrix",
    "EXACT",
    "EncodedSample",
    "EncodingError",
    "EpochMetrics",
    "FeatureVector",
    "GateOp",
    "IrisRecord",
    "LabelState",
    "OptimizationError",
    "ParameterVector",
    "QramError",
    "QramStore",
    "QueryCost",
    "Shots",
    "StateVector",
    "SwapTestResult",
    "TrainConfig",
    "VarqError",
    "accuracy",
    "amplitude_encode",
    "apply_ansatz",
    "apply_gate",
    "apply_gates",
    "batched_loss",
    "build_store",
    "classify",
    "cost_table",
    "default_ansatz",
    "default_data_path",
    "encode_dataset",
    "forward_pass_cost",
    "hadamard_layer",
    "init_parameters",
    "inner_product",
    "load_iris",
    "load_store",
    "make_batches",
    "make_task",
    "measure_probability",
    "num_qubits_for",
    "numerical_gradient",
    "partial_trace",
    "prepare_label_state",
    "query_cost",
    "query_superposed",
    "save_store",
    "sequential_baseline",
    "swap_test",
    "train",
    "__version__",
]
