"""SAT-based CNOT-count- and CNOT-depth-optimal Clifford circuit resynthesis."""

from .circuit import (
    Circuit,
    Gate,
    GateKind,
    Metrics,
    QasmParseError,
    compute_metrics,
    decompose_to_base,
    emit_qasm,
    gate,
    parse_qasm,
)
from .tableau import (
    Permutation,
    Tableau,
    apply_circuit,
    apply_gate,
    equivalent,
    equivalent_xz,
    from_circuit,
    initial_tableau,
    permute_columns,
    recover_phase,
)

__version__ = "0.1.0"
