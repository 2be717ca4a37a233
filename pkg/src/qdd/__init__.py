"""Edge-weighted decision diagrams for quantum circuit simulation.

Gates are represented without identity padding: an operator DD touches
only the levels its gate acts on, and edges that jump over levels read
as identity factors there. The conventional full-height representation
is kept available as "legacy" mode for comparison runs.
"""

__version__ = "0.1.0"

from .weights import ONE, TOLERANCE, WeightError, WeightTable, ZERO
from .store import (
    MAT,
    NodeStore,
    StoreError,
    StoreStats,
    TERMINAL,
    VEC,
    ZERO_STUB,
)
from .vdd import ZERO_EDGE, amplitude, make_basis_state, make_vector_node, vnorm2
from .mdd import (
    GateSpec,
    MODE_LEGACY,
    MODE_NEW,
    ZERO_EDGE_M,
    identity_chain,
    kron,
    make_gate_dd,
    make_matrix_node,
    matrix_entry,
    resembles_identity,
)
from .arith import add_matrices, add_vectors, multiply_mm, multiply_mv
from .circuit import (
    Circuit,
    Gate,
    QasmError,
    QasmSemanticError,
    QasmSyntaxError,
    SerializationError,
    circuit_to_qasm,
    parse_qasm,
)
from .bench import (
    FAMILIES,
    gen_bv,
    gen_ghz,
    gen_grover,
    gen_qft,
    gen_qpe,
    gen_w,
    generate,
    grover_iterations,
)
from .sim import SimReport, export_dot, run_deep, simulate_statevector, simulate_unitary

__all__ = [
    "__version__",
    "ONE", "TOLERANCE", "WeightError", "WeightTable", "ZERO",
    "MAT", "NodeStore", "StoreError", "StoreStats", "TERMINAL", "VEC", "ZERO_STUB",
    "ZERO_EDGE", "amplitude", "make_basis_state", "make_vector_node", "vnorm2",
    "GateSpec", "MODE_LEGACY", "MODE_NEW", "ZERO_EDGE_M", "identity_chain",
    "kron", "make_gate_dd", "make_matrix_node", "matrix_entry", "resembles_identity",
    "add_matrices", "add_vectors", "multiply_mm", "multiply_mv",
    "Circuit", "Gate", "QasmError", "QasmSemanticError", "QasmSyntaxError",
    "SerializationError", "circuit_to_qasm", "parse_qasm",
    "FAMILIES", "gen_bv", "gen_ghz", "gen_grover", "gen_qft", "gen_qpe", "gen_w",
    "generate", "grover_iterations",
    "SimReport", "export_dot", "run_deep", "simulate_statevector", "simulate_unitary",
]
