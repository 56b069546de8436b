"""Resource estimator and verification toolkit for memory-assisted
fault-tolerant factoring.

Builds the windowed modular-exponentiation circuits, counts their gates
exactly, models the 3D gauge color-code processor plus multimode memory, and
optimizes the algorithm parameters to minimize the qubit-time volume.
"""
from .builders import AlgoParams, ProblemInstance
from .counts import AlgoCost, and_to_gates, exact_counts, leading_order_counts
from .ftec import (CodeGeometry, CodeModel, MemoryRequirements, code_geometry,
                   logical_error, logical_gate_time, logical_qubits_paper,
                   memory_requirements, success_probability)
from .ir import Circuit, CircuitBuilder, GateCounts, count_gates, validate
from .optimizer import (ResourceEstimate, SearchSpace, evaluate,
                        evaluate_point, optimize, sweep_n, sweep_ratio)
from .sim import SparseState, basis_map_check, fidelity, run, run_state

__all__ = [
    "AlgoParams", "ProblemInstance", "AlgoCost", "and_to_gates",
    "exact_counts", "leading_order_counts", "CodeGeometry", "CodeModel",
    "MemoryRequirements", "code_geometry", "logical_error",
    "logical_gate_time", "logical_qubits_paper", "memory_requirements",
    "success_probability", "Circuit", "CircuitBuilder", "GateCounts",
    "count_gates", "validate", "ResourceEstimate", "SearchSpace", "evaluate",
    "evaluate_point", "optimize", "sweep_n", "sweep_ratio", "SparseState",
    "basis_map_check", "fidelity", "run", "run_state",
]

__version__ = "0.1.0"
