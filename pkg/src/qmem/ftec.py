"""3D gauge color-code geometry, logical error rate, timing and memory model.

The code block of one logical qubit is a tetrahedral lattice of (d^3+d)/2
physical qubits, processed slice by slice; the 2D processor holds one slice
of each of two logical qubits at a time plus the measurement ancillas, which
fixes its size to 2 * 2 * (3d^2 + 2d - 3)/2 physical qubits.  The residual
logical error rate is taken from the phenomenological fit
p_logical = A * exp(alpha * ln(p / p_th) * d^beta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .builders import AlgoParams
from .counts import AlgoCost
from .ir import GateCounts

#: fit constants of the residual-error formula
DEFAULT_A = 0.033
DEFAULT_ALPHA = 0.516
DEFAULT_BETA = 0.822

#: per-addition infidelity coefficient of the coset approximation, as a
#: multiple of 2^-m (mean misalignment rate of one wrapped component)
COSET_ERROR_COEFF = Fraction(1, 2)

LOG_PS_FLOOR = -600.0  # clamp so t / p_s stays finite even far below threshold


class BelowThresholdError(ValueError):
    """p >= p_th: the sub-threshold error fit does not apply."""


@dataclass(frozen=True)
class CodeModel:
    """Code distance plus physical assumptions (all rates per cycle)."""

    d: int
    p: float = 1e-3
    p_th: float = 7.5e-3
    coeff_a: float = DEFAULT_A
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    t_c: Fraction = Fraction(1, 10**6)

    def __post_init__(self) -> None:
        if self.d < 3 or self.d % 2 == 0:
            raise ValueError("code distance must be odd and >= 3")
        if not 0 < self.p:
            raise ValueError("p must be positive")
        if not self.p_th < 1:
            raise ValueError("p_th must be below 1")
        if self.p >= self.p_th:
            raise BelowThresholdError(
                f"p = {self.p} is not below the threshold p_th = {self.p_th}")
        if self.t_c <= 0:
            raise ValueError("cycle time must be positive")

    @property
    def n_code(self) -> int:
        return (self.d - 1) // 2

    def with_distance(self, d: int) -> "CodeModel":
        return replace(self, d=d)


@dataclass(frozen=True)
class CodeGeometry:
    """Closed-form sizes of one code block and of the processor."""

    d: int
    n_code: int
    phys_per_logical: int
    slice_max: int
    n_slices: int
    processor_qubits: int


def code_geometry(d: int) -> CodeGeometry:
    """Evaluate all four closed forms in exact integer arithmetic."""
    if d < 3 or d % 2 == 0:
        raise ValueError("code distance must be odd and >= 3")
    n_code = (d - 1) // 2
    phys = (d**3 + d) // 2
    slice_max = (3 * d * d + 2 * d - 3) // 2
    # Both tetrahedron-slice forms must agree; guards the transcription.
    assert slice_max == 6 * n_code**2 + 8 * n_code + 1
    assert phys == 1 + 4 * n_code + 6 * n_code**2 + 4 * n_code**3
    return CodeGeometry(d=d, n_code=n_code, phys_per_logical=phys,
                        slice_max=slice_max, n_slices=d - 2,
                        processor_qubits=4 * slice_max)


def logical_error(model: CodeModel) -> float:
    """Residual error probability of one logical qubit per logical cycle."""
    return model.coeff_a * math.exp(
        model.alpha * math.log(model.p / model.p_th) * model.d ** model.beta)


def logical_gate_time(model: CodeModel) -> Fraction:
    """2(d-2) t_c: load, process and correct every slice of the block."""
    return 2 * (model.d - 2) * model.t_c


def log_success_probability(converted: GateCounts, model: CodeModel, *,
                            n_coset_additions: int = 0,
                            coset_padding: int | None = None,
                            count_measurements: bool = True,
                            coset_error_coeff: Fraction = COSET_ERROR_COEFF
                            ) -> float:
    """ln of the success probability, unclamped (may be very negative).

    Keeping the log exact lets the optimizer order points far below
    threshold, where the probability itself underflows.
    """
    if converted.toffoli or converted.and_pairs:
        raise ValueError("success probability expects AND-free counts")
    p_log = logical_error(model)
    n_events = converted.one_qubit + 2 * converted.cnot
    if count_measurements:
        n_events += converted.measure
    log_ps = n_events * math.log1p(-p_log)
    if n_coset_additions and coset_padding is not None:
        per_add = float(coset_error_coeff) * 2.0 ** (-coset_padding)
        log_ps += n_coset_additions * math.log1p(-per_add)
    return log_ps


def success_probability(converted: GateCounts, model: CodeModel,
                        **kwargs) -> float:
    """Probability that no logical error or coset misalignment occurs.

    Convention: one error exposure per logical qubit touched per gate (two
    for a CNOT); measurements count as one exposure unless switched off.
    Each approximate modular addition additionally survives with probability
    1 - c * 2^-m.  The result is floored to keep derived times finite.
    """
    return math.exp(max(log_success_probability(converted, model, **kwargs),
                        LOG_PS_FLOOR))


@dataclass(frozen=True)
class MemoryRequirements:
    """Multimode-memory sizing for L stored logical qubits."""

    logical_qubits: int
    spatial_modes: int
    temporal_modes: int
    total_modes: int
    correction_seconds: Fraction
    max_storage_gap_seconds: float | None = None


def memory_requirements(logical_qubits: int, model: CodeModel,
                        cost: AlgoCost | None = None) -> MemoryRequirements:
    """Mode counts and storage-time requirements of the memory.

    Spatial modes hold one slice of every block, temporal modes the d-2
    slices of a block; correcting the whole memory processes two slices at
    once.  The storage-gap bound assumes the least-frequently touched data
    wire is visited once per product-addition of the sequential circuit.
    """
    if logical_qubits < 1:
        raise ValueError("logical_qubits >= 1 required")
    geom = code_geometry(model.d)
    correction = logical_qubits * geom.n_slices * model.t_c / 2
    gap = None
    if cost is not None:
        t = cost.sequential_depth * logical_gate_time(model)
        gap = float(t) / (2 * cost.n_multiplications)
    return MemoryRequirements(
        logical_qubits=logical_qubits,
        spatial_modes=logical_qubits * geom.slice_max,
        temporal_modes=geom.n_slices,
        total_modes=logical_qubits * geom.phys_per_logical,
        correction_seconds=correction,
        max_storage_gap_seconds=gap,
    )


def logical_qubits_paper(params: AlgoParams) -> int:
    """Stored logical qubits, reference-table convention: 4n + 3m + w_e - 1.

    Two coset registers, the carry chain, an n-bit lookup target and the
    active exponent window; reproduces the tabulated values exactly.
    """
    return 4 * params.n + 3 * params.m + params.w_e - 1
