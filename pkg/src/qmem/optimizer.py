"""Grid search over (w_e, w_m, m, d) minimizing the qubit-time volume.

The space is a few tens of thousands of points and one evaluation is cheap
closed-form arithmetic, so the search is exhaustive rather than descent
based.  Gate counts do not depend on the code distance, so they are computed
once per (w_e, w_m, m) and reused across the d axis.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .builders import AlgoParams, register_total
from .counts import AlgoCost, exact_counts
from .ftec import (LOG_PS_FLOOR, BelowThresholdError, CodeModel,
                   MemoryRequirements, code_geometry, logical_error,
                   logical_gate_time, logical_qubits_paper,
                   log_success_probability, memory_requirements)

#: exponent sizes of the reference parameter table (n_e ~ 1.5 n)
N_E_TABLE = {6: 6, 8: 9, 16: 21, 128: 189, 256: 381, 512: 765, 829: 1242,
             2048: 3029}

#: tabulated optimal (m, w_e, w_m, d) per modulus size, used as estimate
#: defaults
ROW_DEFAULTS = {
    6: (4, 3, 2, 7),
    8: (8, 3, 2, 13),
    16: (11, 3, 2, 17),
    128: (19, 3, 3, 29),
    256: (21, 3, 3, 33),
    512: (24, 3, 3, 37),
    829: (26, 3, 3, 41),
    2048: (30, 3, 3, 47),
}

DEFAULT_MODEL = CodeModel(d=47)


def default_n_e(n: int) -> int:
    """Tabulated exponent size, or the ~1.5n interpolation with a warning."""
    if n in N_E_TABLE:
        return N_E_TABLE[n]
    n_e = math.ceil(3 * n / 2)
    warnings.warn(f"n={n} is not a tabulated size; interpolating n_e={n_e}",
                  stacklevel=2)
    return n_e


@dataclass(frozen=True)
class SearchSpace:
    """Grid bounds; distances are odd, windows and paddings inclusive ranges."""

    w_e: Sequence[int] = tuple(range(1, 7))
    w_m: Sequence[int] = tuple(range(1, 7))
    m: Sequence[int] = tuple(range(1, 65))
    d: Sequence[int] = tuple(range(3, 64, 2))

    def clipped(self, n: int, n_e: int) -> "SearchSpace":
        return SearchSpace(
            w_e=tuple(w for w in self.w_e if w <= n_e),
            w_m=tuple(w for w in self.w_m if w <= n),
            m=tuple(self.m),
            d=tuple(self.d),
        )


@dataclass(frozen=True)
class ResourceEstimate:
    """One evaluated parameter point.

    ``volume`` is t_exp * processor_qubits with the success probability
    floored so the float stays finite; ``log_volume`` is the exact
    (unfloored) logarithm used for ordering, which still discriminates
    points whose success probability underflows.
    """

    params: AlgoParams
    d: int
    model: CodeModel
    cost: AlgoCost
    processor_qubits: int
    logical_qubits: int
    logical_qubits_builder: int
    p_logical: float
    p_s: float
    t_seconds: Fraction
    t_exp_seconds: float
    volume: float
    log_volume: float
    memory: MemoryRequirements

    def sort_key(self) -> tuple:
        p = self.params
        return (self.log_volume, self.processor_qubits, self.t_exp_seconds,
                (p.w_e, p.w_m, p.m, self.d))


class NoFeasiblePointError(RuntimeError):
    """Every grid point was rejected (p at or above threshold)."""


def evaluate(params: AlgoParams, model: CodeModel,
             cost: AlgoCost | None = None) -> ResourceEstimate:
    """Compose counts, timing, success probability and memory into one row."""
    if cost is None:
        cost = exact_counts(params)
    geom = code_geometry(model.d)
    p_log = logical_error(model)
    log_ps = log_success_probability(cost.converted, model,
                                     n_coset_additions=cost.n_block_additions,
                                     coset_padding=params.m)
    p_s = math.exp(max(log_ps, LOG_PS_FLOOR))
    t = cost.sequential_depth * logical_gate_time(model)
    t_exp = float(t) / p_s
    logical = logical_qubits_paper(params)
    return ResourceEstimate(
        params=params,
        d=model.d,
        model=model,
        cost=cost,
        processor_qubits=geom.processor_qubits,
        logical_qubits=logical,
        logical_qubits_builder=register_total(params),
        p_logical=p_log,
        p_s=p_s,
        t_seconds=t,
        t_exp_seconds=t_exp,
        volume=t_exp * geom.processor_qubits,
        log_volume=math.log(float(t)) - log_ps
        + math.log(geom.processor_qubits),
        memory=memory_requirements(logical, model, cost),
    )


def evaluate_point(n: int, n_e: int, w_e: int, w_m: int, m: int, d: int,
                   model: CodeModel = DEFAULT_MODEL) -> ResourceEstimate:
    """Convenience wrapper taking the raw knobs."""
    params = AlgoParams(n=n, n_e=n_e, w_e=w_e, w_m=w_m, m=m)
    return evaluate(params, model.with_distance(d))


def optimize(n: int, n_e: int | None = None,
             model: CodeModel = DEFAULT_MODEL,
             space: SearchSpace = SearchSpace()) -> ResourceEstimate:
    """Exhaustive grid argmin of the volume t_exp * processor_qubits.

    Ties break toward fewer processor qubits, then smaller t_exp, then
    lexicographically smaller (w_e, w_m, m, d).
    """
    if n_e is None:
        n_e = default_n_e(n)
    space = space.clipped(n, n_e)
    best: ResourceEstimate | None = None
    feasible = False
    for w_e in space.w_e:
        for w_m in space.w_m:
            for m in space.m:
                params = AlgoParams(n=n, n_e=n_e, w_e=w_e, w_m=w_m, m=m)
                cost = exact_counts(params)
                for d in space.d:
                    try:
                        est = evaluate(params, model.with_distance(d), cost)
                    except BelowThresholdError:
                        continue
                    feasible = True
                    if best is None or est.sort_key() < best.sort_key():
                        best = est
    if not feasible or best is None:
        raise NoFeasiblePointError(
            "no feasible grid point (is p below the threshold?)")
    return best


@dataclass(frozen=True)
class SweepPoint:
    """One row of a sweep; ``estimate`` is None for infeasible points."""

    axis: str
    value: float | int
    estimate: ResourceEstimate | None
    note: str = ""


def sweep_n(values: Iterable[int], model: CodeModel = DEFAULT_MODEL,
            space: SearchSpace = SearchSpace()) -> list[SweepPoint]:
    """One optimized row per modulus size; infeasible rows are kept."""
    out = []
    for n in values:
        try:
            out.append(SweepPoint("n", n, optimize(n, model=model,
                                                   space=space)))
        except NoFeasiblePointError as err:
            out.append(SweepPoint("n", n, None, str(err)))
    return out


def sweep_ratio(values: Iterable[float], n: int = 2048,
                model: CodeModel = DEFAULT_MODEL,
                space: SearchSpace = SearchSpace()) -> list[SweepPoint]:
    """Optimized rows as a function of the ratio p / p_th (p is swept)."""
    out = []
    for ratio in values:
        if not 0 < ratio < 1:
            out.append(SweepPoint("ratio", ratio, None,
                                  "ratio must be in (0, 1)"))
            continue
        swept = CodeModel(d=model.d, p=ratio * model.p_th, p_th=model.p_th,
                          coeff_a=model.coeff_a, alpha=model.alpha,
                          beta=model.beta, t_c=model.t_c)
        try:
            out.append(SweepPoint("ratio", ratio,
                                  optimize(n, model=swept, space=space)))
        except NoFeasiblePointError as err:
            out.append(SweepPoint("ratio", ratio, None, str(err)))
    return out
