"""Exact and leading-order gate counts for the whole algorithm.

Every ``count_*`` function mirrors the corresponding builder gate for gate;
the test suite enforces equality with ``count_gates(build_...)`` on a grid
of small instances.  Two modes exist:

    instance mode -- the concrete table bits of a (N, g) instance are used,
                     so totals match a built circuit exactly;
    mean mode     -- data-dependent gates are replaced by their expectation
                     over uniformly random classical data (e.g. n/2 CNOTs
                     per table entry), carried as exact rationals.

Counts use Python integers and fractions throughout, so overflow is
unreachable.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .builders import AlgoParams, ProblemInstance
from .ir import GateCounts, ZERO_COUNTS

HALF = Fraction(1, 2)


def _popcount(v: int) -> int:
    return bin(v).count("1")


def and_to_gates(counts: GateCounts) -> GateCounts:
    """Replace AND pairs (and Toffolis) by elementary gates.

    A Toffoli is one AND pair plus one CNOT; an AND pair averages 8 one-qubit
    and 3.5 two-qubit gates.  Fractional totals are rounded up at the end.
    """
    pairs = counts.and_pairs + counts.toffoli
    one = counts.one_qubit + 8 * pairs
    two = counts.cnot + counts.toffoli + Fraction(7, 2) * pairs
    return GateCounts(one_qubit=math.ceil(one), cnot=math.ceil(two),
                      measure=math.ceil(counts.measure))


# -- per-builder counts -------------------------------------------------------

def count_fredkin() -> GateCounts:
    return GateCounts(cnot=2, toffoli=1)


def count_controlled_swap(width: int) -> GateCounts:
    return width * count_fredkin()


def count_add(width: int) -> GateCounts:
    """Ripple adder: 6w-9 CNOTs, w-1 AND pairs."""
    if width < 2:
        raise ValueError("adder needs width >= 2")
    return GateCounts(cnot=6 * width - 9, and_pairs=width - 1)


def count_ctrl_add(width: int, addend: int | None = None,
                   double: bool = False) -> GateCounts:
    """Semi-classical controlled addition; mean mode when addend is None.

    Mean cost 5.5w-9 CNOTs and 2w-3 Toffolis with one control; merging two
    controls adds a Toffoli on each side.
    """
    if width < 2:
        raise ValueError("controlled adder needs width >= 2")
    w = width
    if addend is None:
        cnot = Fraction(11, 2) * w - 9
        toffoli = 2 * w - 3
    else:
        bits = [(addend >> k) & 1 for k in range(w)]
        mid = sum(bits[1:w - 1])
        cnot = 3 * (w - 2) + 5 * mid + 1 + bits[w - 1] + bits[0]
        toffoli = 2 * (w - 2) + 2 * bits[0]
    if double:
        toffoli += 2
    return GateCounts(cnot=cnot, toffoli=toffoli)


def count_comparison(width: int, y: int | None = None) -> GateCounts:
    """Carry-compute, Z, carry-uncompute; mean mode when y is None."""
    w = width
    if y is None:
        one = 2 * (w - 1) + 1
        cnot = 4 * (w - 1) + 1
    else:
        yp = (1 << w) - y
        bits = [(yp >> k) & 1 for k in range(w)]
        one = 4 * sum(bits[1:]) + 1
        cnot = 4 * (w - 1) + 2 * bits[0]
    return GateCounts(one_qubit=one, cnot=cnot, and_pairs=w - 1)


def count_coset_init(n: int, m: int, N: int | None = None) -> GateCounts:
    """m rounds of controlled addition, measurement and phase correction."""
    w = n + m
    total = ZERO_COUNTS
    for j in range(m):
        addend = None if N is None else (1 << j) * N
        total = total + GateCounts(one_qubit=2, measure=1)
        total = total + count_ctrl_add(w, addend)
        total = total + count_comparison(w, addend)
    return total


def count_lookup(address_width: int, out_width: int,
                 table: Sequence[int] | None = None) -> GateCounts:
    """2 NOTs, 2^w - 2 ladder CNOTs and AND pairs, plus the loads.

    Loads average out_width/2 CNOTs per entry in mean mode.
    """
    wa = address_width
    if wa == 0:
        load = (Fraction(out_width, 2) if table is None
                else _popcount(table[0]))
        return GateCounts(one_qubit=load)
    ladder = (1 << wa) - 2
    if table is None:
        load = (1 << wa) * Fraction(out_width, 2)
    else:
        load = sum(_popcount(v) for v in table)
    return GateCounts(one_qubit=2, cnot=ladder + load, and_pairs=ladder)


def count_unlookup(address_width: int, out_width: int,
                   table: Sequence[int] | None = None) -> GateCounts:
    """Measurement-based erasure with the unary phase correction.

    Mean total: 2^{floor(w/2)+1} + n + 4 one-qubit gates,
    2^{w-1} + 2^{floor(w/2)+1} + 2^{ceil(w/2)} - 4 CNOTs and
    2^{floor(w/2)} + 2^{ceil(w/2)} - 3 AND pairs.
    """
    wa = address_width
    base = GateCounts(one_qubit=out_width, measure=out_width)
    if table is not None and not any(table):
        return base  # all-plus sign table, correction skipped entirely
    s = wa // 2
    a2 = wa - s
    if table is None:
        phase_loads = 1 << (wa - 1)
    else:
        phase_loads = sum(1 for v in table if v)
    one = 2 + (1 << (s + 1)) + 2
    cnot = 2 * ((1 << s) - 1) + ((1 << a2) - 2) + phase_loads
    pairs = ((1 << s) - 1) + ((1 << a2) - 2)
    return base + GateCounts(one_qubit=one, cnot=cnot, and_pairs=pairs)


# -- whole-algorithm accounting -------------------------------------------------

@dataclass(frozen=True)
class AlgoCost:
    """Counts of the full algorithm plus the derived sequential depth.

    ``sequential_depth`` equals the AND-converted total gate count including
    measurements: the processor executes slices serially, so depth and gate
    count coincide.
    """

    params: AlgoParams
    counts: GateCounts
    breakdown: Mapping[str, GateCounts]
    converted: GateCounts
    sequential_depth: int
    n_block_additions: int
    n_multiplications: int


def exact_counts(params: AlgoParams,
                 instance: ProblemInstance | None = None,
                 include_fourier: bool = True) -> AlgoCost:
    """Structural count of the built circuit, no simulation.

    Mean mode (no instance) replaces data-dependent gates by their expected
    values; instance mode matches ``count_gates(build_mod_exp(...))``
    exactly, the Fourier term aside (it is costed, never built).
    """
    n, m = params.n, params.m
    w = params.reg_width
    windows = params.exponent_windows()
    blocks = params.mult_blocks()
    n_block_additions = 2 * len(windows) * len(blocks)

    coset = 2 * count_coset_init(n, m, None if instance is None else instance.N)
    adders = n_block_additions * count_add(w)
    lookups = ZERO_COUNTS
    unlookups = ZERO_COUNTS
    if instance is None:
        window_groups = Counter(w_i for _, w_i in windows)
        block_groups = Counter(w_t for _, w_t in blocks)
        for w_i, f_i in window_groups.items():
            for w_t, f_t in block_groups.items():
                mult = 2 * f_i * f_t
                lookups = lookups + mult * count_lookup(w_i + w_t, n)
                unlookups = unlookups + mult * count_unlookup(w_i + w_t, n)
    else:
        if not instance.bit_length_ok(n):
            raise ValueError("instance modulus does not match params.n")
        for i, w_i in windows:
            for inverse in (False, True):
                for offset, w_t in blocks:
                    table = instance.table(i, w_i, offset, w_t, inverse)
                    lookups = lookups + count_lookup(w_i + w_t, n, table)
                    unlookups = unlookups + count_unlookup(w_i + w_t, n, table)

    breakdown = {"coset_init": coset, "lookup": lookups, "adder": adders,
                 "unlookup": unlookups}
    if include_fourier:
        # One Hadamard, one merged phase gate and one measurement per
        # exponent qubit (semi-classical Fourier transform, costed only).
        breakdown["fourier"] = GateCounts(one_qubit=2 * params.n_e,
                                          measure=params.n_e)
    total = ZERO_COUNTS
    for part in breakdown.values():
        total = total + part
    converted = and_to_gates(total)
    return AlgoCost(params=params, counts=total, breakdown=breakdown,
                    converted=converted,
                    sequential_depth=converted.total(),
                    n_block_additions=n_block_additions,
                    n_multiplications=len(windows))


def leading_order_counts(params: AlgoParams) -> GateCounts:
    """The three displayed leading-order formulas, evaluated verbatim."""
    n, n_e, w_e, w_m, m = (params.n, params.n_e, params.w_e, params.w_m,
                           params.m)
    nm = n + m
    ww = w_e * w_m
    return GateCounts(
        one_qubit=Fraction(2 * n_e * nm * n, ww),
        cnot=Fraction(((1 << (w_e + w_m)) * n + 12 * nm) * n_e * nm, ww),
        toffoli=Fraction(4 * n_e * nm * nm, ww),
    )


def leading_order_converted(params: AlgoParams) -> GateCounts:
    """Leading order after AND conversion (the 19(n+m) CNOT coefficient)."""
    n, n_e, w_e, w_m, m = (params.n, params.n_e, params.w_e, params.w_m,
                           params.m)
    nm = n + m
    ww = w_e * w_m
    return GateCounts(
        one_qubit=Fraction(2 * n_e * nm * (9 * n + 8 * m), ww),
        cnot=Fraction(((1 << (w_e + w_m)) * n + 19 * nm) * n_e * nm, ww),
    )


def unwindowed_leading_order(params: AlgoParams) -> GateCounts:
    """Leading order of the plain controlled-arithmetic decomposition."""
    nm = params.reg_width
    return GateCounts(cnot=11 * params.n_e * nm * nm,
                      toffoli=4 * params.n_e * nm * nm)
