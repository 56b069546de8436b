"""Code geometry, error model, timing, success probability and memory."""
from fractions import Fraction

import pytest

from qmem.builders import AlgoParams
from qmem.counts import exact_counts
from qmem.ftec import (BelowThresholdError, CodeModel, code_geometry,
                       logical_error, logical_gate_time, logical_qubits_paper,
                       memory_requirements, success_probability)
from qmem.ir import GateCounts

# (n, n_e, m, w_e, w_m, d, n_qubits, logical, total, spatial, temporal,
#  correction in microseconds, exact)
PAPER_ROWS = [
    (6, 6, 4, 3, 2, 7, 316, 38, 6650, 3002, 5, Fraction(95)),
    (8, 9, 8, 3, 2, 13, 1060, 58, 64090, 15370, 11, Fraction(319)),
    (16, 21, 11, 3, 2, 17, 1796, 99, 244035, 44451, 15, Fraction(1485, 2)),
    (128, 189, 19, 3, 3, 29, 5156, 571, 6971339, 736019, 27,
     Fraction(15417, 2)),
    (256, 381, 21, 3, 3, 33, 6660, 1089, 19585665, 1813185, 31,
     Fraction(33759, 2)),
    (512, 765, 24, 3, 3, 37, 8356, 2122, 53782090, 4432858, 35,
     Fraction(37135)),
    (829, 1242, 26, 3, 3, 41, 10244, 3396, 117097476, 8697156, 39,
     Fraction(66222)),
    (2048, 3029, 30, 3, 3, 47, 13436, 8284, 430229540, 27825956, 45,
     Fraction(186390)),
]


def test_headline_processor_sizes():
    assert code_geometry(47).processor_qubits == 13436
    assert code_geometry(7).processor_qubits == 316


def test_geometry_d7():
    g = code_geometry(7)
    assert g.phys_per_logical == 175
    assert g.slice_max == 79
    assert g.n_slices == 5


def test_geometry_d3():
    assert code_geometry(3).phys_per_logical == 15


def test_geometry_closed_forms_agree():
    for d in range(3, 64, 2):
        g = code_geometry(d)
        n_c = (d - 1) // 2
        assert g.slice_max == 6 * n_c**2 + 8 * n_c + 1
        assert 4 * g.slice_max == 2 * (3 * d * d + 2 * d - 3)
        assert g.phys_per_logical == (d**3 + d) // 2


def test_geometry_rejects_even_or_small_d():
    with pytest.raises(ValueError):
        code_geometry(4)
    with pytest.raises(ValueError):
        code_geometry(1)


def test_logical_error_frozen_values():
    # Independent recomputation: p_logical = A * (p/p_th)^(alpha * d^beta).
    for d, frozen in ((47, 6.671263579882525e-13),
                      (7, 0.00019190925011533535)):
        independent = 0.033 * (1e-3 / 7.5e-3) ** (0.516 * d ** 0.822)
        assert independent == pytest.approx(frozen, rel=1e-12)
        got = logical_error(CodeModel(d=d))
        assert got == pytest.approx(frozen, rel=0.05)


def test_logical_error_limit_is_a():
    model = CodeModel(d=9, p=7.5e-3 * (1 - 1e-12))
    assert logical_error(model) == pytest.approx(0.033, rel=1e-6)


def test_logical_error_monotonicity():
    errs = [logical_error(CodeModel(d=d)) for d in range(3, 40, 2)]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    by_p = [logical_error(CodeModel(d=15, p=p))
            for p in (1e-4, 5e-4, 1e-3, 5e-3)]
    assert all(a < b for a, b in zip(by_p, by_p[1:]))


def test_threshold_rejected():
    with pytest.raises(BelowThresholdError):
        CodeModel(d=7, p=8e-3)
    with pytest.raises(BelowThresholdError):
        CodeModel(d=7, p=7.5e-3)


def test_model_validation():
    with pytest.raises(ValueError):
        CodeModel(d=4)
    with pytest.raises(ValueError):
        CodeModel(d=7, p_th=1.5)


def test_gate_time():
    assert logical_gate_time(CodeModel(d=47)) == Fraction(90, 10**6)
    assert logical_gate_time(CodeModel(d=7)) == Fraction(10, 10**6)


def test_success_probability_basics():
    model = CodeModel(d=47)
    assert success_probability(GateCounts(), model) == 1.0
    base = success_probability(GateCounts(one_qubit=10**6, cnot=10**6,
                                          measure=10**6), model)
    assert 0 < base < 1
    # Monotone non-increasing in every gate count.
    for grown in (GateCounts(one_qubit=2 * 10**6, cnot=10**6, measure=10**6),
                  GateCounts(one_qubit=10**6, cnot=2 * 10**6, measure=10**6),
                  GateCounts(one_qubit=10**6, cnot=10**6, measure=2 * 10**6)):
        assert success_probability(grown, model) < base
    # A CNOT exposes two logical qubits.
    only_cnot = success_probability(GateCounts(cnot=10**6), model,
                                    count_measurements=False)
    two_singles = success_probability(GateCounts(one_qubit=2 * 10**6), model,
                                      count_measurements=False)
    assert only_cnot == pytest.approx(two_singles)


def test_success_probability_requires_and_free():
    with pytest.raises(ValueError):
        success_probability(GateCounts(and_pairs=1), CodeModel(d=7))


def test_success_probability_measurement_switch():
    model = CodeModel(d=31)
    counts = GateCounts(one_qubit=10**7, cnot=10**7, measure=10**7)
    with_meas = success_probability(counts, model)
    without = success_probability(counts, model, count_measurements=False)
    assert without > with_meas


def test_coset_error_term():
    model = CodeModel(d=47)
    clean = success_probability(GateCounts(), model)
    with_coset = success_probability(GateCounts(), model,
                                     n_coset_additions=1 << 20,
                                     coset_padding=20)
    assert clean == 1.0
    assert with_coset == pytest.approx(
        (1 - 0.5 * 2.0**-20) ** (1 << 20), rel=1e-9)


@pytest.mark.parametrize("row", PAPER_ROWS, ids=lambda r: f"n={r[0]}")
def test_memory_rows(row):
    n, n_e, m, w_e, w_m, d, n_qubits, logical, total, spatial, temporal, \
        corr_us = row
    model = CodeModel(d=d)
    geom = code_geometry(d)
    mem = memory_requirements(logical, model)
    assert geom.processor_qubits == n_qubits
    assert mem.logical_qubits == logical
    assert mem.total_modes == total
    assert mem.spatial_modes == spatial
    assert mem.temporal_modes == temporal
    assert mem.correction_seconds == corr_us * Fraction(1, 10**6)
    params = AlgoParams(n=n, n_e=n_e, w_e=w_e, w_m=w_m, m=m)
    assert logical_qubits_paper(params) == logical


def test_memory_single_qubit():
    mem = memory_requirements(1, CodeModel(d=47))
    assert mem.spatial_modes == code_geometry(47).slice_max


def test_memory_storage_gap_below_two_hours():
    params = AlgoParams(n=2048, n_e=3029, w_e=3, w_m=3, m=30)
    cost = exact_counts(params)
    mem = memory_requirements(8284, CodeModel(d=47), cost)
    assert mem.max_storage_gap_seconds < 2 * 3600
    assert mem.max_storage_gap_seconds > 0.5 * 3600
