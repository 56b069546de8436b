"""Grid search behavior: argmin correctness, determinism, sweeps."""
import math
import random
import warnings

import pytest

from qmem.ftec import CodeModel
from qmem.optimizer import (NoFeasiblePointError, SearchSpace, default_n_e,
                            evaluate_point, optimize, sweep_n, sweep_ratio)


def test_evaluate_is_pure():
    a = evaluate_point(128, 189, 3, 3, 19, 29)
    b = evaluate_point(128, 189, 3, 3, 19, 29)
    assert a == b
    assert a.t_exp_seconds == b.t_exp_seconds
    assert a.volume == b.volume


def test_evaluate_far_below_optimum_is_finite():
    est = evaluate_point(2048, 3029, 3, 3, 30, 3)
    assert est.p_s > 0
    assert math.isfinite(est.volume)
    assert est.volume > 1e50  # astronomically large, still comparable


def test_invariants_of_estimate():
    est = evaluate_point(512, 765, 3, 3, 24, 37)
    assert est.t_exp_seconds >= float(est.t_seconds)
    assert est.volume == pytest.approx(est.t_exp_seconds
                                       * est.processor_qubits)
    gate_time = 2 * (est.d - 2) * 1e-6
    assert float(est.t_seconds) == pytest.approx(
        est.cost.sequential_depth * gate_time)


def test_singleton_grid_returns_that_point():
    space = SearchSpace(w_e=(3,), w_m=(3,), m=(30,), d=(47,))
    best = optimize(2048, space=space)
    assert (best.params.w_e, best.params.w_m, best.params.m, best.d) \
        == (3, 3, 30, 47)


def test_optimize_matches_bruteforce_rescan():
    space = SearchSpace(w_e=(2, 3), w_m=(2, 3), m=(18, 22, 26),
                        d=(27, 29, 31))
    best = optimize(128, space=space)
    rescan = [evaluate_point(128, 189, w_e, w_m, m, d)
              for w_e in space.w_e for w_m in space.w_m
              for m in space.m for d in space.d]
    floor = min(rescan, key=lambda e: e.sort_key())
    assert best == floor
    assert all(best.volume <= e.volume for e in rescan)


def test_optimize_matches_random_subgrid():
    rng = random.Random(200)
    space = SearchSpace(
        w_e=tuple(sorted(rng.sample(range(1, 7), 3))),
        w_m=tuple(sorted(rng.sample(range(1, 7), 3))),
        m=tuple(sorted(rng.sample(range(4, 40), 5))),
        d=tuple(sorted(rng.sample(range(3, 64, 2), 5))),
    )
    # 3 * 3 * 5 * 5 = 225 points, re-scanned independently.
    best = optimize(64, n_e=96, space=space)
    rescan = min((evaluate_point(64, 96, w_e, w_m, m, d)
                  for w_e in space.w_e for w_m in space.w_m
                  for m in space.m for d in space.d),
                 key=lambda e: e.sort_key())
    assert best == rescan


def test_empty_space_raises():
    with pytest.raises(NoFeasiblePointError):
        optimize(128, space=SearchSpace(d=()))


def test_default_n_e_table_and_interpolation():
    assert default_n_e(2048) == 3029
    assert default_n_e(6) == 6
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert default_n_e(100) == 150
    assert caught and "interpolating" in str(caught[0].message)


def test_sweep_n_monotone_qubits():
    points = sweep_n([6, 8, 16],
                     space=SearchSpace(m=tuple(range(1, 17))))
    qubits = [p.estimate.processor_qubits for p in points]
    assert qubits == sorted(qubits)


def test_ratio_sweep_matches_direct_optimize():
    space = SearchSpace(w_e=(3,), w_m=(3,), m=(24,), d=(35, 37, 39))
    ratio = 2 / 15
    (point,) = sweep_ratio([ratio], n=512, space=space)
    direct = optimize(512, model=CodeModel(d=3, p=ratio * 7.5e-3),
                      space=space)
    assert point.estimate == direct


def test_ratio_sweep_larger_ratio_needs_larger_d():
    space = SearchSpace(w_e=(3,), w_m=(3,), m=(30,), d=tuple(range(31, 64, 2)))
    low, high = sweep_ratio([0.13, 0.5], n=2048, space=space)
    assert high.estimate.d > low.estimate.d
    # The optimized volume is monotone non-increasing as the ratio shrinks.
    assert low.estimate.volume < high.estimate.volume


def test_ratio_sweep_flags_invalid_ratio():
    (point,) = sweep_ratio([1.2], n=512)
    assert point.estimate is None
    assert "ratio" in point.note


def test_logical_qubit_conventions_reported():
    est = evaluate_point(2048, 3029, 3, 3, 30, 47)
    assert est.logical_qubits == 8284
    assert est.logical_qubits_builder != est.logical_qubits
    assert est.logical_qubits_builder >= est.logical_qubits
