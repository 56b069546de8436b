"""Coset representation: initialization and approximate modular addition."""
import math

import pytest

from qmem.builders import build_coset_init
from qmem.counts import count_coset_init
from qmem.ir import count_gates, validate
from qmem.sim import fidelity, run
from qmem.verify import coset_addition_infidelity, ideal_coset_state


def test_init_small_case_amplitudes():
    circuit = build_coset_init(4, 2, 15)
    st = run(circuit, {"z": 1}, seed=3)
    support = sorted(st.amps)
    assert support == [1, 16, 31, 46]
    for key in support:
        assert abs(st.amps[key]) == pytest.approx(0.5)


def test_init_correct_for_every_outcome():
    circuit = build_coset_init(4, 2, 15)
    ideal = ideal_coset_state(circuit, "z", 1, 15, 2)
    outcomes = set()
    for seed in range(64):
        st = run(circuit, {"z": 1}, seed=seed)
        outcomes.add(tuple(st.cbits))
        assert fidelity(st, ideal) == pytest.approx(1.0, abs=1e-10)
    assert len(outcomes) == 4  # both corrections exercised on both rounds


@pytest.mark.parametrize("n,N,z", [(4, 15, 0), (4, 9, 5), (5, 21, 13)])
def test_init_various_moduli(n, N, z):
    m = 3
    circuit = build_coset_init(n, m, N)
    ideal = ideal_coset_state(circuit, "z", z, N, m)
    for seed in (0, 1, 2):
        st = run(circuit, {"z": z}, seed=seed)
        assert fidelity(st, ideal) == pytest.approx(1.0, abs=1e-10)


def test_init_m0_is_empty():
    circuit = build_coset_init(4, 0, 15)
    assert len(circuit.gates) == 0
    st = run(circuit, {"z": 7})
    assert st.amps == {7: 1.0 + 0.0j}


def test_init_validates():
    assert validate(build_coset_init(5, 3, 19)) == []


def test_init_rejects_out_of_range_modulus():
    with pytest.raises(ValueError):
        build_coset_init(4, 2, 16)  # needs 2^{n-1} <= N < 2^n
    with pytest.raises(ValueError):
        build_coset_init(4, 2, 7)


def test_init_gate_count_scaling():
    # Total gates bounded by c * m * (n+m) for one fixed constant c.
    ratios = []
    for n in range(4, 17, 4):
        for m in range(1, 7):
            N = (1 << n) - 1
            total = count_coset_init(n, m, N).total()
            ratios.append(total / (m * (n + m)))
    assert max(ratios) < 16
    assert min(ratios) > 4


def test_init_counts_match_builder():
    for n, m, N in [(4, 2, 15), (4, 3, 9), (6, 2, 35), (5, 4, 19)]:
        built = count_gates(build_coset_init(n, m, N))
        assert built == count_coset_init(n, m, N)


def test_addition_infidelity_shrinks_with_m():
    means = coset_addition_infidelity(range(2, 7), samples=20, seed=5)
    assert all(b < a for a, b in zip(means, means[1:]))
    for a, b in zip(means, means[1:]):
        assert b / a < 0.75
    # Suppression is geometric: four steps shrink by roughly 2^-4.
    assert means[-1] < means[0] / 8
