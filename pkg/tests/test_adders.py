"""Adder family against integer oracles, exhaustively at small widths."""
import pytest
from hypothesis import given, strategies as st

from qmem.builders import (build_adder, build_comparison,
                           build_controlled_swap, build_ctrl_adder,
                           build_double_ctrl_adder, build_fredkin)
from qmem.counts import count_add, count_comparison, count_ctrl_add
from qmem.ir import count_gates, validate
from qmem.sim import basis_map_check, run


@pytest.mark.parametrize("w", range(2, 7))
def test_adder_exhaustive(w):
    circuit = build_adder(w)
    assert validate(circuit) == []
    cases = [{"x": x, "y": y} for x in range(1 << w) for y in range(1 << w)]
    report = basis_map_check(circuit, cases, "y",
                             lambda c: (c["x"] + c["y"]) % (1 << w),
                             zero_registers=["carry"])
    assert report.passed, report.failures[:3]


def test_adder_preserves_x():
    circuit = build_adder(5)
    cases = [{"x": x, "y": y} for x in range(32) for y in range(0, 32, 7)]
    report = basis_map_check(circuit, cases, "x", lambda c: c["x"])
    assert report.passed


@pytest.mark.parametrize("w,cnot,pairs", [(2, 3, 1), (4, 15, 3), (10, 51, 9)])
def test_adder_counts(w, cnot, pairs):
    c = count_gates(build_adder(w))
    assert (c.cnot, c.and_pairs) == (cnot, pairs)
    assert count_add(w) == c


def test_adder_rejects_width_one():
    with pytest.raises(ValueError):
        build_adder(1)


@pytest.mark.parametrize("w", [2, 3, 4])
def test_double_ctrl_adder_exhaustive(w):
    for addend in range(1 << w):
        circuit = build_double_ctrl_adder(w, addend)
        for z in range(1 << w):
            for controls in range(4):
                c1, c2 = controls & 1, controls >> 1
                st_ = run(circuit, {"z": z, "c1": c1, "c2": c2})
                (key,) = st_.amps
                got = st_.register_value(circuit, "z", key)
                assert got == (z + addend * (c1 & c2)) % (1 << w)
                assert st_.register_value(circuit, "carry", key) == 0
                assert st_.register_value(circuit, "anc", key) == 0


def test_double_ctrl_adder_counts_match_formula():
    for w in (2, 3, 4, 7):
        for addend in (0, 1, (1 << w) - 1, (1 << w) // 3):
            built = count_gates(build_double_ctrl_adder(w, addend))
            assert built == count_ctrl_add(w, addend, double=True)


def test_double_ctrl_adder_mean_counts_w10():
    # Mean over all 1024 addends must be exactly 5.5*10-9 = 46 CNOTs
    # and 2*10-1 = 19 Toffolis.
    w = 10
    total_cnot = total_toffoli = 0
    for addend in range(1 << w):
        c = count_gates(build_double_ctrl_adder(w, addend))
        total_cnot += c.cnot
        total_toffoli += c.toffoli
    assert total_cnot == 46 * (1 << w)
    assert total_toffoli == 19 * (1 << w)
    mean = count_ctrl_add(w, None, double=True)
    assert mean.cnot == 46 and mean.toffoli == 19


@pytest.mark.parametrize("w", [3, 5])
def test_single_ctrl_adder(w):
    for addend in (0, 1, (1 << w) - 1, 5 % (1 << w)):
        circuit = build_ctrl_adder(w, addend)
        for z in range(1 << w):
            for ctrl in (0, 1):
                st_ = run(circuit, {"z": z, "ctrl": ctrl})
                (key,) = st_.amps
                got = st_.register_value(circuit, "z", key)
                assert got == (z + addend * ctrl) % (1 << w)
                assert st_.register_value(circuit, "carry", key) == 0


def test_fredkin_exhaustive():
    circuit = build_fredkin()
    for c in (0, 1):
        for a in (0, 1):
            for b in (0, 1):
                st_ = run(circuit, {"c": c, "a": a, "b": b})
                (key,) = st_.amps
                got = (st_.register_value(circuit, "a", key),
                       st_.register_value(circuit, "b", key))
                assert got == ((b, a) if c else (a, b))


@pytest.mark.parametrize("w", [1, 4, 9])
def test_controlled_swap_counts(w):
    c = count_gates(build_controlled_swap(w))
    assert (c.cnot, c.toffoli) == (2 * w, w)


def test_controlled_swap_action():
    circuit = build_controlled_swap(3)
    st_ = run(circuit, {"c": 1, "a": 5, "b": 2})
    (key,) = st_.amps
    assert st_.register_value(circuit, "a", key) == 2
    assert st_.register_value(circuit, "b", key) == 5


@pytest.mark.parametrize("w", range(2, 7))
def test_comparison_exhaustive(w):
    ys = sorted({1, 2, 1 << (w - 1), (1 << w) - 1, 1 << w})
    for y in ys:
        circuit = build_comparison(w, y)
        for x in range(1 << w):
            st_ = run(circuit, {"x": x})
            (key,) = st_.amps
            assert st_.register_value(circuit, "x", key) == x
            assert st_.register_value(circuit, "carry", key) == 0
            want = -1.0 if x >= y else 1.0
            assert st_.amps[key].real == pytest.approx(want)
            assert abs(st_.amps[key].imag) < 1e-12


def test_comparison_boundary_y1():
    circuit = build_comparison(4, 1)
    for x in range(16):
        st_ = run(circuit, {"x": x})
        (key,) = st_.amps
        assert st_.amps[key].real == pytest.approx(-1.0 if x >= 1 else 1.0)


def test_comparison_rejects_bad_y():
    with pytest.raises(ValueError):
        build_comparison(4, 0)
    with pytest.raises(ValueError):
        build_comparison(4, 17)


def test_comparison_counts_match():
    for w in (2, 4, 6):
        for y in (1, 2, (1 << w) - 1, 1 << w):
            assert count_gates(build_comparison(w, y)) \
                == count_comparison(w, y)


@given(st.integers(2, 7), st.data())
def test_adder_random_inputs(w, data):
    x = data.draw(st.integers(0, (1 << w) - 1))
    y = data.draw(st.integers(0, (1 << w) - 1))
    circuit = build_adder(w)
    st_ = run(circuit, {"x": x, "y": y})
    (key,) = st_.amps
    assert st_.register_value(circuit, "y", key) == (x + y) % (1 << w)
