"""Circuit IR: counting, validation, dump format, algebraic properties."""
import pytest
from hypothesis import given, strategies as st

from qmem.builders import build_adder, build_fredkin
from qmem.ir import (Circuit, CircuitBuilder, Gate, GateCounts, Kind,
                     Register, Wire, count_gates, validate)


def empty_circuit() -> Circuit:
    cb = CircuitBuilder()
    cb.new_register("r", 2)
    return cb.build()


def test_empty_circuit_counts_zero():
    assert count_gates(empty_circuit()) == GateCounts()


def test_fredkin_counts():
    c = count_gates(build_fredkin())
    assert c == GateCounts(cnot=2, toffoli=1)


def test_adder_counts_width_4():
    c = count_gates(build_adder(4))
    assert c.cnot == 15
    assert c.and_pairs == 3


def test_classically_controlled_counts_as_inner():
    cb = CircuitBuilder()
    r = cb.new_register("r", 2)
    b = cb.measure_z(Wire(r, 0))
    cb.z(Wire(r, 1), control_bits=(b,))
    cb.cnot(Wire(r, 0), Wire(r, 1), control_bits=(b,))
    c = count_gates(cb.build())
    assert (c.one_qubit, c.cnot, c.measure) == (1, 1, 1)


def test_swap_label_is_free():
    cb = CircuitBuilder()
    a = cb.new_register("a", 3)
    b = cb.new_register("b", 3)
    cb.swap_label(cb.wires(a), cb.wires(b))
    assert count_gates(cb.build()) == GateCounts()


def test_deand_belongs_to_pair():
    cb = CircuitBuilder()
    r = cb.new_register("r", 3)
    w = cb.wires(r)
    cb.and_(w[0], w[1], w[2])
    cb.deand(w[0], w[1], w[2])
    assert count_gates(cb.build()).and_pairs == 1


# -- validation ---------------------------------------------------------------

def test_validate_wellformed_fredkin():
    assert validate(build_fredkin()) == []


def test_validate_duplicate_toffoli_operand():
    cb = CircuitBuilder()
    r = cb.new_register("r", 2)
    cb.toffoli(Wire(r, 0), Wire(r, 0), Wire(r, 1))
    violations = validate(cb.build())
    assert any(v.rule == "distinct-operands" and v.gate == 0
               for v in violations)


def test_validate_read_before_write():
    cb = CircuitBuilder()
    r = cb.new_register("r", 1)
    bit = cb.new_cbit()
    cb.z(Wire(r, 0), control_bits=(bit,))
    cb.measure_z(Wire(r, 0))
    violations = validate(cb.build())
    assert any(v.rule == "read-before-write" for v in violations)


def test_validate_and_target_freshness():
    cb = CircuitBuilder()
    r = cb.new_register("r", 3)
    w = cb.wires(r)
    cb.x(w[2])
    cb.and_(w[0], w[1], w[2])
    assert any(v.rule == "and-fresh" for v in validate(cb.build()))
    # A released target is fresh again.
    cb = CircuitBuilder()
    r = cb.new_register("r", 3)
    w = cb.wires(r)
    cb.and_(w[0], w[1], w[2])
    cb.deand(w[0], w[1], w[2])
    cb.and_(w[0], w[1], w[2])
    assert validate(cb.build()) == []


def test_validate_wire_out_of_range():
    circuit = Circuit((Register("r", 2),), (Gate(Kind.X, (Wire(0, 5),)),))
    assert any(v.rule == "wire-range" for v in validate(circuit))


def test_validate_is_order_stable():
    adder = build_adder(5)
    assert validate(adder) == validate(adder) == []


# -- properties ---------------------------------------------------------------

@st.composite
def small_circuits(draw):
    cb = CircuitBuilder()
    r = cb.new_register("r", 4)
    w = cb.wires(r)
    n_gates = draw(st.integers(0, 12))
    for _ in range(n_gates):
        kind = draw(st.sampled_from(["x", "h", "cnot", "toffoli"]))
        idx = draw(st.permutations(range(4)))
        if kind == "x":
            cb.x(w[idx[0]])
        elif kind == "h":
            cb.h(w[idx[0]])
        elif kind == "cnot":
            cb.cnot(w[idx[0]], w[idx[1]])
        else:
            cb.toffoli(w[idx[0]], w[idx[1]], w[idx[2]])
    return cb.build()


@given(small_circuits(), small_circuits())
def test_concatenation_additivity(a, b):
    assert count_gates(a + b) == count_gates(a) + count_gates(b)


@given(small_circuits(), st.integers(0, 3))
def test_relabel_neutrality(circuit, cut):
    cb = CircuitBuilder()
    r = cb.new_register("r", 4)
    w = cb.wires(r)
    cb.swap_label(w[:2], w[2:])
    relabel = cb.build()
    assert count_gates(relabel + circuit) == count_gates(circuit)


def test_dump_golden_fredkin():
    assert build_fredkin().dump() == (
        "CNOT b[0], a[0]\n"
        "TOFFOLI c[0], a[0], b[0]\n"
        "CNOT b[0], a[0]"
    )


def test_dump_measure_and_condition():
    cb = CircuitBuilder()
    r = cb.new_register("q", 2)
    bit = cb.measure_z(Wire(r, 0), reset=True)
    cb.z(Wire(r, 1), control_bits=(bit,))
    assert cb.build().dump() == (
        "MEASURE_Z q[0] -> c0 (reset)\n"
        "Z q[1] ? c0"
    )


def test_concat_requires_same_registers():
    with pytest.raises(ValueError):
        build_fredkin() + build_adder(2)


def test_gatecounts_arithmetic():
    a = GateCounts(one_qubit=1, cnot=2, and_pairs=3)
    assert 2 * a == a + a
    assert a.total() == 6
