"""Reversible-circuit intermediate representation.

Contains:
    - Wire / Register: wires are addressed as (register, offset) pairs so
      that whole-register relabeling stays a zero-cost bookkeeping gate.
    - Kind / Gate: the fixed gate alphabet (Clifford + Toffoli + AND pairs
      + measurements + classical feed-forward).
    - Circuit: immutable gate list over declared registers.
    - CircuitBuilder: the only mutable construction path.
    - GateCounts / count_gates / validate: exact tallies and invariant checks.

Classical feed-forward is modeled by the ``control_bits`` field of a gate:
the gate is applied iff the XOR of the referenced classical bits is 1.  A
single-bit condition is the common case; the parity form is needed to express
the measurement-based table unlookup as a static circuit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction]


class Wire(NamedTuple):
    """Reference to one wire: register index and offset inside it."""

    reg: int
    off: int


class Register(NamedTuple):
    """Named block of wires; the index in Circuit.registers identifies it."""

    name: str
    width: int


class Kind(Enum):
    """Gate alphabet; no generic rotations beyond PHASE (diag(1, e^{2πi/2^k}))."""

    X = "X"
    H = "H"
    Z = "Z"
    S = "S"
    T = "T"
    PHASE = "PHASE"
    CNOT = "CNOT"
    CZ = "CZ"
    TOFFOLI = "TOFFOLI"
    AND = "AND"            # compute c1*c2 into a fresh target
    DEAND = "DEAND"        # measurement-based uncompute, releases the target
    MEASURE_Z = "MEASURE_Z"
    MEASURE_X = "MEASURE_X"
    SWAP_LABEL = "SWAP_LABEL"  # register relabeling, zero cost


_ONE_QUBIT = frozenset({Kind.X, Kind.H, Kind.Z, Kind.S, Kind.T, Kind.PHASE})
_TWO_QUBIT = frozenset({Kind.CNOT, Kind.CZ})
_MEASURE = frozenset({Kind.MEASURE_Z, Kind.MEASURE_X})

#: expected operand count per kind (None: any even count >= 2, for SWAP_LABEL)
ARITY = {
    **{k: 1 for k in _ONE_QUBIT},
    **{k: 2 for k in _TWO_QUBIT},
    Kind.TOFFOLI: 3,
    Kind.AND: 3,
    Kind.DEAND: 3,
    Kind.MEASURE_Z: 1,
    Kind.MEASURE_X: 1,
    Kind.SWAP_LABEL: None,
}


@dataclass(frozen=True)
class Gate:
    """One gate instance.

    wires         -- operands; for AND/DEAND the order is (c1, c2, target),
                     for SWAP_LABEL the first half swaps with the second half.
    phase_k       -- k of PHASE (diag(1, e^{2πi/2^k})); None otherwise.
    cbit          -- classical bit written by a measurement.
    control_bits  -- classical parity condition (apply iff XOR of bits is 1).
    neg           -- control polarities for AND/DEAND, True = control on |0>.
    reset         -- measurement releases the wire back to |0> afterwards.
    """

    kind: Kind
    wires: tuple[Wire, ...]
    phase_k: int | None = None
    cbit: int | None = None
    control_bits: tuple[int, ...] = ()
    neg: tuple[bool, bool] = (False, False)
    reset: bool = False


class Violation(NamedTuple):
    """One invariant violation; ``gate`` is the gate index or None."""

    gate: int | None
    rule: str
    detail: str


@dataclass(frozen=True)
class GateCounts:
    """Tallies by gate family.

    ``and_pairs`` counts AND computations; in balanced circuits every one is
    matched by a DEAND, so the value is the number of compute+uncompute pairs.
    Values may be exact rationals in mean-count mode.
    """

    one_qubit: Number = 0
    cnot: Number = 0
    toffoli: Number = 0
    and_pairs: Number = 0
    measure: Number = 0

    def __add__(self, other: "GateCounts") -> "GateCounts":
        return GateCounts(
            self.one_qubit + other.one_qubit,
            self.cnot + other.cnot,
            self.toffoli + other.toffoli,
            self.and_pairs + other.and_pairs,
            self.measure + other.measure,
        )

    def __rmul__(self, k: Number) -> "GateCounts":
        return GateCounts(
            k * self.one_qubit,
            k * self.cnot,
            k * self.toffoli,
            k * self.and_pairs,
            k * self.measure,
        )

    def total(self) -> Number:
        """Sum of all tallies, measurements included."""
        return (self.one_qubit + self.cnot + self.toffoli + self.and_pairs
                + self.measure)

    def rounded_up(self) -> "GateCounts":
        """Integer view; fractional mean counts are rounded up."""
        return GateCounts(*(math.ceil(v) for v in (
            self.one_qubit, self.cnot, self.toffoli, self.and_pairs,
            self.measure)))

    def as_dict(self) -> dict:
        return {"one_qubit": self.one_qubit, "cnot": self.cnot,
                "toffoli": self.toffoli, "and_pairs": self.and_pairs,
                "measure": self.measure}


ZERO_COUNTS = GateCounts()


@dataclass(frozen=True)
class Circuit:
    """Immutable sequence of gates over declared registers.

    Safe to share between concurrent readers; construct via CircuitBuilder.
    """

    registers: tuple[Register, ...]
    gates: tuple[Gate, ...]
    n_cbits: int = 0

    @property
    def width(self) -> int:
        return sum(r.width for r in self.registers)

    def register_index(self, name: str) -> int:
        for i, r in enumerate(self.registers):
            if r.name == name:
                return i
        raise KeyError(f"no register named {name!r}")

    def wires(self, reg: int | str) -> list[Wire]:
        if isinstance(reg, str):
            reg = self.register_index(reg)
        return [Wire(reg, k) for k in range(self.registers[reg].width)]

    def offsets(self) -> list[int]:
        """Global bit offset of each register (little-endian layout)."""
        out, acc = [], 0
        for r in self.registers:
            out.append(acc)
            acc += r.width
        return out

    def concat(self, other: "Circuit") -> "Circuit":
        """Concatenate a circuit with identical register layout.

        Classical bit references of ``other`` are shifted past ours, so
        counts and semantics are preserved.
        """
        if other.registers != self.registers:
            raise ValueError("concatenation requires identical registers")
        shift = self.n_cbits
        shifted = []
        for g in other.gates:
            if g.cbit is not None or g.control_bits:
                g = replace(
                    g,
                    cbit=None if g.cbit is None else g.cbit + shift,
                    control_bits=tuple(b + shift for b in g.control_bits),
                )
            shifted.append(g)
        return Circuit(self.registers, self.gates + tuple(shifted),
                       self.n_cbits + other.n_cbits)

    def __add__(self, other: "Circuit") -> "Circuit":
        return self.concat(other)

    def dump(self) -> str:
        """Line-oriented text form, one gate per line, for golden tests."""
        regs = self.registers
        lines = []
        for g in self.gates:
            ws = ", ".join(f"{regs[w.reg].name}[{w.off}]" for w in g.wires)
            kind = g.kind.value
            if g.kind is Kind.PHASE:
                kind = f"PHASE({g.phase_k})"
            if g.kind in (Kind.AND, Kind.DEAND) and any(g.neg):
                kind += "!" + "".join("01"[not f] for f in g.neg)
            line = f"{kind} {ws}"
            if g.cbit is not None:
                line += f" -> c{g.cbit}"
                if g.reset:
                    line += " (reset)"
            if g.control_bits:
                line += " ? " + "^".join(f"c{b}" for b in g.control_bits)
            lines.append(line)
        return "\n".join(lines)


def count_gates(circuit: Circuit) -> GateCounts:
    """Exact tallies by kind.

    Classically controlled gates count as their inner gate, SWAP_LABEL is
    free, DEAND is the uncompute half of the pair counted at its AND.
    """
    one = cnot = toff = pairs = meas = 0
    for g in circuit.gates:
        k = g.kind
        if k in _ONE_QUBIT:
            one += 1
        elif k in _TWO_QUBIT:
            cnot += 1
        elif k is Kind.TOFFOLI:
            toff += 1
        elif k is Kind.AND:
            pairs += 1
        elif k in _MEASURE:
            meas += 1
        # DEAND and SWAP_LABEL contribute nothing
    return GateCounts(one, cnot, toff, pairs, meas)


def validate(circuit: Circuit) -> list[Violation]:
    """Check all circuit invariants; violations are data, not failures.

    The result is deterministic and order-stable: gates are scanned in
    order and rules are checked in a fixed order per gate.
    """
    out: list[Violation] = []
    regs = circuit.registers
    seen = set()
    for i, r in enumerate(regs):
        if r.width < 1:
            out.append(Violation(None, "register-width",
                                 f"register {i} ({r.name}) has width {r.width}"))
        if r.name in seen:
            out.append(Violation(None, "register-name",
                                 f"duplicate register name {r.name!r}"))
        seen.add(r.name)

    # Freshness tracking for AND targets is syntactic, so only definite
    # violations are reported: a live AND target or a wire known to hold 1.
    # Wires written by generic reversible gates become UNKNOWN and are given
    # the benefit of the doubt (e.g. Toffoli-based carry chains that provably
    # return to zero).
    FRESH, SET, UNKNOWN, LIVE = range(4)
    state: dict[Wire, int] = {}  # missing entry: never touched, i.e. fresh

    def wire_state(w: Wire) -> int:
        return state.get(w, FRESH)

    written: set[int] = set()
    for i, g in enumerate(circuit.gates):
        arity = ARITY[g.kind]
        if arity is not None and len(g.wires) != arity:
            out.append(Violation(i, "arity",
                                 f"{g.kind.value} expects {arity} operands, "
                                 f"got {len(g.wires)}"))
            continue
        if g.kind is Kind.SWAP_LABEL and (len(g.wires) < 2
                                          or len(g.wires) % 2 != 0):
            out.append(Violation(i, "arity",
                                 "SWAP_LABEL expects an even operand count"))
            continue
        if len(set(g.wires)) != len(g.wires):
            out.append(Violation(i, "distinct-operands",
                                 f"{g.kind.value} operands must be distinct"))
        bad_ref = False
        for w in g.wires:
            if not (0 <= w.reg < len(regs)) or not (0 <= w.off < regs[w.reg].width):
                out.append(Violation(i, "wire-range", f"wire {w} out of range"))
                bad_ref = True
        if bad_ref:
            continue
        if g.kind is Kind.PHASE and (g.phase_k is None or g.phase_k < 1):
            out.append(Violation(i, "phase-k", "PHASE needs k >= 1"))
        for b in g.control_bits:
            if not (0 <= b < circuit.n_cbits):
                out.append(Violation(i, "cbit-range", f"classical bit {b}"))
            elif b not in written:
                out.append(Violation(i, "read-before-write",
                                     f"classical bit {b} read before any "
                                     "measurement writes it"))
        if g.kind in _MEASURE:
            if g.cbit is None or not (0 <= g.cbit < circuit.n_cbits):
                out.append(Violation(i, "cbit-range",
                                     f"measurement cbit {g.cbit}"))
            else:
                written.add(g.cbit)
        if g.kind is Kind.AND:
            tgt = g.wires[2]
            if wire_state(tgt) in (SET, LIVE):
                out.append(Violation(i, "and-fresh",
                                     f"AND target {tgt} is not fresh"))
            state[tgt] = LIVE
        elif g.kind is Kind.DEAND:
            state[g.wires[2]] = FRESH
        elif g.kind in _MEASURE:
            state[g.wires[0]] = FRESH if g.reset else UNKNOWN
        elif g.kind is Kind.X:
            s = wire_state(g.wires[0])
            if s in (FRESH, SET):
                state[g.wires[0]] = SET if s == FRESH else FRESH
        elif g.kind is Kind.H:
            state[g.wires[0]] = UNKNOWN
        elif g.kind is Kind.CNOT:
            state[g.wires[1]] = UNKNOWN
        elif g.kind is Kind.TOFFOLI:
            state[g.wires[2]] = UNKNOWN
        elif g.kind is Kind.SWAP_LABEL:
            half = len(g.wires) // 2
            for a, b in zip(g.wires[:half], g.wires[half:]):
                sa, sb = wire_state(a), wire_state(b)
                state[a], state[b] = sb, sa
        # Phase gates and control positions leave the tracked state alone.
    return out


class CircuitBuilder:
    """Mutable construction context; ``build()`` freezes into a Circuit."""

    def __init__(self) -> None:
        self._registers: list[Register] = []
        self._gates: list[Gate] = []
        self._n_cbits = 0

    # -- declarations -----------------------------------------------------
    def new_register(self, name: str, width: int) -> int:
        if width < 1:
            raise ValueError(f"register width must be >= 1, got {width}")
        self._registers.append(Register(name, width))
        return len(self._registers) - 1

    def wires(self, reg: int) -> list[Wire]:
        return [Wire(reg, k) for k in range(self._registers[reg].width)]

    def new_cbit(self) -> int:
        self._n_cbits += 1
        return self._n_cbits - 1

    # -- gate emission ----------------------------------------------------
    def _emit(self, kind: Kind, wires: Iterable[Wire], **kw) -> Gate:
        g = Gate(kind, tuple(wires), **kw)
        self._gates.append(g)
        return g

    def x(self, w: Wire, *, control_bits: Sequence[int] = ()) -> None:
        self._emit(Kind.X, [w], control_bits=tuple(control_bits))

    def h(self, w: Wire) -> None:
        self._emit(Kind.H, [w])

    def z(self, w: Wire, *, control_bits: Sequence[int] = ()) -> None:
        self._emit(Kind.Z, [w], control_bits=tuple(control_bits))

    def s(self, w: Wire) -> None:
        self._emit(Kind.S, [w])

    def t(self, w: Wire) -> None:
        self._emit(Kind.T, [w])

    def phase(self, w: Wire, k: int, *, control_bits: Sequence[int] = ()) -> None:
        self._emit(Kind.PHASE, [w], phase_k=k, control_bits=tuple(control_bits))

    def cnot(self, c: Wire, t: Wire, *, control_bits: Sequence[int] = ()) -> None:
        self._emit(Kind.CNOT, [c, t], control_bits=tuple(control_bits))

    def cz(self, a: Wire, b: Wire, *, control_bits: Sequence[int] = ()) -> None:
        self._emit(Kind.CZ, [a, b], control_bits=tuple(control_bits))

    def toffoli(self, c1: Wire, c2: Wire, t: Wire) -> None:
        self._emit(Kind.TOFFOLI, [c1, c2, t])

    def and_(self, c1: Wire, c2: Wire, t: Wire,
             neg: tuple[bool, bool] = (False, False)) -> None:
        self._emit(Kind.AND, [c1, c2, t], neg=neg)

    def deand(self, c1: Wire, c2: Wire, t: Wire,
              neg: tuple[bool, bool] = (False, False)) -> None:
        self._emit(Kind.DEAND, [c1, c2, t], neg=neg)

    def measure_z(self, w: Wire, *, reset: bool = False) -> int:
        b = self.new_cbit()
        self._emit(Kind.MEASURE_Z, [w], cbit=b, reset=reset)
        return b

    def measure_x(self, w: Wire, *, reset: bool = False) -> int:
        b = self.new_cbit()
        self._emit(Kind.MEASURE_X, [w], cbit=b, reset=reset)
        return b

    def swap_label(self, a: Sequence[Wire], b: Sequence[Wire]) -> None:
        if len(a) != len(b):
            raise ValueError("SWAP_LABEL needs equal-width wire groups")
        self._emit(Kind.SWAP_LABEL, list(a) + list(b))

    def build(self) -> Circuit:
        return Circuit(tuple(self._registers), tuple(self._gates),
                       self._n_cbits)
