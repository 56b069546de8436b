"""Sparse amplitude simulator, the ground-truth oracle for every builder.

States are dictionaries mapping basis integers (little-endian over the
circuit's registers) to complex amplitudes.  The arithmetic circuits keep
the superposition support small (a coset of size 2^m per working register),
which makes desk-scale end-to-end runs feasible.

Measurement sampling uses ``random.Random(seed)`` (Mersenne Twister), so a
(circuit, initial, seed) triple fully determines the outcome record and the
final state.  DEAND is simulated in its exact measurement-based form: the
X-basis outcome of the released wire is irrelevant once the conditional
phase fix-up is folded in, so the wire is simply cleared.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .ir import Circuit, Gate, Kind, Wire

PRUNE_EPS = 1e-14       #: amplitudes below this magnitude are dropped
NORM_TOL = 1e-10        #: allowed drift of the state norm
DEFAULT_MAX_ENTRIES = 1 << 22

_SQRT1_2 = math.sqrt(0.5)


class ResourceLimitError(RuntimeError):
    """State support exceeded the configured entry cap."""


class SimulationError(RuntimeError):
    """Internal consistency failure (norm drift, empty state)."""


@dataclass
class SparseState:
    """Sparse state: basis-int keyed amplitudes plus recorded outcomes."""

    width: int
    amps: dict[int, complex]
    cbits: list[int] = field(default_factory=list)

    def norm(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amps.values())

    def prune(self) -> None:
        dead = [k for k, a in self.amps.items() if abs(a) < PRUNE_EPS]
        for k in dead:
            del self.amps[k]

    def copy(self) -> "SparseState":
        return SparseState(self.width, dict(self.amps), list(self.cbits))

    def register_value(self, circuit: Circuit, reg: int | str, key: int) -> int:
        """Extract one register's integer value from a basis key."""
        if isinstance(reg, str):
            reg = circuit.register_index(reg)
        off = circuit.offsets()[reg]
        return (key >> off) & ((1 << circuit.registers[reg].width) - 1)


def fidelity(a: SparseState, b: SparseState) -> float:
    """|<a|b>|^2, invariant under global phase."""
    if a.width != b.width:
        raise ValueError("states have different wire counts")
    small, big = (a.amps, b.amps) if len(a.amps) <= len(b.amps) else (b.amps, a.amps)
    ov = sum(v.conjugate() * big.get(k, 0.0) for k, v in small.items())
    return abs(ov) ** 2


def product_state(circuit: Circuit,
                  initial: Mapping[int | str, int] | None = None) -> SparseState:
    """Basis state from per-register integer assignments (default 0)."""
    key = 0
    offsets = circuit.offsets()
    if initial:
        for reg, val in initial.items():
            idx = circuit.register_index(reg) if isinstance(reg, str) else reg
            width = circuit.registers[idx].width
            if not 0 <= val < (1 << width):
                raise ValueError(f"value {val} does not fit register "
                                 f"{circuit.registers[idx].name!r}")
            key |= val << offsets[idx]
    return SparseState(circuit.width, {key: 1.0 + 0.0j})


def run(circuit: Circuit,
        initial: Mapping[int | str, int] | None = None,
        seed: int = 0,
        *,
        max_entries: int = DEFAULT_MAX_ENTRIES) -> SparseState:
    """Apply the circuit to a basis state and return the final state."""
    return run_state(circuit, product_state(circuit, initial), seed,
                     max_entries=max_entries)


def run_state(circuit: Circuit,
              state: SparseState,
              seed: int = 0,
              *,
              max_entries: int = DEFAULT_MAX_ENTRIES) -> SparseState:
    """Apply the circuit to an arbitrary prepared state (copied, not mutated)."""
    st = state.copy()
    if st.width != circuit.width:
        raise ValueError("state width does not match circuit")
    rng = random.Random(seed)
    offsets = circuit.offsets()

    def bit(w: Wire) -> int:
        return offsets[w.reg] + w.off

    for g in circuit.gates:
        if g.control_bits:
            parity = 0
            for b in g.control_bits:
                parity ^= st.cbits[b]
            if not parity:
                continue
        _apply(st, g, [bit(w) for w in g.wires], rng)
        if len(st.amps) > max_entries:
            raise ResourceLimitError(
                f"state support {len(st.amps)} exceeds cap {max_entries}")
    return st


# -- gate application helpers ---------------------------------------------

def _apply(st: SparseState, g: Gate, bits: list[int], rng: random.Random) -> None:
    k = g.kind
    amps = st.amps
    if k is Kind.X:
        m = 1 << bits[0]
        st.amps = {key ^ m: a for key, a in amps.items()}
    elif k is Kind.CNOT:
        c, t = 1 << bits[0], 1 << bits[1]
        st.amps = {(key ^ t) if key & c else key: a for key, a in amps.items()}
    elif k is Kind.TOFFOLI:
        c1, c2, t = (1 << b for b in bits)
        cc = c1 | c2
        st.amps = {(key ^ t) if key & cc == cc else key: a
                   for key, a in amps.items()}
    elif k is Kind.AND:
        c1, c2, t = (1 << b for b in bits)
        n1, n2 = g.neg
        st.amps = {
            (key ^ t) if (bool(key & c1) != n1) and (bool(key & c2) != n2)
            else key: a
            for key, a in amps.items()}
    elif k is Kind.DEAND:
        # Exact measurement-based uncompute: outcome phases cancel against
        # the conditional fix-up, leaving "clear the target wire".
        t = 1 << bits[2]
        new: dict[int, complex] = {}
        for key, a in amps.items():
            nk = key & ~t
            new[nk] = new.get(nk, 0.0) + a
        st.amps = new
        st.prune()
    elif k is Kind.H:
        m = 1 << bits[0]
        new = {}
        for key, a in amps.items():
            a = a * _SQRT1_2
            k0, k1 = key & ~m, key | m
            new[k0] = new.get(k0, 0.0) + a
            new[k1] = new.get(k1, 0.0) + (-a if key & m else a)
        st.amps = new
        st.prune()
    elif k is Kind.Z:
        m = 1 << bits[0]
        st.amps = {key: (-a if key & m else a) for key, a in amps.items()}
    elif k is Kind.S:
        m = 1 << bits[0]
        st.amps = {key: (1j * a if key & m else a) for key, a in amps.items()}
    elif k is Kind.T:
        m = 1 << bits[0]
        ph = cmath.exp(0.25j * math.pi)
        st.amps = {key: (ph * a if key & m else a) for key, a in amps.items()}
    elif k is Kind.PHASE:
        m = 1 << bits[0]
        ph = cmath.exp(2j * math.pi / (1 << g.phase_k))
        st.amps = {key: (ph * a if key & m else a) for key, a in amps.items()}
    elif k is Kind.CZ:
        c1, c2 = 1 << bits[0], 1 << bits[1]
        cc = c1 | c2
        st.amps = {key: (-a if key & cc == cc else a)
                   for key, a in amps.items()}
    elif k is Kind.MEASURE_Z:
        _measure_z(st, bits[0], g, rng)
    elif k is Kind.MEASURE_X:
        _hadamard_inplace(st, bits[0])
        _measure_z(st, bits[0], g, rng)
    elif k is Kind.SWAP_LABEL:
        half = len(bits) // 2
        pairs = [(1 << a, 1 << b) for a, b in zip(bits[:half], bits[half:])
                 if a != b]
        new = {}
        for key, a in amps.items():
            nk = key
            for ma, mb in pairs:
                va, vb = bool(key & ma), bool(key & mb)
                if va != vb:
                    nk ^= ma | mb
            new[nk] = a
        st.amps = new
    else:  # pragma: no cover - exhaustive over Kind
        raise SimulationError(f"unhandled gate kind {k}")


def _hadamard_inplace(st: SparseState, bit: int) -> None:
    m = 1 << bit
    new: dict[int, complex] = {}
    for key, a in st.amps.items():
        a = a * _SQRT1_2
        k0, k1 = key & ~m, key | m
        new[k0] = new.get(k0, 0.0) + a
        new[k1] = new.get(k1, 0.0) + (-a if key & m else a)
    st.amps = new
    st.prune()


def _measure_z(st: SparseState, bit: int, g: Gate, rng: random.Random) -> None:
    m = 1 << bit
    p1 = math.fsum(abs(a) ** 2 for key, a in st.amps.items() if key & m)
    total = st.norm()
    if total < NORM_TOL:
        raise SimulationError("state norm vanished before measurement")
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"state norm drifted to {total}")
    outcome = 1 if rng.random() < p1 / total else 0
    keep = {key: a for key, a in st.amps.items()
            if bool(key & m) == bool(outcome)}
    scale = 1.0 / math.sqrt(math.fsum(abs(a) ** 2 for a in keep.values()))
    if g.reset and outcome:
        st.amps = {key ^ m: a * scale for key, a in keep.items()}
    else:
        st.amps = {key: a * scale for key, a in keep.items()}
    if g.cbit is not None:
        while len(st.cbits) <= g.cbit:
            st.cbits.append(0)
        st.cbits[g.cbit] = outcome


# -- oracle packaging -------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    case: Mapping
    rule: str
    detail: str


@dataclass(frozen=True)
class CheckReport:
    n_cases: int
    failures: tuple[Mismatch, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def basis_map_check(circuit: Circuit,
                    cases: Sequence[Mapping[int | str, int]],
                    output: int | str,
                    oracle: Callable[[Mapping[int | str, int]], int],
                    *,
                    extract: Callable[[int], int] | None = None,
                    zero_registers: Sequence[int | str] = (),
                    seed: int = 0,
                    max_entries: int = DEFAULT_MAX_ENTRIES) -> CheckReport:
    """Run the circuit on each basis case and compare an output register.

    ``extract`` maps the raw register value before comparison (for coset
    registers, reduction mod N); every branch of the final superposition
    must agree on the extracted value, otherwise the case fails with a
    residual-superposition report.  ``zero_registers`` must read 0 on every
    branch (ancilla hygiene).
    """
    failures: list[Mismatch] = []
    extract = extract or (lambda v: v)
    for case in cases:
        st = run(circuit, case, seed=seed, max_entries=max_entries)
        values = {extract(st.register_value(circuit, output, key))
                  for key in st.amps}
        if len(values) != 1:
            failures.append(Mismatch(case, "residual-superposition",
                                     f"output values {sorted(values)!r}"))
            continue
        got = values.pop()
        want = oracle(case)
        if got != want:
            failures.append(Mismatch(case, "mismatch",
                                     f"got {got}, expected {want}"))
            continue
        for reg in zero_registers:
            residues = {st.register_value(circuit, reg, key) for key in st.amps}
            if residues != {0}:
                failures.append(Mismatch(case, "dirty-ancilla",
                                         f"register {reg!r} holds "
                                         f"{sorted(residues)!r}"))
    return CheckReport(len(cases), tuple(failures))
