"""Builders for every reversible subcircuit of the factoring algorithm.

The constructions, bottom up:

    AND / Fredkin            -- elementary blocks.
    ripple adder             -- in-place |x>|y> -> |x>|x+y mod 2^w>, one AND
                                pair and six CNOTs per bit at leading order.
    semi-classical adders    -- add a classically known integer, optionally
                                under one or two quantum controls (controls
                                merged into an ancilla with Toffolis).
    comparison               -- phase -1 on |x> iff x >= y for classical y,
                                via the carries of (2^w - y) + x.
    coset init               -- m rounds of controlled +2^j*N, Hadamard,
                                measurement and conditional phase fix, turning
                                |z> into the uniform superposition over z+kN.
    table lookup / unlookup  -- unary-ladder lookup XORing T_k into a target,
                                and its measurement-based erasure with a
                                selective phase correction.
    product-add / multiplication / modular exponentiation -- the windowed
                                composition of the above.

Builders are pure functions of their inputs.  ``build_*`` functions allocate
their own registers; the ``emit_*`` layer writes into a shared CircuitBuilder
so larger circuits can reuse wires.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .ir import Circuit, CircuitBuilder, Wire


@dataclass(frozen=True)
class AlgoParams:
    """The five logical-circuit knobs driving all gate counts.

    n    -- bit length of the modulus (2^{n-1} <= N < 2^n)
    n_e  -- exponent bit length
    w_e  -- exponentiation window size
    w_m  -- multiplication window size
    m    -- coset-representation padding qubits
    """

    n: int
    n_e: int
    w_e: int
    w_m: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("n >= 2 required")
        if self.n_e < 1:
            raise ValueError("n_e >= 1 required")
        if not 1 <= self.w_e <= self.n_e:
            raise ValueError("1 <= w_e <= n_e required")
        if not 1 <= self.w_m <= self.n:
            raise ValueError("1 <= w_m <= n required")
        if self.m < 1:
            raise ValueError("m >= 1 required")

    @property
    def reg_width(self) -> int:
        """Width of a coset-encoded working register."""
        return self.n + self.m

    @property
    def window_bits(self) -> int:
        return self.w_e + self.w_m

    def exponent_windows(self) -> list[tuple[int, int]]:
        """(start bit, width) of each exponent window; the last may be ragged."""
        return [(i, min(self.w_e, self.n_e - i))
                for i in range(0, self.n_e, self.w_e)]

    def mult_blocks(self) -> list[tuple[int, int]]:
        """(offset, width) of each multiplier window over a working register."""
        w = self.reg_width
        return [(o, min(self.w_m, w - o)) for o in range(0, w, self.w_m)]


@dataclass(frozen=True)
class ProblemInstance:
    """Concrete factoring instance: modulus and base, tables derived lazily."""

    N: int
    g: int

    def __post_init__(self) -> None:
        if self.N < 3 or self.N % 2 == 0:
            raise ValueError("N must be an odd integer >= 3")
        if not 1 <= self.g < self.N or math.gcd(self.g, self.N) != 1:
            raise ValueError("g must be in [1, N) and coprime to N")

    def bit_length_ok(self, n: int) -> bool:
        return (1 << (n - 1)) <= self.N < (1 << n)

    def window_power(self, i: int, k1: int, inverse: bool) -> int:
        """g^{2^i k1} mod N, or the negated modular inverse for the
        second product-addition of each multiplication."""
        if inverse:
            return (-pow(self.g, -(1 << i) * k1, self.N)) % self.N
        return pow(self.g, (1 << i) * k1, self.N)

    def table(self, i: int, w1: int, offset: int, w2: int,
              inverse: bool = False) -> tuple[int, ...]:
        """Addend table for one lookup block, all entries reduced mod N.

        Index k concatenates the exponent-window value k1 (high bits) and the
        multiplier-window value k2 (low bits): T = 2^offset * k2 * g^{2^i k1}.
        """
        gammas = [self.window_power(i, k1, inverse) for k1 in range(1 << w1)]
        shift = 1 << offset
        return tuple((shift * k2 * gammas[k1]) % self.N
                     for k1 in range(1 << w1) for k2 in range(1 << w2))


# -- elementary blocks ------------------------------------------------------

def build_and() -> Circuit:
    """AND of two wires into a fresh target."""
    cb = CircuitBuilder()
    c1 = cb.new_register("c1", 1)
    c2 = cb.new_register("c2", 1)
    t = cb.new_register("t", 1)
    cb.and_(Wire(c1, 0), Wire(c2, 0), Wire(t, 0))
    return cb.build()


def build_and_uncompute() -> Circuit:
    """Measurement-based release of an AND target."""
    cb = CircuitBuilder()
    c1 = cb.new_register("c1", 1)
    c2 = cb.new_register("c2", 1)
    t = cb.new_register("t", 1)
    cb.deand(Wire(c1, 0), Wire(c2, 0), Wire(t, 0))
    return cb.build()


def emit_fredkin(cb: CircuitBuilder, c: Wire, a: Wire, b: Wire) -> None:
    cb.cnot(b, a)
    cb.toffoli(c, a, b)
    cb.cnot(b, a)


def build_fredkin() -> Circuit:
    """Controlled swap from a Toffoli and two CNOTs."""
    cb = CircuitBuilder()
    c = cb.new_register("c", 1)
    a = cb.new_register("a", 1)
    b = cb.new_register("b", 1)
    emit_fredkin(cb, Wire(c, 0), Wire(a, 0), Wire(b, 0))
    return cb.build()


def build_controlled_swap(width: int) -> Circuit:
    """Register-wide controlled swap: one Fredkin per wire pair."""
    cb = CircuitBuilder()
    c = cb.new_register("c", 1)
    a = cb.new_register("a", width)
    b = cb.new_register("b", width)
    for k in range(width):
        emit_fredkin(cb, Wire(c, 0), Wire(a, k), Wire(b, k))
    return cb.build()


# -- ripple adder ------------------------------------------------------------

def emit_add(cb: CircuitBuilder, x: Sequence[Wire], y: Sequence[Wire],
             carry: Sequence[Wire]) -> None:
    """In-place |x>|y> -> |x>|x+y mod 2^w>; carries returned clean.

    Carry chain: carry[k] holds MAJ(x_k, y_k, c_k) built from one AND pair
    and CNOT rewrites per bit; sums are formed while uncomputing.
    """
    w = len(x)
    if w < 2 or len(y) != w or len(carry) < w - 1:
        raise ValueError("adder needs width >= 2 and w-1 carry wires")
    cb.and_(x[0], y[0], carry[0])
    for k in range(1, w - 1):
        cb.cnot(carry[k - 1], x[k])
        cb.cnot(carry[k - 1], y[k])
        cb.and_(x[k], y[k], carry[k])
        cb.cnot(carry[k - 1], carry[k])
    cb.cnot(carry[w - 2], y[w - 1])
    cb.cnot(x[w - 1], y[w - 1])
    for k in range(w - 2, 0, -1):
        cb.cnot(carry[k - 1], carry[k])
        cb.deand(x[k], y[k], carry[k])
        cb.cnot(carry[k - 1], x[k])
        cb.cnot(x[k], y[k])
    cb.deand(x[0], y[0], carry[0])
    cb.cnot(x[0], y[0])


def build_adder(width: int) -> Circuit:
    cb = CircuitBuilder()
    x = cb.new_register("x", width)
    y = cb.new_register("y", width)
    c = cb.new_register("carry", max(width - 1, 1))
    emit_add(cb, cb.wires(x), cb.wires(y), cb.wires(c))
    return cb.build()


# -- semi-classical adders ----------------------------------------------------

def emit_ctrl_add_classical(cb: CircuitBuilder, ctrl: Wire,
                            z: Sequence[Wire], carry: Sequence[Wire],
                            addend: int) -> None:
    """Add a classical integer to |z> mod 2^w iff the control wire is 1.

    Gates conditioned on addend bits are emitted only when the bit is set,
    which is where the mean 5.5w-9 CNOT count comes from.
    """
    w = len(z)
    if w < 2 or len(carry) < w - 1:
        raise ValueError("controlled adder needs width >= 2")
    if not 0 <= addend < (1 << w):
        raise ValueError("addend out of range")
    bits = [(addend >> k) & 1 for k in range(w)]
    if bits[0]:
        cb.toffoli(ctrl, z[0], carry[0])
    for k in range(1, w - 1):
        cb.cnot(carry[k - 1], z[k])
        if bits[k]:
            cb.cnot(ctrl, carry[k - 1])
        cb.toffoli(carry[k - 1], z[k], carry[k])
        if bits[k]:
            cb.cnot(ctrl, carry[k - 1])
        cb.cnot(carry[k - 1], carry[k])
    cb.cnot(carry[w - 2], z[w - 1])
    if bits[w - 1]:
        cb.cnot(ctrl, z[w - 1])
    for k in range(w - 2, 0, -1):
        cb.cnot(carry[k - 1], carry[k])
        if bits[k]:
            cb.cnot(ctrl, carry[k - 1])
        cb.toffoli(carry[k - 1], z[k], carry[k])
        if bits[k]:
            cb.cnot(ctrl, carry[k - 1])
            cb.cnot(ctrl, z[k])
    if bits[0]:
        cb.toffoli(ctrl, z[0], carry[0])
        cb.cnot(ctrl, z[0])


def build_ctrl_adder(width: int, addend: int) -> Circuit:
    """Singly controlled semi-classical addition."""
    cb = CircuitBuilder()
    c = cb.new_register("ctrl", 1)
    z = cb.new_register("z", width)
    carry = cb.new_register("carry", max(width - 1, 1))
    emit_ctrl_add_classical(cb, Wire(c, 0), cb.wires(z), cb.wires(carry),
                            addend)
    return cb.build()


def build_double_ctrl_adder(width: int, addend: int) -> Circuit:
    """Doubly controlled semi-classical addition.

    The two controls are merged into an ancilla with one Toffoli on each
    side, giving the mean cost 5.5w-9 CNOTs and 2w-1 Toffolis.
    """
    cb = CircuitBuilder()
    c1 = cb.new_register("c1", 1)
    c2 = cb.new_register("c2", 1)
    anc = cb.new_register("anc", 1)
    z = cb.new_register("z", width)
    carry = cb.new_register("carry", max(width - 1, 1))
    cb.toffoli(Wire(c1, 0), Wire(c2, 0), Wire(anc, 0))
    emit_ctrl_add_classical(cb, Wire(anc, 0), cb.wires(z), cb.wires(carry),
                            addend)
    cb.toffoli(Wire(c1, 0), Wire(c2, 0), Wire(anc, 0))
    return cb.build()


# -- comparison ----------------------------------------------------------------

def emit_comparison(cb: CircuitBuilder, x: Sequence[Wire],
                    carry: Sequence[Wire], y: int,
                    control_bits: Sequence[int] = ()) -> None:
    """Phase -1 on basis states with x >= y (classical y, 0 < y <= 2^w).

    Computes the carries of (2^w - y) + x, applies Z on the last carry and
    uncomputes.  ``control_bits`` conditions only the Z, so the carry
    machinery is emitted unconditionally (it is self-inverse).
    """
    w = len(x)
    if not 0 < y <= (1 << w):
        raise ValueError("comparison needs 0 < y <= 2^w")
    if len(carry) < w:
        raise ValueError("comparison needs w carry wires")
    yp = (1 << w) - y
    bits = [(yp >> k) & 1 for k in range(w)]
    if bits[0]:
        cb.cnot(x[0], carry[0])
    for k in range(1, w):
        cb.cnot(carry[k - 1], x[k])
        if bits[k]:
            cb.x(carry[k - 1])
        cb.and_(carry[k - 1], x[k], carry[k])
        if bits[k]:
            cb.x(carry[k - 1])
        cb.cnot(carry[k - 1], carry[k])
    cb.z(carry[w - 1], control_bits=control_bits)
    for k in range(w - 1, 0, -1):
        cb.cnot(carry[k - 1], carry[k])
        if bits[k]:
            cb.x(carry[k - 1])
        cb.deand(carry[k - 1], x[k], carry[k])
        if bits[k]:
            cb.x(carry[k - 1])
        cb.cnot(carry[k - 1], x[k])
    if bits[0]:
        cb.cnot(x[0], carry[0])


def build_comparison(width: int, y: int) -> Circuit:
    cb = CircuitBuilder()
    x = cb.new_register("x", width)
    carry = cb.new_register("carry", width)
    emit_comparison(cb, cb.wires(x), cb.wires(carry), y)
    return cb.build()


# -- coset representation -------------------------------------------------------

def emit_coset_init(cb: CircuitBuilder, z: Sequence[Wire], anc: Wire,
                    carry: Sequence[Wire], n: int, m: int, N: int) -> None:
    """Extend |z> (z < N) into the uniform superposition over z + kN.

    Round j: ancilla in |+>, controlled +2^j*N, Hadamard, measurement, and a
    comparison-phase correction conditioned on the outcome.  Correct for
    every measurement outcome.
    """
    if not (1 << (n - 1)) <= N < (1 << n):
        raise ValueError("N must satisfy 2^(n-1) <= N < 2^n")
    if len(z) != n + m:
        raise ValueError("coset register must have n+m wires")
    for j in range(m):
        addend = (1 << j) * N
        cb.h(anc)
        emit_ctrl_add_classical(cb, anc, z, carry, addend)
        cb.h(anc)
        bit = cb.measure_z(anc, reset=True)
        emit_comparison(cb, z, carry, addend, control_bits=(bit,))


def build_coset_init(n: int, m: int, N: int) -> Circuit:
    cb = CircuitBuilder()
    z = cb.new_register("z", n + m)
    anc = cb.new_register("anc", 1)
    carry = cb.new_register("carry", n + m)
    if m > 0:
        emit_coset_init(cb, cb.wires(z), Wire(anc, 0), cb.wires(carry), n, m, N)
    return cb.build()


# -- table lookup / unlookup -----------------------------------------------------

def _bits_of(v: int) -> list[int]:
    out, j = [], 0
    while v:
        if v & 1:
            out.append(j)
        v >>= 1
        j += 1
    return out


def _walk_addresses(cb: CircuitBuilder, prefix: Wire,
                    rest: Sequence[Wire], base: int, ladder: Sequence[Wire],
                    level: int, leaf: Callable[[int, Wire], None]) -> None:
    """Unary iteration over the address space below ``prefix``.

    ``rest`` lists the remaining address wires MSB first.  Each node costs
    one AND pair and one CNOT; the second half is entered by rewriting the
    node wire, the release uses a negated control.
    """
    if not rest:
        leaf(base, prefix)
        return
    b = rest[0]
    weight = 1 << (len(rest) - 1)
    t = ladder[level]
    cb.and_(prefix, b, t)
    _walk_addresses(cb, t, rest[1:], base + weight, ladder, level + 1, leaf)
    cb.cnot(prefix, t)
    _walk_addresses(cb, t, rest[1:], base, ladder, level + 1, leaf)
    cb.deand(prefix, b, t, neg=(False, True))


def _emit_table(cb: CircuitBuilder, addr: Sequence[Wire],
                ladder: Sequence[Wire], size: int,
                leaf: Callable[[int, Wire], None]) -> None:
    """Apply ``leaf(k, hot_wire)`` for every address k, highest first."""
    wa = len(addr)
    if size != 1 << wa:
        raise ValueError("table length must be 2^address_width")
    msb = addr[-1]
    rest = list(reversed(addr[:-1]))
    _walk_addresses(cb, msb, rest, 1 << (wa - 1), ladder, 0, leaf)
    cb.x(msb)
    _walk_addresses(cb, msb, rest, 0, ladder, 0, leaf)
    cb.x(msb)


def emit_lookup(cb: CircuitBuilder, addr: Sequence[Wire],
                target: Sequence[Wire], ladder: Sequence[Wire],
                table: Sequence[int]) -> None:
    """XOR T_k into the target register, controlled on the address k."""
    n_out = len(target)
    if any(not 0 <= v < (1 << n_out) for v in table):
        raise ValueError("table values exceed the output width")
    if not addr:
        if len(table) != 1:
            raise ValueError("table length must be 2^address_width")
        for j in _bits_of(table[0]):
            cb.x(target[j])
        return

    def leaf(k: int, hot: Wire) -> None:
        for j in _bits_of(table[k]):
            cb.cnot(hot, target[j])

    _emit_table(cb, addr, ladder, len(table), leaf)


def emit_unlookup(cb: CircuitBuilder, addr: Sequence[Wire],
                  target: Sequence[Wire], ladder: Sequence[Wire],
                  unary: Sequence[Wire], table: Sequence[int]) -> None:
    """Erase a looked-up T_k from the target, measurement based.

    X-basis measurements release the target wires; the sign pattern they
    induce is undone by a phase table over the unary-converted low half of
    the address.  Each phase gate is classically controlled on the parity of
    the outcomes selected by the bits of the corresponding table entry, which
    is exactly the sign rule of the measurement-based uncomputation.
    """
    wa = len(addr)
    if len(table) != 1 << wa:
        raise ValueError("table length must be 2^address_width")
    outcome = []
    for w in target:
        cb.h(w)
        outcome.append(cb.measure_z(w, reset=True))
    if not any(table):
        return  # every sign is +1, no correction possible
    s = wa // 2
    low, high = list(addr[:s]), list(addr[s:])
    u = list(unary[:1 << s])
    if len(u) < (1 << s):
        raise ValueError("unary register too small")
    _emit_unary_init(cb, low, u)
    for w in u:
        cb.h(w)

    def leaf(v: int, hot: Wire) -> None:
        for j in range(1 << s):
            entry = table[(v << s) | j]
            if entry:
                cond = tuple(outcome[b] for b in _bits_of(entry))
                cb.cnot(hot, u[j], control_bits=cond)

    _emit_table(cb, high, ladder, 1 << len(high), leaf)
    for w in u:
        cb.h(w)
    _emit_unary_deinit(cb, low, u)


def _emit_unary_init(cb: CircuitBuilder, low: Sequence[Wire],
                     u: Sequence[Wire]) -> None:
    """Unary-encode the integer on ``low`` into 2^s wires (wire k hot)."""
    cb.x(u[0])
    for b_idx, b in enumerate(low):
        step = 1 << b_idx
        for p in range(step):
            cb.and_(b, u[p], u[p + step])
            cb.cnot(u[p + step], u[p])


def _emit_unary_deinit(cb: CircuitBuilder, low: Sequence[Wire],
                       u: Sequence[Wire]) -> None:
    for b_idx in reversed(range(len(low))):
        b = low[b_idx]
        step = 1 << b_idx
        for p in reversed(range(step)):
            cb.cnot(u[p + step], u[p])
            cb.deand(b, u[p], u[p + step])
    cb.x(u[0])


def build_lookup(address_width: int, table: Sequence[int],
                 out_width: int) -> Circuit:
    cb = CircuitBuilder()
    addr = cb.new_register("addr", max(address_width, 1))
    target = cb.new_register("target", out_width)
    ladder = cb.new_register("ladder", max(address_width - 1, 1))
    wires = cb.wires(addr)[:address_width]
    emit_lookup(cb, wires, cb.wires(target), cb.wires(ladder), table)
    return cb.build()


def build_unlookup(address_width: int, table: Sequence[int],
                   out_width: int) -> Circuit:
    cb = CircuitBuilder()
    addr = cb.new_register("addr", max(address_width, 1))
    target = cb.new_register("target", out_width)
    ladder = cb.new_register("ladder", max(address_width - 1, 1))
    unary = cb.new_register("unary", 1 << (address_width // 2))
    emit_unlookup(cb, cb.wires(addr)[:address_width], cb.wires(target),
                  cb.wires(ladder), cb.wires(unary), table)
    return cb.build()


# -- windowed modular arithmetic ---------------------------------------------------

def emit_product_add(cb: CircuitBuilder, params: AlgoParams,
                     instance: ProblemInstance, i: int, w_i: int,
                     ew: Sequence[Wire], src: Sequence[Wire],
                     dst: Sequence[Wire], tmp: Sequence[Wire],
                     carry: Sequence[Wire], ladder: Sequence[Wire],
                     unary: Sequence[Wire], inverse: bool) -> None:
    """dst += src * g^{2^i * ew} mod N (coset approximate), windowed.

    One lookup--add--unlookup block per multiplier window of the source
    register; the looked-up addend is zero-extended to the full register so
    a single full-width adder suffices.
    """
    n = params.n
    for offset, w_t in params.mult_blocks():
        table = instance.table(i, w_i, offset, w_t, inverse)
        addr = list(src[offset:offset + w_t]) + list(ew)
        emit_lookup(cb, addr, tmp[:n], ladder, table)
        emit_add(cb, tmp, dst, carry)
        emit_unlookup(cb, addr, tmp[:n], ladder, unary, table)


def build_product_add(params: AlgoParams, instance: ProblemInstance,
                      i: int, *, inverse: bool = False) -> Circuit:
    """Standalone windowed product-addition for exponent window ``i``."""
    if not instance.bit_length_ok(params.n):
        raise ValueError("instance modulus does not match params.n")
    w_i = min(params.w_e, params.n_e - i)
    cb = CircuitBuilder()
    layout = _working_registers(cb, params, exponent_width=w_i)
    emit_product_add(cb, params, instance, i, w_i,
                     cb.wires(layout["e"]), cb.wires(layout["x"]),
                     cb.wires(layout["aux"]), cb.wires(layout["tmp"]),
                     cb.wires(layout["carry"]), cb.wires(layout["ladder"]),
                     cb.wires(layout["unary"]), inverse)
    return cb.build()


def emit_multiplication(cb: CircuitBuilder, params: AlgoParams,
                        instance: ProblemInstance, i: int, w_i: int,
                        ew: Sequence[Wire], x: Sequence[Wire],
                        aux: Sequence[Wire], tmp: Sequence[Wire],
                        carry: Sequence[Wire], ladder: Sequence[Wire],
                        unary: Sequence[Wire]) -> None:
    """x -> x * g^{2^i * ew} mod N via two product-additions and a free swap."""
    emit_product_add(cb, params, instance, i, w_i, ew, x, aux, tmp, carry,
                     ladder, unary, inverse=False)
    emit_product_add(cb, params, instance, i, w_i, ew, aux, x, tmp, carry,
                     ladder, unary, inverse=True)
    cb.swap_label(x, aux)


def build_multiplication(params: AlgoParams, instance: ProblemInstance,
                         i: int) -> Circuit:
    if not instance.bit_length_ok(params.n):
        raise ValueError("instance modulus does not match params.n")
    w_i = min(params.w_e, params.n_e - i)
    cb = CircuitBuilder()
    layout = _working_registers(cb, params, exponent_width=w_i)
    emit_multiplication(cb, params, instance, i, w_i,
                        cb.wires(layout["e"]), cb.wires(layout["x"]),
                        cb.wires(layout["aux"]), cb.wires(layout["tmp"]),
                        cb.wires(layout["carry"]), cb.wires(layout["ladder"]),
                        cb.wires(layout["unary"]))
    return cb.build()


def build_mod_exp(params: AlgoParams, instance: ProblemInstance) -> Circuit:
    """|e>|x=1>|0...> -> |e>|coset(g^e mod N)>|...>, inits included.

    Both working registers are put in the coset representation first; the
    role swap after each multiplication is a relabeling, so the output ends
    up in the register named "x".
    """
    if not instance.bit_length_ok(params.n):
        raise ValueError("instance modulus does not match params.n")
    cb = CircuitBuilder()
    layout = _working_registers(cb, params, exponent_width=params.n_e,
                                coset_ancilla=True)
    e = cb.wires(layout["e"])
    x = cb.wires(layout["x"])
    aux = cb.wires(layout["aux"])
    tmp = cb.wires(layout["tmp"])
    carry = cb.wires(layout["carry"])
    ladder = cb.wires(layout["ladder"])
    unary = cb.wires(layout["unary"])
    anc = Wire(layout["anc"], 0)
    emit_coset_init(cb, x, anc, carry, params.n, params.m, instance.N)
    emit_coset_init(cb, aux, anc, carry, params.n, params.m, instance.N)
    for i, w_i in params.exponent_windows():
        emit_multiplication(cb, params, instance, i, w_i,
                            e[i:i + w_i], x, aux, tmp, carry, ladder, unary)
    return cb.build()


def _working_registers(cb: CircuitBuilder, params: AlgoParams,
                       exponent_width: int,
                       coset_ancilla: bool = False) -> dict[str, int]:
    w = params.reg_width
    q = params.window_bits
    layout = {
        "e": cb.new_register("e", exponent_width),
        "x": cb.new_register("x", w),
        "aux": cb.new_register("aux", w),
        "tmp": cb.new_register("tmp", w),
        "carry": cb.new_register("carry", w),
        "ladder": cb.new_register("ladder", max(q - 1, 1)),
        "unary": cb.new_register("unary", 1 << (q // 2)),
    }
    if coset_ancilla:
        layout["anc"] = cb.new_register("anc", 1)
    return layout


def register_total(params: AlgoParams) -> int:
    """Total wires allocated by build_mod_exp (builder-side logical qubits)."""
    q = params.window_bits
    return (params.n_e + 4 * params.reg_width + max(q - 1, 1)
            + (1 << (q // 2)) + 1)
