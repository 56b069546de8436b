"""Simulator-backed verification suites.

Each suite runs builder outputs against independent classical oracles
(integer arithmetic, analytic states) and returns one line per check.
The CLI ``verify`` subcommand and the test suite share these functions.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from . import builders, counts as counts_mod
from .builders import AlgoParams, ProblemInstance
from .ir import Circuit, CircuitBuilder, GateCounts, count_gates, validate
from .sim import SparseState, basis_map_check, fidelity, run, run_state


@dataclass(frozen=True)
class CheckLine:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, ok: bool, detail: str = "") -> CheckLine:
    return CheckLine(name, bool(ok), detail if not ok else "")


# -- analytic states ----------------------------------------------------------

def ideal_coset_state(circuit: Circuit, reg: str, z: int, N: int,
                      m: int) -> SparseState:
    """Uniform superposition over z + kN in one register, rest zero."""
    off = circuit.offsets()[circuit.register_index(reg)]
    amp = 1.0 / math.sqrt(1 << m)
    return SparseState(circuit.width,
                       {(z + k * N) << off: amp for k in range(1 << m)})


# -- suites -------------------------------------------------------------------

def suite_ir(seed: int = 0) -> list[CheckLine]:
    out = []
    empty = CircuitBuilder()
    empty.new_register("r", 1)
    out.append(_check("ir.empty-circuit-zero-counts",
                      count_gates(empty.build()) == GateCounts()))
    fred = builders.build_fredkin()
    out.append(_check("ir.fredkin-counts",
                      count_gates(fred) == GateCounts(cnot=2, toffoli=1),
                      str(count_gates(fred))))
    out.append(_check("ir.fredkin-validates", validate(fred) == []))
    adder = builders.build_adder(4)
    c = count_gates(adder)
    out.append(_check("ir.adder4-counts", (c.cnot, c.and_pairs) == (15, 3),
                      str(c)))
    # Concatenation additivity and relabel neutrality.
    cb = CircuitBuilder()
    a = cb.new_register("a", 2)
    b = cb.new_register("b", 2)
    cb.swap_label(cb.wires(a), cb.wires(b))
    cb.cnot(cb.wires(a)[0], cb.wires(b)[1])
    relabeled = cb.build()
    out.append(_check("ir.relabel-free",
                      count_gates(relabeled) == GateCounts(cnot=1)))
    two = adder + adder
    out.append(_check("ir.concat-additive",
                      count_gates(two) == count_gates(adder) + count_gates(adder)))
    return out


def suite_adders(max_width: int = 6, seed: int = 0) -> list[CheckLine]:
    out = []
    for w in range(2, max_width + 1):
        circuit = builders.build_adder(w)
        cases = [{"x": x, "y": y} for x in range(1 << w) for y in range(1 << w)]
        rep = basis_map_check(
            circuit, cases, "y",
            lambda case, w=w: (case["x"] + case["y"]) % (1 << w),
            zero_registers=["carry"], seed=seed)
        out.append(_check(f"adders.ripple-w{w}-exhaustive", rep.passed,
                          str(rep.failures[:3])))
        c = count_gates(circuit)
        out.append(_check(f"adders.ripple-w{w}-counts",
                          (c.cnot, c.and_pairs) == (6 * w - 9, w - 1), str(c)))
    for w in range(2, min(max_width, 4) + 1):
        ok = True
        witness = ""
        for addend in range(1 << w):
            circuit = builders.build_double_ctrl_adder(w, addend)
            for z in range(1 << w):
                for c1 in (0, 1):
                    for c2 in (0, 1):
                        st = run(circuit, {"z": z, "c1": c1, "c2": c2},
                                 seed=seed)
                        want = (z + addend * (c1 & c2)) % (1 << w)
                        (key,) = st.amps
                        got = st.register_value(circuit, "z", key)
                        clean = (st.register_value(circuit, "carry", key) == 0
                                 and st.register_value(circuit, "anc", key) == 0)
                        if got != want or not clean:
                            ok = False
                            witness = f"w={w} a={addend} z={z} c=({c1},{c2})"
        out.append(_check(f"adders.double-ctrl-w{w}-exhaustive", ok, witness))
    # Mean gate counts over all addends at w=10: 5.5w-9 CNOTs, 2w-1 Toffolis.
    w = 10
    tot_cnot = tot_toff = 0
    for addend in range(1 << w):
        c = count_gates(builders.build_double_ctrl_adder(w, addend))
        tot_cnot += c.cnot
        tot_toff += c.toffoli
    out.append(_check("adders.double-ctrl-mean-counts",
                      tot_cnot == 46 * (1 << w) and tot_toff == 19 * (1 << w),
                      f"mean cnot {tot_cnot / (1 << w)}, "
                      f"mean toffoli {tot_toff / (1 << w)}"))
    # Fredkin over all basis inputs.
    fred = builders.build_fredkin()
    ok = True
    for c in (0, 1):
        for a in (0, 1):
            for b in (0, 1):
                st = run(fred, {"c": c, "a": a, "b": b}, seed=seed)
                (key,) = st.amps
                got = (st.register_value(fred, "a", key),
                       st.register_value(fred, "b", key))
                want = (b, a) if c else (a, b)
                ok = ok and got == want
    out.append(_check("adders.fredkin-exhaustive", ok))
    cs = count_gates(builders.build_controlled_swap(5))
    out.append(_check("adders.cswap-width-counts",
                      (cs.cnot, cs.toffoli) == (10, 5), str(cs)))
    # Comparison: amplitude sign is the predicate x >= y.
    for w in range(2, max_width + 1):
        ok = True
        witness = ""
        for y in (1, 2, 1 << (w - 1), (1 << w) - 1, 1 << w):
            circuit = builders.build_comparison(w, y)
            for x in range(1 << w):
                st = run(circuit, {"x": x}, seed=seed)
                (key,) = st.amps
                if st.register_value(circuit, "x", key) != x \
                        or st.register_value(circuit, "carry", key) != 0:
                    ok, witness = False, f"w={w} y={y} x={x} (state)"
                    break
                sign = st.amps[key].real
                want = -1.0 if x >= y else 1.0
                if abs(sign - want) > 1e-9:
                    ok, witness = False, f"w={w} y={y} x={x} sign={sign}"
        out.append(_check(f"adders.comparison-w{w}", ok, witness))
    return out


def suite_lookup(max_width: int = 4, seed: int = 0) -> list[CheckLine]:
    out = []
    rng = random.Random(seed)
    for wa in range(1, max_width + 1):
        n_out = 5
        tables = [tuple(rng.randrange(1 << n_out) for _ in range(1 << wa))
                  for _ in range(3)]
        tables.append(tuple(range(1 << wa)) if wa <= n_out else tables[0])
        ok = True
        witness = ""
        for table in tables:
            circuit = builders.build_lookup(wa, table, n_out)
            rep = basis_map_check(
                circuit, [{"addr": k} for k in range(1 << wa)], "target",
                lambda case, table=table: table[case["addr"]],
                zero_registers=["ladder"], seed=seed)
            if not rep.passed:
                ok, witness = False, f"wa={wa} {rep.failures[:2]}"
        out.append(_check(f"lookup.exhaustive-wa{wa}", ok, witness))
        c = count_gates(builders.build_lookup(wa, tables[0], n_out))
        want_pairs = max((1 << wa) - 2, 0)
        out.append(_check(f"lookup.and-pairs-wa{wa}", c.and_pairs == want_pairs,
                          str(c)))
    # All-zero table acts as the identity and needs no phase correction.
    zero = builders.build_lookup(3, (0,) * 8, 4)
    rep = basis_map_check(zero, [{"addr": k} for k in range(8)], "target",
                          lambda case: 0, seed=seed)
    out.append(_check("lookup.zero-table-identity", rep.passed))
    un = counts_mod.count_unlookup(3, 4, (0,) * 8)
    out.append(_check("lookup.zero-table-no-phase",
                      un == GateCounts(one_qubit=4, measure=4), str(un)))
    # Round trip: lookup then unlookup restores the uniform address state.
    for wa in range(1, max_width + 1):
        n_out = 4
        table = tuple(rng.randrange(1 << n_out) for _ in range(1 << wa))
        ref, full = _roundtrip_circuits(wa, table, n_out)
        want = run(ref, seed=0)
        ok = True
        worst = 1.0
        for sd in range(20):
            got = run(full, seed=sd)
            f = fidelity(want, got)
            worst = min(worst, f)
            ok = ok and f > 1 - 1e-12
        out.append(_check(f"lookup.roundtrip-wa{wa}", ok,
                          f"worst fidelity {worst}"))
    return out


def _roundtrip_circuits(wa: int, table: Sequence[int],
                        n_out: int) -> tuple[Circuit, Circuit]:
    """Reference (H on address only) and H + lookup + unlookup circuits."""
    def make(with_lookup: bool) -> Circuit:
        cb = CircuitBuilder()
        addr = cb.new_register("addr", wa)
        target = cb.new_register("target", n_out)
        ladder = cb.new_register("ladder", max(wa - 1, 1))
        unary = cb.new_register("unary", 1 << (wa // 2))
        aw = cb.wires(addr)
        for w in aw:
            cb.h(w)
        if with_lookup:
            builders.emit_lookup(cb, aw, cb.wires(target), cb.wires(ladder),
                                 table)
            builders.emit_unlookup(cb, aw, cb.wires(target), cb.wires(ladder),
                                   cb.wires(unary), table)
        return cb.build()

    return make(False), make(True)


def suite_coset(seed: int = 0) -> list[CheckLine]:
    out = []
    n, m, N, z = 4, 2, 15, 1
    circuit = builders.build_coset_init(n, m, N)
    ideal = ideal_coset_state(circuit, "z", z, N, m)
    ok = True
    outcomes = set()
    worst = 1.0
    for sd in range(64):
        st = run(circuit, {"z": z}, seed=sd)
        outcomes.add(tuple(st.cbits))
        f = fidelity(st, ideal)
        worst = min(worst, f)
        ok = ok and f > 1 - 1e-10
    out.append(_check("coset.init-n4-m2-N15", ok, f"worst fidelity {worst}"))
    out.append(_check("coset.init-all-outcomes", len(outcomes) == 4,
                      f"saw {sorted(outcomes)}"))
    amps = sorted(run(circuit, {"z": z}, seed=seed).amps)
    out.append(_check("coset.init-support", amps == [1, 16, 31, 46],
                      str(amps)))
    empty = builders.build_coset_init(4, 0, 15)
    out.append(_check("coset.m0-empty", len(empty.gates) == 0))
    means = coset_addition_infidelity(range(2, 6), samples=12, seed=seed)
    ratios = [b / a for a, b in zip(means, means[1:])]
    out.append(_check("coset.suppression",
                      all(r < 0.75 for r in ratios), f"ratios {ratios}"))
    return out


def coset_addition_infidelity(ms: Sequence[int], samples: int = 20,
                              seed: int = 0, n: int = 6) -> list[float]:
    """Mean infidelity of coset-encoded +gamma versus ideal modular addition.

    The same random (N, z, gamma) triples are reused for every padding m, so
    the sequence isolates the 2^-m suppression.
    """
    rng = random.Random(seed)
    triples = []
    while len(triples) < samples:
        N = rng.randrange((1 << (n - 1)) + 1, 1 << n, 2)
        z = rng.randrange(N)
        gamma = rng.randrange(N)
        if z + gamma >= N:  # keep triples that exercise the wraparound
            triples.append((N, z, gamma))
    means = []
    for m in ms:
        w = n + m
        circuit = builders.build_adder(w)
        goff = circuit.offsets()[circuit.register_index("x")]
        zoff = circuit.offsets()[circuit.register_index("y")]
        infid = 0.0
        for N, z, gamma in triples:
            amp = 1.0 / math.sqrt(1 << m)
            start = SparseState(circuit.width, {
                (gamma << goff) | ((z + k * N) << zoff): amp
                for k in range(1 << m)})
            final = run_state(circuit, start, seed=seed)
            ideal = SparseState(circuit.width, {
                (gamma << goff) | ((((z + gamma) % N) + k * N) << zoff): amp
                for k in range(1 << m)})
            infid += 1 - fidelity(final, ideal)
        means.append(infid / len(triples))
    return means


MODEXP_PARAMS = AlgoParams(n=6, n_e=6, w_e=3, w_m=2, m=4)
MODEXP_INSTANCE = ProblemInstance(N=35, g=2)


def suite_modexp(seed: int = 0, exponents: Sequence[int] | None = None
                 ) -> list[CheckLine]:
    out = []
    params, inst = MODEXP_PARAMS, MODEXP_INSTANCE
    # Product-addition: dst += x * g^window mod N on coset inputs.
    pa = builders.build_product_add(params, inst, 0)
    st = run_state(pa, _coset_product_state(pa, x=2, m=params.m, N=inst.N,
                                            e_value=1), seed=seed)
    got = {st.register_value(pa, "aux", k) % inst.N for k in st.amps}
    out.append(_check("modexp.product-add-basis", got == {4}, str(got)))
    # Multiplication by g^window, window value 3 at i=0: 1 * 2^3 = 8 mod 35.
    mul = builders.build_multiplication(params, inst, 0)
    st = run_state(mul, _coset_product_state(mul, x=1, m=params.m, N=inst.N,
                                             e_value=3), seed=seed)
    got = {st.register_value(mul, "x", k) % inst.N for k in st.amps}
    out.append(_check("modexp.multiplication-basis", got == {8}, str(got)))
    st = run_state(mul, _coset_product_state(mul, x=12, m=params.m, N=inst.N,
                                             e_value=0), seed=seed)
    got = {st.register_value(mul, "x", k) % inst.N for k in st.amps}
    out.append(_check("modexp.multiplication-identity", got == {12}, str(got)))
    # Full exponentiation, every basis exponent.
    circuit = builders.build_mod_exp(params, inst)
    ok = True
    witness = ""
    for e in (exponents if exponents is not None
              else range(1 << params.n_e)):
        st = run(circuit, {"e": e, "x": 1}, seed=seed + e)
        want = pow(inst.g, e, inst.N)
        values = {st.register_value(circuit, "x", k) % inst.N
                  for k in st.amps}
        aux = {st.register_value(circuit, "aux", k) % inst.N for k in st.amps}
        clean = all(
            st.register_value(circuit, reg, k) == 0
            for reg in ("tmp", "carry", "ladder", "unary", "anc")
            for k in st.amps)
        if values != {want} or aux != {0} or not clean:
            ok = False
            witness = (f"e={e}: x={sorted(values)} want {want}, "
                       f"aux={sorted(aux)}, clean={clean}")
            break
    out.append(_check("modexp.end-to-end-N35", ok, witness))
    return out


def _coset_product_state(circuit: Circuit, x: int, m: int, N: int,
                         e_value: int | None = None) -> SparseState:
    """x register in an ideal coset state, aux in coset(0), e set if given."""
    offs = circuit.offsets()
    xoff = offs[circuit.register_index("x")]
    aoff = offs[circuit.register_index("aux")]
    eoff = offs[circuit.register_index("e")]
    amp = 1.0 / (1 << m)
    amps = {}
    for k1 in range(1 << m):
        for k2 in range(1 << m):
            key = ((x + k1 * N) << xoff) | ((k2 * N) << aoff)
            if e_value:
                key |= e_value << eoff
            amps[key] = amp
    return SparseState(circuit.width, amps)


SUITES: dict[str, Callable[..., list[CheckLine]]] = {
    "ir": suite_ir,
    "adders": suite_adders,
    "lookup": suite_lookup,
    "coset": suite_coset,
    "modexp": suite_modexp,
}


def run_suites(names: Sequence[str], max_width: int | None = None,
               seed: int = 0) -> list[CheckLine]:
    lines: list[CheckLine] = []
    for name in names:
        fn = SUITES[name]
        if name == "adders" and max_width is not None:
            lines.extend(fn(max_width=max_width, seed=seed))
        elif name == "lookup" and max_width is not None:
            lines.extend(fn(max_width=min(max_width, 4), seed=seed))
        else:
            lines.extend(fn(seed=seed))
    return lines
