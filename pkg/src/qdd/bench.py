"""Parameterized generators for the six benchmark circuit families.

Gate counts follow documented formulas: GHZ n, W 4n-3, QFT
n(n+1)/2 + floor(n/2) counting swaps as single gates. The BV count
depends on the secret's popcount, QPE and Grover on lowering choices.
"""

from __future__ import annotations

import math
from itertools import combinations

from .circuit import Circuit, Gate


def gen_ghz(n: int) -> Circuit:
    """H on q0 then a CNOT chain: (|0...0> + |1...1>)/sqrt(2). |G| = n."""
    if n < 1:
        raise ValueError("ghz needs n >= 1")
    c = Circuit(n, name="ghz")
    c.add("h", 0)
    for k in range(n - 1):
        c.add("cx", k, k + 1)
    return c


def gen_w(n: int) -> Circuit:
    """Uniform superposition of the n one-hot basis states. |G| = 4n-3.

    Excitation cascade: each step splits off amplitude 1/sqrt(n) and
    hands the rest down one wire, via {ry, cx, ry} plus a cx back.
    """
    if n < 2:
        raise ValueError("w needs n >= 2")
    c = Circuit(n, name="w")
    c.add("x", 0)
    for k in range(1, n):
        theta = 2.0 * math.acos(math.sqrt((n - k) / (n - k + 1)))
        c.add("ry", k, params=(theta / 2.0,))
        c.add("cx", k - 1, k)
        c.add("ry", k, params=(-theta / 2.0,))
        c.add("cx", k, k - 1)
    return c


def default_bv_secret(n: int) -> str:
    """Alternating bits starting with 1, length n-1."""
    return "".join("1" if i % 2 == 0 else "0" for i in range(n - 1))


def gen_bv(n: int, secret: str | None = None) -> Circuit:
    """Hidden-string recovery: data register q0..q_{n-2} ends in |secret>,
    the ancilla q_{n-1} in |1>. |G| = 2(n-1) + popcount(secret) + 3."""
    if n < 2:
        raise ValueError("bv needs n >= 2 (data plus one ancilla)")
    if secret is None:
        secret = default_bv_secret(n)
    if len(secret) != n - 1 or set(secret) - {"0", "1"}:
        raise ValueError(f"secret must be a length-{n - 1} bitstring")
    anc = n - 1
    c = Circuit(n, name="bv")
    c.add("x", anc)
    c.add("h", anc)
    for i in range(n - 1):
        c.add("h", i)
    for i, bit in enumerate(secret):
        if bit == "1":
            c.add("cx", i, anc)
    for i in range(n - 1):
        c.add("h", i)
    c.add("h", anc)
    return c


def _qft_gates(wires: list[int]) -> list[Gate]:
    gates = []
    m = len(wires)
    for k in range(m):
        gates.append(Gate("h", (wires[k],)))
        for j in range(k + 1, m):
            gates.append(Gate("cp", (wires[j], wires[k]), (math.pi / (1 << (j - k)),)))
    for i in range(m // 2):
        gates.append(Gate("swap", (wires[i], wires[m - 1 - i])))
    return gates


def gen_qft(n: int) -> Circuit:
    """Fourier transform in big-endian wire order, trailing swap network.
    |G| = n(n+1)/2 + floor(n/2) with swaps counted once each."""
    if n < 1:
        raise ValueError("qft needs n >= 1")
    c = Circuit(n, name="qft")
    c.gates.extend(_qft_gates(list(range(n))))
    return c


def gen_qpe(bits: int, k: int | None = None) -> Circuit:
    """Phase estimation of a phase gate with dyadic eigenphase 2*pi*k/2^bits;
    the precision register q0..q_{bits-1} ends exactly in |k>. The eigenstate
    wire q_bits is prepared in |1>. Total qubits: bits + 1."""
    if bits < 1:
        raise ValueError("qpe needs at least one precision qubit")
    if k is None:
        k = (1 << bits) // 3
    if not 0 <= k < (1 << bits):
        raise ValueError(f"k must lie in [0, 2^{bits})")
    eigen = bits
    c = Circuit(bits + 1, name="qpe")
    c.add("x", eigen)
    for j in range(bits):
        c.add("h", j)
    for j in range(bits):
        # wire j carries bit weight 2^(bits-1-j) of the estimate
        c.add("cp", j, eigen, params=(2.0 * math.pi * k / (1 << (j + 1)),))
    forward = _qft_gates(list(range(bits)))
    for gate in reversed(forward):
        if gate.name == "cp":
            c.gates.append(Gate("cp", gate.qubits, (-gate.params[0],)))
        else:
            c.gates.append(gate)
    return c


def grover_iterations(n: int) -> int:
    """floor((pi/4) * sqrt(2^n))."""
    return math.floor(math.pi / 4.0 * math.sqrt(2.0**n))


def _mcz_gates(wires: list[int], lowering: str) -> list[Gate]:
    """Phase flip on the all-ones state of `wires`.

    "native" emits one multi-controlled gate the engine handles directly.
    "lowered" expands into the exact parity-phase network over {cx, p},
    which is exponential in len(wires) and only sensible at small sizes.
    """
    if lowering == "native":
        return [Gate("mcz", tuple(wires))]
    if lowering != "lowered":
        raise ValueError(f"unknown mcz lowering {lowering!r}")
    if len(wires) > 12:
        raise ValueError("lowered mcz is exponential in the wire count; use native")
    m = len(wires)
    coef = math.pi / (1 << (m - 1))
    gates = []
    for size in range(1, m + 1):
        for subset in combinations(wires, size):
            sign = 1.0 if size % 2 == 1 else -1.0
            last = subset[-1]
            for w in subset[:-1]:
                gates.append(Gate("cx", (w, last)))
            gates.append(Gate("p", (last,), (sign * coef,)))
            for w in reversed(subset[:-1]):
                gates.append(Gate("cx", (w, last)))
    return gates


def gen_grover(n: int, marked: str | None = None, mcz: str = "native") -> Circuit:
    """Search for `marked` with floor((pi/4)*sqrt(2^n)) oracle/diffusion
    rounds; success probability approaches 1 with n."""
    if n < 2:
        raise ValueError("grover needs n >= 2")
    if marked is None:
        marked = "1" * n
    if len(marked) != n or set(marked) - {"0", "1"}:
        raise ValueError(f"marked must be a length-{n} bitstring")
    wires = list(range(n))
    c = Circuit(n, name="grover")
    for w in wires:
        c.add("h", w)
    flip = [w for w in wires if marked[w] == "0"]
    for _ in range(grover_iterations(n)):
        for w in flip:
            c.add("x", w)
        c.gates.extend(_mcz_gates(wires, mcz))
        for w in flip:
            c.add("x", w)
        for w in wires:
            c.add("h", w)
        for w in wires:
            c.add("x", w)
        c.gates.extend(_mcz_gates(wires, mcz))
        for w in wires:
            c.add("x", w)
        for w in wires:
            c.add("h", w)
    return c


FAMILIES = ("ghz", "w", "bv", "qft", "qpe", "grover")


def generate(
    family: str,
    n: int,
    secret: str | None = None,
    phase_k: int | None = None,
    marked: str | None = None,
    mcz: str = "native",
) -> Circuit:
    """Build a named family at n total qubits (qpe: n-1 precision bits)."""
    if family == "ghz":
        return gen_ghz(n)
    if family == "w":
        return gen_w(n)
    if family == "bv":
        return gen_bv(n, secret)
    if family == "qft":
        return gen_qft(n)
    if family == "qpe":
        return gen_qpe(n - 1, phase_k)
    if family == "grover":
        return gen_grover(n, marked, mcz)
    raise ValueError(f"unknown benchmark family {family!r}")
