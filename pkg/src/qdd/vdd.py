"""Vector decision diagrams: basis states, node construction, readback.

Level convention: level 0 is the bottom row of the diagram and selects
the least-significant bit of an amplitude index; the root of an n-qubit
state sits at level n-1. Vector DDs never skip levels -- only operation
DDs do. Successor 0 of a node is the half of the (sub)vector where this
level's bit is 0.

Stored nodes are normalized so the two successor weights have unit
2-norm with the first nonzero weight real and positive; the factored-out
scalar rides on the incoming edge, which makes the squared norm of a
whole state simply |root weight|^2 and the representation canonical.
"""

from __future__ import annotations

import math

from .store import NodeStore, TERMINAL, VEC, ZERO_STUB
from .weights import ONE, ZERO

ZERO_EDGE = (ZERO_STUB, ZERO)

# Slack on |w0|^2+|w1|^2 under which renormalizing provably re-interns to
# the same handles, so it can be skipped.
_NORM_SLACK = 5e-14


def make_vector_node(store: NodeStore, level: int, e0: tuple, e1: tuple) -> tuple:
    """Stack e0 over e1 into a canonical node; returns the weighted edge."""
    t0, w0 = e0
    t1, w1 = e1
    if w0 == ZERO:
        if w1 == ZERO:
            return ZERO_EDGE
        t0 = ZERO_STUB
    elif w1 == ZERO:
        t1 = ZERO_STUB
    wt = store.weights
    mag2 = wt.mag2
    n2 = mag2[w0] + mag2[w1]
    lead = w0 if w0 != ZERO else w1
    if -_NORM_SLACK < n2 - 1.0 < _NORM_SLACK:
        lv = wt.values[lead]
        if lv.imag == 0.0 and lv.real > 0.0:
            node, _ = store.ut_lookup(VEC, level, (t0, w0, t1, w1))
            return (node, ONE)
    lv = wt.values[lead]
    factor = (math.sqrt(n2) / abs(lv)) * lv
    fh = wt.intern(factor.real, factor.imag)
    node, _ = store.ut_lookup(VEC, level, (t0, wt.div(w0, fh), t1, wt.div(w1, fh)))
    return (node, fh)


def make_basis_state(store: NodeStore, n: int, bits: str) -> tuple:
    """DD of the computational basis state |bits>, bits[0] topmost (MSB)."""
    if n < 1 or len(bits) != n:
        raise ValueError(f"need a length-{n} bitstring, got {bits!r}")
    edge = (TERMINAL, ONE)
    for level in range(n):
        bit = bits[n - 1 - level]
        if bit == "0":
            edge = make_vector_node(store, level, edge, ZERO_EDGE)
        elif bit == "1":
            edge = make_vector_node(store, level, ZERO_EDGE, edge)
        else:
            raise ValueError(f"bitstring may only contain 0/1, got {bits!r}")
    return edge


def amplitude(store: NodeStore, v: tuple, index: int) -> complex:
    """Product of edge weights along the path selected by index's bits,
    most significant bit at the top level."""
    target, w = v
    if target == ZERO_STUB or w == ZERO:
        return 0j
    wt = store.weights
    n = store.v_level[target] + 1
    if not 0 <= index < (1 << n):
        raise ValueError(f"index {index} out of range for {n} levels")
    value = wt.values[w]
    succs = store.v_succ
    for level in range(n - 1, -1, -1):
        succ = succs[target]
        if (index >> level) & 1:
            target, w = succ[2], succ[3]
        else:
            target, w = succ[0], succ[1]
        if w == ZERO:
            return 0j
        value *= wt.values[w]
    return value


def vnorm2(store: NodeStore, v: tuple) -> float:
    """Squared 2-norm of the represented vector, computed recursively."""
    target, w = v
    if target == ZERO_STUB or w == ZERO:
        return 0.0
    wt = store.weights
    memo: dict[int, float] = {}

    def node_norm2(node: int) -> float:
        if node == TERMINAL:
            return 1.0
        cached = memo.get(node)
        if cached is not None:
            return cached
        t0, w0, t1, w1 = store.v_succ[node]
        total = 0.0
        if w0 != ZERO:
            total += wt.mag2[w0] * node_norm2(t0)
        if w1 != ZERO:
            total += wt.mag2[w1] * node_norm2(t1)
        memo[node] = total
        return total

    return wt.mag2[w] * node_norm2(target)


def node_count(store: NodeStore, v: tuple) -> int:
    """Number of distinct nodes reachable from a vector edge."""
    target = v[0]
    if target < 0:
        return 0
    seen = {target}
    stack = [target]
    while stack:
        for t in store.v_succ[stack.pop()][0::2]:
            if t >= 0 and t not in seen:
                seen.add(t)
                stack.append(t)
    return len(seen)


def check_normalization(store: NodeStore, tolerance: float = 4e-13) -> list[int]:
    """Ids of allocated vector nodes violating the local norm invariant."""
    wt = store.weights
    bad = []
    for node, _level, succ in store.vector_nodes():
        t0, w0, t1, w1 = succ
        if w0 == ZERO and w1 == ZERO:
            bad.append(node)
            continue
        if abs(wt.mag2[w0] + wt.mag2[w1] - 1.0) > tolerance:
            bad.append(node)
            continue
        lead = wt.values[w0 if w0 != ZERO else w1]
        if not (abs(lead.imag) <= tolerance and lead.real > 0.0):
            bad.append(node)
    return bad
