"""Decision-diagram arithmetic under level skipping.

Matrix operands of multiplication and addition may sit below the level
being processed; a skipped level reads as an identity factor, so on the
diagonal the operand passes through unchanged and off the diagonal the
contribution is zero. Vector operands are always full height.

Every routine strips the operand edge weights before consulting the
compute table and multiplies them back into the result, so cached
entries are shared across scaled versions of the same subproblem.
Addition additionally keys on the relative weight of its (canonically
ordered) operands. Recursion depth equals the number of levels; large
instances must run on a deep stack (see sim.run_deep).
"""

from __future__ import annotations

from .mdd import MODE_LEGACY, MODE_NEW, ZERO_EDGE_M, make_matrix_node
from .store import ADD_M, ADD_V, MUL_MM, MUL_MV, NodeStore, StoreError, TERMINAL
from .vdd import ZERO_EDGE, make_vector_node
from .weights import ONE, ZERO


def multiply_mv(store: NodeStore, u: tuple, v: tuple, level: int) -> tuple:
    """Matrix-vector product U*v with v rooted at `level`. Skipped matrix
    levels act as identity; a terminal matrix edge is a scaled identity."""
    vt = v[0]
    if vt >= 0 and store.v_level[vt] != level:
        raise StoreError(f"vector rooted at {store.v_level[vt]}, expected {level}")
    ut = u[0]
    if ut >= 0 and store.m_level[ut] > level:
        raise StoreError(f"matrix rooted above level {level}")
    return _mul_mv(store, u[0], u[1], v[0], v[1], level)


def _mul_mv(store, ut, uw, vt, vw, level):
    if uw == ZERO or vw == ZERO:
        return ZERO_EDGE
    if vw == ONE:
        ow = uw
    elif uw == ONE:
        ow = vw
    else:
        ow = store.weights.mul(uw, vw)
        if ow == ZERO:
            return ZERO_EDGE
    if ut == TERMINAL:
        return (vt, ow)
    key = (ut, vt, level)
    hit = store.ct_lookup(MUL_MV, key)
    if hit is not None:
        r = hit
    else:
        vsucc = store.v_succ[vt]
        if store.m_level[ut] == level:
            usucc = store.m_succ[ut]
            edges = []
            for i in (0, 1):
                acc = ZERO_EDGE
                for j in (0, 1):
                    ew = usucc[4 * i + 2 * j + 1]
                    if ew == ZERO:
                        continue
                    fw = vsucc[2 * j + 1]
                    if fw == ZERO:
                        continue
                    m = _mul_mv(store, usucc[4 * i + 2 * j], ew, vsucc[2 * j], fw, level - 1)
                    if acc[1] == ZERO:
                        acc = m
                    elif m[1] != ZERO:
                        acc = _add_v(store, acc, m, level - 1)
                edges.append(acc)
            r = make_vector_node(store, level, edges[0], edges[1])
        else:
            # skipped matrix level: identity on the diagonal, no additions
            e0 = _mul_mv(store, ut, ONE, vsucc[0], vsucc[1], level - 1)
            e1 = _mul_mv(store, ut, ONE, vsucc[2], vsucc[3], level - 1)
            if (
                e0[0] == vsucc[0]
                and e0[1] == vsucc[1]
                and e1[0] == vsucc[2]
                and e1[1] == vsucc[3]
            ):
                # children untouched: the stored node is already the result
                r = (vt, ONE)
            else:
                r = make_vector_node(store, level, e0, e1)
        store.ct_insert(MUL_MV, key, r)
    rw = r[1]
    if rw == ZERO:
        return ZERO_EDGE
    if ow == ONE:
        return r
    if rw == ONE:
        return (r[0], ow)
    w = store.weights.mul(ow, rw)
    return ZERO_EDGE if w == ZERO else (r[0], w)


def add_vectors(store: NodeStore, a: tuple, b: tuple, level: int) -> tuple:
    """Elementwise sum of two states rooted at `level` (or zero edges)."""
    for e in (a, b):
        if e[0] >= 0 and store.v_level[e[0]] != level:
            raise StoreError(f"vector rooted at {store.v_level[e[0]]}, expected {level}")
    return _add_v(store, a, b, level)


def _add_v(store, a, b, level):
    at, aw = a
    bt, bw = b
    if aw == ZERO:
        return b
    if bw == ZERO:
        return a
    wt = store.weights
    if at == TERMINAL:
        w = wt.add(aw, bw)
        return ZERO_EDGE if w == ZERO else (TERMINAL, w)
    if (bt, bw) < (at, aw):
        at, aw, bt, bw = bt, bw, at, aw
    rel = wt.div(bw, aw)
    key = (at, bt, rel, level)
    hit = store.ct_lookup(ADD_V, key)
    if hit is not None:
        rt, rw = hit
        w = wt.mul(aw, rw)
        return ZERO_EDGE if w == ZERO else (rt, w)
    asucc = store.v_succ[at]
    bsucc = store.v_succ[bt]
    edges = []
    for j in (0, 2):
        ea = (asucc[j], asucc[j + 1])
        ebw = bsucc[j + 1]
        if ebw != ZERO:
            ebw = wt.mul(rel, ebw)
        eb = (bsucc[j], ebw) if ebw != ZERO else ZERO_EDGE
        edges.append(_add_v(store, ea, eb, level - 1))
    r = make_vector_node(store, level, edges[0], edges[1])
    store.ct_insert(ADD_V, key, r)
    w = wt.mul(aw, r[1])
    return ZERO_EDGE if w == ZERO else (r[0], w)


def multiply_mm(store: NodeStore, a: tuple, b: tuple, level: int, mode: str = MODE_NEW) -> tuple:
    """Matrix-matrix product A*B; either operand may skip levels. If both
    skip the current level the result skips it too."""
    for e in (a, b):
        if e[0] >= 0 and store.m_level[e[0]] > level:
            raise StoreError(f"matrix rooted above level {level}")
    return _mul_mm(store, a[0], a[1], b[0], b[1], mode)


def _mul_mm(store, at, aw, bt, bw, mode):
    if aw == ZERO or bw == ZERO:
        return ZERO_EDGE_M
    wt = store.weights
    if at == TERMINAL or bt == TERMINAL:
        w = wt.mul(aw, bw)
        other = bt if at == TERMINAL else at
        return ZERO_EDGE_M if w == ZERO else (other, w)
    la = store.m_level[at]
    lb = store.m_level[bt]
    level = la if la >= lb else lb
    legacy = 1 if mode == MODE_LEGACY else 0
    key = (at, bt, level, legacy)
    hit = store.ct_lookup(MUL_MM, key)
    if hit is not None:
        rt, rw = hit
        w = wt.mul(wt.mul(aw, bw), rw)
        return ZERO_EDGE_M if w == ZERO else (rt, w)
    asucc = store.m_succ[at] if la == level else None
    bsucc = store.m_succ[bt] if lb == level else None
    edges = [ZERO_EDGE_M] * 4
    for i in (0, 1):
        for j in (0, 1):
            if asucc is None:
                if i != j:
                    continue
                eat, eaw = at, ONE
            else:
                eat, eaw = asucc[4 * i + 2 * j], asucc[4 * i + 2 * j + 1]
                if eaw == ZERO:
                    continue
            for k in (0, 1):
                if bsucc is None:
                    if j != k:
                        continue
                    ebt, ebw = bt, ONE
                else:
                    ebt, ebw = bsucc[4 * j + 2 * k], bsucc[4 * j + 2 * k + 1]
                    if ebw == ZERO:
                        continue
                m = _mul_mm(store, eat, eaw, ebt, ebw, mode)
                if m[1] != ZERO:
                    idx = 2 * i + k
                    if edges[idx][1] == ZERO:
                        edges[idx] = m
                    else:
                        edges[idx] = _add_m(store, edges[idx], m, mode)
    r = make_matrix_node(store, level, edges, mode)
    store.ct_insert(MUL_MM, key, r)
    w = wt.mul(wt.mul(aw, bw), r[1])
    return ZERO_EDGE_M if w == ZERO else (r[0], w)


def add_matrices(store: NodeStore, a: tuple, b: tuple, level: int, mode: str = MODE_NEW) -> tuple:
    """Elementwise sum of operators rooted at or below `level`. An operand
    skipping the top level expands on the fly as [self, 0, 0, self]."""
    for e in (a, b):
        if e[0] >= 0 and store.m_level[e[0]] > level:
            raise StoreError(f"matrix rooted above level {level}")
    return _add_m(store, a, b, mode)


def _add_m(store, a, b, mode):
    at, aw = a
    bt, bw = b
    if aw == ZERO:
        return b
    if bw == ZERO:
        return a
    wt = store.weights
    if at == TERMINAL and bt == TERMINAL:
        w = wt.add(aw, bw)
        return ZERO_EDGE_M if w == ZERO else (TERMINAL, w)
    if (bt, bw) < (at, aw):
        at, aw, bt, bw = bt, bw, at, aw
    la = store.m_level[at] if at >= 0 else -1
    lb = store.m_level[bt] if bt >= 0 else -1
    level = la if la >= lb else lb
    legacy = 1 if mode == MODE_LEGACY else 0
    rel = wt.div(bw, aw)
    key = (at, bt, rel, level, legacy)
    hit = store.ct_lookup(ADD_M, key)
    if hit is not None:
        rt, rw = hit
        w = wt.mul(aw, rw)
        return ZERO_EDGE_M if w == ZERO else (rt, w)
    asucc = store.m_succ[at] if la == level else None
    bsucc = store.m_succ[bt] if lb == level else None
    edges = []
    for idx in range(4):
        diag = idx in (0, 3)
        if asucc is None:
            ea = (at, ONE) if diag else ZERO_EDGE_M
        else:
            ea = (asucc[2 * idx], asucc[2 * idx + 1])
        if bsucc is None:
            eb = (bt, rel) if diag else ZERO_EDGE_M
        else:
            ebw = bsucc[2 * idx + 1]
            if ebw != ZERO:
                ebw = wt.mul(rel, ebw)
            eb = (bsucc[2 * idx], ebw) if ebw != ZERO else ZERO_EDGE_M
        edges.append(_add_m(store, ea, eb, mode))
    r = make_matrix_node(store, level, edges, mode)
    store.ct_insert(ADD_M, key, r)
    w = wt.mul(aw, r[1])
    return ZERO_EDGE_M if w == ZERO else (r[0], w)
