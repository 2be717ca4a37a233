"""Canonical node storage: unique tables, reference counts, GC, compute table.

Node handles are plain ints with one id space per node kind ("v" for
vector nodes with 2 successors, "m" for matrix nodes with 4). Two
sentinel targets live below every level:

    TERMINAL  -- the path end; a matrix edge pointing at it denotes a
                 scaled identity over every level it skips
    ZERO_STUB -- the all-zero subtree

An edge is a (target, weight-handle) pair. Successor tuples are stored
flat, (t0, w0, t1, w1, ...), so unique-table keys hash fast. The zero
edge is always (ZERO_STUB, weights.ZERO): a weight of ZERO never appears
on any other target.

Reference counts propagate transitively: when a node first becomes
referenced its children gain a reference, and when it ceases to be they
lose one. A node whose count is zero is reclaimable; reclamation is
deferred to collect_garbage, which also clears the compute table because
cached results may name swept nodes. Automatic collection only happens
at safe points (maybe_collect), never in the middle of a recursion whose
intermediate nodes are not yet referenced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .weights import WeightTable

TERMINAL = -1
ZERO_STUB = -2

VEC = "v"
MAT = "m"

# Compute-table operation tags.
ADD_V = 0
ADD_M = 1
MUL_MV = 2
MUL_MM = 3
KRON = 4
_NUM_TAGS = 5

# Per-(kind, level) unique-table size that signals collection pressure.
TABLE_GC_THRESHOLD = 1 << 15
# Memory backstop: allocated nodes of one kind across all levels. The
# per-table threshold alone never fires on chain-shaped workloads whose
# total allocation still grows quadratically with the qubit count.
GLOBAL_GC_THRESHOLD = 1 << 20


class StoreError(RuntimeError):
    """Structural violation or refcount misuse; always a caller bug."""


@dataclass
class StoreStats:
    """Counters mirrored into simulation reports.

    nodes_created counts cumulative unique-table insertions per kind;
    peak_live is the highest number of simultaneously referenced nodes
    (positive refcount, both kinds together).
    """

    vector_nodes_created: int
    matrix_nodes_created: int
    peak_live: int
    gc_runs: int
    ct_hits: int
    ct_misses: int


class NodeStore:
    """Owns all nodes of one engine instance. Single-threaded by design;
    independent stores may be used from different threads freely."""

    def __init__(
        self,
        num_levels: int,
        weights: WeightTable | None = None,
        ct_bits: int | None = 16,
    ) -> None:
        if num_levels < 1:
            raise ValueError("need at least one level")
        self.num_levels = num_levels
        self.weights = weights if weights is not None else WeightTable()

        self.v_level: list[int] = []
        self.v_succ: list[tuple | None] = []
        self.v_ref: list[int] = []
        self._v_free: list[int] = []
        self.m_level: list[int] = []
        self.m_succ: list[tuple | None] = []
        self.m_ref: list[int] = []
        self._m_free: list[int] = []

        self.ut_v: list[dict] = [dict() for _ in range(num_levels)]
        self.ut_m: list[dict] = [dict() for _ in range(num_levels)]
        self.ut_lookups_v = [0] * num_levels
        self.ut_lookups_m = [0] * num_levels

        self.created_v = 0
        self.created_m = 0
        self.allocated_v = 0
        self.allocated_m = 0
        self._ref_live = 0
        self.peak_live = 0
        self.gc_runs = 0
        self.ct_hits = 0
        self.ct_misses = 0

        self._table_limit = TABLE_GC_THRESHOLD
        self._global_limit = GLOBAL_GC_THRESHOLD
        self._pressure = False

        if ct_bits:
            self._ct_mask = (1 << ct_bits) - 1
            self._ct: list[list] | None = [
                [None] * (1 << ct_bits) for _ in range(_NUM_TAGS)
            ]
        else:
            self._ct_mask = 0
            self._ct = None

    # -- unique tables -------------------------------------------------

    def ut_lookup(self, kind: str, level: int, succ: tuple) -> tuple[int, bool]:
        """Canonical node for a flat successor tuple; inserts if absent."""
        if kind == VEC:
            table = self.ut_v[level]
            self.ut_lookups_v[level] += 1
            node = table.get(succ)
            if node is not None:
                return node, False
            levels = self.v_level
            for i in (0, 2):
                t = succ[i]
                if t >= 0 and levels[t] >= level:
                    raise StoreError(
                        f"successor level {levels[t]} not below node level {level}"
                    )
            free = self._v_free
            if free:
                node = free.pop()
                levels[node] = level
                self.v_succ[node] = succ
                self.v_ref[node] = 0
            else:
                node = len(levels)
                levels.append(level)
                self.v_succ.append(succ)
                self.v_ref.append(0)
            table[succ] = node
            self.created_v += 1
            self.allocated_v += 1
            if len(table) > self._table_limit or self.allocated_v > self._global_limit:
                self._pressure = True
            return node, True
        elif kind == MAT:
            table = self.ut_m[level]
            self.ut_lookups_m[level] += 1
            node = table.get(succ)
            if node is not None:
                return node, False
            levels = self.m_level
            for i in (0, 2, 4, 6):
                t = succ[i]
                if t >= 0 and levels[t] >= level:
                    raise StoreError(
                        f"successor level {levels[t]} not below node level {level}"
                    )
            free = self._m_free
            if free:
                node = free.pop()
                levels[node] = level
                self.m_succ[node] = succ
                self.m_ref[node] = 0
            else:
                node = len(levels)
                levels.append(level)
                self.m_succ.append(succ)
                self.m_ref.append(0)
            table[succ] = node
            self.created_m += 1
            self.allocated_m += 1
            if len(table) > self._table_limit or self.allocated_m > self._global_limit:
                self._pressure = True
            return node, True
        raise StoreError(f"unknown node kind {kind!r}")

    # -- reference counting --------------------------------------------

    def inc_ref(self, kind: str, edge: tuple) -> None:
        target = edge[0]
        if target < 0:
            return
        refs = self.v_ref if kind == VEC else self.m_ref
        succs = self.v_succ if kind == VEC else self.m_succ
        targets = (0, 2) if kind == VEC else (0, 2, 4, 6)
        stack = [target]
        while stack:
            node = stack.pop()
            refs[node] += 1
            if refs[node] == 1:
                self._ref_live += 1
                if self._ref_live > self.peak_live:
                    self.peak_live = self._ref_live
                succ = succs[node]
                for i in targets:
                    t = succ[i]
                    if t >= 0:
                        stack.append(t)

    def dec_ref(self, kind: str, edge: tuple) -> None:
        target = edge[0]
        if target < 0:
            return
        refs = self.v_ref if kind == VEC else self.m_ref
        succs = self.v_succ if kind == VEC else self.m_succ
        targets = (0, 2) if kind == VEC else (0, 2, 4, 6)
        stack = [target]
        while stack:
            node = stack.pop()
            if refs[node] <= 0:
                raise StoreError(f"refcount underflow on {kind}{node}")
            refs[node] -= 1
            if refs[node] == 0:
                self._ref_live -= 1
                succ = succs[node]
                for i in targets:
                    t = succ[i]
                    if t >= 0:
                        stack.append(t)

    # -- garbage collection ----------------------------------------------

    def collect_garbage(self, force: bool = False) -> int:
        """Sweep every unreferenced node; returns the number reclaimed.

        Transitive refcounts make liveness local: a node is reachable
        from a positively-referenced root iff its own count is positive.
        The compute table is cleared wholesale since its entries may
        point at swept nodes.
        """
        before = self.allocated_v + self.allocated_m
        reclaimed = 0
        for kind in (VEC, MAT):
            if kind == VEC:
                levels, succs, refs, free, tables = (
                    self.v_level, self.v_succ, self.v_ref, self._v_free, self.ut_v)
            else:
                levels, succs, refs, free, tables = (
                    self.m_level, self.m_succ, self.m_ref, self._m_free, self.ut_m)
            for node in range(len(succs)):
                succ = succs[node]
                if succ is None or refs[node] != 0:
                    continue
                del tables[levels[node]][succ]
                succs[node] = None
                free.append(node)
                reclaimed += 1
                if kind == VEC:
                    self.allocated_v -= 1
                else:
                    self.allocated_m -= 1
        if self._ct is not None:
            size = self._ct_mask + 1
            self._ct = [[None] * size for _ in range(_NUM_TAGS)]
        self.gc_runs += 1
        self._pressure = False
        if not force and before and reclaimed < before * 0.25:
            self._table_limit *= 2
            self._global_limit *= 2
        return reclaimed

    def maybe_collect(self) -> int:
        """Collect iff some table crossed its threshold. Call only at safe
        points: every unreferenced node is swept."""
        if self._pressure:
            return self.collect_garbage()
        return 0

    # -- compute table ---------------------------------------------------

    def ct_lookup(self, tag: int, key: tuple):
        if self._ct is None:
            self.ct_misses += 1
            return None
        entry = self._ct[tag][hash(key) & self._ct_mask]
        if entry is not None and entry[0] == key:
            self.ct_hits += 1
            return entry[1]
        self.ct_misses += 1
        return None

    def ct_insert(self, tag: int, key: tuple, result) -> None:
        if self._ct is not None:
            self._ct[tag][hash(key) & self._ct_mask] = (key, result)

    # -- introspection ---------------------------------------------------

    def node_level(self, kind: str, node: int) -> int:
        if node < 0:
            return -1
        return (self.v_level if kind == VEC else self.m_level)[node]

    def vector_nodes(self):
        """Yield (id, level, succ) for every allocated vector node."""
        for node, succ in enumerate(self.v_succ):
            if succ is not None:
                yield node, self.v_level[node], succ

    def matrix_nodes(self):
        for node, succ in enumerate(self.m_succ):
            if succ is not None:
                yield node, self.m_level[node], succ

    def referenced_live(self) -> int:
        return self._ref_live

    def ct_hit_rate(self) -> float:
        total = self.ct_hits + self.ct_misses
        return self.ct_hits / total if total else 0.0

    def stats(self) -> StoreStats:
        return StoreStats(
            vector_nodes_created=self.created_v,
            matrix_nodes_created=self.created_m,
            peak_live=self.peak_live,
            gc_runs=self.gc_runs,
            ct_hits=self.ct_hits,
            ct_misses=self.ct_misses,
        )
