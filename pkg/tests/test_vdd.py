"""Vector DD construction, normalization, and readback."""

import math

import numpy as np
import pytest

from dense import build_vdd, random_state, read_state
from qdd import NodeStore, add_vectors, amplitude, make_basis_state, make_vector_node, vnorm2
from qdd.store import TERMINAL
from qdd.vdd import ZERO_EDGE, check_normalization, node_count
from qdd.weights import ONE

SQ2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def store():
    return NodeStore(12)


def test_two_zero_edges_collapse(store):
    assert make_vector_node(store, 0, ZERO_EDGE, ZERO_EDGE) == ZERO_EDGE
    assert store.created_v == 0


def test_basis_node_shape(store):
    edge = make_vector_node(store, 0, (TERMINAL, ONE), ZERO_EDGE)
    assert edge[1] == ONE
    t0, w0, t1, w1 = store.v_succ[edge[0]]
    assert (t0, w0) == (TERMINAL, ONE)
    assert w1 == 0


def test_equal_halves_normalize():
    # oracle: dense 2-vector (1, 1) = sqrt(2) * (1/sqrt2, 1/sqrt2)
    store = NodeStore(1)
    edge = make_vector_node(store, 0, (TERMINAL, ONE), (TERMINAL, ONE))
    wt = store.weights
    assert abs(wt.value(edge[1]) - math.sqrt(2.0)) < 1e-13
    _, w0, _, w1 = store.v_succ[edge[0]]
    assert abs(wt.value(w0) - SQ2) < 1e-13
    assert abs(wt.value(w1) - SQ2) < 1e-13


def test_basis_state_amplitudes(store):
    v = make_basis_state(store, 2, "00")
    assert amplitude(store, v, 0) == 1.0
    assert all(amplitude(store, v, i) == 0 for i in (1, 2, 3))
    v = make_basis_state(store, 3, "101")
    assert amplitude(store, v, 5) == 1.0


def test_basis_state_chain_of_100_nodes():
    store = NodeStore(100)
    v = make_basis_state(store, 100, "0" * 100)
    assert node_count(store, v) == 100
    assert v[1] == ONE


def test_basis_state_rejects_bad_input(store):
    with pytest.raises(ValueError):
        make_basis_state(store, 0, "")
    with pytest.raises(ValueError):
        make_basis_state(store, 3, "01")
    with pytest.raises(ValueError):
        make_basis_state(store, 2, "0x")


def test_amplitude_range_check(store):
    v = make_basis_state(store, 2, "00")
    with pytest.raises(ValueError):
        amplitude(store, v, 4)
    with pytest.raises(ValueError):
        amplitude(store, v, -1)


def bell_edge(store):
    a = make_basis_state(store, 2, "00")
    b = make_basis_state(store, 2, "11")
    half = store.weights.intern(SQ2, 0.0)
    return add_vectors(store, (a[0], half), (b[0], half), 1)


def test_bell_amplitudes(store):
    bell = bell_edge(store)
    assert abs(amplitude(store, bell, 0) - SQ2) < 1e-13
    assert amplitude(store, bell, 1) == 0
    assert amplitude(store, bell, 2) == 0
    assert abs(amplitude(store, bell, 3) - SQ2) < 1e-13


def test_vnorm2(store):
    assert vnorm2(store, ZERO_EDGE) == 0.0
    v = make_basis_state(store, 4, "0110")
    assert abs(vnorm2(store, v) - 1.0) < 1e-12
    bell = bell_edge(store)
    assert abs(vnorm2(store, bell) - 1.0) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 4, 7, 10])
def test_dense_round_trip(n):
    # oracle: the dense vector itself
    rng = np.random.default_rng(100 + n)
    store = NodeStore(n)
    vec = random_state(n, rng)
    edge = build_vdd(store, vec)
    back = read_state(store, edge, n)
    assert np.abs(back - vec).max() < 1e-10


@pytest.mark.parametrize("n", [2, 5, 8])
def test_construction_order_canonicity(n):
    # same dense vector built twice lands on the same node and weight
    rng = np.random.default_rng(200 + n)
    store = NodeStore(n)
    vec = random_state(n, rng)
    e1 = build_vdd(store, vec)
    e2 = build_vdd(store, vec)
    assert e1[0] == e2[0]
    wt = store.weights
    assert abs(wt.value(e1[1]) - wt.value(e2[1])) <= 2e-13

    # and via a different route: sum of two halves of the amplitudes
    mask = np.zeros_like(vec)
    mask[: vec.size // 2] = 1.0
    p1 = build_vdd(store, vec * mask)
    p2 = build_vdd(store, vec * (1.0 - mask))
    summed = add_vectors(store, p1, p2, n - 1)
    assert summed[0] == e1[0]


def test_all_live_nodes_locally_normalized():
    rng = np.random.default_rng(7)
    store = NodeStore(6)
    for _ in range(20):
        build_vdd(store, random_state(6, rng))
    assert check_normalization(store) == []
