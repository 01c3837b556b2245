import pytest

from petersen_census.graphs import (
    build_framed,
    build_petersen,
    count_ham_cycles_oracle,
    count_hamiltonian_cycles,
    iter_hamiltonian_cycles,
)


def test_petersen_is_cubic_when_not_degenerate():
    for n, k in [(5, 2), (7, 3), (9, 4), (12, 5)]:
        g = build_petersen(n, k)
        assert not g.degenerate
        assert set(g.degrees()) == {3}
        assert len(g.edges) == 3 * n


def test_degenerate_flag_and_self_loops():
    g = build_petersen(4, 2)
    assert g.degenerate
    assert all(a != b for a, b in g.edges)


def test_framed_graph_has_stubs_of_degree_one():
    g = build_framed(10, 3)
    deg = g.degrees()
    assert all(deg[x] == 1 for x in range(2 * g.n, g.num_vertices))
    assert all(deg[x] == 3 for x in range(2 * g.n))
    assert g.label(g.L(2)) == "L2" and g.label(g.R(0)) == "R0"


def test_framed_needs_room():
    with pytest.raises(ValueError):
        build_framed(6, 3)


def test_small_known_counts():
    assert count_ham_cycles_oracle(5, 2) == 0  # the Petersen graph
    assert count_ham_cycles_oracle(3, 1) == 3  # triangular prism
    # K4 has three Hamiltonian cycles
    k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    assert count_hamiltonian_cycles(4, k4) == 3


def test_oracle_k3_k4():
    assert [count_ham_cycles_oracle(n, 3) for n in range(7, 11)] == [7, 6, 9, 24]
    assert [count_ham_cycles_oracle(n, 4) for n in range(9, 13)] == [3, 30, 11, 6]


def test_oracle_rejects_degenerate():
    with pytest.raises(ValueError):
        count_ham_cycles_oracle(6, 3)


def test_enumerated_cycles_are_hamiltonian():
    n, k = 8, 3
    cycles = list(iter_hamiltonian_cycles(n, k))
    assert len(cycles) == count_ham_cycles_oracle(n, k)
    for edges in cycles:
        assert len(edges) == 2 * n
        deg = [0] * (2 * n)
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        assert set(deg) == {2}
