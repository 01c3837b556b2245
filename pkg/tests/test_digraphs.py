import random

from hypothesis import given, settings
from hypothesis import strategies as st

from petersen_census.digraphs import find_isomorphism, reachable, tarjan_scc, topological_components


def succ_lists(n, arcs):
    out = [[] for _ in range(n)]
    for a, b in arcs:
        out[a].append(b)
    return out


arc_lists = st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
)


@settings(max_examples=60)
@given(arc_lists)
def test_scc_matches_mutual_reachability(case):
    n, arcs = case
    succ = succ_lists(n, arcs)
    comps = tarjan_scc(n, succ)
    assert sorted(v for c in comps for v in c) == list(range(n))
    reach = [reachable([v], succ) for v in range(n)]
    for c in comps:
        for a in c:
            for b in range(n):
                assert (b in c) == (b in reach[a] and a in reach[b])


@settings(max_examples=60)
@given(arc_lists)
def test_condensation_is_topologically_ordered(case):
    n, arcs = case
    comps, comp_of, cond = topological_components(n, succ_lists(n, arcs))
    assert all(a < b for a, b in cond)
    for a, b in arcs:
        assert comp_of[a] <= comp_of[b]


def test_deep_chain_does_not_recurse():
    n = 50000
    succ = [[i + 1] for i in range(n - 1)] + [[0]]
    assert len(tarjan_scc(n, succ)) == 1


@settings(max_examples=40, deadline=None)
@given(arc_lists, st.randoms(use_true_random=False))
def test_isomorphism_of_relabelled_graph(case, rnd):
    n, arcs = case
    perm = list(range(n))
    rnd.shuffle(perm)
    other = [(perm[a], perm[b]) for a, b in arcs]
    f = find_isomorphism(arcs, other, n)
    assert f is not None
    assert {(f[a], f[b]) for a, b in arcs} == set(other)


def test_non_isomorphic():
    cycle = [(0, 1), (1, 2), (2, 0)]
    path = [(0, 1), (1, 2), (2, 2)]
    assert find_isomorphism(cycle, path, 3) is None
    # same degree sequences, different structure: two 2-cycles vs one 4-cycle
    assert find_isomorphism([(0, 1), (1, 0), (2, 3), (3, 2)], [(0, 1), (1, 2), (2, 3), (3, 0)], 4) is None


def test_regular_graph_needs_search():
    rnd = random.Random(3)
    n = 12
    arcs = [(i, (i + 1) % n) for i in range(n)] + [(i, (i + 5) % n) for i in range(n)]
    perm = list(range(n))
    rnd.shuffle(perm)
    other = [(perm[a], perm[b]) for a, b in arcs]
    assert find_isomorphism(arcs, other, n) is not None
    alt = [(i, (i + 1) % n) for i in range(n)] + [(i, (i + 7) % n) for i in range(n)]
    assert find_isomorphism(arcs, alt, n) is None
