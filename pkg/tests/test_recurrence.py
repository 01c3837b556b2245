import numpy as np
import pytest

from petersen_census import golden
from petersen_census.algebra import Poly, berlekamp_massey, strip_x_power
from petersen_census.recurrence import (
    algorithm1,
    annihilates_all,
    classify_sccs,
    coprime_base,
    first_valid_index,
    full_h_series,
    h_annihilator,
    minimal_charpoly_on_initial,
    scc_decompose,
    scc_universal_minpoly,
)
from petersen_census.signatures import InitialState
from petersen_census.transfer import Pipeline, SigmaGraph

P7 = golden.factor("P", 7)


@pytest.fixture(scope="module")
def dec3(pipe3):
    d = scc_decompose(pipe3.sigma)
    return d, classify_sccs(d)


def example_sigma():
    n, arcs = golden.example_scc_arcs()
    return SigmaGraph.from_arcs(3, n, arcs)


def test_condensation_acyclic_and_ordered(dec3):
    d, _ = dec3
    assert all(a < b for a, b in d.condensation)
    assert sorted(v for c in d.components for v in c) == list(range(d.num_nodes))


def test_sigma3_sizes(dec3):
    d, _ = dec3
    sizes = {len(c) for c in d.components if len(c) > 1}
    assert sizes == {2, 3, 4, 12, 13, 24}


def test_sigma4_largest_component(ctx4):
    assert max(len(c) for c in ctx4.decomp.components) == 122


def test_classes_share_polynomials(dec3):
    d, rep = dec3
    for cls in rep.classes:
        for c in cls.members[:3]:
            assert scc_universal_minpoly(d, c) == cls.universal


def test_class_polynomials_are_monic_integral(dec3):
    _, rep = dec3
    for cls in rep.classes:
        assert cls.universal.is_integral() and cls.universal.lead() == 1


def test_universal_polynomial_kills_unit_sequences(dec3):
    d, rep = dec3
    for cls in rep.classes:
        M = d.matrix(cls.representative)
        n = len(M)
        p = cls.universal.int_coeffs()
        for j in range(n):
            x = [0] * n
            x[j] = 1
            seq = [x]
            for _ in range(n + len(p) + 2):
                x = [sum(M[i][t] * x[t] for t in range(n)) for i in range(n)]
                seq.append(x)
            for start in range(n, len(seq) - len(p) + 1):
                for i in range(n):
                    assert sum(c * seq[start + t][i] for t, c in enumerate(p)) == 0


def test_nonzero_component_never_returns_to_zero(dec3):
    d, rep = dec3
    for cls in rep.classes:
        if cls.size == 1:
            continue
        M = d.matrix(cls.representative)
        n = len(M)
        for j in range(n):
            x = [0] * n
            x[j] = 1
            for _ in range(2 * n):
                x = [sum(M[i][t] * x[t] for t in range(n)) for i in range(n)]
                assert any(x)


def test_example_scc_relations():
    n, arcs = golden.example_scc_arcs()
    indeg = [0] * n
    for _, b in arcs:
        indeg[b] += 1
    assert sorted(indeg) == [1] * 9 + [2] * 4


def test_bm_on_example_unit_sequence_divides():
    sigma = example_sigma()
    x = np.zeros(sigma.num_nodes, dtype=object)
    x[0] = 1
    seq = []
    for _ in range(40):
        seq.append(int(x[0]))
        y = np.zeros_like(x)
        for a, b in sigma.arcs:
            y[b] += x[a]
        x = y
    p = strip_x_power(berlekamp_massey(seq))
    assert (P7 % p).is_zero()


def test_composition_on_single_component():
    sigma = example_sigma()
    d = scc_decompose(sigma)
    rep = classify_sccs(d)
    vals = [1] + [0] * (sigma.num_nodes - 1)
    assert algorithm1(sigma, d, rep, vals).poly == P7
    assert algorithm1(sigma, d, rep, [0] * sigma.num_nodes).poly == Poly.const(1)


def test_composition_on_example_condensation(ctx3):
    from petersen_census.verification import check_example_condensation

    assert check_example_condensation(ctx3).passed


def test_zero_system_has_trivial_minimal_polynomial(pipe3):
    empty = Pipeline(3, pipe3.catalog, pipe3.sigma, InitialState(3, 9, {}))
    m = minimal_charpoly_on_initial(empty)
    assert m.poly == Poly.const(1)


def test_minimal_divides_composition_k3(pipe3, dec3):
    d, rep = dec3
    comp = algorithm1(pipe3.sigma, d, rep, pipe3.start().values)
    m = minimal_charpoly_on_initial(pipe3)
    assert (comp.poly % m.poly).is_zero()
    assert m.poly == golden.load_poly("P")
    assert annihilates_all(pipe3, m.poly, m.transient)[0]
    assert not annihilates_all(pipe3, m.poly // golden.factor("P", 8), m.transient)[0]


def test_h_annihilator_divides_minimal_k3(pipe3):
    series = full_h_series(pipe3, 150, golden.h_values(3))
    ha = h_annihilator(series)
    assert ha.start_index == 39
    assert (golden.load_poly("P") % ha.poly).is_zero()


def test_h_annihilator_needs_length():
    with pytest.raises(ValueError):
        h_annihilator([1, 2, 3, 5, 7, 11, 13])


def test_first_valid_index():
    x = Poly.x()
    seq = [5, 1, 2, 4, 8, 16]
    assert first_valid_index(x - Poly.const(2), seq, 1) == 3
    assert first_valid_index(x - Poly.const(3), seq, 1) == 7


def test_coprime_base():
    x, one = Poly.x(), Poly.const(1)
    base = coprime_base([(x - one) * (x + one), (x - one) ** 2, x**2 + one])
    assert base == [x - one, x + one, x**2 + one]


def test_u_odd_needs_period_twelve():
    data = golden.parity_data()
    odd = data["h_odd"]["values"]
    beta = data["h_beta"]["values"]
    # a mod-4 reading gives u(4) = -12 and contradicts the beta list
    assert odd[3] - (-12) != beta[3]
    spec = data["u_odd"]
    u = [spec["values"].get(str(n % spec["modulus"]), 0) for n in range(1, 15)]
    assert [o - v for o, v in zip(odd, u)] == beta
