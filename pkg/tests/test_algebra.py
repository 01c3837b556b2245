from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from petersen_census.algebra import (
    Poly,
    berlekamp_massey,
    berlekamp_massey_mod,
    check_recurrence,
    matrix_minpoly,
    poly_eval_matrix,
    poly_gcd,
    poly_lcm,
    strip_x_power,
    vector_minpoly,
    x_power,
)

X = Poly.x()
ONE = Poly.const(1)

coeffs = st.lists(st.integers(-20, 20), min_size=1, max_size=8)
nonzero = coeffs.filter(lambda c: any(c))


def monic(c):
    return Poly(c + [1])


def test_product_identity():
    lhs = (X - ONE) * Poly([1, 1, 1, 1, 1]) * Poly([-1, -1, 0, -1, 0, 0, 1])
    assert lhs == Poly([1, 1, 0, 1, 0, -1, -2, 0, -1, 0, 0, 1])
    assert (X - ONE) * Poly([1, 1, 1, 1, 1]) == X**5 - ONE
    assert lhs * ONE == lhs


@settings(max_examples=60)
@given(coeffs, nonzero)
def test_divmod_reconstructs(a, b):
    a, b = Poly(a), Poly(b)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(X, Poly())


def test_gcd_examples():
    assert poly_gcd(X**2 - ONE, X**2 - X) == X - ONE
    p6 = Poly([-1, -1, 0, -1, 0, 0, 1])
    assert poly_lcm(p6**2, p6) == p6**2


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_gcd_of_multiple(p, q):
    p, q = monic(p), monic(q)
    assert poly_gcd(p, p * q) == p
    g = poly_gcd(p, q)
    assert (p % g).is_zero() and (q % g).is_zero()
    m = poly_lcm(p, q)
    assert (m % p).is_zero() and (m % q).is_zero()


def test_strip_and_x_power():
    assert strip_x_power(X**3 * (X - ONE)) == X - ONE
    assert strip_x_power(X) == ONE
    assert strip_x_power(X - ONE) == X - ONE
    assert x_power(X**4 + X**2) == 2


def test_parse_and_format_roundtrip():
    p = Poly.parse("1,-2,0,3\n")
    assert p == Poly([1, -2, 0, 3])
    assert p.format() == "1,-2,0,3\n"


def test_bm_examples():
    assert berlekamp_massey([1, 1, 2, 3, 5, 8, 13, 21]) == X**2 - X - ONE
    assert berlekamp_massey([1, 1, 1, 1]) == X - ONE
    assert berlekamp_massey([0, 0, 0]) == ONE


def test_bm_transient_becomes_x_power():
    # 5, then powers of two: x(x - 2) generates it from the first term
    seq = [5, 1, 2, 4, 8, 16, 32, 64]
    p = berlekamp_massey(seq)
    assert p == X * (X - Poly.const(2))
    assert check_recurrence(p, seq, p.degree)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_bm_recovers_generated_recurrence(rec, init):
    d = len(rec)
    seq = list(init[:d])
    for _ in range(3 * d + 6):
        seq.append(sum(c * seq[-d + i] for i, c in enumerate(rec)))
    p = berlekamp_massey(seq)
    assert p.degree <= d
    assert check_recurrence(p, seq, p.degree)
    gen = Poly([-c for c in rec] + [1])
    assert (gen % p).is_zero()


def test_bm_mod_agrees_on_fibonacci():
    assert berlekamp_massey_mod([1, 1, 2, 3, 5, 8, 13, 21], 10007) == [-1, -1, 1]


def test_check_recurrence_examples():
    assert check_recurrence(X - Poly.const(2), [1, 2, 4, 8], 1)
    assert not check_recurrence(X - Poly.const(2), [1, 2, 5], 1)
    with pytest.raises(ValueError):
        check_recurrence(X**3, [1, 2], 2)


def test_matrix_minpoly_small():
    assert matrix_minpoly([[1, 0], [0, 1]]) == X - ONE
    assert matrix_minpoly([[0]]) == X
    assert matrix_minpoly([[0, 1], [0, 0]]) == X**2


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_minpoly_annihilates_matrix(M):
    p = matrix_minpoly(M)
    assert p.is_integral()
    Z = poly_eval_matrix(p, M)
    assert all(v == 0 for row in Z for v in row)
    # every vector minimal polynomial divides it
    n = len(M)
    for j in range(n):
        e = [0] * n
        e[j] = 1
        assert (p % vector_minpoly(M, e)).is_zero()


def test_poly_call_and_lead():
    p = Poly([1, 2, 3])
    assert p(2) == 17
    assert p.lead() == Fraction(3)
    assert p.monic().lead() == 1
