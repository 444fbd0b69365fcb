"""Tests for the combinatorial kernels."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emsum.combinat import (
    J_mu,
    J_mu_twisted,
    MultiIndex,
    c_seq,
    c_seq_twisted,
    p_I_of_nu,
    p_of_n,
    p_poly,
    p_scalar,
    positive_compositions,
    stirling2,
)
from emsum.exactcore import (
    CycloElem,
    MultiPoly,
    series_coeffs_todd,
    series_coeffs_twisted_todd,
)

F = Fraction


# ---------------------------------------------------------------------------
# Stirling numbers


def test_stirling_base_cases():
    assert stirling2(0, 0) == 1
    assert stirling2(3, 0) == 0
    assert stirling2(5, 5) == 1
    assert stirling2(2, 3) == 0


def test_stirling_small_table():
    assert stirling2(4, 2) == 7
    assert stirling2(5, 2) == 15
    assert stirling2(5, 3) == 25
    assert stirling2(6, 3) == 90


@given(st.integers(0, 10), st.integers(0, 12))
def test_stirling_recurrence(n, k):
    assert stirling2(n + 1, k + 1) == (k + 1) * stirling2(n, k + 1) + stirling2(n, k)


def test_stirling_partition_identity():
    # sum_k S(n,k) * falling factorial = m^n
    for n in range(6):
        for m in range(1, 5):
            total = sum(
                stirling2(n, k) * math.perm(m, k) for k in range(n + 1)
            )
            assert total == m ** n


# ---------------------------------------------------------------------------
# p(n,k;z) polynomials


def test_p_poly_specials():
    z = MultiPoly.variable(1, 0)
    one = MultiPoly.const(1, F(1))
    assert p_poly(0, 0) == one
    for n in range(1, 6):
        assert p_poly(n, 0).is_zero()
        assert p_poly(n, n) == (z - one) ** n
    for n in range(2, 6):
        assert p_poly(n, 1) == z
        assert p_poly(n, n - 1) == math.comb(n, 2) * z * (z - one) ** (n - 2)


def test_p_scalar_matches_poly():
    for n in range(6):
        for k in range(n + 1):
            for zval in (F(0), F(1), F(-2), F(3, 7)):
                assert p_poly(n, k).eval((zval,)) == p_scalar(n, k, zval)


def test_p_poly_recursion():
    # p(n+1,k;z) = (z-1) p(n,k-1;z) + k p(n,k;z) + n p(n-1,k-1;z)
    z = MultiPoly.variable(1, 0)
    one = MultiPoly.const(1, F(1))
    for n in range(1, 12):
        for k in range(1, n + 1):
            lhs = p_poly(n + 1, k)
            rhs = (z - one) * p_poly(n, k - 1) + k * p_poly(n, k) + n * p_poly(
                n - 1, k - 1
            )
            assert lhs == rhs


def _divide_by_z_minus_one(poly: MultiPoly) -> MultiPoly:
    # synthetic division by (z - 1); remainder must vanish
    coeffs = {}
    degree = poly.degree()
    carry = Fraction(0)
    for d in range(degree, -1, -1):
        carry = poly.coefficient((d,)) + carry
        if d > 0:
            coeffs[(d - 1,)] = carry
    assert carry == 0, "polynomial is not divisible by z - 1"
    return MultiPoly(1, coeffs)


def test_p_poly_divisibility():
    # (z-1)^{2k-n} divides p(n,k;z) when [n/2]+1 <= k <= n
    for n in range(2, 16):
        for k in range(n // 2 + 1, n + 1):
            quotient = p_poly(n, k)
            for _ in range(2 * k - n):
                quotient = _divide_by_z_minus_one(quotient)
    # sanity: the exponent is sharp for p(n,n;z) = (z-1)^n
    with pytest.raises(AssertionError):
        _divide_by_z_minus_one(_divide_by_z_minus_one(p_poly(2, 2)))
        _divide_by_z_minus_one(p_poly(2, 1))


def test_generating_identity():
    # e^z sum_k S(n,k) z^k = sum_k k^n z^k / k!, as truncated series
    order = 12
    for n in range(0, 8):
        lhs = [Fraction(0)] * (order + 1)
        for k in range(n + 1):
            s = stirling2(n, k)
            if s:
                for m in range(k, order + 1):
                    lhs[m] += Fraction(s, math.factorial(m - k))
        rhs = [
            Fraction(k ** n, math.factorial(k)) if k > 0 else Fraction(0 ** n)
            for k in range(order + 1)
        ]
        assert lhs == rhs


# ---------------------------------------------------------------------------
# scalar kernels


def test_c_seq_known_values():
    c = c_seq(4)
    assert c[0] == F(1, 2)
    assert c[1] == F(-1, 12)
    assert c[2] == 0


def test_c_seq_equals_minus_todd():
    b = series_coeffs_todd(12)
    c = c_seq(12)
    for n in range(1, 13):
        assert c[n - 1] == -b[n] / math.factorial(n)


def test_p_of_n_values():
    assert p_of_n(1) == F(1, 2)
    assert p_of_n(2) == F(1, 12)
    assert p_of_n(3) == 0
    assert p_of_n(5) == 0
    b = series_coeffs_todd(8)
    for n in range(1, 9):
        assert p_of_n(n) == (-1) ** n * b[n] / math.factorial(n)


def test_p_I_of_nu():
    assert p_I_of_nu({0: 1, 1: 2}) == F(1, 24)
    assert p_I_of_nu({0: 1, 2: 1}) == F(1, 4)
    with pytest.raises(ValueError):
        p_I_of_nu({})


def test_c_seq_twisted_values():
    omega = CycloElem.omega(2)
    c = c_seq_twisted(2, omega, 3)
    assert c[0].as_rational() == F(1, 2)
    # b^omega_n = (-1)^{n-1} c^omega_n against the series route
    b = series_coeffs_twisted_todd(2, omega, 3)
    for n in range(1, 4):
        assert b[n - 1] == (-1) ** (n - 1) * c[n - 1]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_twisted_kernel_identity(q):
    omega = CycloElem.omega(q)
    c = c_seq_twisted(q, omega, 6)
    b = series_coeffs_twisted_todd(q, omega, 6)
    for n in range(1, 7):
        assert b[n - 1] == (-1) ** (n - 1) * c[n - 1]


def test_c_seq_twisted_rejects_pole():
    with pytest.raises(ValueError, match="omega = 1"):
        c_seq_twisted(2, CycloElem.one(2), 3)


# ---------------------------------------------------------------------------
# multi-indices


def test_multiindex_basics():
    mu = MultiIndex({0: 2, 1: 0, 3: 1})
    assert mu.support == (0, 3)
    assert mu.total() == 3
    assert mu.factorial() == 2
    assert mu[1] == 0
    assert MultiIndex({0: 1}) <= mu
    assert not (MultiIndex({0: 3}) <= mu)
    assert mu - MultiIndex({0: 1}) == MultiIndex({0: 1, 3: 1})
    with pytest.raises(ValueError):
        mu - MultiIndex({3: 2})


def test_positive_compositions():
    got = sorted(tuple(sorted(m.items())) for m in positive_compositions(4, [0, 1]))
    assert got == [
        ((0, 1), (1, 3)),
        ((0, 2), (1, 2)),
        ((0, 3), (1, 1)),
    ]
    assert list(positive_compositions(1, [0, 1])) == []
    assert list(positive_compositions(0, [])) == [MultiIndex()]


# ---------------------------------------------------------------------------
# Szasz moment polynomials


def test_J_mu_specials():
    assert J_mu({}, labels=[0, 1]) == MultiPoly.const(2, F(1))
    assert J_mu({0: 1}, labels=[0, 1]).is_zero()
    assert J_mu({0: 2}, labels=[0, 1]) == MultiPoly.variable(2, 0)


def test_J_mu_product_structure():
    # J factorizes over the generators
    j = J_mu({0: 2, 1: 2})
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    assert j == x * y


@given(
    st.dictionaries(st.integers(0, 2), st.integers(0, 5), max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_J_mu_degree_bound(mu):
    labels = sorted(set(mu) | {0, 1, 2})
    j = J_mu(mu, labels=labels)
    total = sum(mu.values())
    assert j.is_zero() or j.degree() <= total // 2


def test_J_mu_twisted_values():
    omega = CycloElem.omega(2)
    poly, rate = J_mu_twisted(2, omega, 0)
    assert rate == CycloElem.one(2) - omega
    assert poly == MultiPoly.const(1, F(1)).map_coeffs(
        lambda c: CycloElem.from_rational(2, c)
    )
    poly1, _ = J_mu_twisted(2, omega, 1)
    # J^omega_1 polynomial part: p(1,0;omega) + p(1,1;omega) x = (omega-1) x
    assert poly1.coefficient((0,)) == F(0)
    assert poly1.coefficient((1,)) == omega - CycloElem.one(2)
