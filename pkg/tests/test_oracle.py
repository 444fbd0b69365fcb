"""Tests for the brute-force oracles."""

from __future__ import annotations

from fractions import Fraction

import pytest

from emsum.combinat import c_seq_twisted
from emsum.exactcore import CycloElem, MultiPoly
from emsum.geometry import build_polytope
from emsum.oracle import (
    coefficients_from_oracle,
    exp_rational,
    riemann_sum,
    szasz_eval,
    twisted_riemann_1d,
    weighted_ehrhart,
)

F = Fraction

INTERVAL = [(0,), (1,)]
SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
SIMPLEX2 = [(0, 0), (1, 0), (0, 1)]
SKEW_TRIANGLE = [(0, 0), (1, 0), (1, 2)]
CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def test_riemann_sum_interval():
    p = build_polytope(INTERVAL)
    one = MultiPoly.const(1, F(1))
    for n in (1, 2, 5):
        assert riemann_sum(p, one, n) == F(n + 1, n)


def test_riemann_sum_square_linear():
    p = build_polytope(SQUARE)
    x = MultiPoly.variable(2, 0)
    # (1/4) * sum_{i,j<=2} i/2 = (1/4) * 3 * (0 + 1/2 + 1) = 9/8
    assert riemann_sum(p, x, 2) == F(9, 8)


def test_riemann_sum_budget():
    p = build_polytope([(0,), (100,)])
    one = MultiPoly.const(1, F(1))
    with pytest.raises(ValueError, match="desk-scale exceeded"):
        riemann_sum(p, one, 5, budget=100)


def test_ehrhart_cube():
    p = build_polytope(CUBE)
    ehr = weighted_ehrhart(p, MultiPoly.const(3, F(1)))
    assert ehr.coeffs == (F(1), F(3), F(3), F(1))


def test_ehrhart_square_and_simplex():
    sq = weighted_ehrhart(build_polytope(SQUARE), MultiPoly.const(2, F(1)))
    assert sq.a_coefficients() == [F(1), F(2), F(1)]
    si = weighted_ehrhart(build_polytope(SIMPLEX2), MultiPoly.const(2, F(1)))
    assert si.a_coefficients() == [F(1, 2), F(3, 2), F(1)]


def test_ehrhart_skew_triangle():
    ehr = weighted_ehrhart(build_polytope(SKEW_TRIANGLE), MultiPoly.const(2, F(1)))
    # counts (N+1)^2 lattice points
    assert ehr.coeffs == (F(1), F(2), F(1))


def test_ehrhart_weighted_interval():
    p = build_polytope(INTERVAL)
    x = MultiPoly.variable(1, 0)
    ehr = weighted_ehrhart(p, x)
    # T(N) = sum_{g<=N} g = N(N+1)/2
    assert ehr.coeffs == (F(0), F(1, 2), F(1, 2))
    assert ehr.a_coefficients() == [F(1, 2), F(1, 2), F(0)]
    ehr2 = weighted_ehrhart(p, x * x)
    # T(N) = sum g^2 = N(N+1)(2N+1)/6
    assert ehr2.a_coefficients() == [F(1, 3), F(1, 2), F(1, 6), F(0)]


def test_oracle_coefficients_pad_with_zeros():
    p = build_polytope(INTERVAL)
    a = coefficients_from_oracle(p, MultiPoly.variable(1, 0), n_max=5)
    assert a == [F(1, 2), F(1, 2), F(0), F(0), F(0), F(0)]


def test_ehrhart_leading_coefficient_is_integral():
    from emsum.geometry import integrate_poly_over_face

    p = build_polytope(SIMPLEX2)
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    for phi in (x, x * y, x * x):
        ehr = weighted_ehrhart(p, phi)
        assert ehr.coeffs[-1] == integrate_poly_over_face(
            p, p.polytope_face, phi
        )


# ---------------------------------------------------------------------------
# rational exponential and Szasz evaluation


def test_exp_rational_accuracy():
    import math

    for s in (F(0), F(1), F(7, 2), F(-3)):
        approx = exp_rational(s)
        assert abs(float(approx) - math.exp(float(s))) < 1e-12
    assert exp_rational(F(0)) == 1


def test_szasz_normalization():
    one2 = MultiPoly.const(2, F(1))
    val = szasz_eval(one2, (F(1, 2), F(3)), 4)
    assert abs(val - 1) < F(1, 10 ** 12)


def test_szasz_linear_is_exact():
    x = MultiPoly.variable(1, 0)
    val = szasz_eval(x, (F(5, 2),), 3)
    assert abs(val - F(5, 2)) < F(1, 10 ** 12)


def test_szasz_quadratic_moment():
    x = MultiPoly.variable(1, 0)
    # E[(gamma/N)^2] for gamma ~ Poisson(Nx): x^2 + x/N
    val = szasz_eval(x * x, (F(2),), 5)
    assert abs(val - (F(4) + F(2, 5))) < F(1, 10 ** 12)


def test_szasz_rejects_negative_point():
    with pytest.raises(ValueError, match="orthant"):
        szasz_eval(MultiPoly.const(1, F(1)), (F(-1),), 2)


# ---------------------------------------------------------------------------
# twisted half-line sums


@pytest.mark.parametrize("q", [2, 3, 4])
def test_twisted_riemann_matches_expansion(q):
    omega = CycloElem.omega(q)
    x = MultiPoly.variable(1, 0)
    for phi in (MultiPoly.const(1, F(1)), x, x * x, x * x * x - 2 * x):
        deg = phi.degree()
        c = c_seq_twisted(q, omega, deg + 1)
        for n in (1, 2, 3):
            lhs = twisted_riemann_1d(q, omega, phi, n)
            rhs = CycloElem.zero(q)
            deriv = phi
            for k in range(1, deg + 2):
                # c_k^omega phi^{(k-1)}(0) / N^k
                rhs = rhs + c[k - 1] * deriv.eval((F(0),)) * F(1, n ** k)
                deriv = deriv.partial(0)
            assert lhs == rhs


def test_twisted_riemann_geometric_anchor():
    # phi = 1: (1/N) sum omega^k = 1/(N(1-omega))
    omega = CycloElem.omega(3)
    val = twisted_riemann_1d(3, omega, MultiPoly.const(1, F(1)), 2)
    expected = (CycloElem.one(3) - omega).inverse() * F(1, 2)
    assert val == expected
