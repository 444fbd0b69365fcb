"""Brute-force oracles: exact Riemann sums by lattice point enumeration,
weighted Ehrhart interpolation, Szasz function evaluation, and regularized
twisted sums on the half line.

These are deliberately independent of the operator machinery: they only
count lattice points and interpolate, so they can serve as ground truth for
the expansion engine.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinat import stirling2
from .exactcore import CycloElem, MultiPoly, as_vector, solve_unique
from .geometry import LatticePolytope

F = Fraction

DEFAULT_BUDGET = 10_000_000


def riemann_sum(
    poly: LatticePolytope,
    phi: MultiPoly,
    n: int,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    """The exact Riemann sum R_N(P;phi) = N^{-dim P} sum_{g in NP cap Z^m}
    phi(g/N), by enumerating the integer points of a bounding box of N*P.

    Raises ValueError("desk-scale exceeded") when the box holds more than
    `budget` points.
    """
    if n < 1:
        raise ValueError("the dilation factor must be a positive integer")
    if phi.nvars != poly.ambient_dim:
        raise ValueError("dimension mismatch")
    m = poly.ambient_dim
    lo = [n * min(v[i] for v in poly.vertices) for i in range(m)]
    hi = [n * max(v[i] for v in poly.vertices) for i in range(m)]
    count = 1
    for a, b in zip(lo, hi):
        count *= b - a + 1
    if count > budget:
        raise ValueError("desk-scale exceeded")
    total = F(0)
    for gamma in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if poly.contains(gamma, dilation=n):
            total += phi.eval(tuple(F(g, n) for g in gamma))
    return total / F(n) ** poly.dim


@dataclass(frozen=True)
class WeightedEhrhart:
    """The polynomial T(N) = N^{dim P + deg phi} * R_N(P; phi).

    `coeffs` lists t_0..t_D ascending, D = dim + deg; the expansion
    coefficients are read off the top: A_n = t_{D-n}.  The leading
    coefficient equals the integral of phi over P.
    """

    coeffs: tuple
    dim: int
    deg: int

    @property
    def degree_bound(self) -> int:
        return self.dim + self.deg

    def eval(self, n: int) -> Fraction:
        total = F(0)
        power = F(1)
        for c in self.coeffs:
            total += c * power
            power *= n
        return total

    def a_coefficients(self, n_max: Optional[int] = None) -> list:
        d = self.degree_bound
        if n_max is None:
            n_max = d
        out = []
        for n in range(n_max + 1):
            out.append(self.coeffs[d - n] if n <= d else F(0))
        return out


def weighted_ehrhart(
    poly: LatticePolytope,
    phi: MultiPoly,
    budget: int = DEFAULT_BUDGET,
) -> WeightedEhrhart:
    """Interpolate T(N) = N^{dim+deg} R_N(P;phi) from N = 1..dim+deg+1 and
    verify the interpolation at two further points.

    For a lattice polytope T is a polynomial of degree at most dim+deg; a
    verification failure raises
    ValueError("not a polynomial — bug or non-lattice input").
    """
    d = poly.dim + phi.degree()
    samples = []
    for n in range(1, d + 2):
        samples.append(riemann_sum(poly, phi, n, budget) * F(n) ** d)
    vmat = tuple(tuple(F(n) ** j for j in range(d + 1)) for n in range(1, d + 2))
    coeffs = solve_unique(vmat, samples)
    assert coeffs is not None, "Vandermonde systems are invertible"
    result = WeightedEhrhart(coeffs=tuple(coeffs), dim=poly.dim, deg=phi.degree())
    for n in (d + 2, d + 3):
        expected = riemann_sum(poly, phi, n, budget) * F(n) ** d
        if result.eval(n) != expected:
            raise ValueError("not a polynomial — bug or non-lattice input")
    return result


def coefficients_from_oracle(
    poly: LatticePolytope,
    phi: MultiPoly,
    n_max: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> list:
    """Expansion coefficients [A_0, ..., A_{n_max}] of R_N(P;phi), read off
    the interpolated weighted Ehrhart polynomial (A_n = 0 beyond dim+deg).
    """
    return weighted_ehrhart(poly, phi, budget).a_coefficients(n_max)


# ---------------------------------------------------------------------------
# rational exponentials and Szasz functions


def exp_rational(s: Fraction, rel_tol: Fraction = F(1, 10 ** 30)) -> Fraction:
    """Rational approximation of e^s with relative error below rel_tol.

    For s >= 0 the Taylor partial sum through order K has tail at most
    2 s^{K+1}/(K+1)! once K + 2 >= 2s, which is driven below
    rel_tol * e^s (and e^s >= 1); negative s uses the reciprocal, which
    preserves relative error up to a factor absorbed in the margin.
    """
    s = F(s)
    if s < 0:
        return 1 / exp_rational(-s, rel_tol)
    term = F(1)
    total = F(1)
    k = 0
    while True:
        k += 1
        term = term * s / k
        total += term
        if k + 2 >= 2 * s and 2 * term <= rel_tol * total:
            return total


def szasz_eval(
    phi: MultiPoly,
    x: Sequence[Fraction],
    n: int,
    truncation: int = 200,
) -> Fraction:
    """Evaluate the Szasz function of the standard orthant,

        S_N(phi)(x) = sum_{gamma in Z_+^k} (Nx)^gamma/gamma! e^{-sum Nx(e)}
                      phi(gamma/N),

    truncating each coordinate sum at `truncation` and evaluating the
    exponential with exp_rational.  All arithmetic is rational; the result
    carries the truncation and exponential errors only (negligible at the
    default truncation for Nx(e) up to a few dozen).
    """
    x = as_vector(x)
    if phi.nvars != len(x):
        raise ValueError("dimension mismatch")
    if any(c < 0 for c in x):
        raise ValueError("Szasz evaluation requires a point in the orthant")
    if n < 1:
        raise ValueError("the dilation factor must be a positive integer")
    k = len(x)
    y = [n * c for c in x]

    axis_cache: dict = {}

    def axis_sum(i: int, power: int) -> Fraction:
        # sum_{g=0}^{T} y_i^g g^power / g!
        key = (i, power)
        if key not in axis_cache:
            total = F(0)
            weight = F(1)  # y^g / g!
            for g in range(truncation + 1):
                if g > 0:
                    weight = weight * y[i] / g
                total += weight * g ** power
            axis_cache[key] = total
        return axis_cache[key]

    acc = F(0)
    for exps, coeff in phi.terms.items():
        prod = coeff * F(1, n ** sum(exps))
        for i, e in enumerate(exps):
            prod *= axis_sum(i, e)
        acc += prod
    return acc * exp_rational(-sum(y))


# ---------------------------------------------------------------------------
# twisted sums on the half line


def _abel_power_sum(j: int, omega: CycloElem) -> CycloElem:
    """The Abel-regularized sum sum_{k>=0} k^j omega^k for a root of unity
    omega != 1, via k^j = sum_i S(j,i) k(k-1)...(k-i+1):

        sum_k k^j omega^k = sum_{i=0}^{j} S(j,i) i! omega^i / (1-omega)^{i+1}.
    """
    q = omega.order
    one = CycloElem.one(q)
    inv = (one - omega).inverse()
    total = CycloElem.zero(q)
    for i in range(j + 1):
        s = stirling2(j, i)
        if s:
            total = total + s * math.factorial(i) * omega ** i * inv ** (i + 1)
    return total


def twisted_riemann_1d(q: int, omega, phi: MultiPoly, n: int) -> CycloElem:
    """The Abel-regularized twisted Riemann sum on the half line,

        R^omega_N(phi) = (1/N) sum_{k>=0} omega^k phi(k/N),

    for a univariate polynomial phi and a primitive q-th root of unity
    omega.  The divergent power sums are Abel-regularized, which makes the
    twisted Euler-Maclaurin expansion terminate exactly; the result is an
    exact cyclotomic number.
    """
    from .combinat import _check_twist

    omega = _check_twist(q, omega)
    if phi.nvars != 1:
        raise ValueError("twisted sums are one-dimensional")
    if n < 1:
        raise ValueError("the dilation factor must be a positive integer")
    total = CycloElem.zero(q)
    for exps, coeff in phi.terms.items():
        j = exps[0]
        total = total + coeff * F(1, n ** j) * _abel_power_sum(j, omega)
    return total * F(1, n)
