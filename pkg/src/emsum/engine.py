"""Asymptotic Euler-Maclaurin expansion of Riemann sums over lattice polytopes.

For a lattice polytope P and a polynomial phi the Riemann sum
N^{-m} sum_{x in P cap Z^m/N} phi(x) has a terminating expansion in 1/N
whose coefficient A_n is a sum of integrals over the faces of P of
codimension at most n: each face contributes its transverse cone's
Berline-Vergne operator, lifted back to the ambient space and applied
to phi.  The totals are independent of the inner product used to
realize the quotient spaces; the per-face pieces are not.

Closed-form fast paths cover A_0 and A_1 (any Delzant polytope), A_2
(Delzant, standard inner product), and every order in dimension two
(Delzant, any inner product).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .combinat import todd_coefficients
from .conecalc import DiffOp, UniCone, vertex_op
from .exactcore import (
    MultiPoly,
    as_matrix,
    as_vector,
    hnf_lattice_basis,
    identity_matrix,
    is_spd,
    is_symmetric,
    mat_vec,
    nullspace_basis,
    primitive_vector,
    vdot,
    vscale,
    vsub,
)
from .geometry import (
    LatticePolytope,
    integrate_poly_over_face,
    is_delzant,
    tangent_cone,
    transverse_cone,
)
from .subdivide import STRATEGIES, bv_op_pointed


@dataclass(frozen=True)
class ExpansionResult:
    """Coefficients A_0..A_{n_max} with their per-face breakdown.

    per_face maps (n, face_index) to that face's contribution to A_n;
    every A_n equals the sum of its per-face entries.  complete is set
    when n_max reached dim(P) + deg(phi), past which all coefficients
    vanish.  valuation_used records whether any face needed the signed
    subdivision route (a non-unimodular transverse cone).
    """

    coefficients: tuple
    per_face: dict
    qmat: tuple
    n_max: int
    complete: bool
    valuation_used: bool

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("order must be non-negative")
        if n <= self.n_max:
            return self.coefficients[n]
        if self.complete:
            return Fraction(0)
        raise ValueError("coefficient beyond computed range")

    def items(self) -> list:
        return list(enumerate(self.coefficients))

    def __repr__(self) -> str:
        coeffs = ", ".join(str(c) for c in self.coefficients)
        return f"ExpansionResult([{coeffs}], complete={self.complete})"


def _inner(qmat, x, y) -> Fraction:
    return vdot(as_vector(x), mat_vec(qmat, as_vector(y)))


def expansion(
    poly: LatticePolytope,
    phi: MultiPoly,
    qmat=None,
    n_max: Optional[int] = None,
    strategy: str = "default",
) -> ExpansionResult:
    """All expansion coefficients A_n(P; phi) for n <= n_max.

    n_max defaults to dim(P) + deg(phi), which makes the result exact:
    R_N(P; phi) = sum_n A_n N^{-n} for every integer N >= 1.  Each face
    of codimension <= n contributes the integral over the face of its
    lifted transverse-cone operator applied to phi; the polytope itself
    contributes int_P phi to A_0.
    """
    if strategy not in STRATEGIES:
        raise ValueError("unknown strategy")
    m = poly.ambient_dim
    if phi.nvars != m:
        raise ValueError(
            "polynomial must have one variable per ambient coordinate"
        )
    if n_max is None:
        n_max = poly.dim + phi.degree()
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if qmat is not None:
        qmat = as_matrix(qmat)
        if not is_symmetric(qmat) or not is_spd(qmat):
            raise ValueError(
                "inner product matrix must be symmetric positive definite"
            )
    qused = identity_matrix(m) if qmat is None else qmat

    delzant = is_delzant(poly)
    totals = [Fraction(0)] * (n_max + 1)
    per_face = {}
    valuation_used = False
    for face in poly.faces:
        codim = poly.dim - face.dim
        if codim == 0:
            val = integrate_poly_over_face(poly, face, phi)
            per_face[(0, face.index)] = val
            totals[0] += val
            continue
        if codim > n_max:
            continue
        tcone = transverse_cone(poly, face, qmat)
        unimodular = (
            len(tcone.gens) == tcone.dim
            and hnf_lattice_basis(list(tcone.gens))[1] == 1
        )
        if delzant:
            assert unimodular, "Delzant transverse cones must be unimodular"
        images = [
            MultiPoly.linear_form([Fraction(c) for c in b])
            for b in tcone.basis
        ]
        ucone = UniCone(tcone.gens, qmat=tcone.qmat) if unimodular else None
        for n in range(codim, n_max + 1):
            if unimodular:
                op = vertex_op(ucone, n)
            else:
                valuation_used = True
                op = bv_op_pointed(
                    tcone.gens, n, qmat=tcone.qmat, strategy=strategy
                )
            if op.symbol.is_zero():
                per_face[(n, face.index)] = Fraction(0)
                continue
            lifted = DiffOp(m, op.order, op.symbol.compose(images),
                            tcone.basis)
            val = integrate_poly_over_face(poly, face, lifted.apply(phi))
            per_face[(n, face.index)] = val
            totals[n] += val
    complete = n_max >= poly.dim + phi.degree()
    return ExpansionResult(
        coefficients=tuple(totals),
        per_face=per_face,
        qmat=tuple(tuple(row) for row in qused),
        n_max=n_max,
        complete=complete,
        valuation_used=valuation_used,
    )


# ---------------------------------------------------------------------------
# closed-form fast paths


def _require_delzant(poly: LatticePolytope) -> None:
    if not is_delzant(poly):
        raise ValueError("closed form requires a Delzant polytope")


def closed_form_A0_A1(poly: LatticePolytope, phi: MultiPoly, qmat=None):
    """(A_0, A_1) for Delzant P: the integral over P and half the sum of
    the lattice-normalized facet integrals.  Both values are independent
    of the inner product."""
    _require_delzant(poly)
    if phi.nvars != poly.ambient_dim:
        raise ValueError(
            "polynomial must have one variable per ambient coordinate"
        )
    a0 = integrate_poly_over_face(poly, poly.polytope_face, phi)
    a1 = Fraction(0)
    for facet in poly.faces_of_dim(poly.dim - 1):
        a1 += integrate_poly_over_face(poly, facet, phi)
    return a0, Fraction(1, 2) * a1


def _directional(phi: MultiPoly, direction) -> MultiPoly:
    out = MultiPoly.zero(phi.nvars)
    for i, c in enumerate(as_vector(direction)):
        if c:
            out = out + phi.partial(i) * c
    return out


def closed_form_A2(poly: LatticePolytope, phi: MultiPoly, qmat=None):
    """A_2 for Delzant P in the standard inner product: a facet term with
    the primitive inward normals and a codimension-two term from the
    two-dimensional transverse operators."""
    _require_delzant(poly)
    if phi.nvars != poly.ambient_dim:
        raise ValueError(
            "polynomial must have one variable per ambient coordinate"
        )
    if qmat is not None:
        q = as_matrix(qmat)
        if q != identity_matrix(poly.ambient_dim):
            raise ValueError("closed form requires the standard inner product")
    total = Fraction(0)
    for facet in poly.faces_of_dim(poly.dim - 1):
        alpha = as_vector(poly.facets[facet.facet_ids[0]][0])
        val = integrate_poly_over_face(poly, facet, _directional(phi, alpha))
        total -= Fraction(1, 12) * val / vdot(alpha, alpha)
    for ridge in poly.faces_of_dim(poly.dim - 2):
        assert len(ridge.facet_ids) == 2, (
            "Delzant polytopes are simple"
        )
        a1 = as_vector(poly.facets[ridge.facet_ids[0]][0])
        a2 = as_vector(poly.facets[ridge.facet_ids[1]][0])
        cross = vdot(a1, a2)
        weight = (
            Fraction(1, 4)
            - Fraction(1, 12) * (cross / vdot(a1, a1) + cross / vdot(a2, a2))
        )
        total += weight * integrate_poly_over_face(poly, ridge, phi)
    return total


def closed_form_2d(
    poly: LatticePolytope,
    phi: MultiPoly,
    n: int,
    qmat=None,
):
    """A_n (n >= 2) for a two-dimensional Delzant polytope, any rational
    inner product: edge terms -(b_n/n!) grad_{u_f}^{n-1} and the explicit
    two-dimensional vertex operators."""
    if poly.dim != 2:
        raise ValueError("closed form requires a two-dimensional polytope")
    _require_delzant(poly)
    if phi.nvars != 2:
        raise ValueError(
            "polynomial must have one variable per ambient coordinate"
        )
    if n < 2:
        raise ValueError("closed form applies to order two and higher")
    qmat = identity_matrix(2) if qmat is None else as_matrix(qmat)
    if not is_symmetric(qmat) or not is_spd(qmat):
        raise ValueError(
            "inner product matrix must be symmetric positive definite"
        )
    bern = todd_coefficients(n)
    total = Fraction(0)

    # Edge terms.  The normal direction is taken Q-orthogonal to the
    # edge; u_f scales it to generate the projected lattice.
    if bern[n]:
        for edge in poly.faces_of_dim(1):
            e1 = as_vector(edge.lineality_basis[0])
            dirs, _ = tangent_cone(poly, edge)
            trans = [d for d in dirs if not _is_parallel(d, e1)]
            assert len(trans) == 1, "an edge of a polygon has one inward edge"
            e2 = as_vector(trans[0])
            normal = nullspace_basis([mat_vec(qmat, e1)])
            assert len(normal) == 1
            alpha = as_vector(primitive_vector(normal[0]))
            if _inner(qmat, alpha, e2) < 0:
                alpha = vscale(Fraction(-1), alpha)
            u_f = vscale(
                _inner(qmat, e2, alpha) / _inner(qmat, alpha, alpha), alpha
            )
            coeff = -bern[n] / Fraction(math.factorial(n))
            sym = MultiPoly.linear_form(u_f) ** (n - 1) * coeff
            integrand = DiffOp(2, n - 1, sym, (tuple(u_f),)).apply(phi)
            total += integrate_poly_over_face(poly, edge, integrand)

    # Vertex terms, evaluated at the vertex itself.
    for vert in poly.faces_of_dim(0):
        dirs, _ = tangent_cone(poly, vert)
        assert len(dirs) == 2
        e1, e2 = as_vector(dirs[0]), as_vector(dirs[1])
        c1 = _inner(qmat, e1, e2) / _inner(qmat, e2, e2)
        c2 = _inner(qmat, e1, e2) / _inner(qmat, e1, e1)
        u1 = vsub(e1, vscale(c1, e2))
        u2 = vsub(e2, vscale(c2, e1))
        lf = {
            "e1": MultiPoly.linear_form(e1),
            "e2": MultiPoly.linear_form(e2),
            "u1": MultiPoly.linear_form(u1),
            "u2": MultiPoly.linear_form(u2),
        }
        sym = MultiPoly.zero(2)
        for k in range(1, n):
            c = bern[k] * bern[n - k] / Fraction(
                math.factorial(k) * math.factorial(n - k)
            )
            if c:
                sym = sym + lf["e1"] ** (k - 1) * lf["e2"] ** (n - 1 - k) * c
        if bern[n]:
            bn = bern[n] / Fraction(math.factorial(n))
            for s in range(n - 1):
                sym = sym + lf["u1"] ** s * lf["e1"] ** (n - 2 - s) * (bn * c1)
                sym = sym + lf["u2"] ** s * lf["e2"] ** (n - 2 - s) * (bn * c2)
        value = DiffOp(2, n - 2, sym, (tuple(e1), tuple(e2))).apply(phi)
        total += value.eval(as_vector(vert.ref_vertex))
    return total


def _is_parallel(a, b) -> bool:
    a, b = as_vector(a), as_vector(b)
    return all(
        a[i] * b[j] == a[j] * b[i]
        for i in range(len(a))
        for j in range(i + 1, len(a))
    )
