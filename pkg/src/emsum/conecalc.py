"""Differential operator calculus on simplicial rational cones.

A simplicial cone with labeled generators E carries a family of
integration by parts operators L(E; I, J; alpha): constant coefficient
homogeneous differential operators that arise when derivatives along the
generators are traded for derivatives perpendicular to a face.  They are
defined by a recursion that peels one derivative at a time and,
independently, by an explicit symbol construction that divides a
polynomial by the linear forms attached to the face.  Both routes are
implemented here and tested against each other.

Combining these operators with the one dimensional Euler-Maclaurin
kernel values p(n) yields the Berline-Vergne operators D_n(C; F) of a
unimodular cone C at a face F, the local building blocks of the
asymptotic expansion of lattice Riemann sums.

The generators need not span the ambient space.  All operators act on
ambient functions; their symbols are polynomials in the ambient dual
coordinates that depend only on the pairings with the span of the
generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .combinat import MultiIndex, p_I_of_nu, positive_compositions
from .exactcore import (
    MultiPoly,
    as_matrix,
    as_scalar,
    as_vector,
    identity_matrix,
    is_spd,
    is_symmetric,
    mat_vec,
    matrix_inverse,
    matrix_rank,
    mpoly_apply_diffop,
    nullspace_basis,
    orth_project,
    qform,
    solve_unique,
    transpose,
    vscale,
    vsub,
)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class DiffOp:
    """Constant coefficient differential operator given by its symbol.

    The symbol is a polynomial in the ambient dual coordinates; the
    monomial xi^beta stands for the mixed partial derivative of
    multi-order beta.  Our operators are homogeneous, so every symbol
    term has total degree `order`.  The `directions` tuple spans the
    subspace along which the operator differentiates: the symbol is
    unchanged under the dual projection that forgets everything
    perpendicular to that span.
    """

    dim: int
    order: int
    symbol: MultiPoly
    directions: Tuple[Vector, ...]

    @property
    def is_zero(self) -> bool:
        return self.symbol.is_zero()

    def apply(self, phi: MultiPoly) -> MultiPoly:
        return mpoly_apply_diffop(self, phi)

    def __repr__(self) -> str:
        return "DiffOp(order={}, symbol={!r})".format(self.order, self.symbol)


@dataclass(frozen=True)
class Deco:
    """Splitting of generators relative to a label subset.

    For each label e in the subset, the generator g_e decomposes as
    u[e] plus the combination sum over outside labels v of
    coeff[(e, v)] * g_v, where u[e] is Q-perpendicular to every
    generator outside the subset.  For the full label set the
    decomposition is trivial: u[e] = g_e.
    """

    subset: Tuple[int, ...]
    u: Mapping[int, Vector]
    coeff: Mapping[Tuple[int, int], Fraction]


class UniCone:
    """Simplicial rational cone with labeled generators.

    The generators are linearly independent rational vectors; labels
    are their positions 0..dim-1.  `qmat` is a symmetric positive
    definite inner product on the ambient space (identity when
    omitted).  The generators need not span the ambient space.
    Whether the generators form a lattice basis is the caller's
    concern; this class uses only the linear data.
    """

    __slots__ = ("gens", "qmat", "dim", "ambient_dim", "_deco_cache", "_op_cache", "_sym_cache")

    def __init__(self, gens: Iterable[Sequence], qmat=None):
        glist = [as_vector(g) for g in gens]
        if not glist:
            raise ValueError("cone must have at least one generator")
        m = len(glist[0])
        if any(len(g) != m for g in glist):
            raise ValueError("generators must have equal length")
        if matrix_rank(glist) != len(glist):
            raise ValueError("cone generators must be linearly independent")
        if qmat is None:
            q = identity_matrix(m)
        else:
            q = as_matrix(qmat)
            if len(q) != m or not is_symmetric(q) or not is_spd(q):
                raise ValueError("inner product matrix must be symmetric positive definite")
        self.gens = tuple(glist)
        self.qmat = q
        self.dim = len(glist)
        self.ambient_dim = m
        self._deco_cache: Dict[tuple, Deco] = {}
        self._op_cache: Dict[tuple, MultiPoly] = {}
        self._sym_cache: Dict[tuple, MultiPoly] = {}

    def labels(self) -> range:
        return range(self.dim)

    def __repr__(self) -> str:
        return "UniCone(gens={!r})".format(self.gens)


def _subset(cone: UniCone, labels: Iterable[int], nonempty: bool = False) -> tuple:
    out = tuple(sorted(set(int(x) for x in labels)))
    if out and (out[0] < 0 or out[-1] >= cone.dim):
        raise ValueError("generator label out of range")
    if nonempty and not out:
        raise ValueError("label subset must be nonempty")
    return out


def deco(cone: UniCone, labels: Iterable[int]) -> Deco:
    """Split the generators in `labels` perpendicular to the others."""
    subset = _subset(cone, labels, nonempty=True)
    cached = cone._deco_cache.get(subset)
    if cached is not None:
        return cached
    inside = set(subset)
    comp = [v for v in cone.labels() if v not in inside]
    gram = [[qform(cone.qmat, cone.gens[v], cone.gens[w]) for w in comp] for v in comp]
    u: Dict[int, Vector] = {}
    coeff: Dict[Tuple[int, int], Fraction] = {}
    for e in subset:
        if comp:
            rhs = [qform(cone.qmat, cone.gens[e], cone.gens[w]) for w in comp]
            sol = solve_unique(gram, rhs)
            assert sol is not None
            vec = cone.gens[e]
            for c, v in zip(sol, comp):
                coeff[(e, v)] = c
                vec = vsub(vec, vscale(c, cone.gens[v]))
            u[e] = vec
        else:
            u[e] = cone.gens[e]
    result = Deco(subset, u, coeff)
    cone._deco_cache[subset] = result
    return result


def _as_alpha(alpha, inner: tuple) -> MultiIndex:
    idx = alpha if isinstance(alpha, MultiIndex) else MultiIndex(dict(alpha))
    if any(v < 0 for v in idx.values()):
        raise ValueError("alpha entries must be non-negative")
    if not set(idx.support) <= set(inner):
        raise ValueError("alpha must be supported on the inner label set")
    return idx


def _check_ibp_args(cone: UniCone, inner, outer, alpha):
    I = _subset(cone, inner, nonempty=True)
    J = _subset(cone, outer)
    if not set(I) <= set(J):
        raise ValueError("inner label set must be contained in the outer one")
    a = _as_alpha(alpha, I)
    if len(J) > a.total() + len(I):
        raise ValueError("operator undefined: need |outer| <= |alpha| + |inner|")
    return I, J, a


def _direction_basis(cone: UniCone, outer: tuple) -> Tuple[Vector, ...]:
    if not outer:
        return ()
    d = deco(cone, outer)
    return tuple(d.u[e] for e in outer)


def _wrap(cone: UniCone, outer: tuple, order: int, symbol: MultiPoly) -> DiffOp:
    return DiffOp(cone.ambient_dim, order, symbol, _direction_basis(cone, outer))


def _alpha_key(alpha: MultiIndex) -> tuple:
    return tuple(sorted(alpha.items()))


def _ibp_rec(cone: UniCone, I: tuple, J: tuple, alpha: MultiIndex, rule: str) -> MultiPoly:
    key = (I, J, _alpha_key(alpha), rule)
    hit = cone._op_cache.get(key)
    if hit is not None:
        return hit
    m = cone.ambient_dim
    if alpha.total() == 0:
        # validity forces J == I here
        sym = MultiPoly.const(m, Fraction(1))
    else:
        pool = [e for e in I if alpha[e] >= 1]
        e = pool[0] if rule == "min" else pool[-1]
        beta = alpha - MultiIndex({e: 1})
        dec = deco(cone, I)
        extra = [v for v in J if v not in set(I)]
        grad = MultiPoly.linear_form(dec.u[e])
        if not extra:
            sym = _ibp_rec(cone, I, J, beta, rule) * grad
        else:
            sym = MultiPoly.zero(m)
            if len(J) <= len(I) + alpha.total() - 1:
                sym = sym + _ibp_rec(cone, I, J, beta, rule) * grad
            for v in extra:
                c = dec.coeff[(e, v)]
                if c != 0:
                    grown = tuple(sorted(I + (v,)))
                    sym = sym + _ibp_rec(cone, grown, J, beta, rule) * c
    cone._op_cache[key] = sym
    return sym


def ibp_op(cone: UniCone, inner, outer, alpha, pivot_rule: str = "min") -> DiffOp:
    """Integration by parts operator L(E; inner, outer; alpha).

    Computed by the peeling recursion: one derivative along a chosen
    generator of the inner set is split off, decomposed perpendicular
    to the inner face, and the remaining lower order operators are
    combined.  The result does not depend on which generator is peeled;
    `pivot_rule` ("min" or "max" label) exists so tests can verify
    that.  The operator is homogeneous of order
    |alpha| - |outer| + |inner| and differentiates only along
    directions perpendicular to the span of the outer complement.
    """
    if pivot_rule not in ("min", "max"):
        raise ValueError("pivot_rule must be 'min' or 'max'")
    I, J, a = _check_ibp_args(cone, inner, outer, alpha)
    sym = _ibp_rec(cone, I, J, a, pivot_rule)
    return _wrap(cone, J, a.total() - len(J) + len(I), sym)


def divide_by_linear_form(poly: MultiPoly, coeffs: Sequence) -> MultiPoly:
    """Exact quotient of a polynomial by a nonzero linear form.

    One variable is eliminated in favor of a slack variable equal to
    the form itself; the part of the rewritten polynomial that does not
    involve the slack is the restriction to the hyperplane where the
    form vanishes, so divisibility holds exactly when that part is
    zero.  Raises ValueError("polynomiality violated") otherwise.
    """
    a = [as_scalar(c) for c in coeffs]
    if len(a) != poly.nvars:
        raise ValueError("form length must match the number of variables")
    pivot = next((j for j, c in enumerate(a) if c != 0), None)
    if pivot is None:
        raise ValueError("cannot divide by the zero form")
    nv = poly.nvars
    if poly.is_zero():
        return poly
    slack = MultiPoly.variable(nv + 1, nv)
    sub = slack
    for j, c in enumerate(a):
        if j != pivot and c != 0:
            sub = sub - MultiPoly.variable(nv + 1, j) * c
    sub = sub * (Fraction(1) / a[pivot])
    images = [MultiPoly.variable(nv + 1, j) if j != pivot else sub for j in range(nv)]
    rewritten = poly.compose(images)
    quot_terms = {}
    for exps, c in rewritten.iter_terms():
        if exps[nv] == 0:
            raise ValueError("polynomiality violated")
        quot_terms[exps[:nv] + (exps[nv] - 1,)] = c
    quotient = MultiPoly(nv + 1, quot_terms)
    back = [MultiPoly.variable(nv, j) for j in range(nv)] + [MultiPoly.linear_form(a)]
    return quotient.compose(back)


def _symbol_rec(cone: UniCone, I: tuple, J: tuple, alpha: MultiIndex) -> MultiPoly:
    key = (I, J, _alpha_key(alpha))
    hit = cone._sym_cache.get(key)
    if hit is not None:
        return hit
    m = cone.ambient_dim
    if J == I:
        dec = deco(cone, I)
        sym = MultiPoly.const(m, Fraction(1))
        for e in I:
            sym = sym * MultiPoly.linear_form(dec.u[e]) ** alpha[e]
    else:
        dec = deco(cone, J)
        uvecs = [dec.u[e] for e in J]
        nv = len(J)
        ghat = [[qform(cone.qmat, ue, uf) for uf in uvecs] for ue in uvecs]
        pos = {e: i for i, e in enumerate(J)}

        def pairing(e: int) -> MultiPoly:
            # <xi(t), g_e> on the parametrized dual slice xi = sum t_f Q u_f;
            # the components of g_e outside the span of the u's pair to zero
            return MultiPoly.linear_form([ghat[f][pos[e]] for f in range(nv)])

        qu = [mat_vec(cone.qmat, uf) for uf in uvecs]
        to_t = [MultiPoly.linear_form([qu[f][i] for f in range(nv)]) for i in range(m)]
        num = MultiPoly.const(nv, Fraction(1))
        for e in I:
            num = num * pairing(e) ** alpha[e]
        inner = set(I)
        rest = [e for e in J if e not in inner]
        for size in range(len(I), len(J)):
            for picked in combinations(rest, size - len(I)):
                smaller = tuple(sorted(I + picked))
                part = _symbol_rec(cone, I, smaller, alpha).compose(to_t)
                for e in picked:
                    part = part * pairing(e)
                num = num - part
        for e in rest:
            num = divide_by_linear_form(num, [ghat[f][pos[e]] for f in range(nv)])
        ginv = matrix_inverse(ghat)
        back = []
        for i, e in enumerate(J):
            form = MultiPoly.zero(m)
            for f in range(nv):
                if ginv[i][f] != 0:
                    form = form + MultiPoly.linear_form(uvecs[f]) * ginv[i][f]
            back.append(form)
        sym = num.compose(back)
    cone._sym_cache[key] = sym
    return sym


def ibp_symbol(cone: UniCone, inner, outer, alpha) -> DiffOp:
    """Integration by parts operator computed through its symbol.

    For outer = inner the symbol is the product of the pairings with
    the perpendicular parts of the inner generators.  Otherwise the
    defining polynomial identity is restricted to the dual slice
    parametrized by the perpendicular basis of the outer set, the
    already known lower symbols are subtracted, and the remainder is
    divided exactly by the pairings with the extra generators.  This
    route never consults the peeling recursion of `ibp_op`; agreement
    of the two is a correctness check.
    """
    I, J, a = _check_ibp_args(cone, inner, outer, alpha)
    sym = _symbol_rec(cone, I, J, a)
    return _wrap(cone, J, a.total() - len(J) + len(I), sym)


def dual_projection(cone: UniCone, outer) -> tuple:
    """Matrix acting on dual coordinates that fixes the symbols of
    operators attached to the outer label set.

    It is the transpose of the Q-orthogonal projection whose kernel is
    spanned by the generators outside the outer set together with the
    Q-orthogonal complement of the span of all generators.
    """
    J = _subset(cone, outer)
    inside = set(J)
    kernel = [cone.gens[v] for v in cone.labels() if v not in inside]
    kernel.extend(nullspace_basis([mat_vec(cone.qmat, g) for g in cone.gens]))
    return transpose(orth_project(cone.qmat, kernel))


def ln_op(cone: UniCone, labels, n: int) -> DiffOp:
    """Euler-Maclaurin face operator with derivatives along generators.

    L_n(C; I) = (-1)^n sum over positive nu on I with |nu| = n of
    p_I(nu) times the mixed derivative of multi-order nu - e(I) along
    the generators.  L_0(C; {}) = 1; the operator is zero when the
    label set is empty (n >= 1) or larger than n.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    I = _subset(cone, labels)
    m = cone.ambient_dim
    if not I:
        sym = MultiPoly.const(m, Fraction(1)) if n == 0 else MultiPoly.zero(m)
        return DiffOp(m, 0, sym, ())
    dirs = tuple(cone.gens[e] for e in I)
    if len(I) > n:
        return DiffOp(m, 0, MultiPoly.zero(m), dirs)
    sign = Fraction(-1) ** n
    sym = MultiPoly.zero(m)
    for nu in positive_compositions(n, I):
        c = p_I_of_nu(nu) * sign
        if c == 0:
            continue
        term = MultiPoly.const(m, c)
        for e in I:
            term = term * MultiPoly.linear_form(cone.gens[e]) ** (nu[e] - 1)
        sym = sym + term
    return DiffOp(m, n - len(I), sym, dirs)


def bv_op_unimodular(cone: UniCone, face_labels, n: int) -> DiffOp:
    """Berline-Vergne operator D_n(C; F) of a unimodular cone at a face.

    The face is named by the labels of the generators NOT contained in
    it, so the full label set names the vertex and the empty set names
    the cone itself.  Defined for n at least the codimension of the
    face; homogeneous of order n minus that codimension, with
    derivatives perpendicular to the face.  D_0(C; C) = 1 and
    D_n(C; C) = 0 for n >= 1.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    out = _subset(cone, face_labels)
    m = cone.ambient_dim
    if not out:
        sym = MultiPoly.const(m, Fraction(1)) if n == 0 else MultiPoly.zero(m)
        return DiffOp(m, 0, sym, ())
    if n < len(out):
        raise ValueError("operator requires order at least the codimension of the face")
    sign = Fraction(-1) ** (n - len(out))
    total = MultiPoly.zero(m)
    for r in range(1, min(n, len(out)) + 1):
        for picked in combinations(out, r):
            for nu in positive_compositions(n, picked):
                c = p_I_of_nu(nu) * sign
                if c == 0:
                    continue
                alpha = nu - MultiIndex({e: 1 for e in picked})
                total = total + _ibp_rec(cone, picked, out, alpha, "min") * c
    return _wrap(cone, out, n - len(out), total)


def vertex_op(cone: UniCone, n: int) -> DiffOp:
    """Berline-Vergne operator of the cone at its vertex."""
    return bv_op_unimodular(cone, cone.labels(), n)
