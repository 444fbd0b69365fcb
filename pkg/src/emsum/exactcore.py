"""Exact arithmetic substrate: rational linear algebra, integer lattice
normal forms, sparse multivariate polynomials, truncated power series, and
small cyclotomic fields.

Every computation in this package routes through the types defined here and
all of them are exact.  Scalars are `fractions.Fraction`; vectors are tuples
of Fractions; matrices are tuples of row tuples.  The two coefficient rings
that occur are Q (Fraction) and the cyclotomic fields Q(omega) for omega a
primitive q-th root of unity with 2 <= q <= 12 (CycloElem).  No floating
point appears anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

CYCLO_MAX_ORDER = 12


# ---------------------------------------------------------------------------
# scalar / vector / matrix construction


def as_scalar(x: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


def as_vector(xs: Iterable[ScalarLike]) -> tuple:
    return tuple(as_scalar(x) for x in xs)


def as_matrix(rows: Iterable[Iterable[ScalarLike]]) -> tuple:
    mat = tuple(as_vector(r) for r in rows)
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise ValueError("matrix rows must all have the same length")
    return mat


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c: Fraction, v: Sequence[Fraction]) -> tuple:
    return tuple(c * a for a in v)


def vdot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def identity_matrix(m: int) -> tuple:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(m))
        for i in range(m)
    )


def transpose(mat: Sequence[Sequence[Fraction]]) -> tuple:
    return tuple(zip(*mat)) if mat else ()


def mat_vec(mat: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> tuple:
    return tuple(vdot(row, v) for row in mat)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def qform(q: Sequence[Sequence[Fraction]], u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """The bilinear form u^T Q v."""
    return vdot(u, mat_vec(q, v))


# ---------------------------------------------------------------------------
# rational Gaussian elimination


def rref(mat: Sequence[Sequence[Fraction]]) -> tuple:
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def matrix_rank(mat: Sequence[Sequence[Fraction]]) -> int:
    if not mat:
        return 0
    return len(rref(mat)[1])


def det(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("determinant requires a square matrix")
    rows = [list(r) for r in mat]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        piv = rows[c][c]
        result *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * result


def solve_unique(mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve mat @ x = rhs when the solution exists and is unique.

    Returns the solution vector, or None if the system is inconsistent.
    Raises if the columns are dependent (solution not unique).
    """
    ncols = len(mat[0]) if mat else 0
    aug = tuple(tuple(row) + (b,) for row, b in zip(mat, rhs, strict=True))
    reduced, pivots = rref(aug)
    if ncols in pivots:
        return None
    if len(pivots) != ncols:
        raise ValueError("solve_unique requires independent columns")
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][ncols]
    return tuple(x)


def matrix_inverse(mat: Sequence[Sequence[Fraction]]) -> tuple:
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("inverse requires a square matrix")
    aug = tuple(tuple(row) + tuple(identity_matrix(n)[i]) for i, row in enumerate(mat))
    reduced, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in reduced)


def nullspace_basis(mat: Sequence[Sequence[Fraction]]) -> list:
    """Rational basis of the right kernel, in a canonical (rref) form."""
    if not mat:
        return []
    ncols = len(mat[0])
    reduced, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def is_symmetric(mat: Sequence[Sequence[Fraction]]) -> bool:
    n = len(mat)
    return all(len(r) == n for r in mat) and all(
        mat[i][j] == mat[j][i] for i in range(n) for j in range(i + 1, n)
    )


def is_spd(mat: Sequence[Sequence[Fraction]]) -> bool:
    """Symmetric positive definite, decided by leading principal minors."""
    if not is_symmetric(mat):
        return False
    for k in range(1, len(mat) + 1):
        minor = tuple(row[:k] for row in mat[:k])
        if det(minor) <= 0:
            return False
    return True


def orth_project(qmat: Sequence[Sequence[Fraction]], basis: Sequence[Sequence[Fraction]]) -> tuple:
    """Matrix of the Q-orthogonal projection onto the Q-orthocomplement of
    span(basis), acting on column vectors of the ambient space.

    An empty basis gives the identity.  The dual (covector-side) projection
    is the transpose of the returned matrix.
    """
    qmat = as_matrix(qmat)
    if not is_spd(qmat):
        raise ValueError("inner product matrix must be symmetric positive definite")
    m = len(qmat)
    basis = [as_vector(b) for b in basis]
    if not basis:
        return identity_matrix(m)
    if any(len(b) != m for b in basis):
        raise ValueError("basis vectors must match the inner product dimension")
    if matrix_rank(basis) != len(basis):
        raise ValueError("subspace basis must be linearly independent")
    bmat = transpose(basis)  # m x k, columns are the basis vectors
    gram = tuple(
        tuple(qform(qmat, bi, bj) for bj in basis) for bi in basis
    )
    ginv = matrix_inverse(gram)
    # P = I - B G^{-1} B^T Q
    correction = mat_mul(mat_mul(bmat, ginv), mat_mul(transpose(bmat), qmat))
    proj = tuple(
        tuple(identity_matrix(m)[i][j] - correction[i][j] for j in range(m))
        for i in range(m)
    )
    assert mat_mul(proj, proj) == proj, "projector must be idempotent"
    return proj


# ---------------------------------------------------------------------------
# integer lattices: Hermite and Smith normal forms


def _require_integer_vectors(generators: Sequence[Sequence[ScalarLike]]) -> list:
    gens = []
    for g in generators:
        vec = as_vector(g)
        if any(x.denominator != 1 for x in vec):
            raise ValueError("lattice generators must have integer entries")
        gens.append(tuple(int(x) for x in vec))
    if gens and any(len(g) != len(gens[0]) for g in gens):
        raise ValueError("lattice generators must share one ambient dimension")
    return gens


def _hnf_columns(cols: list) -> list:
    """Column-style Hermite normal form of an integer column list.

    Pivot entries are positive; in a pivot's row, entries in earlier columns
    are reduced into [0, pivot).  Zero columns are dropped.
    """
    cols = [list(c) for c in cols]
    m = len(cols[0]) if cols else 0
    lead = 0
    for r in range(m):
        if lead >= len(cols):
            break
        while True:
            nz = [j for j in range(lead, len(cols)) if cols[j][r] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][r]))
            cols[lead], cols[jmin] = cols[jmin], cols[lead]
            done = True
            for j in range(lead + 1, len(cols)):
                if cols[j][r] != 0:
                    f = cols[j][r] // cols[lead][r]
                    cols[j] = [a - f * b for a, b in zip(cols[j], cols[lead])]
                    if cols[j][r] != 0:
                        done = False
            if done:
                break
        if lead < len(cols) and cols[lead][r] != 0:
            if cols[lead][r] < 0:
                cols[lead] = [-a for a in cols[lead]]
            piv = cols[lead][r]
            for j in range(lead):
                f = cols[j][r] // piv
                if f:
                    cols[j] = [a - f * b for a, b in zip(cols[j], cols[lead])]
            lead += 1
    for j in range(lead, len(cols)):
        assert all(a == 0 for a in cols[j]), "non-pivot columns must vanish"
    return [tuple(c) for c in cols[:lead]]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple:
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with D = U @ mat @ V, U and V unimodular, and the
    diagonal of D nonnegative with d_i | d_{i+1}.
    """
    a = [[int(x) for x in row] for row in mat]
    m = len(a)
    k = len(a[0]) if a else 0
    u = [list(r) for r in ((1 if i == j else 0 for j in range(m)) for i in range(m))]
    v = [list(r) for r in ((1 if i == j else 0 for j in range(k)) for i in range(k))]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, k):
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, m)
            for j in range(t, k)
            if a[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                add_row(t, i, -(a[i][t] // a[t][t]))
                dirty = dirty or a[i][t] != 0
        for j in range(t + 1, k):
            if a[t][j] != 0:
                add_col(t, j, -(a[t][j] // a[t][t]))
                dirty = dirty or a[t][j] != 0
        if dirty:
            continue
        bad = next(
            (
                (i, j)
                for i in range(t + 1, m)
                for j in range(t + 1, k)
                if a[i][j] % a[t][t] != 0
            ),
            None,
        )
        if bad is not None:
            add_row(bad[0], t, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    umat = tuple(tuple(x) for x in u)
    dmat = tuple(tuple(x) for x in a)
    vmat = tuple(tuple(x) for x in v)
    return umat, dmat, vmat


def hnf_lattice_basis(generators: Sequence[Sequence[ScalarLike]]) -> tuple:
    """Canonical basis of the lattice generated by integer vectors.

    Returns (basis, index) where basis is the column-style Hermite normal
    form of the generated lattice (positive pivots, hence positive
    determinant when square) and index is the index of the lattice inside
    the saturated lattice span(generators) cap Z^m.
    """
    gens = _require_integer_vectors(generators)
    if not gens or all(all(x == 0 for x in g) for g in gens):
        raise ValueError("empty generating set")
    basis = _hnf_columns(gens)
    mat = transpose([as_vector(g) for g in gens])  # m x k, generators as columns
    _, dmat, _ = smith_normal_form(mat)
    index = 1
    for i in range(min(len(dmat), len(dmat[0]) if dmat else 0)):
        if dmat[i][i] != 0:
            index *= dmat[i][i]
    return [tuple(int(x) for x in b) for b in basis], int(index)


def saturation_basis(generators: Sequence[Sequence[ScalarLike]]) -> list:
    """Canonical basis of span_Q(generators) cap Z^m."""
    gens = _require_integer_vectors(generators)
    if not gens or all(all(x == 0 for x in g) for g in gens):
        raise ValueError("empty generating set")
    mat = transpose([as_vector(g) for g in gens])  # m x k
    u, dmat, _ = smith_normal_form([[int(x) for x in row] for row in mat])
    r = sum(
        1
        for i in range(min(len(dmat), len(dmat[0])))
        if dmat[i][i] != 0
    )
    uinv = matrix_inverse(as_matrix(u))
    cols = [tuple(uinv[i][j] for i in range(len(uinv))) for j in range(r)]
    int_cols = [[int(x) for x in c] for c in cols]
    assert all(x.denominator == 1 for c in cols for x in c), "U is unimodular"
    return _hnf_columns(int_cols)


def lattice_basis_rational(vectors: Sequence[Sequence[Fraction]]) -> list:
    """Basis of the (rank-d) subgroup of Q^m generated by rational vectors.

    Scales to integers, takes the Hermite basis, and scales back, so the
    result generates exactly the same group.
    """
    vecs = [as_vector(v) for v in vectors]
    vecs = [v for v in vecs if not vec_is_zero(v)]
    if not vecs:
        raise ValueError("empty generating set")
    denom = math.lcm(*[x.denominator for v in vecs for x in v])
    int_vecs = [[int(x * denom) for x in v] for v in vecs]
    basis = _hnf_columns(int_vecs)
    return [tuple(Fraction(x, denom) for x in b) for b in basis]


def primitive_vector(v: Sequence[ScalarLike]) -> tuple:
    """The primitive integer vector on the ray through v (v must be rational
    and nonzero)."""
    vec = as_vector(v)
    if vec_is_zero(vec):
        raise ValueError("zero vector has no primitive representative")
    denom = math.lcm(*[x.denominator for x in vec])
    ints = [int(x * denom) for x in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


def _monomial_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial: {exponent tuple: coefficient}.

    Coefficients are Fractions (or CycloElem for twisted series work); terms
    with zero coefficient are never stored.  Instances are treated as
    immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError("exponent tuples must be nonnegative and match nvars")
            if isinstance(coeff, (int, str)):
                coeff = as_scalar(coeff)
            if exps in clean:
                coeff = clean[exps] + coeff
            if coeff:
                clean[exps] = coeff
            else:
                clean.pop(exps, None)
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[ScalarLike]) -> "MultiPoly":
        coeffs = as_vector(coeffs)
        n = len(coeffs)
        return cls(
            n,
            {
                tuple(1 if j == i else 0 for j in range(n)): c
                for i, c in enumerate(coeffs)
                if c
            },
        )

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=Fraction(1)) -> "MultiPoly":
        exps = tuple(int(e) for e in exps)
        return cls(len(exps), {exps: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.const(self.nvars, other)
        if self.nvars != other.nvars:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        return self + (-other if isinstance(other, MultiPoly) else -as_scalar(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(
                self.nvars, {e: c * other for e, c in self.terms.items()}
            )
        if self.nvars != other.nvars:
            raise ValueError("dimension mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.nvars, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def eval(self, point: Sequence) -> object:
        """Evaluate at a point (entries rational or CycloElem)."""
        if len(point) != self.nvars:
            raise ValueError("dimension mismatch")
        total = Fraction(0)
        powers = [{0: Fraction(1)} for _ in range(self.nvars)]
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    term = term * cache[e]
            total = total + term
        return total

    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = coeff * exps[i]
        return MultiPoly(self.nvars, out)

    def deriv(self, beta: Sequence[int]) -> "MultiPoly":
        """Mixed partial derivative of multi-order beta."""
        if len(beta) != self.nvars:
            raise ValueError("dimension mismatch")
        out = {}
        for exps, coeff in self.terms.items():
            if all(e >= b for e, b in zip(exps, beta)):
                factor = 1
                for e, b in zip(exps, beta):
                    for t in range(e - b + 1, e + 1):
                        factor *= t
                out[tuple(e - b for e, b in zip(exps, beta))] = coeff * factor
        return MultiPoly(self.nvars, out)

    def directional_deriv(self, u: Sequence[Fraction]) -> "MultiPoly":
        """Derivative along the vector u: sum_i u_i d/dx_i."""
        u = as_vector(u)
        out = MultiPoly.zero(self.nvars)
        for i, c in enumerate(u):
            if c:
                out = out + self.partial(i) * c
        return out

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute x_i -> images[i] (all images share one variable count)."""
        if len(images) != self.nvars:
            raise ValueError("dimension mismatch")
        target = images[0].nvars if images else 0
        if any(img.nvars != target for img in images):
            raise ValueError("substitution images must share one variable count")
        power_cache: dict = {}

        def img_power(i: int, e: int) -> "MultiPoly":
            if (i, e) not in power_cache:
                power_cache[(i, e)] = images[i] ** e
            return power_cache[(i, e)]

        out = MultiPoly.zero(target)
        for exps, coeff in self.terms.items():
            term = MultiPoly.const(target, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * img_power(i, e)
            out = out + term
        return out

    def map_coeffs(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def iter_terms(self):
        """Terms in graded lexicographic order (degree, then exponents)."""
        for exps in sorted(self.terms, key=_monomial_key):
            yield exps, self.terms[exps]

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exps, coeff in self.iter_terms():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            bits.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(bits) + ")"


def mpoly_apply_diffop(op, phi: MultiPoly) -> MultiPoly:
    """Apply a constant-coefficient differential operator to a polynomial.

    `op` is duck-typed: it must expose `dim` and `symbol`, the symbol being a
    MultiPoly in the dual variables whose monomial xi^beta acts as the mixed
    partial d^beta.
    """
    symbol = op.symbol
    if symbol.nvars != phi.nvars or getattr(op, "dim", phi.nvars) != phi.nvars:
        raise ValueError("dimension mismatch")
    out = MultiPoly.zero(phi.nvars)
    for beta, coeff in symbol.terms.items():
        out = out + phi.deriv(beta) * coeff
    return out


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series sum_{n<=order} coeffs[n] z^n.

    Coefficients live in Q or a cyclotomic field; the ring just needs +,*,/
    and a truthiness test on elements.
    """

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        return self.coeffs[n]

    def mul(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = []
        for n in range(order + 1):
            acc = self.coeffs[0] * other.coeffs[n]
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * other.coeffs[n - k]
            out.append(acc)
        return PowerSeries(tuple(out))

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; the constant term must be invertible."""
        a0 = self.coeffs[0]
        if not a0:
            raise ValueError("series with zero constant term has no inverse")
        inv0 = 1 / a0 if isinstance(a0, Fraction) else a0.inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = self.coeffs[1] * out[n - 1]
            for k in range(2, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-(inv0 * acc) if isinstance(a0, Fraction) else -(acc * inv0))
        return PowerSeries(tuple(out))


def series_coeffs_todd(n_max: int) -> list:
    """Coefficients b_0..b_{n_max} of Todd(-z) = -z/(1 - e^z) = sum b_n z^n / n!.

    b_0 = 1, b_1 = -1/2, b_2 = 1/6, and b_n = 0 for odd n >= 3.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    denom = PowerSeries(
        tuple(Fraction(1, math.factorial(j + 1)) for j in range(n_max + 1))
    )
    inv = denom.inverse()
    return [math.factorial(n) * inv.coeff(n) for n in range(n_max + 1)]


def series_coeffs_twisted_todd(q: int, omega, n_max: int) -> list:
    """Coefficients of the twisted Todd series tau_omega(s) = s/(1 - omega e^{-s})
    for omega a primitive q-th root of unity (as CycloElem), q >= 2.

    Returns [b^omega_1, ..., b^omega_{n_max}] where b^omega_n is the
    coefficient of s^n.  In particular b^omega_1 = 1/(1 - omega).
    """
    if not 2 <= q <= CYCLO_MAX_ORDER:
        raise ValueError(f"cyclotomic order must be between 2 and {CYCLO_MAX_ORDER}")
    if omega is None:
        omega = CycloElem.omega(q)
    if not isinstance(omega, CycloElem) or omega.order != q:
        raise ValueError("omega must be a CycloElem of order q")
    if omega == 1:
        raise ValueError("twisted Todd undefined at omega = 1 (pole)")
    if not omega.is_primitive_root():
        raise ValueError("omega must be a primitive q-th root of unity")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    one = CycloElem.one(q)
    # 1 - omega e^{-s} = (1 - omega) + omega * sum_{k>=1} (-1)^{k+1} s^k / k!
    denom = [one - omega]
    for k in range(1, n_max):
        sign = Fraction((-1) ** (k + 1), math.factorial(k))
        denom.append(omega * sign)
    inv = PowerSeries(tuple(denom)).inverse()
    # tau = s * inv, so the coefficient of s^n is inv.coeff(n-1)
    return [inv.coeff(n - 1) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# cyclotomic fields Q(omega), omega a primitive q-th root of unity, q <= 12


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple:
    num = list(num)
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = _poly_trim(num)
    while len(rem) >= len(den):
        f = rem[-1] / den[-1]
        shift = len(rem) - len(den)
        quot[shift] += f
        rem = _poly_trim(
            [
                r - f * den[i - shift] if 0 <= i - shift < len(den) else r
                for i, r in enumerate(rem)
            ]
        )
    return _poly_trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> tuple:
    """Coefficients (low to high) of the q-th cyclotomic polynomial."""
    if q < 1:
        raise ValueError("cyclotomic order must be positive")
    if q == 1:
        return (Fraction(-1), Fraction(1))
    num = [Fraction(0)] * (q + 1)
    num[0], num[q] = Fraction(-1), Fraction(1)
    den = [Fraction(1)]
    for d in range(1, q):
        if q % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    quot, rem = _poly_divmod(num, den)
    assert not rem, "x^q - 1 is divisible by the product of lower cyclotomics"
    return tuple(quot)


class CycloElem:
    """Element of Q(omega) = Q[x] / Phi_q(x), omega a primitive q-th root of
    unity, 2 <= q <= 12.  Stored as the canonical reduced coefficient tuple
    of length deg Phi_q.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, q: int, coeffs: Sequence[ScalarLike]):
        if not 1 <= q <= CYCLO_MAX_ORDER:
            raise ValueError(f"cyclotomic order must be between 1 and {CYCLO_MAX_ORDER}")
        phi = cyclotomic_polynomial(q)
        deg = len(phi) - 1
        poly = [as_scalar(c) for c in coeffs]
        _, rem = _poly_divmod(poly, list(phi))
        rem = rem + [Fraction(0)] * (deg - len(rem))
        self.order = q
        self.coeffs = tuple(rem)

    @classmethod
    def zero(cls, q: int) -> "CycloElem":
        return cls(q, [])

    @classmethod
    def one(cls, q: int) -> "CycloElem":
        return cls(q, [1])

    @classmethod
    def from_rational(cls, q: int, r: ScalarLike) -> "CycloElem":
        return cls(q, [as_scalar(r)])

    @classmethod
    def omega(cls, q: int) -> "CycloElem":
        """The canonical primitive q-th root of unity, the class of x."""
        return cls(q, [0, 1])

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem.from_rational(self.order, other)
        return None

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.order, _poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        """Field inverse via the extended Euclidean algorithm in Q[x].

        Phi_q is irreducible over Q, so any nonzero residue is a unit.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")

        def poly_sub(a: list, b: list) -> list:
            n = max(len(a), len(b))
            a = a + [Fraction(0)] * (n - len(a))
            b = b + [Fraction(0)] * (n - len(b))
            return _poly_trim([x - y for x, y in zip(a, b)])

        phi = list(cyclotomic_polynomial(self.order))
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, _poly_mul(quot, s1))
            if not r1:
                raise ArithmeticError("gcd degenerated; Phi_q should be irreducible")
        lead = r1[0]
        inv_poly = [c / lead for c in s1]
        return CycloElem(self.order, inv_poly)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "CycloElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloElem.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_primitive_root(self) -> bool:
        """True when self is a primitive root of unity of exactly its order."""
        if self ** self.order != CycloElem.one(self.order):
            return False
        for d in range(1, self.order):
            if self.order % d == 0 and self ** d == CycloElem.one(self.order):
                return False
        return True

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"CycloElem(q={self.order}, {list(self.coeffs)})"
