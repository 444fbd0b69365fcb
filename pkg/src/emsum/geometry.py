"""Lattice polytopes: exact convex hulls, face lattices, tangent and
transverse cones, Delzant tests, and exact integration of polynomials over
faces.

Everything is computed in exact rational arithmetic over Z^m / Q^m with
m small (desk scale; the facet enumeration is a brute-force scan over
m-subsets of the input points, which is fine for the handful-of-vertices
polytopes this package targets).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactcore import (
    MultiPoly,
    as_matrix,
    as_vector,
    identity_matrix,
    lattice_basis_rational,
    mat_vec,
    matrix_rank,
    nullspace_basis,
    orth_project,
    primitive_vector,
    saturation_basis,
    solve_unique,
    transpose,
    vdot,
    vsub,
)

F = Fraction


# ---------------------------------------------------------------------------
# exact linear programming (phase-1 simplex, Bland's rule)


def simplex_feasible_point(amat: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Find x >= 0 with amat @ x = b, or None if the system is infeasible.

    Phase-1 simplex with Bland's pivoting rule, which cannot cycle, over
    exact rationals.
    """
    amat = [list(row) for row in as_matrix(amat)] if amat else []
    b = list(as_vector(b))
    nrows = len(amat)
    ncols = len(amat[0]) if amat else 0
    # normalize to b >= 0 so the artificial basis is feasible
    for i in range(nrows):
        if b[i] < 0:
            amat[i] = [-x for x in amat[i]]
            b[i] = -b[i]
    # tableau columns: original variables, then artificials
    tab = [amat[i] + [F(1) if j == i else F(0) for j in range(nrows)] + [b[i]]
           for i in range(nrows)]
    basis = [ncols + i for i in range(nrows)]
    # objective: minimize sum of artificials; reduced cost row relative to
    # the artificial basis
    cost = [F(0)] * ncols + [F(1)] * nrows + [F(0)]
    for i in range(nrows):
        cost = [c - t for c, t in zip(cost, tab[i])]
    while True:
        enter = next(
            (j for j in range(ncols + nrows) if cost[j] < 0),
            None,
        )
        if enter is None:
            break
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(nrows)
            if tab[i][enter] > 0
        ]
        if not ratios:
            return None  # unbounded; cannot happen for a phase-1 objective
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    objective = -cost[-1]
    if objective != 0:
        return None
    x = [F(0)] * ncols
    for i, var in enumerate(basis):
        if var < ncols:
            x[var] = tab[i][-1]
    return tuple(x)


def point_in_cone(point: Sequence[Fraction], gens: Sequence[Sequence[Fraction]]):
    """Nonnegative combination of gens equal to point, or None."""
    point = as_vector(point)
    if not gens:
        return () if all(x == 0 for x in point) else None
    amat = transpose([as_vector(g) for g in gens])
    return simplex_feasible_point(amat, point)


def cone_is_pointed(gens: Sequence[Sequence[Fraction]]) -> bool:
    """True when cone(gens) contains no line."""
    gens = [as_vector(g) for g in gens]
    if not gens:
        return True
    # a line exists iff 0 is a nontrivial nonnegative combination
    amat = [list(col) for col in transpose(gens)]
    amat.append([F(1)] * len(gens))
    rhs = [F(0)] * (len(amat) - 1) + [F(1)]
    return simplex_feasible_point(amat, rhs) is None


def positive_functional(gens: Sequence[Sequence[Fraction]]):
    """A rational xi with <xi, g> >= 1 for every generator, or None.

    Exists exactly when cone(gens) is pointed (for finitely many gens).
    """
    gens = [as_vector(g) for g in gens]
    if not gens:
        return ()
    m = len(gens[0])
    # xi = u - v with u, v >= 0; surplus s >= 0: <xi, g_i> - s_i = 1
    rows = []
    for i, g in enumerate(gens):
        row = list(g) + [-x for x in g]
        row += [F(-1) if j == i else F(0) for j in range(len(gens))]
        rows.append(row)
    rhs = [F(1)] * len(gens)
    sol = simplex_feasible_point(rows, rhs)
    if sol is None:
        return None
    return tuple(sol[j] - sol[m + j] for j in range(m))


# ---------------------------------------------------------------------------
# polytope data types


@dataclass(frozen=True)
class Face:
    """A face of a lattice polytope, recorded by its vertex indices."""

    index: int
    dim: int
    vertex_ids: tuple
    ref_vertex: tuple
    lineality_basis: tuple  # saturated basis of the direction space L(f)
    facet_ids: tuple  # facets of the polytope containing this face


@dataclass(frozen=True)
class PointedConeT:
    """A transverse cone, written in coordinates of its own lattice.

    `basis` holds rational ambient vectors B_1..B_d generating the projected
    lattice; `gens` are the primitive generator coordinate vectors in that
    basis (integers); `qmat` is the induced inner product B^T Q B.
    """

    dim: int
    gens: tuple
    basis: tuple
    qmat: tuple
    face_index: Optional[int] = None

    def ambient_gen(self, i: int) -> tuple:
        g = self.gens[i]
        m = len(self.basis[0]) if self.basis else 0
        out = [F(0)] * m
        for c, bvec in zip(g, self.basis):
            for j in range(m):
                out[j] += c * bvec[j]
        return tuple(out)


class LatticePolytope:
    """Full-dimensional lattice polytope with its exact face lattice.

    Facets are stored as pairs (alpha, c) of a primitive integer inward
    normal and integer offset, so P = {x : <alpha, x> >= c for all facets}.
    Faces are sorted by (dim, vertex_ids); the polytope itself is the last
    face.
    """

    def __init__(self, vertices, facets, faces, affine_data=None):
        self.ambient_dim = len(vertices[0])
        self.dim = self.ambient_dim
        self.vertices = vertices
        self.facets = facets
        self.faces = faces
        self.affine_data = affine_data

    def contains(self, point: Sequence[Fraction], dilation: int = 1) -> bool:
        """Membership of a rational point in dilation * P."""
        point = as_vector(point)
        return all(
            vdot(as_vector(alpha), point) >= dilation * c
            for alpha, c in self.facets
        )

    def face_by_vertex_ids(self, vertex_ids: Iterable[int]) -> Face:
        key = tuple(sorted(vertex_ids))
        for f in self.faces:
            if f.vertex_ids == key:
                return f
        raise KeyError(f"no face with vertices {key}")

    def faces_of_dim(self, d: int) -> list:
        return [f for f in self.faces if f.dim == d]

    @property
    def polytope_face(self) -> Face:
        return self.faces[-1]

    def __repr__(self) -> str:
        return (
            f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)}, "
            f"facets={len(self.facets)}, faces={len(self.faces)})"
        )


# ---------------------------------------------------------------------------
# convex hull and face lattice


def _affine_rank(points: Sequence[tuple]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [vsub(as_vector(p), as_vector(base)) for p in points[1:]]
    return matrix_rank(diffs)


def _facet_candidates(points: list, m: int) -> list:
    """All facet hyperplanes of conv(points), as (inward normal, offset)."""
    facets = set()
    for subset in itertools.combinations(range(len(points)), m):
        pts = [points[i] for i in subset]
        if _affine_rank(pts) != m - 1:
            continue
        base = as_vector(pts[0])
        diffs = [vsub(as_vector(p), base) for p in pts[1:]]
        kernel = nullspace_basis(diffs) if diffs else [
            v for v in identity_matrix(m)
        ]
        if len(kernel) != 1:
            continue
        normal = primitive_vector(kernel[0])
        c = vdot(as_vector(normal), base)
        values = [vdot(as_vector(normal), as_vector(p)) - c for p in points]
        if all(v >= 0 for v in values):
            facets.add((normal, c))
        elif all(v <= 0 for v in values):
            facets.add((tuple(-x for x in normal), -c))
    out = []
    for normal, c in sorted(facets):
        if c.denominator != 1:
            raise AssertionError("facet offsets of lattice polytopes are integers")
        out.append((normal, int(c)))
    return out


def build_polytope(points: Sequence[Sequence[int]], affine_hull: bool = False):
    """Exact convex hull of integer points, with the full face lattice.

    The hull must be full-dimensional in its ambient Z^m; otherwise a
    ValueError("not full-dimensional") is raised, unless affine_hull=True,
    in which case coordinates are rewritten over a saturated lattice basis
    of the affine hull and the (full-dimensional) result records the affine
    embedding as (origin, basis).
    """
    seen = []
    for p in points:
        vec = as_vector(p)
        if any(x.denominator != 1 for x in vec):
            raise ValueError("polytope vertices must have integer entries")
        tup = tuple(int(x) for x in vec)
        if tup not in seen:
            seen.append(tup)
    if not seen:
        raise ValueError("empty vertex set")
    pts = sorted(seen)
    m = len(pts[0])
    rank = _affine_rank(pts)
    if rank < m:
        if not affine_hull or rank == 0:
            raise ValueError("not full-dimensional")
        origin = pts[0]
        diffs = [vsub(as_vector(p), as_vector(origin)) for p in pts[1:]]
        basis = saturation_basis([d for d in diffs if any(d)])
        bmat = as_matrix(transpose(basis))
        reduced = []
        for p in pts:
            y = solve_unique(bmat, vsub(as_vector(p), as_vector(origin)))
            assert y is not None and all(c.denominator == 1 for c in y), (
                "saturated basis must give integer coordinates"
            )
            reduced.append(tuple(int(c) for c in y))
        inner = build_polytope(reduced)
        return LatticePolytope(
            inner.vertices,
            inner.facets,
            inner.faces,
            affine_data=(origin, tuple(basis)),
        )

    facets = _facet_candidates(pts, m)
    # vertices: points where the active normals span everything
    vertex_list = []
    for p in pts:
        active = [
            alpha for alpha, c in facets if vdot(as_vector(alpha), as_vector(p)) == c
        ]
        if matrix_rank(active) == m:
            vertex_list.append(p)
    vertices = tuple(sorted(vertex_list))
    vid = {v: i for i, v in enumerate(vertices)}

    facet_vsets = []
    for alpha, c in facets:
        vs = frozenset(
            vid[v] for v in vertices if vdot(as_vector(alpha), as_vector(v)) == c
        )
        facet_vsets.append(vs)

    # the face lattice is the meet-closure of the facet vertex sets
    all_sets = set(facet_vsets)
    frontier = set(facet_vsets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_vsets:
                c = a & b
                if c and c not in all_sets:
                    new.add(c)
        all_sets |= new
        frontier = new
    all_sets.add(frozenset(range(len(vertices))))

    faces = []
    for vset in all_sets:
        vlist = sorted(vset)
        face_pts = [vertices[i] for i in vlist]
        fdim = _affine_rank(face_pts)
        ref = min(face_pts)
        if fdim == 0:
            lin = ()
        else:
            diffs = [vsub(as_vector(p), as_vector(ref)) for p in face_pts]
            lin = tuple(
                tuple(int(x) for x in b)
                for b in saturation_basis([d for d in diffs if any(d)])
            )
        fid = tuple(
            i for i, vs in enumerate(facet_vsets) if vset <= vs
        )
        faces.append((fdim, tuple(vlist), ref, lin, fid))
    faces.sort(key=lambda t: (t[0], t[1]))
    face_objs = tuple(
        Face(index=i, dim=d, vertex_ids=vids, ref_vertex=ref,
             lineality_basis=lin, facet_ids=fid)
        for i, (d, vids, ref, lin, fid) in enumerate(faces)
    )

    euler = sum((-1) ** f.dim for f in face_objs)
    assert euler == 1, "face lattice must satisfy the Euler relation"

    return LatticePolytope(vertices, tuple(facets), face_objs)


# ---------------------------------------------------------------------------
# tangent and transverse cones


def _edges_at_vertex(poly: LatticePolytope, vertex_id: int) -> list:
    """Primitive directions of the polytope edges leaving a vertex."""
    dirs = []
    for f in poly.faces_of_dim(1):
        if vertex_id in f.vertex_ids:
            other = next(i for i in f.vertex_ids if i != vertex_id)
            d = vsub(
                as_vector(poly.vertices[other]),
                as_vector(poly.vertices[vertex_id]),
            )
            dirs.append(primitive_vector(d))
    return sorted(dirs)


def tangent_cone(poly: LatticePolytope, face: Face) -> tuple:
    """Tangent cone of the polytope along a face, at its reference vertex.

    Returns (generators, lineality_basis): the cone is
    cone(generators) + span(lineality_basis), generators being the primitive
    edge directions at the reference vertex.
    """
    ref_id = poly.vertices.index(face.ref_vertex)
    gens = _edges_at_vertex(poly, ref_id)
    return tuple(gens), face.lineality_basis


def transverse_cone(poly: LatticePolytope, face: Face, qmat=None) -> PointedConeT:
    """The transverse cone of a face: the tangent cone modulo the face
    direction space, realized on the Q-orthocomplement of L(f) with the
    projected lattice.

    The projected lattice is the image of Z^m under the Q-orthogonal
    projection (in general finer than the intersection with Z^m); the
    generators are returned as primitive integer vectors in its basis.
    """
    m = poly.ambient_dim
    qmat = identity_matrix(m) if qmat is None else as_matrix(qmat)
    if face.dim == poly.dim:
        return PointedConeT(dim=0, gens=(), basis=(), qmat=(),
                            face_index=face.index)
    proj = orth_project(qmat, [as_vector(b) for b in face.lineality_basis])
    images = [mat_vec(proj, as_vector(e)) for e in identity_matrix(m)]
    basis = lattice_basis_rational([v for v in images if any(v)])
    d = poly.dim - face.dim
    assert len(basis) == d, "projected lattice rank must be the codimension"
    bmat = as_matrix(transpose(basis))
    gens, lineality = tangent_cone(poly, face)
    coord_gens = []
    for g in gens:
        img = mat_vec(proj, as_vector(g))
        if not any(img):
            continue
        y = solve_unique(bmat, img)
        assert y is not None and all(c.denominator == 1 for c in y), (
            "projected generators must be lattice points"
        )
        cg = primitive_vector(y)
        if cg not in coord_gens:
            coord_gens.append(cg)
    coord_gens.sort()
    assert cone_is_pointed(coord_gens), "transverse cones are pointed"
    qd = tuple(
        tuple(vdot(bi, mat_vec(qmat, bj)) for bj in basis) for bi in basis
    )
    return PointedConeT(
        dim=d,
        gens=tuple(coord_gens),
        basis=tuple(basis),
        qmat=qd,
        face_index=face.index,
    )


def is_delzant(poly: LatticePolytope) -> bool:
    """True when every vertex cone is unimodular (smooth/Delzant)."""
    from .exactcore import det

    m = poly.ambient_dim
    for i, v in enumerate(poly.vertices):
        dirs = _edges_at_vertex(poly, i)
        if len(dirs) != m:
            return False
        if abs(det(as_matrix(dirs))) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# pulling triangulations and exact integration


def _pulling_triangulation(poly: LatticePolytope, pull_rule: str = "min") -> list:
    """Pulling triangulation of the polytope into simplices, as tuples of
    vertex ids.  The pull vertex of every face is its lex-min vertex (or
    lex-max under pull_rule="max"), which makes the simplices of different
    faces compatible.
    """
    cache: dict = {}
    choose = min if pull_rule == "min" else max

    def tri(face: Face) -> list:
        if face.index in cache:
            return cache[face.index]
        vids = face.vertex_ids
        if len(vids) == face.dim + 1:
            out = [vids]
        else:
            pull = choose(vids, key=lambda i: poly.vertices[i])
            out = []
            for g in poly.faces:
                if g.dim == face.dim - 1 and set(g.vertex_ids) <= set(vids):
                    if pull not in g.vertex_ids:
                        for simplex in tri(g):
                            out.append(tuple(sorted(simplex + (pull,))))
        cache[face.index] = out
        return out

    return tri(poly.polytope_face)


def _simplex_integral(vertices: list, phi: MultiPoly) -> Fraction:
    """Exact integral of phi over the simplex conv(vertices) in R^k."""
    k = phi.nvars
    v0 = as_vector(vertices[0])
    cols = [vsub(as_vector(v), v0) for v in vertices[1:]]
    from .exactcore import det

    mat = as_matrix(transpose(cols))
    volume_factor = abs(det(mat))
    if volume_factor == 0:
        return F(0)
    # substitute y = v0 + M z and integrate monomials over the standard simplex
    images = []
    for i in range(k):
        terms = {(0,) * k: v0[i]}
        for j in range(k):
            e = tuple(1 if t == j else 0 for t in range(k))
            coeff = mat[i][j]
            if coeff:
                terms[e] = terms.get(e, F(0)) + coeff
        images.append(MultiPoly(k, terms))
    composed = phi.compose(images)
    total = F(0)
    for exps, coeff in composed.terms.items():
        num = 1
        for e in exps:
            num *= math.factorial(e)
        total += coeff * F(num, math.factorial(sum(exps) + k))
    return volume_factor * total


def integrate_poly_over_face(poly: LatticePolytope, face: Face, phi: MultiPoly) -> Fraction:
    """Integral of phi over a face against the lattice measure of the face.

    The face is rewritten in coordinates of a saturated basis of its
    direction space, where the induced lattice becomes Z^k; the measure is
    the Lebesgue measure of those coordinates (faces of dimension 0 just
    evaluate phi).
    """
    if phi.nvars != poly.ambient_dim:
        raise ValueError("dimension mismatch")
    if face.dim == 0:
        return phi.eval(as_vector(face.ref_vertex))
    v0 = as_vector(face.ref_vertex)
    basis = [as_vector(b) for b in face.lineality_basis]
    bmat = as_matrix(transpose(basis))
    k = face.dim
    face_vertices = []
    for i in face.vertex_ids:
        y = solve_unique(bmat, vsub(as_vector(poly.vertices[i]), v0))
        assert y is not None and all(c.denominator == 1 for c in y), (
            "face vertices must be lattice points of the face lattice basis"
        )
        face_vertices.append(tuple(int(c) for c in y))
    # phi restricted to the face in y-coordinates
    images = []
    for i in range(poly.ambient_dim):
        terms = {(0,) * k: v0[i]}
        for j in range(k):
            e = tuple(1 if t == j else 0 for t in range(k))
            if basis[j][i]:
                terms[e] = terms.get(e, F(0)) + basis[j][i]
        images.append(MultiPoly(k, terms))
    phi_y = phi.compose(images)
    sub = build_polytope(face_vertices)
    total = F(0)
    for simplex in _pulling_triangulation(sub):
        total += _simplex_integral([sub.vertices[i] for i in simplex], phi_y)
    return total


# ---------------------------------------------------------------------------
# inclusion-exclusion window check


def euler_brion_window_check(
    poly: LatticePolytope,
    n_values: Sequence[int] = (1, 2, 3),
    margin: int = 1,
) -> bool:
    """Verify, on a window of sample points, the inclusion-exclusion identity

        [x in N*P] = sum_{faces g} (-1)^{dim g} [x in C^+(N g)],

    where C^+(N g) imposes the inequalities of exactly the facets containing
    g (the polytope face itself imposes none).  Points sampled are the
    integer points of a margin-padded bounding box of N*P together with
    their shifts by the rational offset (1/2, 1/3, 1/5, ...).
    """
    m = poly.ambient_dim
    offsets = [F(1, p) for p in (2, 3, 5, 7, 11, 13)[:m]]
    facet_data = [(as_vector(alpha), c) for alpha, c in poly.facets]

    def member(face: Face, point, n: int) -> bool:
        return all(
            vdot(facet_data[h][0], point) >= n * facet_data[h][1]
            for h in face.facet_ids
        )

    for n in n_values:
        lo = [min(v[i] for v in poly.vertices) * n - margin for i in range(m)]
        hi = [max(v[i] for v in poly.vertices) * n + margin for i in range(m)]
        for base in itertools.product(
            *[range(lo[i], hi[i] + 1) for i in range(m)]
        ):
            for shift in (None, offsets):
                point = (
                    as_vector(base)
                    if shift is None
                    else tuple(F(b) + o for b, o in zip(base, offsets))
                )
                lhs = 1 if poly.contains(point, dilation=n) else 0
                rhs = sum(
                    (-1) ** f.dim * (1 if member(f, point, n) else 0)
                    for f in poly.faces
                )
                if lhs != rhs:
                    return False
    return True
