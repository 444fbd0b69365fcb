"""Closed-form coefficients versus the general engine.

Three families of shortcut formulas are implemented alongside the general
face-by-face engine:

  * A_0 = integral of phi over P and A_1 = half the boundary integral,
    for any Delzant polytope;
  * A_2 for any Delzant polytope under the standard inner product,
    as facet plus codimension-2 terms;
  * every A_n (n >= 2) for two-dimensional Delzant polygons, under any
    inner product, as Bernoulli-weighted edge and vertex terms.

This script evaluates each against expansion() and shows that totals do
not depend on the inner product even though individual face terms do.
"""

from fractions import Fraction as F

from emsum import (
    MultiPoly,
    build_polytope,
    closed_form_2d,
    closed_form_A0_A1,
    closed_form_A2,
    expansion,
)

cube = build_polytope([(x, y, z) for x in (0, 1) for y in (0, 1)
                       for z in (0, 1)])
one3 = MultiPoly.const(3, F(1))
print("unit cube, phi = 1:")
a0, a1 = closed_form_A0_A1(cube, one3)
a2 = closed_form_A2(cube, one3)
print(f"  closed forms: A_0 = {a0}, A_1 = {a1}, A_2 = {a2}")
res = expansion(cube, one3)
print(f"  engine      : {[str(c) for c in res.coefficients]}")
print("  (1 + 3/N + 3/N^2 + 1/N^3 counts (N+1)^3 lattice points)")
print()

trap = build_polytope([(0, 0), (2, 0), (2, 1), (0, 1)])
x = MultiPoly.variable(2, 0)
y = MultiPoly.variable(2, 1)
phi = x * y

print("trapezoid, phi = x*y, all orders from the 2D closed form:")
res = expansion(trap, phi)
for n, a in res.items():
    if n >= 2:
        cf = closed_form_2d(trap, phi, n)
        marker = "==" if cf == a else "!="
        print(f"  A_{n}: closed form {cf} {marker} engine {a}")
print()

print("inner product independence of the totals:")
qmat = ((2, 1), (1, 2))
res_q = expansion(trap, phi, qmat=qmat)
print(f"  standard Q : {[str(c) for c in res.coefficients]}")
print(f"  skew Q     : {[str(c) for c in res_q.coefficients]}")
print()
print("but the per-face splits differ; A_2 attributed to each face:")
face_ids = sorted(
    {k[1] for k in res.per_face if k[0] == 2}
    | {k[1] for k in res_q.per_face if k[0] == 2}
)
for face_id in face_ids:
    face = trap.faces[face_id]
    verts = tuple(trap.vertices[i] for i in face.vertex_ids)
    std = res.per_face.get((2, face_id), F(0))
    skw = res_q.per_face.get((2, face_id), F(0))
    print(f"  dim {face.dim} {verts}: standard {std}, skew {skw}")
