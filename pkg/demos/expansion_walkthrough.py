"""Walkthrough: the Euler-Maclaurin expansion of a Riemann sum.

For a lattice polytope P and a polynomial phi, the scaled lattice sum

    R_N = N^{-dim P} * sum over gamma in (N*P) cap Z^m of phi(gamma / N)

is, for polynomial phi, an exact finite sum of powers of 1/N:

    R_N = A_0 + A_1/N + A_2/N^2 + ... + A_{dim P + deg phi}/N^{dim P + deg phi}

This script computes the A_n for the trapezoid conv{(0,0),(2,0),(2,1),(0,1)}
and the polynomial phi = x + y^2, shows where each coefficient comes from
face by face, and reproduces R_N exactly for small N.
"""

from fractions import Fraction as F

from emsum import MultiPoly, build_polytope, expansion, riemann_sum

poly = build_polytope([(0, 0), (2, 0), (2, 1), (0, 1)])
x = MultiPoly.variable(2, 0)
y = MultiPoly.variable(2, 1)
phi = x + y * y

print("polytope: trapezoid conv{(0,0),(2,0),(2,1),(0,1)}")
print("phi     : x + y^2")
print()

res = expansion(poly, phi)
print("expansion coefficients (exact rationals):")
for n, a in res.items():
    print(f"  A_{n} = {a}")
print()

print("per-face contributions to each A_n")
print("(a face is named by the vertices it contains):")
for n, a in res.items():
    print(f"  A_{n} = {a}")
    rows = sorted(k[1] for k in res.per_face if k[0] == n)
    for face_id in rows:
        face = poly.faces[face_id]
        verts = tuple(poly.vertices[i] for i in face.vertex_ids)
        print(f"      face dim {face.dim} {verts}: "
              f"{res.per_face[(n, face_id)]}")
print()

print("the expansion is exact for every N, not just asymptotically:")
for n_dil in (1, 2, 3, 5):
    direct = riemann_sum(poly, phi, n_dil)
    from_coeffs = sum(
        a / F(n_dil) ** n for n, a in res.items()
    )
    marker = "==" if direct == from_coeffs else "!="
    print(f"  N={n_dil}: R_N = {direct} {marker} "
          f"sum A_n/N^n = {from_coeffs}")
