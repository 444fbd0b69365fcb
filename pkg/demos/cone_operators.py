"""The differential operators attached to a unimodular cone.

Every face of a Delzant polytope sees a unimodular cone transverse to it,
and the expansion engine attaches to each such cone a constant-coefficient
differential operator per order n.  The operator is represented by its
symbol, a polynomial in the dual variables xi_1, ..., xi_m; a monomial
xi^beta acts as the mixed partial derivative of multi-index beta along the
cone's stored direction vectors.

This script prints the low-order operators for two cones and checks the
homogeneity on display: the order-n symbol of a d-dimensional cone has
degree n - d... once n >= d; below that the operator vanishes.
"""

from emsum import UniCone, vertex_op

print("standard 2D orthant, generators (1,0) and (0,1):")
cone = UniCone([(1, 0), (0, 1)])
for n in range(2, 6):
    op = vertex_op(cone, n)
    print(f"  order {n}: symbol = {op.symbol}")
print()
print("(orders below the cone dimension carry no vertex term, so the")
print(" sequence starts at n = 2 here)")
print()
print("the order-2 value 1/4 is the product of two half-line corrections")
print("(-b_1/1! = 1/2 per edge); by order 4 the directions mix.")
print()

print("skew unimodular cone, generators (1,0) and (1,1):")
skew = UniCone([(1, 0), (1, 1)])
for n in range(2, 6):
    op = vertex_op(skew, n)
    print(f"  order {n}: symbol = {op.symbol}")
print()

print("the same cone measured with a non-standard inner product")
print("Q = ((2,1),(1,2)) gives different per-cone numbers:")
skew_q = UniCone([(1, 0), (1, 1)], qmat=((2, 1), (1, 2)))
for n in range(2, 5):
    op = vertex_op(skew_q, n)
    print(f"  order {n}: symbol = {op.symbol}")
print()
print("only the assembled totals over all faces of a polytope are")
print("independent of Q; see closed_forms.py for that comparison.")
