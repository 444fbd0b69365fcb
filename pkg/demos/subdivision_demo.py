"""Signed unimodular subdivision of a pointed cone.

Vertices of a non-Delzant polytope have transverse cones that are not
unimodular, so no single operator applies.  The valuation route writes the
cone as a signed combination of unimodular pieces:

  1. triangulate the cone by pulling vertices of a cross-section,
  2. refine each simplicial cell by stellar subdivision until every cell
     has index one,
  3. assign inclusion-exclusion coefficients to all faces of the resulting
     fan so that indicator functions add up to the indicator of the cone.

The operator of the original cone is then the signed sum of the pieces'
operators.  This script walks the cone generated by (1,0) and (1,2)
through all three steps.
"""

from emsum import (
    bv_op_pointed,
    signed_coefficients,
    triangulate_cone,
    unimodularize,
)

rays = [(1, 0), (1, 2)]
print(f"cone generated by {rays}  (index 2: not unimodular)")
print()

cells = triangulate_cone(rays)
print(f"step 1, triangulation: {len(cells)} simplicial cell(s)")
for cell in cells:
    print(f"  {cell}")
print()

fan = unimodularize(cells)
print(f"step 2, stellar refinement: {len(fan)} unimodular cells")
for cell in fan:
    print(f"  {cell}")
print()

signed = signed_coefficients(fan)
print("step 3, inclusion-exclusion over all faces of the fan:")
for cell in signed:
    name = cell.gens if cell.gens else "origin"
    print(f"  r = {cell.coeff:+d}  dim {cell.dim}  {name}")
print()
print("the two full cells count once each; their shared ray is")
print("subtracted so no point is counted twice.")
print()

op = bv_op_pointed(rays, 2)
print(f"assembled order-2 operator: symbol = {op.symbol}")
print("(3/8 from the cell at (1,0), 17/40 from the cell at (1,2),")
print(" minus 1/2 from the shared ray: 3/10)")
print()

penta = [(0, 0, 1), (2, 0, 1), (3, 1, 1), (1, 3, 1), (0, 2, 1)]
a = bv_op_pointed(penta, 3, strategy="default")
b = bv_op_pointed(penta, 3, strategy="alternate")
print("a 3D cone over a pentagon, two different subdivision orders:")
print(f"  default  : {a.symbol}")
print(f"  alternate: {b.symbol}")
print(f"  equal    : {a.symbol == b.symbol}")
print("the operator is a property of the cone, not of the subdivision.")
