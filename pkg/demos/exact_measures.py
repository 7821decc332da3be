"""Exact polynomial measures on box complexes, step by step.

Every set here is a finite disjoint union of generalized boxes. Its measure
is a polynomial: the constant term is the Euler characteristic, the x^i
coefficient the i-dimensional content, and the degree the dimension.
"""

import math

from boxmeasure import (Cell, Interval, canonicalize, cartesian_product,
                        difference, euler_characteristic, from_cell,
                        hausdorff_measure, intrinsic_volume, mu, mu_compare,
                        scale, translate, union, xpoly_mul)

# ---------------------------------------------------------------------
# Intervals carry open/closed flags; the measure reads them off directly.
# ---------------------------------------------------------------------
for iv in (Interval.point(3), Interval.closed(0, 1), Interval.open(0, 1),
           Interval.half_open(0, 1)):
    print(f"mu({iv}) = {mu(from_cell(Cell([iv]))).mu}")

# ---------------------------------------------------------------------
# Products multiply measures: the unit square is (1 + x)^2.
# ---------------------------------------------------------------------
square = from_cell(Cell([Interval.closed(0, 1), Interval.closed(0, 1)]))
res = mu(square)
print(f"\nunit square: mu = {res.mu}, chi = {euler_characteristic(square)}, "
      f"dim = {res.dim}")
print(f"intrinsic volumes: {[intrinsic_volume(square, i) for i in range(3)]}")

cube = from_cell(Cell([Interval.closed(0, 1)] * 3))
print(f"unit cube: mu = {mu(cube).mu}")

# ---------------------------------------------------------------------
# A square ring: boolean operations keep the measure additive.
# ---------------------------------------------------------------------
ring = difference(from_cell(Cell([Interval.closed(0, 3)] * 2)),
                  from_cell(Cell([Interval.open(1, 2)] * 2)))
print(f"\nsquare ring [0,3]^2 minus (1,2)^2: mu = {mu(ring).mu}")
print(f"chi of the ring (a hole!): {euler_characteristic(ring)}")
print(f"H^2 of the ring: {hausdorff_measure(ring, 2)}")
print(f"H^1 of the ring (below its dimension): {hausdorff_measure(ring, 1)}")

# ---------------------------------------------------------------------
# The product formula and the valuation identity, checked numerically.
# ---------------------------------------------------------------------
a = canonicalize([Cell([Interval.closed(0, 1)]), Cell([Interval.point(2)])], 1)
b = from_cell(Cell([Interval.half_open(0, math.sqrt(2))]))
lhs = mu(cartesian_product(a, b)).mu
rhs = xpoly_mul(mu(a).mu, mu(b).mu)
print(f"\nmu(A x B) = {lhs}")
print(f"mu(A) mu(B) = {rhs}")

print(f"mu(A u B) = {mu(union(a, b)).mu}  (valuation identity: adding "
      f"mu(A n B) back recovers mu(A) + mu(B))")

# ---------------------------------------------------------------------
# Strict monotonicity: dropping any piece strictly lowers the measure,
# even a single point, because comparison is lexicographic from the top.
# ---------------------------------------------------------------------
closed = from_cell(Cell([Interval.closed(0, 1)]))
open_ = from_cell(Cell([Interval.open(0, 1)]))
print(f"\nmu((0,1)) = {mu(open_).mu} vs mu([0,1]) = {mu(closed).mu}: "
      f"{mu_compare(open_, closed)}")
print(f"[0,2] vs [0,1]: {mu_compare(from_cell(Cell([Interval.closed(0, 2)])), closed)}")

# Rigid motions and scaling behave as expected.
moved = translate(square, (10, -3))
print(f"\nmu unchanged by translation: {mu(moved).mu}")
doubled = scale(square, 2)
print(f"mu([0,2]^2) = {mu(doubled).mu}  (coefficient i scales by 2^i)")
