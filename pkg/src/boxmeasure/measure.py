"""The polynomial-valued measure on box complexes.

mu(A) packs the Euler characteristic and all intrinsic volumes of A into one
polynomial: coefficient 0 is chi, coefficient i is the i-dimensional
content, and the degree equals dim(A). On a single interval the value is
read off the endpoint flags; on a cell it is the product of the factor
values; on a complex it is the sum over the disjoint cells. Inclusion-
exclusion, the product rule and motion invariance are then testable
consequences rather than definitions.

Values are compared lexicographically from the highest coefficient, which
makes the measure strictly monotone on bounded sets: removing anything
nonempty removes positive top-dimensional content somewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .boxset import BoxComplex, Cell, Interval
from .xpoly import Ordering, XPoly, xpoly_add, xpoly_lex_cmp, xpoly_mul

_INF = math.inf


@dataclass(frozen=True)
class MeasureResult:
    """mu value plus the set-class flags it was computed under.

    in_Uf: all coefficients finite. in_Ub: the set is bounded. Bounded
    implies finite, never the other way around.
    """

    mu: XPoly
    dim: int | float
    in_Uf: bool
    in_Ub: bool

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "dim": "-inf" if self.dim == -_INF else int(self.dim),
            "in_Uf": self.in_Uf,
            "in_Ub": self.in_Ub,
        }


def mu_interval(iv: Interval) -> XPoly:
    """Measure of one interval: chi from the flags, length at x^1.

    point -> 1; [a,b] -> 1 + (b-a)x; (a,b) -> -1 + (b-a)x; half-open ->
    (b-a)x. Infinite length keeps the same chi constant with +inf at x^1.
    """
    if iv.is_point:
        return XPoly([1.0])
    if iv.lo_closed and iv.hi_closed:
        chi = 1.0
    elif not iv.lo_closed and not iv.hi_closed:
        chi = -1.0
    else:
        chi = 0.0
    return XPoly([chi, iv.length])


def mu_cell(cell: Cell) -> XPoly:
    prod = XPoly([1.0])
    for f in cell.factors:
        prod = xpoly_mul(prod, mu_interval(f))
    return prod


def mu(a: BoxComplex) -> MeasureResult:
    """Sum of mu_cell over the disjoint cells; the zero polynomial for the
    empty set. Propagates IndeterminateCoefficient when opposite infinite
    contributions meet (possible only for unbounded inputs)."""
    total = XPoly()
    for c in a.cells:
        total = xpoly_add(total, mu_cell(c))
    return MeasureResult(mu=total, dim=a.dim, in_Uf=total.is_finite, in_Ub=a.is_bounded)


def euler_characteristic(a: BoxComplex) -> float:
    return mu(a).mu.coeff(0)


def intrinsic_volume(a: BoxComplex, i: int) -> float:
    if i < 0:
        raise ValueError(f"index must be a natural number, got {i}")
    return mu(a).mu.coeff(i)


def hausdorff_measure(a: BoxComplex, i: int) -> float:
    """i-dimensional Hausdorff content readout.

    Above the dimension it vanishes, at the dimension it is the leading mu
    coefficient, below the dimension it is +inf (every positive-dimensional
    cell has non-sigma-finite lower-index measure).
    """
    if i < 0:
        raise ValueError(f"index must be a natural number, got {i}")
    d = a.dim
    if i > d:
        return 0.0
    if i == d:
        return mu(a).mu.coeff(i)
    return _INF


def mu_compare(a: BoxComplex, b: BoxComplex) -> Ordering:
    return xpoly_lex_cmp(mu(a).mu, mu(b).mu)
