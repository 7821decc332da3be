"""Axis-aligned generalized boxes and their finite disjoint unions.

A Cell is a product of one-dimensional intervals whose endpoints carry
independent open/closed flags (points and infinite rays included). A
BoxComplex is a finite pairwise-disjoint family of cells in a common
ambient dimension. This class is closed under union, intersection,
difference, complement and cartesian product, all computed exactly on the
endpoint floats: endpoints are compared by bit equality, never snapped.

Boolean operations work on the endpoint grid: every axis is cut at every
endpoint occurring on it, which splits space into point slabs and open
slabs whose products ("atoms") are each entirely inside or outside every
input cell. Membership of one representative point per atom then decides
everything.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

_INF = math.inf


class DimensionMismatch(ValueError):
    """Operands live in different ambient dimensions."""


class NonpositiveScale(ValueError):
    """scale() requires a strictly positive factor."""


class UnboundedSet(ValueError):
    """A bounded set was required."""


@dataclass(frozen=True)
class Interval:
    """One axis factor: endpoints lo <= hi with open/closed flags.

    Degenerate (lo == hi) intervals must be closed on both sides: they are
    points. An infinite endpoint is never closed. Empty intervals cannot be
    constructed.
    """

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("NaN endpoint")
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate interval must be closed on both sides")
        if math.isinf(lo) and self.lo_closed:
            raise ValueError("infinite endpoint cannot be closed")
        if math.isinf(hi) and self.hi_closed:
            raise ValueError("infinite endpoint cannot be closed")
        if lo == _INF or hi == -_INF:
            raise ValueError("interval lies beyond the reals")

    @classmethod
    def closed(cls, a: float, b: float) -> "Interval":
        return cls(a, b, True, True)

    @classmethod
    def open(cls, a: float, b: float) -> "Interval":
        return cls(a, b, False, False)

    @classmethod
    def half_open(cls, a: float, b: float) -> "Interval":
        """[a, b)"""
        return cls(a, b, True, False)

    @classmethod
    def point(cls, a: float) -> "Interval":
        return cls(a, a, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self) -> str:
        if self.is_point:
            return f"{{{self.lo}}}"
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo},{self.hi}{rb}"


def interval_intersection(a: Interval, b: Interval) -> Interval | None:
    """Flag-aware intersection; None when empty."""
    # at an equal endpoint value the open flag is the stricter constraint
    if (a.lo, not a.lo_closed) >= (b.lo, not b.lo_closed):
        lo, lo_c = a.lo, a.lo_closed
    else:
        lo, lo_c = b.lo, b.lo_closed
    if (a.hi, a.hi_closed) <= (b.hi, b.hi_closed):
        hi, hi_c = a.hi, a.hi_closed
    else:
        hi, hi_c = b.hi, b.hi_closed
    if lo > hi:
        return None
    if lo == hi and not (lo_c and hi_c):
        return None
    return Interval(lo, hi, lo_c, hi_c)


@dataclass(frozen=True, init=False)
class Cell:
    """A generalized box: one Interval per axis."""

    factors: tuple[Interval, ...]

    def __init__(self, factors: Iterable[Interval]):
        object.__setattr__(self, "factors", tuple(factors))

    @property
    def ambient_dim(self) -> int:
        return len(self.factors)

    @property
    def dim(self) -> int:
        return sum(1 for f in self.factors if not f.is_point)

    @property
    def is_bounded(self) -> bool:
        return all(f.is_bounded for f in self.factors)

    def contains(self, x: Sequence[float]) -> bool:
        if len(x) != len(self.factors):
            raise DimensionMismatch(f"point has {len(x)} coordinates, cell has {len(self.factors)}")
        return all(f.contains(v) for f, v in zip(self.factors, x))

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors) if self.factors else "R^0"


def cells_disjoint(a: Cell, b: Cell) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("cells in different ambient dimensions")
    if a.ambient_dim == 0:
        return False  # both are the single point of R^0
    return any(interval_intersection(fa, fb) is None for fa, fb in zip(a.factors, b.factors))


@dataclass(frozen=True, init=False)
class BoxComplex:
    """A finite disjoint union of cells in a fixed ambient dimension.

    The raw constructor trusts the caller on pairwise disjointness; use
    canonicalize() to build safely from arbitrary overlapping cells.
    """

    ambient_dim: int
    cells: tuple[Cell, ...]

    def __init__(self, ambient_dim: int, cells: Iterable[Cell] = ()):
        cells = tuple(cells)
        for c in cells:
            if c.ambient_dim != ambient_dim:
                raise DimensionMismatch(
                    f"cell of dimension {c.ambient_dim} in complex of dimension {ambient_dim}")
        object.__setattr__(self, "ambient_dim", int(ambient_dim))
        object.__setattr__(self, "cells", cells)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @property
    def is_bounded(self) -> bool:
        return all(c.is_bounded for c in self.cells)

    @property
    def dim(self) -> int | float:
        """Max cell dimension; -inf for the empty set."""
        return max((c.dim for c in self.cells), default=-_INF)

    def __str__(self) -> str:
        return " | ".join(str(c) for c in self.cells) if self.cells else "{}"

    def to_json(self) -> dict:
        def end(v: float) -> float | str:
            if v == _INF:
                return "inf"
            if v == -_INF:
                return "-inf"
            return v

        return {
            "dim": self.ambient_dim,
            "cells": [
                {"factors": [
                    {"lo": end(f.lo), "hi": end(f.hi),
                     "lo_closed": f.lo_closed, "hi_closed": f.hi_closed}
                    for f in c.factors]}
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoxComplex":
        def end(v) -> float:
            if v == "inf":
                return _INF
            if v == "-inf":
                return -_INF
            return float(v)

        cells = [
            Cell(Interval(end(f["lo"]), end(f["hi"]), f["lo_closed"], f["hi_closed"])
                 for f in c["factors"])
            for c in data["cells"]
        ]
        return cls(data["dim"], cells)


def from_cell(cell: Cell) -> BoxComplex:
    return BoxComplex(cell.ambient_dim, (cell,))


def _same_dim(a: BoxComplex, b: BoxComplex) -> int:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"{a.ambient_dim} vs {b.ambient_dim}")
    return a.ambient_dim


def _axis_atoms(cuts: Sequence[float]) -> list[tuple[Interval, float]]:
    """1-D grid atoms for sorted finite cut values, with representatives."""
    if not cuts:
        return [(Interval(-_INF, _INF, False, False), 0.0)]
    atoms = [(Interval(-_INF, cuts[0], False, False), cuts[0] - 1.0)]
    for i, c in enumerate(cuts):
        atoms.append((Interval.point(c), c))
        if i + 1 < len(cuts):
            nxt = cuts[i + 1]
            mid = c + (nxt - c) / 2.0
            if not (c < mid < nxt):
                mid = math.nextafter(c, nxt)
                if not (c < mid < nxt):
                    raise ValueError(f"open gap ({c}, {nxt}) holds no representable float")
            atoms.append((Interval.open(c, nxt), mid))
    atoms.append((Interval(cuts[-1], _INF, False, False), cuts[-1] + 1.0))
    return atoms


def _grid_axes(cells: Sequence[Cell], ambient_dim: int) -> list[list[tuple[Interval, float]]]:
    per_axis = []
    for j in range(ambient_dim):
        cuts = set()
        for c in cells:
            f = c.factors[j]
            if math.isfinite(f.lo):
                cuts.add(f.lo)
            if math.isfinite(f.hi):
                cuts.add(f.hi)
        per_axis.append(_axis_atoms(sorted(cuts)))
    return per_axis


def grid_atoms(cells: Sequence[Cell], ambient_dim: int) -> Iterator[tuple[Cell, tuple[float, ...]]]:
    """All atoms of the endpoint grid of the given cells, over all of R^d.

    Yields (atom, representative point). Every input cell is a union of
    atoms, so membership of the representative decides membership of the
    whole atom for any set assembled from these cells.
    """
    for combo in itertools.product(*_grid_axes(cells, ambient_dim)):
        yield Cell(iv for iv, _ in combo), tuple(r for _, r in combo)


def _membership_grid(cells: Sequence[Cell],
                     axes: Sequence[Sequence[tuple[Interval, float]]]) -> np.ndarray:
    """Boolean array over the atom grid: atom in union(cells)?

    Built per cell as an outer AND of per-axis membership vectors, then
    OR-ed together; sound because every cell is a union of whole atoms.
    """
    shape = tuple(len(ax) for ax in axes)
    out = np.zeros(shape, dtype=bool)
    for cell in cells:
        m = np.array(True)
        for j, f in enumerate(cell.factors):
            v = np.fromiter((f.contains(r) for _, r in axes[j]), dtype=bool,
                            count=len(axes[j]))
            m = np.logical_and.outer(m, v)
        out |= m
    return out


def _build_from_grid(axes: Sequence[Sequence[tuple[Interval, float]]],
                     keep: np.ndarray, ambient_dim: int) -> BoxComplex:
    cells = [Cell(axes[j][i][0] for j, i in enumerate(idx)) for idx in np.argwhere(keep)]
    return BoxComplex(ambient_dim, cells)


def canonicalize(raw: Iterable[Cell], ambient_dim: int | None = None) -> BoxComplex:
    """Grid-atom decomposition of a union of possibly overlapping cells."""
    cells = list(raw)
    if ambient_dim is None:
        if not cells:
            raise ValueError("ambient_dim required for empty input")
        ambient_dim = cells[0].ambient_dim
    for c in cells:
        if c.ambient_dim != ambient_dim:
            raise DimensionMismatch(
                f"cell of dimension {c.ambient_dim}, expected {ambient_dim}")
    axes = _grid_axes(cells, ambient_dim)
    return _build_from_grid(axes, _membership_grid(cells, axes), ambient_dim)


def contains_point(a: BoxComplex, x: Sequence[float]) -> bool:
    if len(x) != a.ambient_dim:
        raise DimensionMismatch(f"point has {len(x)} coordinates, ambient is {a.ambient_dim}")
    return any(c.contains(x) for c in a.cells)


def _pair_grids(a: BoxComplex, b: BoxComplex):
    d = _same_dim(a, b)
    axes = _grid_axes(list(a.cells) + list(b.cells), d)
    return d, axes, _membership_grid(a.cells, axes), _membership_grid(b.cells, axes)


def union(a: BoxComplex, b: BoxComplex) -> BoxComplex:
    d, axes, ma, mb = _pair_grids(a, b)
    return _build_from_grid(axes, ma | mb, d)


def intersect(a: BoxComplex, b: BoxComplex) -> BoxComplex:
    d, axes, ma, mb = _pair_grids(a, b)
    return _build_from_grid(axes, ma & mb, d)


def difference(a: BoxComplex, b: BoxComplex) -> BoxComplex:
    d, axes, ma, mb = _pair_grids(a, b)
    return _build_from_grid(axes, ma & ~mb, d)


def complement(a: BoxComplex) -> BoxComplex:
    """Complement relative to R^d; generally unbounded."""
    axes = _grid_axes(a.cells, a.ambient_dim)
    return _build_from_grid(axes, ~_membership_grid(a.cells, axes), a.ambient_dim)


def cartesian_product(a: BoxComplex, b: BoxComplex) -> BoxComplex:
    cells = tuple(Cell(ca.factors + cb.factors) for ca in a.cells for cb in b.cells)
    return BoxComplex(a.ambient_dim + b.ambient_dim, cells)


def translate(a: BoxComplex, v: Sequence[float]) -> BoxComplex:
    if len(v) != a.ambient_dim:
        raise DimensionMismatch(f"vector has {len(v)} coordinates, ambient is {a.ambient_dim}")
    cells = [
        Cell(Interval(f.lo + w, f.hi + w, f.lo_closed, f.hi_closed)
             for f, w in zip(c.factors, v))
        for c in a.cells
    ]
    return BoxComplex(a.ambient_dim, cells)


def scale(a: BoxComplex, beta: float) -> BoxComplex:
    if not (beta > 0):
        raise NonpositiveScale(f"scale factor must be > 0, got {beta}")
    cells = [
        Cell(Interval(f.lo * beta, f.hi * beta, f.lo_closed, f.hi_closed)
             for f in c.factors)
        for c in a.cells
    ]
    return BoxComplex(a.ambient_dim, cells)


def axis_permute(a: BoxComplex, sigma: Sequence[int]) -> BoxComplex:
    """New axis j carries what was axis sigma[j]."""
    if sorted(sigma) != list(range(a.ambient_dim)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 0..{a.ambient_dim - 1}")
    cells = [Cell(c.factors[sigma[j]] for j in range(a.ambient_dim)) for c in a.cells]
    return BoxComplex(a.ambient_dim, cells)


def reflect(a: BoxComplex, axis: int) -> BoxComplex:
    """Negate one coordinate; endpoint flags swap sides."""
    if not (0 <= axis < a.ambient_dim):
        raise ValueError(f"axis {axis} out of range for dimension {a.ambient_dim}")
    cells = []
    for c in a.cells:
        fs = list(c.factors)
        f = fs[axis]
        fs[axis] = Interval(-f.hi, -f.lo, f.hi_closed, f.lo_closed)
        cells.append(Cell(fs))
    return BoxComplex(a.ambient_dim, cells)


def dimension(a: BoxComplex) -> int | float:
    return a.dim


def is_subset(a: BoxComplex, b: BoxComplex) -> bool:
    _, _, ma, mb = _pair_grids(a, b)
    return not bool(np.any(ma & ~mb))


def set_equal(a: BoxComplex, b: BoxComplex) -> bool:
    _, _, ma, mb = _pair_grids(a, b)
    return not bool(np.any(ma ^ mb))


def bounding_box(a: BoxComplex) -> tuple[list[float], list[float]]:
    """Per-axis (lo, hi) hull of a nonempty bounded complex."""
    if a.is_empty:
        raise ValueError("empty complex has no bounding box")
    if not a.is_bounded:
        raise UnboundedSet("bounding box requires a bounded complex")
    lo = [min(c.factors[j].lo for c in a.cells) for j in range(a.ambient_dim)]
    hi = [max(c.factors[j].hi for c in a.cells) for j in range(a.ambient_dim)]
    return lo, hi
