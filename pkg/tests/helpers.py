"""Shared generators and independent oracles for the test suite."""

import math
import random

from boxmeasure import BoxComplex, Cell, Interval, canonicalize


def random_interval(rng: random.Random, span: int = 3) -> Interval:
    """Quarter-integer endpoints so grid arithmetic stays exact."""
    a = rng.randrange(-4 * span, 4 * span) / 4
    if rng.random() < 0.15:
        return Interval.point(a)
    b = a + rng.randrange(1, 4 * span) / 4
    lo_c = rng.random() < 0.5
    hi_c = rng.random() < 0.5
    return Interval(a, b, lo_c, hi_c)


def random_cell(rng: random.Random, d: int, span: int = 3) -> Cell:
    return Cell(random_interval(rng, span) for _ in range(d))


def random_complex(rng: random.Random, d: int, max_cells: int = 3,
                   span: int = 3) -> BoxComplex:
    cells = [random_cell(rng, d, span) for _ in range(rng.randint(1, max_cells))]
    return canonicalize(cells, d)


def random_point(rng: random.Random, d: int, span: float = 4.0) -> tuple:
    return tuple(rng.uniform(-span, span) for _ in range(d))


def poly_close(p, q, rel: float = 1e-10, abs_tol: float = 1e-12) -> bool:
    n = max(len(p.coeffs), len(q.coeffs))
    for k in range(n):
        a, b = p.coeff(k), q.coeff(k)
        if a == b:
            continue  # covers matching infinities
        if abs(a - b) > abs_tol + rel * max(abs(a), abs(b)):
            return False
    return True


def convolution_oracle(p, q):
    """Brute-force finite-coefficient product, independent of xpoly_mul."""
    if not p.coeffs or not q.coeffs:
        return []
    out = [0.0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return out


def chi_length_oracle_1d(intervals):
    """Euler characteristic and total length of a union of bounded 1-D
    intervals, by endpoint sorting and midpoint membership tests."""
    cuts = sorted({e for iv in intervals for e in (iv.lo, iv.hi)})

    def member(x):
        return any(iv.contains(x) for iv in intervals)

    chi = 0
    length = 0.0
    for i, c in enumerate(cuts):
        if member(c):
            chi += 1
        if i + 1 < len(cuts):
            mid = (c + cuts[i + 1]) / 2.0
            if member(mid):
                chi -= 1
                length += cuts[i + 1] - c
    return chi, length


def remove_random_atom(rng: random.Random, b: BoxComplex) -> BoxComplex:
    """A proper subset of b: drop one cell of its canonical form."""
    atoms = list(b.cells)
    atoms.pop(rng.randrange(len(atoms)))
    return BoxComplex(b.ambient_dim, atoms)


def rotation_matrix_2d(theta: float):
    import numpy as np
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])
