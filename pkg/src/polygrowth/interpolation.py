"""Exact Lagrange/Newton interpolation over the rationals."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .polyring import MultiPoly


def interpolate(nodes: Sequence, values: Sequence) -> list[Fraction]:
    """Coefficients (ascending) of the unique polynomial of degree < len(nodes)
    through ``(nodes[k], values[k])``.

    Uses Newton divided differences, then expands the Newton form.
    """
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be distinct")
    xs = [Fraction(x) for x in nodes]
    coef = [Fraction(v) for v in values]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner-style expansion of the Newton form
    out = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + out[:-1]
        out = [s - xs[k] * o for s, o in zip(shifted, out)]
        out[0] += coef[k]
    return out


def eval_coeffs(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def trim(coeffs: Sequence) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def interpolate_grid(f: Callable, bounds: Sequence[int]) -> MultiPoly:
    """Interpolate a polynomial with ``deg_{x_i} <= bounds[i]`` from its values
    on the integer grid ``prod(range(b + 1))``.

    ``f`` receives a tuple of ints. Interpolation is done axis by axis, so the
    result is exact whenever the degree bounds hold.
    """
    m = len(bounds)
    grid = {pt: Fraction(f(pt)) for pt in product(*(range(b + 1) for b in bounds))}
    # replace the values along each axis by interpolation coefficients
    for axis in range(m):
        nodes = list(range(bounds[axis] + 1))
        new = {}
        others = [range(b + 1) for i, b in enumerate(bounds) if i != axis]
        for rest in product(*others):
            line = []
            for k in nodes:
                pt = rest[:axis] + (k,) + rest[axis:]
                line.append(grid[pt])
            coeffs = interpolate(nodes, line)
            for k, c in enumerate(coeffs):
                new[rest[:axis] + (k,) + rest[axis:]] = c
        grid = new
    return MultiPoly(m, grid)
