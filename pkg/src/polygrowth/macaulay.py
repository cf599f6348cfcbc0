"""Resultants of m homogeneous forms in m variables.

The resultant is computed as the Macaulay quotient ``det(M) / det(M')`` where
``M`` is the Macaulay matrix in the critical degree and ``M'`` its extraneous
minor. Rows and columns are indexed by the same graded-lex ordered monomials,
which normalizes ``Res(x_0^d_0, ..., x_{m-1}^d_{m-1}) = 1``.

When ``det(M')`` vanishes the forms are perturbed to ``H_i + u*x_i^d_i``; the
resultant of the perturbed system is a polynomial in ``u`` of bounded degree,
recovered by exact interpolation and evaluated at ``u = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm, prod
from typing import Sequence

from .exceptions import MatrixSizeError, NodeExhaustionError, NotHomogeneousError
from .interpolation import eval_coeffs, interpolate
from .polyring import MultiPoly

DEFAULT_MAX_SIZE = 5000

#: Global sign normalization: Res(x_0^d_0, ..., x_{m-1}^d_{m-1}) == 1.
SIGN_CONVENTION = "grlex-macaulay: Res(x_i^d_i) = 1"

DIRECT = "direct_quotient"
PERTURBATION = "perturbation_interpolation"


@dataclass(frozen=True)
class FormSystem:
    """``m`` non-zero homogeneous forms in ``m`` variables."""

    forms: tuple

    def __post_init__(self):
        forms = tuple(self.forms)
        object.__setattr__(self, "forms", forms)
        m = len(forms)
        if m == 0:
            raise ValueError("empty form system")
        for i, H in enumerate(forms):
            if H.arity != m:
                raise ValueError(f"form {i + 1} has {H.arity} variables, expected {m}")
            if H.is_zero():
                raise ValueError(f"form {i + 1} is zero")
            d = H.total_degree()
            if d < 1:
                raise ValueError(f"form {i + 1} has degree {d}, expected >= 1")
            for e, c in H:
                if sum(e) != d:
                    raise NotHomogeneousError(f"form {i + 1} is not homogeneous: term {MultiPoly.monomial(e, c)}")

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def degrees(self) -> tuple:
        return tuple(H.total_degree() for H in self.forms)


@dataclass(frozen=True)
class MacaulayMatrix:
    D: int
    columns: tuple  # monomial exponents of degree D
    classes: tuple  # class index per row / column monomial
    rows: tuple  # tuple of tuples of Fraction
    minor_mask: tuple  # indices of monomials divisible by two x_j^d_j

    @property
    def size(self) -> int:
        return len(self.columns)

    def minor(self) -> list[list]:
        idx = self.minor_mask
        return [[self.rows[i][j] for j in idx] for i in idx]


@dataclass(frozen=True)
class ResultantValue:
    value: Fraction
    method: str
    sign_convention: str = SIGN_CONVENTION

    def __bool__(self):
        return self.value != 0


def monomials(m: int, D: int) -> list[tuple]:
    """Exponents of total degree ``D`` in ``m`` variables, graded-lex descending."""
    if m == 1:
        return [(D,)]
    out = []
    for a in range(D, -1, -1):
        out.extend((a,) + rest for rest in monomials(m - 1, D - a))
    return out


@lru_cache(maxsize=256)
def _layout(degrees: tuple):
    m = len(degrees)
    D = sum(degrees) - m + 1
    cols = monomials(m, D)
    index = {a: k for k, a in enumerate(cols)}
    classes, shifts, mask = [], [], []
    for k, a in enumerate(cols):
        big = [j for j in range(m) if a[j] >= degrees[j]]
        i = big[0]  # non-empty because D exceeds sum(d_j - 1)
        classes.append(i)
        shifts.append(tuple(a[j] - (degrees[j] if j == i else 0) for j in range(m)))
        if len(big) >= 2:
            mask.append(k)
    return D, tuple(cols), index, tuple(classes), tuple(shifts), tuple(mask)


def matrix_size(degrees: Sequence[int]) -> int:
    m = len(degrees)
    D = sum(degrees) - m + 1
    return comb(D + m - 1, m - 1)


def build_matrix(S: FormSystem, max_size: int = DEFAULT_MAX_SIZE) -> MacaulayMatrix:
    size = matrix_size(S.degrees)
    if size > max_size:
        raise MatrixSizeError(f"Macaulay matrix would have {size} columns (limit {max_size})")
    D, cols, index, classes, shifts, mask = _layout(S.degrees)
    terms = [list(H) for H in S.forms]
    zero = Fraction(0)
    rows = []
    for k in range(len(cols)):
        row = [zero] * len(cols)
        b = shifts[k]
        for e, c in terms[classes[k]]:
            row[index[tuple(x + y for x, y in zip(e, b))]] = c
        rows.append(tuple(row))
    return MacaulayMatrix(D, cols, classes, tuple(rows), mask)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        row_k = a[k]
        akk = row_k[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        row_i[j] = row_i[j] * akk // prev
            else:
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_fraction_free(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix.

    Each row is scaled to integers, then Bareiss elimination is run with row
    swaps (sign tracked); the row scales are divided out at the end.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    scale = 1
    a = []
    for r in M:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        scale *= den
        a.append([x.numerator * (den // x.denominator) for x in r])
    return Fraction(_bareiss(a), scale)


def _quotient(S: FormSystem, max_size: int):
    M = build_matrix(S, max_size)
    minor_det = det_fraction_free(M.minor())
    if minor_det == 0:
        return None
    return det_fraction_free(M.rows) / minor_det


def perturbation_degree_bound(degrees: Sequence[int]) -> int:
    total = prod(degrees)
    return sum(total // d for d in degrees)


def resultant(S: FormSystem | Sequence[MultiPoly], max_size: int = DEFAULT_MAX_SIZE) -> ResultantValue:
    if not isinstance(S, FormSystem):
        S = FormSystem(tuple(S))
    q = _quotient(S, max_size)
    if q is not None:
        return ResultantValue(q, DIRECT)
    return ResultantValue(_perturbed(S, max_size), PERTURBATION)


def _perturbed(S: FormSystem, max_size: int) -> Fraction:
    m = S.m
    degs = S.degrees
    bound = perturbation_degree_bound(degs)
    pure = [MultiPoly.monomial(tuple(degs[i] if j == i else 0 for j in range(m))) for i in range(m)]
    nodes, values = [], []
    rejected = 0
    u = 0
    while len(nodes) < bound + 1:
        if u == 0:
            rejected += 1  # det(M') is already known to vanish here
        else:
            shifted = FormSystem(tuple(H + pure[i] * u for i, H in enumerate(S.forms)))
            q = _quotient(shifted, max_size)
            if q is None:
                rejected += 1
            else:
                nodes.append(u)
                values.append(q)
        if rejected > 10 * bound:
            raise NodeExhaustionError(
                f"perturbation fallback rejected {rejected} nodes (degree bound {bound}); pathological system"
            )
        u += 1
    return eval_coeffs(interpolate(nodes, values), 0)


def sylvester_matrix(p: MultiPoly, q: MultiPoly) -> list[list[Fraction]]:
    for f in (p, q):
        if f.arity != 2 or not f.is_homogeneous() or f.total_degree() < 1:
            raise ValueError("Sylvester resultant needs binary forms of degree >= 1")
    a, b = p.total_degree(), q.total_degree()
    # coefficient of Z0^(deg-k) Z1^k
    pc = [p.coefficient((a - k, k)) for k in range(a + 1)]
    qc = [q.coefficient((b - k, k)) for k in range(b + 1)]
    n = a + b
    rows = []
    for s in range(b):
        rows.append([Fraction(0)] * s + pc + [Fraction(0)] * (n - a - 1 - s))
    for s in range(a):
        rows.append([Fraction(0)] * s + qc + [Fraction(0)] * (n - b - 1 - s))
    return rows


def sylvester_oracle(p: MultiPoly, q: MultiPoly) -> Fraction:
    """Classical Sylvester determinant of two binary forms."""
    return det_fraction_free(sylvester_matrix(p, q))
