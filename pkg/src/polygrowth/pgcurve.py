"""The eliminant ``P_G(W, T)`` of a polynomial map and an auxiliary linear form.

For a map ``F`` with homogenizations ``Ft_i`` and a linear form
``G = c_1 Z_1 + ... + c_n Z_n`` we work with

    P_G(w, t) = Res(Ft_1 - w_1 Z0^d_1, ..., Ft_n - w_n Z0^d_n, G - t Z0)

evaluated as a scalar resultant at rational points and recovered by exact
interpolation, one variable (``T``) or all variables at a time.

``P_G`` is only meaningful when ``Ft_1, ..., Ft_n, Z0, G`` have no common
projective zero. That condition is certified by a non-zero resultant
``Res(Ft_1, ..., Ft_n, s0*Z0 + G)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

from .exceptions import CertificationError, GridCapError, InconsistencyError
from .interpolation import interpolate, interpolate_grid, trim
from .macaulay import DEFAULT_MAX_SIZE, FormSystem, ResultantValue, resultant
from .polyring import ZERO_DEGREE, MultiPoly, PolyMap, format_rational

DEFAULT_GRID_CAP = 20000


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not any(cs):
            raise ValueError("linear form must have a non-zero coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def coordinate(cls, n: int, i: int) -> LinearForm:
        return cls(tuple(int(j == i) for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def form(self, z0_coeff=0) -> MultiPoly:
        """``z0_coeff*Z0 + G`` as a form in ``Z0, ..., Zn``."""
        n = self.n
        terms = {tuple(int(k == j + 1) for k in range(n + 1)): c for j, c in enumerate(self.coeffs)}
        terms[(1,) + (0,) * n] = Fraction(z0_coeff)
        return MultiPoly(n + 1, terms)

    def __call__(self, z: Sequence):
        return sum(c * x for c, x in zip(self.coeffs, z))

    def __str__(self):
        names = [f"Z{j + 1}" for j in range(self.n)]
        return self.form().to_str(["Z0"] + names)


@dataclass(frozen=True)
class StarCertificate:
    """Non-zero resultant witnessing ``V(Ft_1..Ft_n) ∩ V(s0*Z0 + G) = ∅``.

    Hence ``V(Ft_1..Ft_n, Z0, G)`` is empty and ``V(Ft_1..Ft_n)`` is finite.
    """

    G: LinearForm
    s0: Fraction
    witness: ResultantValue
    implies_finiteness: bool = True

    def __post_init__(self):
        if self.witness.value == 0:
            raise ValueError("a certificate needs a non-zero witness")

    def to_dict(self) -> dict:
        return {
            "G": str(self.G),
            "s0": format_rational(self.s0),
            "witness": format_rational(self.witness.value),
            "method": self.witness.method,
            "implies_finiteness": self.implies_finiteness,
        }


@dataclass(frozen=True)
class PGSlice:
    w: tuple
    poly_in_T: MultiPoly
    degree_bound_used: int
    nodes: tuple

    @property
    def degree(self):
        return self.poly_in_T.total_degree()

    def __call__(self, t):
        return self.poly_in_T.evaluate((t,))


@dataclass(frozen=True)
class PGFull:
    """``P_G`` as a polynomial in ``(W_1, ..., W_n, T)``."""

    poly: MultiPoly
    w_bounds: tuple
    t_bound: int

    @property
    def n(self) -> int:
        return self.poly.arity - 1

    def evaluate(self, w: Sequence, t):
        return self.poly.evaluate(tuple(w) + (t,))

    def slice_coeffs(self, w: Sequence) -> list:
        """Ascending coefficients of ``T -> P_G(w, T)``."""
        coeffs = [0] * (self.t_bound + 1)
        for e, c in self.poly:
            term = c
            for x, k in zip(w, e[:-1]):
                if k:
                    term = term * x**k
            coeffs[e[-1]] += term
        return trim(coeffs)

    def slice(self, w: Sequence) -> MultiPoly:
        return MultiPoly.from_coeffs(self.slice_coeffs([Fraction(x) for x in w]))

    def image_equation(self) -> MultiPoly:
        """``P_G(W, 0)`` in ``W``; equals ``P_0(W)`` when ``P_G`` is free of ``T``."""
        return self.poly.partial_evaluate(self.n, 0)


def _pg_forms(Ft: Sequence[MultiPoly], degrees: Sequence[int], G: LinearForm, w: Sequence, t) -> FormSystem:
    n = len(Ft)
    forms = []
    for i, (H, d) in enumerate(zip(Ft, degrees)):
        shift = MultiPoly.monomial((d,) + (0,) * n, -Fraction(w[i]))
        forms.append(H + shift)
    forms.append(G.form(-Fraction(t)))
    return FormSystem(tuple(forms))


def pg_value(F: PolyMap, G: LinearForm, w: Sequence, t, max_size: int = DEFAULT_MAX_SIZE) -> Fraction:
    """``P_G(w, t)`` for rational ``w``, ``t``."""
    return resultant(_pg_forms(F.homogenized(), F.degrees, G, w, t), max_size).value


def certify_star(
    F: PolyMap, G: LinearForm, attempts: int = 16, seed=0, max_size: int = DEFAULT_MAX_SIZE
) -> StarCertificate:
    if G.n != F.n:
        raise ValueError("linear form and map dimensions differ")
    rng = random.Random(seed)
    span = max(attempts, 8)
    pool = list(range(-span, span + 1))
    rng.shuffle(pool)
    Ft = F.homogenized()
    for s0 in pool[:attempts]:
        w = resultant(FormSystem(tuple(Ft) + (G.form(s0),)), max_size)
        if w.value != 0:
            return StarCertificate(G, Fraction(s0), w)
    raise CertificationError(f"cannot certify the condition at infinity for G = {G}")


def _candidate_forms(n: int, rng: random.Random, budget: int) -> Iterator[LinearForm]:
    for i in range(n):
        yield LinearForm.coordinate(n, i)
    seen = set()
    produced = 0
    while produced < budget:
        cs = tuple(rng.randint(-3, 3) for _ in range(n))
        if not any(cs) or cs in seen or sum(1 for c in cs if c) < 2:
            continue
        seen.add(cs)
        produced += 1
        yield LinearForm(cs)


def certified_forms(
    F: PolyMap, count: int = 1, seed=0, attempts: int = 16, budget: int = 12, max_size: int = DEFAULT_MAX_SIZE
) -> list[tuple[LinearForm, StarCertificate]]:
    """Up to ``count`` distinct certified forms, coordinate forms first."""
    rng = random.Random(seed)
    found = []
    for G in _candidate_forms(F.n, rng, budget):
        try:
            cert = certify_star(F, G, attempts, seed=rng.randrange(2**32), max_size=max_size)
        except CertificationError:
            continue
        found.append((G, cert))
        if len(found) == count:
            break
    return found


def choose_G(
    F: PolyMap, seed=0, attempts: int = 16, budget: int = 12, max_size: int = DEFAULT_MAX_SIZE
) -> tuple[LinearForm, StarCertificate]:
    found = certified_forms(F, 1, seed, attempts, budget, max_size)
    if not found:
        raise CertificationError(
            "no certified linear form found; the projective zero set of the "
            "homogenized components is likely infinite"
        )
    return found[0]


def pg_slice(F: PolyMap, G: LinearForm, w: Sequence, max_size: int = DEFAULT_MAX_SIZE) -> PGSlice:
    """Exact ``T -> P_G(w, T)``.

    Assumes ``(F, G)`` is certified. For a finite fiber ``F^-1(w)`` the degree
    equals the multiplicity sum over that fiber.
    """
    w = tuple(Fraction(x) for x in w)
    if len(w) != F.n:
        raise ValueError("point w has the wrong dimension")
    B = F.bezout
    Ft = F.homogenized()
    nodes = tuple(range(B + 1))
    values = [resultant(_pg_forms(Ft, F.degrees, G, w, t), max_size).value for t in nodes]
    poly = MultiPoly.from_coeffs(interpolate(nodes, values))
    if poly.is_zero():
        raise InconsistencyError(f"P_G(w, T) vanishes identically at w = {w} for a certified G = {G}")
    if poly.total_degree() > B:
        raise InconsistencyError("slice degree exceeds the Bezout bound")
    return PGSlice(w, poly, B, nodes)


def slice_degree(F: PolyMap, G: LinearForm, w: Sequence, max_size: int = DEFAULT_MAX_SIZE) -> int:
    d = pg_slice(F, G, w, max_size).degree
    return 0 if d == ZERO_DEGREE else d


def pg_grid_size(F: PolyMap) -> int:
    B = F.bezout
    return prod(B // d + 1 for d in F.degrees) * (B + 1)


def pg_full(
    F: PolyMap, G: LinearForm, grid_cap: int = DEFAULT_GRID_CAP, max_size: int = DEFAULT_MAX_SIZE
) -> PGFull:
    B = F.bezout
    w_bounds = tuple(B // d for d in F.degrees)
    size = pg_grid_size(F)
    if size > grid_cap:
        raise GridCapError(f"interpolation grid has {size} nodes (cap {grid_cap})")
    Ft = F.homogenized()
    n = F.n

    def value(pt):
        return resultant(_pg_forms(Ft, F.degrees, G, pt[:n], pt[n]), max_size).value

    poly = interpolate_grid(value, w_bounds + (B,))
    if poly.is_zero():
        raise InconsistencyError(f"P_G vanishes identically for a certified G = {G}")
    return PGFull(poly, w_bounds, B)
