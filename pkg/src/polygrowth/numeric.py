"""Floating-point checks of the growth bounds and resultant identities.

Norms are max-norms, ``|z| = max |z_i|``, everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

import numpy as np

from .exceptions import PreconditionError, RootFindingError
from .macaulay import FormSystem, resultant
from .pgcurve import PGFull
from .polyring import MultiPoly, PolyMap

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"

DEFAULT_RADII = (10.0, 1e2, 1e3, 1e4)
DEFAULT_SAMPLES = 2000
SLOPE_TOL = 0.15
RESIDUAL_TOL = 1e-10
FORMULA_TOL = 1e-8


class MapEvaluator:
    """Vectorized complex evaluation of a polynomial map."""

    def __init__(self, F: PolyMap):
        self.n = F.n
        self._parts = []
        for p in F.components:
            exps = np.array([e for e, _ in p], dtype=np.int64)
            coeffs = np.array([complex(c) for _, c in p], dtype=np.complex128)
            self._parts.append((exps, coeffs))

    def __call__(self, Z: np.ndarray) -> np.ndarray:
        """``Z`` has shape ``(N, n)``; returns ``F(Z)`` with the same shape."""
        Z = np.asarray(Z, dtype=np.complex128)
        out = np.empty(Z.shape, dtype=np.complex128)
        for i, (exps, coeffs) in enumerate(self._parts):
            mono = np.prod(Z[:, None, :] ** exps[None, :, :], axis=2)
            out[:, i] = mono @ coeffs
        return out

    def norm(self, Z: np.ndarray) -> np.ndarray:
        return np.abs(self(Z)).max(axis=1)


@dataclass(frozen=True)
class SphereMinimum:
    value: float
    witness: tuple  # the point of the sphere attaining ``value``
    radius: float

    def __float__(self):
        return self.value


def _points(R, pinned, params, n):
    # params: (..., 2n - 1) = phases for all n coordinates, then log radii of the free ones
    theta = params[..., :n]
    logr = np.minimum(params[..., n:], np.log(R))
    mod = np.empty(theta.shape)
    free = [j for j in range(n) if j != pinned]
    mod[..., pinned] = R
    if free:
        mod[..., free] = np.exp(logr)
    return mod * np.exp(1j * theta)


def min_on_sphere(
    F: PolyMap | MapEvaluator,
    R: float,
    budget: int = DEFAULT_SAMPLES,
    seed=0,
    refine: int = 10,
    iterations: int = 200,
) -> SphereMinimum:
    """Upper estimate of ``min |F(z)|`` over the max-norm sphere ``|z| = R``.

    Random points (one coordinate of modulus ``R``, the rest uniform in the
    polydisk) are followed by compass search on the phases and log-moduli of
    the best candidates of each chart. The search descends ``sum |F_i|^2``; the reported
    value is the smallest max-norm ``|F|`` seen, at a stored witness point.
    """
    ev = F if isinstance(F, MapEvaluator) else MapEvaluator(F)
    n = ev.n
    rng = np.random.default_rng(seed)
    pinned = rng.integers(0, n, size=budget)
    theta = rng.uniform(-np.pi, np.pi, size=(budget, n))
    rad = R * np.sqrt(rng.uniform(0.0, 1.0, size=(budget, n)))
    rad[np.arange(budget), pinned] = R
    Z = rad * np.exp(1j * theta)
    vals = ev(Z)
    norms = np.abs(vals).max(axis=1)
    best = int(np.argmin(norms))
    best_val, best_z = float(norms[best]), Z[best]

    smooth = (np.abs(vals) ** 2).sum(axis=1)
    # spread the refined starts over the pinned coordinate: each chart of the
    # sphere has its own basins
    per_chart = -(-refine // n)
    order = []
    for k in range(n):
        chart = np.flatnonzero(pinned == k)
        order.extend(chart[np.argsort(smooth[chart])[:per_chart]])
    dim = 2 * n - 1
    moves = np.concatenate([np.eye(dim), -np.eye(dim)])
    tiny = np.log(np.finfo(float).tiny) / 2
    for idx in order:
        k = int(pinned[idx])
        free = [j for j in range(n) if j != k]
        x = np.concatenate([theta[idx], np.log(np.maximum(rad[idx, free], 1e-300))])
        fx = smooth[idx]
        step = 1.0
        for _ in range(iterations):
            trial = x[None, :] + step * moves
            trial[:, n:] = np.clip(trial[:, n:], tiny, np.log(R))
            Zt = _points(R, k, trial, n)
            Ft = np.abs(ev(Zt))
            ft = (Ft**2).sum(axis=1)
            nt = Ft.max(axis=1)
            j = int(np.argmin(nt))
            if nt[j] < best_val:
                best_val, best_z = float(nt[j]), Zt[j]
            j = int(np.argmin(ft))
            if ft[j] < fx:
                x, fx = trial[j], ft[j]
                step = min(2.0 * step, 4.0)
            else:
                step *= 0.5
    return SphereMinimum(best_val, tuple(complex(c) for c in best_z), float(R))


@dataclass
class GrowthProfile:
    radii: list
    min_estimates: list
    witnesses: list = field(default_factory=list)
    fitted_exponent: float | None = None
    intercept: float | None = None
    empirical_C: float | None = None
    flat: bool = False
    excluded: list = field(default_factory=list)

    def to_json(self) -> list:
        return [[r, v] for r, v in zip(self.radii, self.min_estimates)]


def fit_growth_exponent(radii: Sequence[float], values: Sequence[float]) -> tuple[float, float, bool]:
    """Least-squares slope and intercept of ``log value`` against ``log radius``.

    Returns ``(slope, intercept, flat)``; a flat profile reports slope 0.
    """
    if len(radii) < 4:
        raise ValueError("at least four radii are needed for a fit")
    x = np.log(np.asarray(radii, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if np.ptp(y) <= np.finfo(float).eps * max(1.0, np.abs(y).max()):
        return 0.0, float(y.mean()), True
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept), False


def growth_profile(F: PolyMap, radii=DEFAULT_RADII, budget: int = DEFAULT_SAMPLES, seed=0) -> GrowthProfile:
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise ValueError("radii must be positive and strictly increasing")
    ev = MapEvaluator(F)
    seeds = np.random.SeedSequence(seed).spawn(len(radii))
    profile = GrowthProfile([], [])
    for R, ss in zip(radii, seeds):
        m = min_on_sphere(ev, R, budget, seed=ss)
        if m.value > 0 and np.isfinite(m.value):
            profile.radii.append(R)
            profile.min_estimates.append(m.value)
            profile.witnesses.append(m.witness)
        else:
            profile.excluded.append((R, m.witness))
    slope, intercept, flat = fit_growth_exponent(profile.radii, profile.min_estimates)
    profile.fitted_exponent = slope
    profile.intercept = intercept
    profile.empirical_C = float(np.exp(intercept))
    profile.flat = flat
    return profile


@dataclass
class Verdict:
    name: str
    status: str
    slope: float | None = None
    bound: float | None = None
    expected: float | None = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "status": self.status,
            "slope": self.slope,
            "bound": self.bound,
            "expected": self.expected,
            "detail": self.detail,
            **self.data,
        }


def verify_growth(
    F: PolyMap,
    report,
    radii=DEFAULT_RADII,
    budget: int = DEFAULT_SAMPLES,
    seed=0,
    expected: float | None = None,
    tol: float = SLOPE_TOL,
) -> Verdict:
    """Compare the fitted sphere-minimum slope with the proved exponents.

    The estimate is an upper bound for the true minimum, so a slope below a
    proved lower-bound exponent is a genuine contradiction.
    """
    if not report.hypothesis_certified:
        return Verdict("growth", SKIPPED, detail="hypothesis not certified")
    profile = growth_profile(F, radii, budget, seed)
    slope = profile.fitted_exponent
    bound = max(report.thm11_exponent, report.thm12_exponent)
    problems = []
    if slope < bound - tol:
        k = int(np.argmin(np.asarray(profile.min_estimates) / np.asarray(profile.radii) ** bound))
        problems.append(f"slope {slope:.4f} below bound {bound} (witness z = {profile.witnesses[k]})")
    if expected is not None and abs(slope - expected) > tol:
        problems.append(f"slope {slope:.4f} not within {tol} of expected {expected}")
    data = {
        "empirical_C": profile.empirical_C,
        "profile": profile.to_json(),
        "flat": profile.flat,
        "note": "sphere minima are sampled upper estimates",
    }
    return Verdict("growth", FAIL if problems else PASS, slope, bound, expected, "; ".join(problems), data)


def _as_complex_coeffs(p) -> np.ndarray:
    if isinstance(p, MultiPoly):
        p = p.univariate_coeffs()
    return np.array([complex(c) for c in p], dtype=np.complex128)


def roots_univariate(p) -> np.ndarray:
    """All complex roots of a univariate polynomial (ascending coefficients).

    Companion-matrix eigenvalues, followed by one Newton step that is kept
    only when it lowers the residual.
    """
    a = _as_complex_coeffs(p)
    while a.size and a[-1] == 0:
        a = a[:-1]
    if a.size < 2:
        raise PreconditionError("polynomial must have degree >= 1")
    desc = a[::-1]
    roots = np.roots(desc)
    dp = np.polyder(desc)
    absdesc = np.abs(desc)

    def rel_residual(r):
        return np.abs(np.polyval(desc, r)) / np.maximum(np.polyval(absdesc, np.abs(r)), np.finfo(float).tiny)

    res = rel_residual(roots)
    deriv = np.polyval(dp, roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        polished = roots - np.polyval(desc, roots) / deriv
    ok = np.isfinite(polished)
    pres = np.where(ok, rel_residual(np.where(ok, polished, 0)), np.inf)
    better = pres < res
    roots = np.where(better, polished, roots)
    res = np.where(better, pres, res)
    if roots.size != a.size - 1 or not np.all(res <= RESIDUAL_TOL):
        raise RootFindingError(f"root residuals {res} exceed {RESIDUAL_TOL}")
    return roots


def random_direction(n: int, rng: np.random.Generator) -> tuple:
    """Rational direction of max-norm one."""
    u = [Fraction(int(v), 1000) for v in rng.integers(-1000, 1001, size=n)]
    k = int(rng.integers(0, n))
    u[k] = Fraction(1 if rng.integers(0, 2) else -1)
    return tuple(u)


def verify_lemma31(
    P: PGFull | Callable,
    delta: int,
    seed=0,
    n: int | None = None,
    eps=(1e-1, 1e-2, 1e-3, 1e-4),
    tol: float = SLOPE_TOL,
    expected: float | None = None,
) -> Verdict:
    """Growth of the largest root of ``T -> P(eps*u, T)`` as ``eps -> 0``.

    ``P`` is a full ``PGFull`` or a callable mapping a rational point ``w`` to
    the ascending exact coefficients of ``P(w, T)``. Roots escaping to infinity
    satisfy ``|t| >= c |w|^(-1/delta)``, so the fitted slope of
    ``log max|t|`` against ``log eps`` may not exceed ``-1/delta``.
    """
    if delta == 0:
        return Verdict("root_growth", SKIPPED, detail="delta = 0: roots stay bounded")
    if isinstance(P, PGFull):
        n = P.n
        coeffs_at = P.slice_coeffs
    else:
        if n is None:
            raise ValueError("dimension n is required for a callable P")
        coeffs_at = P
    if not any(coeffs_at((Fraction(0),) * n)):
        raise PreconditionError("P(0, T) vanishes identically")
    rng = np.random.default_rng(seed)
    u = random_direction(n, rng)
    levels = [Fraction(e).limit_denominator(10**12) for e in eps]
    sizes = []
    for e in levels:
        coeffs = coeffs_at(tuple(e * x for x in u))
        roots = roots_univariate(coeffs)
        sizes.append(float(np.abs(roots).max()))
    x = np.log([float(e) for e in levels])
    slope = float(np.polyfit(x, np.log(sizes), 1)[0])
    bound = -1.0 / delta
    problems = []
    if slope > bound + tol:
        problems.append(f"slope {slope:.4f} above {bound:.4f}")
    if expected is not None and abs(slope - expected) > tol:
        problems.append(f"slope {slope:.4f} not within {tol} of expected {expected}")
    data = {"direction": [str(c) for c in u], "max_root": sizes}
    return Verdict("root_growth", FAIL if problems else PASS, slope, bound, expected, "; ".join(problems), data)


def verify_property23(
    H: Sequence[MultiPoly] | FormSystem,
    extra: MultiPoly,
    L: MultiPoly,
    V: Sequence[tuple],
    tol: float = FORMULA_TOL,
) -> Verdict:
    """Check ``Res(H_1..H_n, H) = Res(H_1..H_n, L^d) * prod_p (H/L^d)(p)^mu_p``.

    ``V`` lists ``(point, multiplicity)`` pairs, points in homogeneous
    coordinates (complex allowed). Both resultants are exact; the product is
    evaluated in floating point.
    """
    forms = list(H.forms if isinstance(H, FormSystem) else H)
    d = extra.total_degree()
    if not extra.is_homogeneous() or d < 1:
        raise PreconditionError("extra form must be homogeneous of positive degree")
    if not L.is_homogeneous(1):
        raise PreconditionError("L must be a linear form")
    bez = prod(h.total_degree() for h in forms)
    if sum(m for _, m in V) != bez:
        raise PreconditionError(f"multiplicities sum to {sum(m for _, m in V)}, expected {bez}")
    product = complex(1)
    for p, mult in V:
        p = tuple(complex(x) for x in p)
        lp = complex(L.evaluate(p))
        if abs(lp) <= 1e-14 * max(1.0, max(abs(x) for x in p)):
            raise PreconditionError(f"L vanishes at {p}")
        product *= (complex(extra.evaluate(p)) / lp**d) ** mult
    lhs = resultant(forms + [extra]).value
    base = resultant(forms + [L**d]).value
    rhs = complex(base) * product
    err = abs(complex(lhs) - rhs)
    scale = max(abs(complex(lhs)), abs(rhs), 1.0)
    status = PASS if err <= tol * scale else FAIL
    return Verdict(
        "product_formula",
        status,
        detail=f"|LHS - RHS| = {err:.3e}",
        data={"lhs": str(lhs), "base": str(base), "rhs": [rhs.real, rhs.imag], "relative_error": err / scale},
    )
