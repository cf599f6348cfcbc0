"""Geometric degree, zero-fiber multiplicity, defect and growth exponents.

All invariants are read off exact degrees in ``T`` of slices of ``P_G``:
``deg_T P_G(w, T)`` is the multiplicity sum over a finite fiber ``F^-1(w)``,
so a generic ``w`` gives the geometric degree and ``w = 0`` gives ``mu``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod

from .exceptions import CertificationError, GridCapError, InconsistencyError
from .macaulay import DEFAULT_MAX_SIZE
from .pgcurve import (
    DEFAULT_GRID_CAP,
    LinearForm,
    StarCertificate,
    choose_G,
    pg_full,
    slice_degree,
)
from .polyring import PolyMap, format_rational

PROPER = "proper_at_0"
NONPROPER = "nonproper_at_0"
DEPENDENT = "algebraically_dependent"
NOT_APPLICABLE = "not applicable"

GENERIC_RANGE = 10**6
GENERIC_DRAWS = 3


def generic_points(n: int, seed, draws: int = GENERIC_DRAWS) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(rng.randint(-GENERIC_RANGE, GENERIC_RANGE) for _ in range(n)) for _ in range(draws)]


def geometric_degree(
    F: PolyMap,
    G: LinearForm,
    certificate: StarCertificate | None = None,
    seed=0,
    draws: int = GENERIC_DRAWS,
    max_size: int = DEFAULT_MAX_SIZE,
    return_draws: bool = False,
):
    """Maximum of ``deg_T P_G(w, T)`` over random integer points ``w``.

    The degree only drops on a proper algebraic subset, so the maximum is
    ``d(F)`` unless every draw lands on it.
    """
    points = generic_points(F.n, seed, draws)
    d = max(slice_degree(F, G, w, max_size) for w in points)
    return (d, points) if return_draws else d


def mu_at_zero(
    F: PolyMap, G: LinearForm, certificate: StarCertificate | None = None, max_size: int = DEFAULT_MAX_SIZE
) -> int:
    return slice_degree(F, G, (0,) * F.n, max_size)


def delta0(
    F: PolyMap,
    G: LinearForm,
    certificate: StarCertificate | None = None,
    seed=0,
    max_size: int = DEFAULT_MAX_SIZE,
) -> int:
    """``d(F) - mu``; a negative value means the generic draw failed."""
    mu = mu_at_zero(F, G, certificate, max_size)
    for attempt in range(2):
        d = geometric_degree(F, G, certificate, seed=seed + 1000003 * attempt, max_size=max_size)
        if d >= mu:
            return d - mu
    raise InconsistencyError(f"negative defect: generic degree {d} < mu = {mu}")


def exponent_bounds(degrees, mu: int, delta: int) -> tuple[int, int, int]:
    """Exponents ``(thm11, thm12, kollar)`` of the lower bounds ``|F(z)| >= C|z|^q``."""
    bezout = prod(degrees)
    low = min(degrees)
    return -delta, mu - bezout + low, -bezout + low


@dataclass
class AnalysisReport:
    degrees: tuple
    bezout: int
    hypothesis_certified: bool
    d_of_F: int | None = None
    mu: int | None = None
    delta0: int | None = None
    thm11_exponent: int | None = None
    thm12_exponent: int | None = None
    kollar_exponent: int | None = None
    proper_at_0: bool | None = None
    algebraically_dependent: bool | None = None
    classification: str | None = None
    G_used: LinearForm | None = None
    certificate: StarCertificate | None = None
    generic_w_draws: list = field(default_factory=list)
    image_equation: object = None
    coordinate_change: tuple | None = None
    message: str = ""

    def to_dict(self) -> dict:
        def num(v):
            return NOT_APPLICABLE if v is None else str(v)

        def flag(v):
            return NOT_APPLICABLE if v is None else v

        return {
            "degrees": [str(d) for d in self.degrees],
            "bezout": str(self.bezout),
            "hypothesis_certified": self.hypothesis_certified,
            "d_of_F": num(self.d_of_F),
            "mu": num(self.mu),
            "delta0": num(self.delta0),
            "thm11_exponent": num(self.thm11_exponent),
            "thm12_exponent": num(self.thm12_exponent),
            "kollar_exponent": num(self.kollar_exponent),
            "proper_at_0": flag(self.proper_at_0),
            "algebraically_dependent": flag(self.algebraically_dependent),
            "classification": flag(self.classification),
            "G_used": NOT_APPLICABLE if self.G_used is None else str(self.G_used),
            "certificate": NOT_APPLICABLE if self.certificate is None else self.certificate.to_dict(),
            "generic_w_draws": [[str(x) for x in w] for w in self.generic_w_draws],
            "image_equation": None if self.image_equation is None else self.image_equation,
            "coordinate_change": None
            if self.coordinate_change is None
            else [[str(a) for a in row] for row in self.coordinate_change],
            "message": self.message,
        }


def classify(report: AnalysisReport) -> str:
    if report.d_of_F == 0:
        return DEPENDENT
    return PROPER if report.delta0 == 0 else NONPROPER


def check_invariants(report: AnalysisReport) -> None:
    """Raise ``InconsistencyError`` if a report violates a structural invariant."""
    if not report.hypothesis_certified:
        return
    r = report
    low = min(r.degrees)
    problems = []
    if not 0 <= r.d_of_F <= r.bezout:
        problems.append("d(F) outside [0, prod d_i]")
    if r.delta0 != r.d_of_F - r.mu or r.delta0 < 0:
        problems.append("delta0 != d(F) - mu or negative")
    if not (r.delta0 == 0 or -r.delta0 >= r.mu - r.bezout + low):
        problems.append("thm11 < thm12 with positive defect")
    if r.kollar_exponent > r.thm12_exponent:
        problems.append("kollar exponent exceeds thm12 exponent")
    if r.proper_at_0 != (r.delta0 == 0 and r.d_of_F > 0):
        problems.append("properness flag inconsistent")
    if r.algebraically_dependent != (r.d_of_F == 0):
        problems.append("dependence flag inconsistent")
    if r.algebraically_dependent and (r.delta0 != 0 or r.mu != 0):
        problems.append("dependent map with non-zero mu or defect")
    if problems:
        raise InconsistencyError("; ".join(problems))


def analyze(
    F: PolyMap,
    seed=0,
    attempts: int = 16,
    max_size: int = DEFAULT_MAX_SIZE,
    grid_cap: int = DEFAULT_GRID_CAP,
    image: bool = True,
) -> AnalysisReport:
    """Run the full pipeline on ``F``.

    When the condition at infinity cannot be certified, only the degree data
    is filled in and every exponent is left as not applicable.
    """
    report = AnalysisReport(F.degrees, F.bezout, False, coordinate_change=F.change)
    try:
        G, cert = choose_G(F, seed=seed, attempts=attempts, max_size=max_size)
    except CertificationError as exc:
        report.message = str(exc)
        return report

    mu = mu_at_zero(F, G, cert, max_size)
    d = None
    for attempt in range(2):
        d, draws = geometric_degree(F, G, cert, seed=seed + 1000003 * attempt, max_size=max_size, return_draws=True)
        if d >= mu:
            break
    else:
        raise InconsistencyError(f"negative defect: generic degree {d} < mu = {mu}")
    delta = d - mu
    thm11, thm12, kollar = exponent_bounds(F.degrees, mu, delta)
    report.hypothesis_certified = True
    report.d_of_F = d
    report.mu = mu
    report.delta0 = delta
    report.thm11_exponent = thm11
    report.thm12_exponent = thm12
    report.kollar_exponent = kollar
    report.proper_at_0 = delta == 0 and d > 0
    report.algebraically_dependent = d == 0
    report.G_used = G
    report.certificate = cert
    report.generic_w_draws = draws
    report.classification = classify(report)
    if report.algebraically_dependent and image:
        try:
            P = pg_full(F, G, grid_cap, max_size)
            names = [f"W{i + 1}" for i in range(F.n)]
            report.image_equation = P.image_equation().to_str(names)
        except GridCapError as exc:
            report.image_equation = f"unavailable: {exc}"
    check_invariants(report)
    return report


def format_report(report: AnalysisReport) -> str:
    r = report
    lines = [
        f"degrees            : {', '.join(map(str, r.degrees))}",
        f"Bezout product     : {r.bezout}",
    ]
    if not r.hypothesis_certified:
        lines.append("hypothesis not certified")
        lines.append("reason             : " + r.message)
        lines.append("exponents          : not applicable")
        return "\n".join(lines) + "\n"
    lines += [
        f"G used             : {r.G_used}  (s0 = {format_rational(r.certificate.s0)}, "
        f"witness = {format_rational(r.certificate.witness.value)})",
        f"geometric degree   : {r.d_of_F}",
        f"mu (fiber over 0)  : {r.mu}",
        f"delta0             : {r.delta0}",
        f"exponent -delta0   : {r.thm11_exponent}",
        f"exponent mu-B+dmin : {r.thm12_exponent}",
        f"exponent -B+dmin   : {r.kollar_exponent}",
        f"classification     : {r.classification}",
    ]
    if r.image_equation is not None:
        lines.append(f"image equation     : {r.image_equation} = 0")
    if r.coordinate_change is not None:
        lines.append(f"coordinate change  : {r.coordinate_change}")
    return "\n".join(lines) + "\n"
