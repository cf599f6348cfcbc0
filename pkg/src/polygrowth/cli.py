"""Command-line front end.

Exit codes: 0 success, 1 parse/IO/hard errors or failed checks, 2 when the
hypothesis at infinity could not be certified.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .analysis import analyze, format_report
from .exceptions import CertificationError, NotHomogeneousError, PolyGrowthError
from .macaulay import DEFAULT_MAX_SIZE, FormSystem, resultant
from .numeric import DEFAULT_RADII, DEFAULT_SAMPLES, verify_growth, verify_lemma31
from .pgcurve import DEFAULT_GRID_CAP, choose_G, pg_full, pg_slice
from .polyring import format_rational, parse_equations, parse_rational, parse_system

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCERTIFIED = 2


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    radii: tuple = DEFAULT_RADII
    samples_per_radius: int = DEFAULT_SAMPLES
    certificate_attempts: int = 16
    matrix_size_cap: int = DEFAULT_MAX_SIZE
    grid_cap: int = DEFAULT_GRID_CAP
    output_format: str = "text"

    def __post_init__(self):
        for name in ("samples_per_radius", "certificate_attempts", "matrix_size_cap", "grid_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.output_format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(
            seed=args.seed,
            radii=tuple(args.radii),
            samples_per_radius=args.samples,
            certificate_attempts=args.attempts,
            matrix_size_cap=args.max_matrix,
            grid_cap=args.grid_cap,
            output_format=args.format,
        )


def _csv_floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _csv_rationals(text):
    try:
        return [parse_rational(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(payload, config, text):
    if config.output_format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args, config) -> int:
    F = parse_system(_read(args.file))
    report = analyze(
        F,
        seed=config.seed,
        attempts=config.certificate_attempts,
        max_size=config.matrix_size_cap,
        grid_cap=config.grid_cap,
    )
    _emit(report.to_dict(), config, format_report(report))
    if not report.hypothesis_certified:
        print("hypothesis not certified", file=sys.stderr)
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_resultant(args, config) -> int:
    names, labels, polys = parse_equations(_read(args.file))
    if len(polys) != len(names):
        raise PolyGrowthError(f"{len(polys)} forms for {len(names)} variables")
    for label, p in zip(labels, polys):
        if p.is_zero():
            raise NotHomogeneousError(f"{label} is zero")
        d = p.total_degree()
        for e, c in p:
            if sum(e) != d:
                term = type(p).monomial(e, c).to_str(names)
                raise NotHomogeneousError(f"{label} is not homogeneous: offending term {term}")
    res = resultant(FormSystem(tuple(polys)), config.matrix_size_cap)
    payload = {
        "resultant": format_rational(res.value),
        "method": res.method,
        "sign_convention": res.sign_convention,
    }
    _emit(payload, config, f"{format_rational(res.value)}\nmethod: {res.method}\n")
    return EXIT_OK


def cmd_pg(args, config) -> int:
    F = parse_system(_read(args.file))
    if args.w is None:
        w = [0] * F.n
    else:
        w = args.w
    if len(w) != F.n:
        raise PolyGrowthError(f"--w needs {F.n} values, got {len(w)}")
    G, cert = choose_G(F, seed=config.seed, attempts=config.certificate_attempts, max_size=config.matrix_size_cap)
    sl = pg_slice(F, G, w, config.matrix_size_cap)
    poly = sl.poly_in_T.to_str(["T"])
    payload = {
        "G": str(G),
        "w": [format_rational(x) for x in sl.w],
        "poly_in_T": poly,
        "coefficients": [format_rational(c) for c in sl.poly_in_T.univariate_coeffs()],
        "degree": str(sl.degree),
        "degree_bound_used": str(sl.degree_bound_used),
        "nodes": [str(t) for t in sl.nodes],
    }
    text = f"G = {G}\nw = ({', '.join(payload['w'])})\nP_G(w, T) = {poly}\ndeg_T = {sl.degree}\n"
    _emit(payload, config, text)
    return EXIT_OK


def cmd_verify(args, config) -> int:
    F = parse_system(_read(args.file))
    report = analyze(
        F,
        seed=config.seed,
        attempts=config.certificate_attempts,
        max_size=config.matrix_size_cap,
        grid_cap=config.grid_cap,
        image=False,
    )
    if not report.hypothesis_certified:
        payload = {"analysis": report.to_dict(), "checks": []}
        _emit(payload, config, format_report(report))
        print("hypothesis not certified", file=sys.stderr)
        return EXIT_UNCERTIFIED
    checks = [
        verify_growth(F, report, config.radii, config.samples_per_radius, seed=config.seed),
    ]
    G = report.G_used
    try:
        P = pg_full(F, G, config.grid_cap, config.matrix_size_cap)
    except PolyGrowthError:
        # fall back to exact slices when the full grid is too large
        P = lambda w: pg_slice(F, G, w, config.matrix_size_cap).poly_in_T.univariate_coeffs()  # noqa: E731
    checks.append(verify_lemma31(P, report.delta0, seed=config.seed, n=F.n))
    lines = [
        f"{v.name:<12} {v.status:<7}"
        + ("" if v.slope is None else f" slope {v.slope:+.4f} (bound {v.bound:+.4f})")
        + (f"  {v.detail}" if v.detail else "")
        for v in checks
    ]
    payload = {"analysis": report.to_dict(), "checks": [v.to_dict() for v in checks]}
    _emit(payload, config, "\n".join(lines) + "\n")
    return EXIT_OK if all(v.ok for v in checks) else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--radii", type=_csv_floats, default=list(DEFAULT_RADII), help="comma-separated radii")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="sphere samples per radius")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--attempts", type=int, default=16, help="certificate draws per linear form")
    common.add_argument("--max-matrix", type=int, default=DEFAULT_MAX_SIZE, help="Macaulay matrix column cap")
    common.add_argument("--grid-cap", type=int, default=DEFAULT_GRID_CAP, help="node cap for full interpolation")

    parser = argparse.ArgumentParser(prog="polygrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("analyze", "degree, multiplicity, defect and growth exponents of a map"),
        ("resultant", "exact resultant of m forms in m variables"),
        ("verify", "numeric growth and root-growth checks"),
        ("pg", "exact slice T -> P_G(w, T)"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help="system file ('-' for stdin)")
        if name == "pg":
            p.add_argument("--w", type=_csv_rationals, default=None, help="comma-separated rationals")
    return parser


COMMANDS = {"analyze": cmd_analyze, "resultant": cmd_resultant, "verify": cmd_verify, "pg": cmd_pg}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[args.command](args, config)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (PolyGrowthError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
