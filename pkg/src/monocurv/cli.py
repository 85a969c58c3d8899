"""Command-line front end: sweeps, classification, scans, and the verify gate.

Numbers in delimited output are printed with 17 significant digits so that
identical inputs give byte-identical, round-trip-safe files.  Grids are
``min:max:count`` with both endpoints included and index-based generation
(no accumulation drift).  Exit codes: 0 success, 1 input error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__, extremum, monotone, nlevel, qubit, verify

FORMULA_TEXT = {
    "sld": "(1+x)/2",
    "bures": "(1+x)/2 (alias of sld)",
    "smallest": "2x/(1+x)",
    "kubo_mori": "(x-1)/log(x)",
    "log_square": "2(x-1)^2/((1+x) log(x)^2)",
    "sqrt_log": "2(x-1) sqrt(x)/((1+x) log(x))",
    "power": "2 x^(alpha+1/2)/(1+x^(2 alpha)),  alpha in [0, 1/2]",
    "wyd": "beta(1-beta)(x-1)^2/((x^beta-1)(x^(1-beta)-1)),  beta in (-1,1)\\{0}",
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_grid(spec: str) -> np.ndarray:
    """Inclusive grid ``min:max:count``, generated by index to stay reproducible."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec {spec!r} is not of the form min:max:count")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2:
        raise ValueError(f"grid count must be >= 2, got {count}")
    if not lo < hi:
        raise ValueError(f"grid needs min < max, got {lo} >= {hi}")
    return np.linspace(lo, hi, count)


def parse_scalar_or_grid(spec: str) -> np.ndarray:
    return parse_grid(spec) if ":" in spec else np.array([float(spec)])


def resolve_function(spec: str, alpha: float, beta: float) -> monotone.MonotoneFunction:
    """``catalog:<name>`` or ``measure:<path>`` into a function object."""
    kind, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise ValueError(f"function spec {spec!r} must be catalog:<name> or measure:<path>")
    if kind == "catalog":
        return monotone.catalog(rest, alpha=alpha, beta=beta)
    if kind == "measure":
        return monotone.function_from_measure(monotone.load_measure(rest), label=rest)
    raise ValueError(f"unknown function source {kind!r} (use catalog: or measure:)")


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_catalog(args) -> int:
    lines = ["name,formula,f(2),worst_symmetry_residual"]
    for name, params in monotone.DEFAULT_CATALOG:
        f = monotone.catalog(name, **params)
        residual = max(
            abs(monotone.symmetry_residual(f, float(x))) for x in np.logspace(-3, 3, 13)
        )
        label = name if not params else f.label
        lines.append(f'{label},"{FORMULA_TEXT[name]}",{_fmt(f(2.0))},{_fmt(residual)}')
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_curve(args) -> int:
    f = resolve_function(args.f, args.alpha, args.beta)
    grid = parse_grid(args.grid)
    samples = qubit.curvature_profile(f, grid)
    lines = ["a,r_closed,r_sums,r_geometric,max_rel_disagreement"]
    for s in samples:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (s.a, s.r_closed, s.r_sums, s.r_geometric, s.max_rel_disagreement)
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    if args.tol is not None:
        if args.tol <= 0.0:
            raise ValueError(f"tolerance must be positive, got {args.tol}")
        worst = max(s.max_rel_disagreement for s in samples)
        if worst > args.tol:
            print(f"verification failure: disagreement {worst:.3e} > {args.tol}", file=sys.stderr)
            return 2
    return 0


def cmd_classify(args) -> int:
    f = resolve_function(args.f, args.alpha, args.beta)
    classification = extremum.classify_origin(f)
    _emit(json.dumps(classification.to_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_family_scan(args) -> int:
    ps = parse_scalar_or_grid(args.p)
    qs = parse_scalar_or_grid(args.q)
    lines = ["p,q,t_value,c2,verdict"]
    for p in ps:
        for q in qs:
            t = extremum.t_double_pair(float(p), float(q))
            cls = extremum.classify_origin(extremum.family_measure(float(p), float(q)))
            lines.append(
                f"{_fmt(p)},{_fmt(q)},{_fmt(t)},{_fmt(cls.values.c2)},{cls.verdict.value}"
            )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_nlevel(args) -> int:
    values = [float(s) for s in args.spectrum.split(",")]
    total = sum(values)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"spectrum sums to {total!r}; deviations beyond 1e-9 are rejected")
    # sub-1e-9 float residue from the decimal input is normalized away
    spectrum = nlevel.Spectrum([v / total for v in values])
    f = resolve_function(args.f, args.alpha, args.beta)
    r = nlevel.scalar_curvature(f, spectrum)
    report = {
        "function": f.label,
        "spectrum": [float(_fmt(v)) for v in spectrum.eigenvalues],
        "scalar_curvature": float(_fmt(r)),
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    results = verify.run_all()
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"criterion {res.index:02d} {status}  {res.name}: {res.detail}")
    failures = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failures}/{len(results)} criteria passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 2 if failures else 0


def _add_function_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--f",
        required=True,
        metavar="SPEC",
        help="function source: catalog:<name> or measure:<path>",
    )
    parser.add_argument(
        "--alpha", type=float, default=0.25, help="parameter for catalog:power (default 0.25)"
    )
    parser.add_argument(
        "--beta", type=float, default=0.5, help="parameter for catalog:wyd (default 0.5)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monocurv",
        description="Scalar curvature of monotone quantum statistical metrics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the built-in operator monotone functions")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("curve", help="three-route curvature sweep over the qubit parameter")
    _add_function_args(p)
    p.add_argument(
        "--grid",
        required=True,
        metavar="MIN:MAX:COUNT",
        help="inclusive a-grid; write --grid=-0.95:0.95:39 when MIN is negative",
    )
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="fail (exit 2) if any row disagrees beyond this relative tolerance",
    )
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("classify", help="classify the curvature extremum at maximal mixing")
    _add_function_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("family-scan", help="sweep the two-pair measure family over (p, q)")
    p.add_argument("--p", required=True, help="pair location: scalar or min:max:count grid")
    p.add_argument("--q", required=True, help="pair location: scalar or min:max:count grid")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_family_scan)

    p = sub.add_parser("nlevel", help="scalar curvature for an n-level spectrum")
    _add_function_args(p)
    p.add_argument(
        "--spectrum",
        required=True,
        help="comma-separated eigenvalues summing to 1 (within 1e-9)",
    )
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_nlevel)

    p = sub.add_parser("verify", help="run the full acceptance battery (exit 2 on failure)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: measure file is not valid JSON: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
