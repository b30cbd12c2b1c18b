"""Command-line front end.

Subcommands
-----------
phase-shift   sweep delta(k) on a geometric wavenumber grid
spectrum      aligned free/perturbed Dirichlet eigenvalues on (0, L)
energy-diff   ground-state energy differences for (N, L) pairs
finite-size   finite-size scan along a thermodynamic-limit family,
              with a JSON summary of the extrapolated limits
verify        run the acceptance checks and print one line per check

All numeric output uses 17 significant digits with '.' as the decimal
separator, so files round-trip exactly and identical configurations give
byte-identical output. Tolerances and thread count can also be supplied
through PHASELAB_ODE_TOL, PHASELAB_K_TOL, PHASELAB_QUAD_TOL and
PHASELAB_THREADS.

Exit status: 0 success, 2 malformed input, 3 numerical failure, 4 I/O
failure; ``verify`` exits 1 when a check fails.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .asymptotics import (
    ThermoFamily,
    energy_difference,
    extrapolate_limit,
    finite_size_records,
    finite_size_scan,
)
from .eigensolver import spectrum
from .errors import NumericError, PhaselabError
from .potentials import parse_potential
from .scattering import fermi_point
from .variable_phase import phase_shift_grid
from .verify import CHECK_IDS, run_checks

_ENV_PREFIX = "PHASELAB_"


def _env_default(name: str, fallback, cast):
    raw = os.environ.get(_ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"environment variable {_ENV_PREFIX}{name} is not a valid {cast.__name__}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _emit_rows(header, rows, out_path, fmt):
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(parser, need_potential=True):
    if need_potential:
        parser.add_argument(
            "--potential",
            required=True,
            help="potential descriptor: inline JSON or @file",
        )
    parser.add_argument(
        "--ode-tol",
        type=float,
        default=_env_default("ODE_TOL", 1e-10, float),
        help="phase integration tolerance (default 1e-10)",
    )
    parser.add_argument(
        "--k-tol",
        type=float,
        default=_env_default("K_TOL", 1e-12, float),
        help="eigenvalue root tolerance (default 1e-12)",
    )
    parser.add_argument(
        "--quad-tol",
        type=float,
        default=_env_default("QUAD_TOL", 1e-10, float),
        help="quadrature tolerance (default 1e-10)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=_env_default("THREADS", 1, int),
        help="worker threads, 0 = auto (default 1)",
    )
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default=_env_default("FORMAT", "csv", str),
        help="output format (default csv)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaselab",
        description="Half-line scattering phase shifts and finite-size energy asymptotics.",
    )
    parser.add_argument("--version", action="version", version=f"phaselab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-shift", help="sweep delta(k) on a geometric grid")
    _add_common(p)
    p.add_argument("--kmin", type=float, required=True)
    p.add_argument("--kmax", type=float, required=True)
    p.add_argument("--count", type=int, required=True)

    p = sub.add_parser("spectrum", help="free and perturbed Dirichlet eigenvalues")
    _add_common(p)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)

    p = sub.add_parser("energy-diff", help="ground-state energy differences")
    _add_common(p)
    p.add_argument("--N", required=True, help="comma-separated particle numbers")
    p.add_argument("--L", required=True, help="comma-separated lengths (same count as --N)")

    p = sub.add_parser("finite-size", help="finite-size scan along a family")
    _add_common(p)
    p.add_argument("--E", type=float, required=True, help="Fermi energy")
    p.add_argument("--a", default="0", help="comma-separated family offsets (default 0)")
    p.add_argument("--N", required=True, help="comma-separated particle numbers")
    p.add_argument(
        "--free-L",
        default=None,
        help="explicit lengths overriding the family rule (reported without pass/fail)",
    )

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument(
        "--checks",
        default=None,
        help=f"comma-separated subset of {', '.join(CHECK_IDS)} (default all)",
    )
    return parser


def _cmd_phase_shift(args) -> int:
    pot = parse_potential(args.potential)
    shifts = phase_shift_grid(pot, args.kmin, args.kmax, args.count, args.ode_tol)
    pi = math.pi
    rows = [
        (p.k, p.delta, p.delta_prime, 0.0 - p.delta / pi, (p.delta / pi) ** 2)
        for p in shifts
    ]
    _emit_rows(
        ("k", "delta", "delta_prime", "xi_at_k2", "zeta_at_k2"), rows, args.out, args.format
    )
    return 0


def _cmd_spectrum(args) -> int:
    pot = parse_potential(args.potential)
    sp = spectrum(pot, args.L, args.nmax, args.k_tol, args.ode_tol, args.threads)
    rows = [
        (int(sp.n[i]), float(sp.lam[i]), float(sp.mu[i]), float(sp.k_mu[i]), float(sp.residual[i]))
        for i in range(sp.n.size)
    ]
    _emit_rows(("n", "lambda", "mu", "k_mu", "residual"), rows, args.out, args.format)
    return 0


def _cmd_energy_diff(args) -> int:
    pot = parse_potential(args.potential)
    ns = _parse_ints(args.N)
    ls = _parse_floats(args.L)
    if len(ls) == 1:
        ls = ls * len(ns)
    if len(ns) != len(ls):
        raise PhaselabError("energy-diff: --N and --L must list the same number of entries")
    rows = []
    for n, length in zip(ns, ls):
        rows.append((n, length, energy_difference(pot, n, length, args.k_tol, args.ode_tol)))
    _emit_rows(("N", "L", "delta_E_exact"), rows, args.out, args.format)
    return 0


def _cmd_finite_size(args) -> int:
    pot = parse_potential(args.potential)
    ns = _parse_ints(args.N)
    offsets = _parse_floats(args.a)
    free_ls = _parse_floats(args.free_L) if args.free_L else None
    if free_ls is not None and len(free_ls) != len(ns):
        raise PhaselabError("finite-size: --free-L must list one length per --N entry")
    point = fermi_point(pot, args.E, args.quad_tol)
    rows = []
    families = []
    for a in offsets:
        if free_ls is not None:
            recs = finite_size_records(
                pot, args.E, a, list(zip(ns, free_ls)),
                args.k_tol, args.quad_tol, args.ode_tol, args.threads,
            )
        else:
            fam = ThermoFamily.from_particle_counts(args.E, a, ns)
            recs = finite_size_scan(
                pot, fam, args.k_tol, args.quad_tol, args.ode_tol, args.threads
            )
        for r in recs:
            rows.append(
                (r.N, r.L, r.a, r.E, r.delta_E_exact, r.leading_moving,
                 r.leading_fumi, r.x_theorem, r.x_corollary)
            )
        summary = {"a": a}
        if free_ls is None and len(recs) >= 3:
            limit, err = extrapolate_limit([(r.L, r.x_corollary) for r in recs])
            target = (1.0 - 2.0 * a) * point.xi + point.zeta
            summary.update(
                limit_estimate=limit,
                error_estimate=err,
                target=target,
                passed=bool(abs(limit - target) <= max(0.01 * abs(target), 1e-8)),
            )
        else:
            summary.update(
                limit_estimate=recs[-1].x_corollary if recs else None,
                error_estimate=None,
                target=None,
                passed=None,
            )
        families.append(summary)
    _emit_rows(
        (
            "N", "L", "a", "E", "delta_E_exact", "leading_moving",
            "leading_fumi", "x_theorem", "x_corollary",
        ),
        rows,
        args.out,
        args.format,
    )
    verdicts = [f["passed"] for f in families]
    summary_doc = {
        "E": args.E,
        "target_xi": point.xi,
        "target_zeta": point.zeta,
        "limit_estimate": families[0]["limit_estimate"],
        "error_estimate": families[0]["error_estimate"],
        "pass": None if any(v is None for v in verdicts) else all(verdicts),
        "families": families,
    }
    text = json.dumps(summary_doc, indent=2) + "\n"
    if args.out:
        with open(args.out + ".summary.json", "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)
    return 0


def _cmd_verify(args) -> int:
    wanted = None
    if args.checks:
        wanted = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in wanted if c not in CHECK_IDS]
        if unknown:
            raise PhaselabError(f"verify: unknown check ids {unknown}")
    results = run_checks(wanted)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.check_id:>4}  {r.name:<{width}}  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "phase-shift": _cmd_phase_shift,
        "spectrum": _cmd_spectrum,
        "energy-diff": _cmd_energy_diff,
        "finite-size": _cmd_finite_size,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except NumericError as exc:
        print(f"phaselab: numerical failure: {exc}", file=sys.stderr)
        return 3
    except PhaselabError as exc:
        print(f"phaselab: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"phaselab: i/o failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
