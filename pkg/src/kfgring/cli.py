"""Command-line interface.

Subcommands: spectrum, wavefunction, angular, potential-scan, verify.
Reports are deterministic: floats carry 17 significant digits, keys appear
in fixed order, and nothing depends on locale, environment variables, or
the clock.  Identical invocations produce byte-identical files.  When a
report path is given via --out, the matching figure is rendered next to it
with a .png suffix.

Exit codes: 0 success, 1 usage error, 2 domain/physics error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .angular import QuantumNumbers, solve_angular, theta_eval
from .errors import DomainError
from .potential import PotentialParams, approx_error_scan
from .radial import BoundState, chi_eval
from .spectrum import SpectrumRequest, SpectrumResult, solve_states
from .verify import SUITES, run_suite

__all__ = ["main"]

_STATE_COLUMNS = (
    "n_r", "N", "m", "E", "epsilon", "eta", "Lambda", "sqrt_c", "lambda",
    "l_eff", "norm_radial", "norm_angular", "admissible", "rejection_reason",
)


def _fmt_float(x: float) -> str:
    return f"{x:.16e}"


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "null" if math.isnan(value) else _fmt_float(value)
    return json.dumps(value)


def _render_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{json.dumps(k)}: {_render_json(v, indent + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        parts = [f"{inner}{_render_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    return _json_scalar(value)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else _fmt_float(value)
    return str(value)


def _render_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _state_record(s: BoundState) -> dict:
    rec = {
        "n_r": s.quantum.n_r,
        "N": s.quantum.N,
        "m": s.quantum.m,
        "E": s.E,
        "epsilon": s.epsilon,
        "eta": s.eta,
        "Lambda": s.Lambda,
        "sqrt_c": s.sqrt_c,
        "lambda": s.angular.lam,
        "l_eff": s.angular.l_eff,
        "norm_radial": s.norm,
        "norm_angular": s.angular.norm,
        "admissible": s.admissible,
    }
    if s.rejection_reason is not None:
        rec["rejection_reason"] = s.rejection_reason
    return rec


def _params_record(p: PotentialParams) -> dict:
    return {
        "M": p.M, "b": p.b, "alpha": p.alpha, "A": p.A,
        "beta": p.beta, "beta_prime": p.beta_prime, "C0": p.C0,
    }


def _render_error(kind: str, message: str) -> str:
    return _render_json({"error": {"type": kind, "message": message}}) + "\n"


def _parse_triplet(text: str, flag: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"{flag} expects start:stop:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"{flag} expects start:stop:count, got {text!r}") from exc
    if not lo < hi or count < 2:
        raise DomainError(f"{flag} needs start < stop and count >= 2")
    return lo, hi, count


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"--energy-window expects lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise DomainError(f"--energy-window expects lo:hi, got {text!r}") from exc
    return lo, hi


def _add_potential_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--M", type=float, default=1.0, help="rest mass (default 1)")
    sp.add_argument("--b", type=float, default=1.0, help="screening length (default 1)")
    sp.add_argument("--alpha", type=float, default=1.0, help="shape parameter (default 1)")
    sp.add_argument("--A", type=float, default=2.0, help="central strength (default 2)")
    sp.add_argument("--C0", type=float, default=1.0 / 12.0,
                    help="centrifugal-approximation constant (default 1/12)")
    sp.add_argument("--beta", type=float, default=0.0, help="ring cos-term strength")
    sp.add_argument("--beta-prime", type=float, default=0.0, help="ring constant strength")


def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", type=Path, default=None,
                    help="report file; the figure lands next to it as .png")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfgring",
        description="Relativistic bound states of a screened central potential "
                    "with a ring-shaped angular term, with built-in numerical "
                    "verification of every closed form.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="solve bound states over quantum-number cells")
    _add_potential_flags(sp)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--m", type=int, default=None, help="single azimuthal number")
    group.add_argument("--m-max", type=int, default=None,
                       help="scan m from 0 to this value inclusive")
    sp.add_argument("--N-max", type=int, default=0, help="max polar number (default 0)")
    sp.add_argument("--nr-max", type=int, default=0, help="max radial number (default 0)")
    sp.add_argument("--energy-window", type=str, default=None, metavar="LO:HI")
    sp.add_argument("--scan-points", type=int, default=2001)
    sp.add_argument("--tol", type=float, default=1e-12, help="root tolerance")
    _add_output_flags(sp)

    sp = sub.add_parser("wavefunction",
                        help="evaluate a radial eigenfunction from a spectrum report")
    sp.add_argument("--state", type=Path, required=True,
                    help="JSON spectrum report to re-ingest")
    sp.add_argument("--index", type=int, default=0,
                    help="index into the report's states list (default 0)")
    sp.add_argument("--grid", type=str, required=True, metavar="START:STOP:COUNT",
                    help="radial evaluation grid")
    _add_output_flags(sp)

    sp = sub.add_parser("angular", help="solve the polar eigenvalue problem")
    _add_potential_flags(sp)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--N", type=int, default=0,
                    help="polar number for the --grid table (default 0)")
    sp.add_argument("--N-max", type=int, default=0)
    sp.add_argument("--eta", type=float, default=1.0,
                    help="energy-dependent coupling eta = (M+E)/M (default 1)")
    sp.add_argument("--grid", type=str, default=None, metavar="START:STOP:COUNT",
                    help="colatitude grid; switches output to a (theta, Theta) table")
    _add_output_flags(sp)

    sp = sub.add_parser("potential-scan",
                        help="tabulate the centrifugal approximation error")
    sp.add_argument("--b", type=float, default=1.0)
    sp.add_argument("--C0", type=float, default=1.0 / 12.0)
    sp.add_argument("--grid", type=str, required=True, metavar="START:STOP:COUNT")
    _add_output_flags(sp)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES), default="all")
    sp.add_argument("--tol", type=float, default=None,
                    help="override every check's agreement threshold")
    _add_output_flags(sp)

    return parser


def _params_from_args(args) -> PotentialParams:
    return PotentialParams(
        M=args.M, b=args.b, alpha=args.alpha, A=args.A,
        beta=args.beta, beta_prime=args.beta_prime, C0=args.C0,
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _figure_path(out: Path) -> Path:
    return out.with_suffix(".png")


def _cmd_spectrum(args) -> int:
    params = _params_from_args(args)
    if args.m is not None:
        m_range = (args.m, args.m)
    elif args.m_max is not None:
        m_range = (0, args.m_max)
    else:
        m_range = (0, 0)
    window = _parse_window(args.energy_window) if args.energy_window else None
    req = SpectrumRequest(
        params=params, n_r_max=args.nr_max, N_max=args.N_max, m_range=m_range,
        energy_window=window, scan_points=args.scan_points, tol=args.tol,
    )
    result = solve_states(req)
    if args.format == "json":
        doc = {
            "params": _params_record(params),
            "request": {
                "n_r_max": req.n_r_max,
                "N_max": req.N_max,
                "m_range": list(req.m_range),
                "energy_window": list(window) if window else None,
                "scan_points": req.scan_points,
                "tol": req.tol,
            },
            "states": [_state_record(s) for s in result.states],
            "rejected": [_state_record(s) for s in result.rejected],
        }
        text = _render_json(doc) + "\n"
    else:
        rows = [
            [rec.get(c) for c in _STATE_COLUMNS]
            for rec in map(_state_record, result.states + result.rejected)
        ]
        text = _render_csv(_STATE_COLUMNS, rows)
    _emit(text, args.out)
    if args.out is not None:
        from .plotting import save_figure, spectrum_figure

        save_figure(spectrum_figure(result), _figure_path(args.out))
    return 0


def _state_from_report(path: Path, index: int) -> BoundState:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"state file is not valid JSON: {exc}") from exc
    try:
        precs = doc["params"]
        recs = doc["states"]
    except (KeyError, TypeError) as exc:
        raise DomainError("state file lacks 'params'/'states' sections") from exc
    if not recs:
        raise DomainError("spectrum report contains no admissible states")
    if not 0 <= index < len(recs):
        raise DomainError(f"state index {index} out of range 0..{len(recs) - 1}")
    params = PotentialParams(
        M=precs["M"], b=precs["b"], alpha=precs["alpha"], A=precs["A"],
        beta=precs["beta"], beta_prime=precs["beta_prime"], C0=precs["C0"],
    )
    rec = recs[index]
    q = QuantumNumbers(n_r=rec["n_r"], N=rec["N"], m=rec["m"])
    sol = solve_angular(q, params, rec["eta"])
    return BoundState(
        E=rec["E"], epsilon=rec["epsilon"], eta=rec["eta"], Lambda=rec["Lambda"],
        K=0.5 + rec["Lambda"], sqrt_c=rec["sqrt_c"], norm=rec["norm_radial"],
        quantum=q, angular=sol, params=params, admissible=rec["admissible"],
        rejection_reason=rec.get("rejection_reason"),
    )


def _cmd_wavefunction(args) -> int:
    state = _state_from_report(args.state, args.index)
    lo, hi, count = _parse_triplet(args.grid, "--grid")
    if lo <= 0.0:
        raise DomainError("radial grid must start above r = 0")
    r = np.linspace(lo, hi, count)
    chi = chi_eval(state, r)
    density = chi * chi
    if args.format == "json":
        doc = {
            "state": _state_record(state),
            "rows": [
                {"r": float(rv), "chi": float(cv), "chi_normalized_density": float(dv)}
                for rv, cv, dv in zip(r, chi, density)
            ],
        }
        text = _render_json(doc) + "\n"
    else:
        text = _render_csv(
            ("r", "chi", "chi_normalized_density"),
            [[float(rv), float(cv), float(dv)] for rv, cv, dv in zip(r, chi, density)],
        )
    _emit(text, args.out)
    if args.out is not None:
        from .plotting import save_figure, wavefunction_figure

        save_figure(wavefunction_figure(state, r, chi), _figure_path(args.out))
    return 0


def _mode_record(args, sol, N: int) -> dict:
    return {
        "m": args.m, "N": N, "eta": sol.eta, "beta": args.beta,
        "beta_prime": args.beta_prime, "u": sol.u, "zeta": sol.zeta,
        "B": sol.B, "C": sol.C, "lambda": sol.lam, "l_eff": sol.l_eff,
        "norm": sol.norm,
    }


def _cmd_angular(args) -> int:
    params = _params_from_args(args)
    n_top = max(args.N_max, args.N)
    sols = {
        N: solve_angular(QuantumNumbers(n_r=0, N=N, m=args.m), params, args.eta)
        for N in range(n_top + 1)
    }
    if args.grid is None:
        modes = [_mode_record(args, sols[N], N) for N in sorted(sols)]
        if args.format == "json":
            text = _render_json({"modes": modes}) + "\n"
        else:
            cols = tuple(modes[0].keys())
            text = _render_csv(cols, [[rec[c] for c in cols] for rec in modes])
    else:
        lo, hi, count = _parse_triplet(args.grid, "--grid")
        if not (0.0 < lo and hi < math.pi):
            raise DomainError("colatitude grid must lie strictly inside (0, pi)")
        theta = np.linspace(lo, hi, count)
        values = theta_eval(sols[args.N], args.N, np.cos(theta))
        if args.format == "json":
            doc = {
                "mode": _mode_record(args, sols[args.N], args.N),
                "rows": [
                    {"theta": float(tv), "Theta": float(vv)}
                    for tv, vv in zip(theta, values)
                ],
            }
            text = _render_json(doc) + "\n"
        else:
            text = _render_csv(
                ("theta", "Theta"),
                [[float(tv), float(vv)] for tv, vv in zip(theta, values)],
            )
    _emit(text, args.out)
    if args.out is not None:
        from .plotting import angular_figure, save_figure

        if args.grid is not None:
            lo, hi, count = _parse_triplet(args.grid, "--grid")
            theta = np.linspace(lo, hi, count)
        else:
            theta = np.linspace(0.02, math.pi - 0.02, 400)
        curves = {N: theta_eval(sols[N], N, np.cos(theta)) for N in sorted(sols)}
        save_figure(angular_figure(theta, curves), _figure_path(args.out))
    return 0


def _cmd_potential_scan(args) -> int:
    lo, hi, count = _parse_triplet(args.grid, "--grid")
    if lo <= 0.0:
        raise DomainError("radial grid must start above r = 0")
    rows = approx_error_scan(args.b, args.C0, np.linspace(lo, hi, count))
    if args.format == "json":
        doc = {
            "b": args.b,
            "C0": args.C0,
            "rows": [
                {"r": row.r, "exact": row.exact, "approx": row.approx,
                 "rel_error": row.rel_error}
                for row in rows
            ],
        }
        text = _render_json(doc) + "\n"
    else:
        text = _render_csv(
            ("r", "exact", "approx", "rel_error"),
            [[row.r, row.exact, row.approx, row.rel_error] for row in rows],
        )
    _emit(text, args.out)
    if args.out is not None:
        from .plotting import potential_scan_figure, save_figure

        save_figure(potential_scan_figure(rows), _figure_path(args.out))
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, args.tol)
    checks = [
        {"name": c.name, "passed": c.passed, "detail": c.detail}
        for c in report.results
    ]
    if args.format == "json":
        doc = {
            "suite": report.suite,
            "tol": args.tol,
            "passed": report.passed,
            "checks": checks,
        }
        text = _render_json(doc) + "\n"
    else:
        text = _render_csv(
            ("name", "passed", "detail"),
            [[c["name"], c["passed"], c["detail"]] for c in checks],
        )
    _emit(text, args.out)
    if args.out is not None:
        from .plotting import save_figure, verification_figure

        save_figure(verification_figure(report), _figure_path(args.out))
    return 0 if report.passed else 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    dispatch = {
        "spectrum": _cmd_spectrum,
        "wavefunction": _cmd_wavefunction,
        "angular": _cmd_angular,
        "potential-scan": _cmd_potential_scan,
        "verify": _cmd_verify,
    }
    try:
        return dispatch[args.command](args)
    except DomainError as exc:
        sys.stderr.write(_render_error(type(exc).__name__, str(exc)))
        return 2
    except RuntimeError as exc:
        sys.stderr.write(_render_error("RuntimeError", str(exc)))
        return 2
    except OSError as exc:
        sys.stderr.write(_render_error("OSError", str(exc)))
        return 1
