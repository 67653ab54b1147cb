"""Command-line front end.

Subcommands:

* ``eigvals``   - spectrum by both routes, per-degree agreement and decay margins
* ``basis``     - orthonormality and monomial-reconstruction self-checks
* ``verify``    - brute-force cross-validation against explicit harmonics (d = 2, 3)
* ``truncate``  - finite-rank truncation error against its a-priori bound
* ``invert``    - recover basis coefficients from a spectrum

Exit codes: 0 success, 1 a numerical check failed, 2 bad configuration or
input, 3 requested verification is unsupported in that dimension.

Output goes to stdout or ``--out`` as CSV (records table, then ``# key = value``
summary lines) or JSON (metadata + records + summary).  Floats are printed
with ``repr``, i.e. shortest round-trip form; the JSON metadata carries a
timestamp, which is the only field that varies between identical runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import jacobi, kernels, operator, profiles
from .numerics import gauss_legendre
from .oracle import cross_validate, gradient_identity, harmonics_up_to

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_UNSUPPORTED = 3


class ConfigError(Exception):
    """Bad flags or malformed input files; maps to exit code 2."""


# --------------------------------------------------------------------------
# input handling


def _parse_preset(text: str) -> profiles.RadialProfile:
    name, _, tail = text.partition(":")
    params = [p for p in tail.split(",") if p] if tail else []
    try:
        values = [float(p) for p in params]
    except ValueError:
        raise ConfigError(f"preset parameters must be numbers, got {tail!r}") from None
    try:
        return profiles.preset(name, values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_profile(args) -> tuple[profiles.RadialProfile, int]:
    """Profile plus dimension from --preset/--profile/--dim."""
    sources = (args.preset is not None) + (args.profile is not None)
    if sources != 1:
        raise ConfigError("exactly one of --preset or --profile is required")
    if args.preset is not None:
        if args.dim is None:
            raise ConfigError("--dim is required with --preset")
        return _parse_preset(args.preset), args.dim
    try:
        doc = json.loads(Path(args.profile).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read profile file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"profile file is not valid JSON: {exc}") from None
    try:
        profile, d_doc = profiles.profile_from_dict(doc)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.dim is not None and d_doc is not None and args.dim != d_doc:
        raise ConfigError(
            f"--dim {args.dim} contradicts the profile file's dimension {d_doc}"
        )
    d = args.dim if args.dim is not None else d_doc
    if d is None:
        raise ConfigError("no dimension given: pass --dim or put one in the profile file")
    return profile, d


def _load_spectrum(path: str, d: int) -> operator.Spectrum:
    """Two-column (ell, lambda) CSV; degrees must be exactly 1..L."""
    rows: list[tuple[int, float]] = []
    try:
        with open(path, newline="") as fh:
            for i, row in enumerate(csv.reader(fh)):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    rows.append((int(row[0]), float(row[1])))
                except (ValueError, IndexError):
                    if i == 0:  # tolerate a header line
                        continue
                    raise ConfigError(
                        f"line {i + 1} of {path}: expected 'ell,lambda', got {row!r}"
                    ) from None
    except OSError as exc:
        raise ConfigError(f"cannot read spectrum file: {exc}") from None
    if not rows:
        raise ConfigError(f"no spectrum rows found in {path}")
    rows.sort()
    ells = [e for e, _ in rows]
    if ells != list(range(1, len(rows) + 1)):
        raise ConfigError(f"spectrum degrees must be exactly 1..L, got {ells}")
    values = np.array([v for _, v in rows])
    # the generating profile (and hence its norm) is unknown for external data
    return operator.Spectrum(d=d, eigenvalues=values, source="external", eta_norm=0.0)


# --------------------------------------------------------------------------
# output handling


def _plain(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, meta: dict, records: list[dict], summary: dict) -> None:
    meta = _plain(meta)
    records = [_plain(r) for r in records]
    summary = _plain(summary)
    if args.format == "json":
        doc = {
            "meta": {**meta, "timestamp": datetime.now(timezone.utc).isoformat()},
            "records": records,
            "summary": summary,
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = []
        if records:
            keys = list(records[0])
            lines.append(",".join(keys))
            for rec in records:
                lines.append(",".join(_csv_cell(rec[k]) for k in keys))
        for key, value in {**summary, **{f"meta.{k}": v for k, v in meta.items()}}.items():
            lines.append(f"# {key} = {json.dumps(value)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def _cmd_eigvals(args) -> int:
    profile, d = _resolve_profile(args)
    if args.L < 1:
        raise ConfigError(f"--L must be >= 1, got {args.L}")
    report = operator.dual_route(
        profile, d, args.L, coeff_degree=args.K, tol=args.tol_dual
    )
    decay = operator.verify_decay_bound(report.moment)
    records = []
    for i in range(args.L):
        records.append(
            {
                "ell": i + 1,
                "lambda_series": report.series.eigenvalues[i],
                "lambda_moment": report.moment.eigenvalues[i],
                "scaled_diff": report.scaled_diffs[i],
                "decay_bound": decay.bounds[i],
                "margin": decay.margins[i],
            }
        )
    summary = {
        "max_scaled_diff": report.max_scaled_diff,
        "dual_ok": report.ok,
        "decay_ok": decay.ok,
        "decay_violations": list(decay.violations),
        "eta_norm": report.moment.eta_norm,
        "decay_constant": operator.decay_constant(d),
        "scaled_sup": decay.scaled_sup,
        "series_source": report.series.source,
    }
    meta = {
        "command": "eigvals",
        "dimension": d,
        "L": args.L,
        "coeff_degree": args.K if args.K is not None else max(2 * args.L - 2, 0),
        "tol_dual": args.tol_dual,
        "backend": kernels.BACKEND,
        "profile": profiles.profile_to_dict(profile),
    }
    _emit(args, meta, records, summary)
    return EXIT_OK if (report.ok and decay.ok) else EXIT_CHECK_FAILED


def _cmd_basis(args) -> int:
    if args.dim is None:
        raise ConfigError("--dim is required")
    if args.K < 0:
        raise ConfigError(f"--K must be >= 0, got {args.K}")
    d, kmax = args.dim, args.K
    family = jacobi.build_family(d, kmax)
    rule = gauss_legendre(kmax + d)  # covers degree 2*kmax + d - 1
    table = jacobi.evaluate_table(family, rule.nodes)
    gram = (table * (rule.weights * rule.nodes ** (d - 1))) @ table.T
    gram_diag = float(np.abs(np.diag(gram) - 1.0).max())
    gram_off = float(np.abs(gram - np.diag(np.diag(gram))).max())
    pts = np.linspace(0.0, 1.0, 50)
    recon = 0.0
    for k in range(kmax + 1):
        expansion = jacobi.monomial_coefficients(d, k)
        recon = max(recon, float(np.abs(expansion.reconstruct(pts) - pts**k).max()))
    tol = args.tol_basis
    records = [
        {"check": "gram_offdiag", "max_error": gram_off, "tol": tol, "pass": gram_off <= tol},
        {"check": "gram_diag", "max_error": gram_diag, "tol": tol, "pass": gram_diag <= tol},
        {
            "check": "monomial_reconstruction",
            "max_error": recon,
            "tol": tol,
            "pass": recon <= tol,
        },
    ]
    summary = {"all_ok": all(r["pass"] for r in records)}
    meta = {
        "command": "basis",
        "dimension": d,
        "K": kmax,
        "tol_basis": tol,
        "backend": kernels.BACKEND,
    }
    _emit(args, meta, records, summary)
    return EXIT_OK if summary["all_ok"] else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    profile, d = _resolve_profile(args)
    if d not in (2, 3):
        print(
            f"error: brute-force verification needs explicit harmonics, which are "
            f"only available for d = 2 and d = 3 (got d = {d})",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED
    if args.L < 1:
        raise ConfigError(f"--L must be >= 1, got {args.L}")
    report = cross_validate(profile, d, args.L)
    records = []
    n = len(report.labels)
    for i in range(n):
        for j in range(i, n):
            ref = report.reference[i] if i == j else 0.0
            err = abs(report.entries[i, j] - ref)
            tol = (
                report.tol_diag * max(1.0, abs(ref)) if i == j else report.tol_offdiag
            )
            records.append(
                {
                    "h1": report.labels[i],
                    "h2": report.labels[j],
                    "entry": report.entries[i, j],
                    "reference": ref,
                    "abs_error": err,
                    "pass": err <= tol,
                }
            )
    identity_defect = max(
        gradient_identity(h1, h2).defect
        for hs in [harmonics_up_to(d, args.L)]
        for h1 in hs
        for h2 in hs
    )
    summary = {
        "max_offdiag": report.max_offdiag,
        "max_diag_scaled": report.max_diag_scaled,
        "gradient_identity_max_defect": identity_defect,
        "ok": report.ok and identity_defect <= 1e-10,
    }
    meta = {
        "command": "verify",
        "dimension": d,
        "L": args.L,
        "tol_offdiag": report.tol_offdiag,
        "tol_diag": report.tol_diag,
        "backend": kernels.BACKEND,
        "profile": profiles.profile_to_dict(profile),
    }
    _emit(args, meta, records, summary)
    return EXIT_OK if summary["ok"] else EXIT_CHECK_FAILED


def _cmd_truncate(args) -> int:
    profile, d = _resolve_profile(args)
    if args.L < 1:
        raise ConfigError(f"--L must be >= 1, got {args.L}")
    if not 0 <= args.N <= args.L:
        raise ConfigError(f"--N must lie in 0..L={args.L}, got {args.N}")
    spectrum = operator.spectrum_moment(profile, d, args.L)
    records = []
    tails = []
    for cutoff in range(args.N + 1):
        rep = operator.truncation_error(operator.truncate(spectrum, cutoff))
        tails.append(rep.tail_norm)
        records.append(
            {
                "cutoff": cutoff,
                "tail_norm": rep.tail_norm,
                "apriori_bound": rep.apriori_bound,
                "pass": rep.ok,
            }
        )
    monotone = all(tails[i + 1] <= tails[i] for i in range(len(tails) - 1))
    summary = {
        "monotone": monotone,
        "all_bounded": all(r["pass"] for r in records),
        "ok": monotone and all(r["pass"] for r in records),
    }
    meta = {
        "command": "truncate",
        "dimension": d,
        "L": args.L,
        "N": args.N,
        "backend": kernels.BACKEND,
        "profile": profiles.profile_to_dict(profile),
    }
    _emit(args, meta, records, summary)
    return EXIT_OK if summary["ok"] else EXIT_CHECK_FAILED


def _cmd_invert(args) -> int:
    if args.spectrum is not None:
        if args.preset is not None or args.profile is not None:
            raise ConfigError("--spectrum cannot be combined with --preset/--profile")
        if args.dim is None:
            raise ConfigError("--dim is required with --spectrum")
        spectrum = _load_spectrum(args.spectrum, args.dim)
    else:
        profile, d = _resolve_profile(args)
        if args.L < 1:
            raise ConfigError(f"--L must be >= 1, got {args.L}")
        spectrum = operator.spectrum_moment(profile, d, args.L)
    try:
        settings = operator.InversionSettings(rel_cutoff=args.tau, ridge=args.alpha)
        result = operator.invert(spectrum, args.K, settings)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    records = [
        {"k": k, "coefficient": c} for k, c in enumerate(result.expansion.coeffs)
    ]
    summary = {
        "singular_values": list(result.singular_values),
        "effective_rank": result.effective_rank,
        "residual_norm": result.residual_norm,
    }
    meta = {
        "command": "invert",
        "dimension": spectrum.d,
        "L": spectrum.max_index,
        "K": args.K,
        "tau": args.tau,
        "alpha": args.alpha,
        "spectrum_source": spectrum.source,
        "backend": kernels.BACKEND,
    }
    _emit(args, meta, records, summary)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_io_flags(sub) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", help="write output here instead of stdout")


def _add_profile_flags(sub) -> None:
    sub.add_argument("--dim", type=int, help="ambient dimension (>= 2)")
    sub.add_argument(
        "--preset",
        help="stock profile, e.g. constant:1, ramp:0.5, annulus:0.3,0.8,1, "
        "polynomial:1,0,-2",
    )
    sub.add_argument("--profile", help="JSON profile file (breakpoints/pieces/dimension)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialeit",
        description="Spectral analysis of the linearized boundary-measurement map "
        "for radial perturbations of the unit ball",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eigvals", help="eigenvalues by both routes, with decay margins")
    _add_profile_flags(p)
    p.add_argument("--L", type=int, default=20, help="largest harmonic degree")
    p.add_argument(
        "--K", type=int, default=None, help="expansion degree for the series route"
    )
    p.add_argument("--tol-dual", type=float, default=1e-8, dest="tol_dual")
    _add_io_flags(p)
    p.set_defaults(handler=_cmd_eigvals)

    p = subs.add_parser("basis", help="orthonormality / reconstruction self-checks")
    p.add_argument("--dim", type=int, help="ambient dimension (>= 2)")
    p.add_argument("--K", type=int, default=40, help="largest basis degree checked")
    p.add_argument("--tol-basis", type=float, default=1e-10, dest="tol_basis")
    _add_io_flags(p)
    p.set_defaults(handler=_cmd_basis)

    p = subs.add_parser("verify", help="brute-force cross-validation (d = 2, 3)")
    _add_profile_flags(p)
    p.add_argument("--L", type=int, default=5, help="largest harmonic degree")
    _add_io_flags(p)
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("truncate", help="finite-rank truncation error report")
    _add_profile_flags(p)
    p.add_argument("--L", type=int, default=50, help="spectrum length")
    p.add_argument("--N", type=int, default=10, help="largest cutoff to report")
    _add_io_flags(p)
    p.set_defaults(handler=_cmd_truncate)

    p = subs.add_parser("invert", help="recover coefficients from a spectrum")
    _add_profile_flags(p)
    p.add_argument("--L", type=int, default=10, help="spectrum length (profile input)")
    p.add_argument("--K", type=int, default=5, help="number of coefficients to recover")
    p.add_argument("--spectrum", help="two-column (ell,lambda) CSV file")
    p.add_argument("--tau", type=float, default=1e-10, help="relative SVD cutoff")
    p.add_argument("--alpha", type=float, default=0.0, help="ridge weight")
    _add_io_flags(p)
    p.set_defaults(handler=_cmd_invert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return EXIT_OK if code == 0 else EXIT_CONFIG
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
