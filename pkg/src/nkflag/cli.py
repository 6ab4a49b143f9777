"""Command-line front end.

Three subcommands: ``verify`` runs the structural suites and writes a JSON
report, ``classify`` prints the solution-family tables, ``surface`` exports
per-grid-point samples for one example immersion.  Every flag can also be
supplied through an ``NKFLAG_``-prefixed environment variable (flags win);
exit codes are 0 = all checks passed, 1 = some check failed, 2 = usage error.
Human-readable output is a plain aligned table; machine output is JSON/CSV.
"""

import argparse
import json
import math
import os
import sys

from . import __version__, constants, report, verify
from .classification import ClassificationError, solve_families
from .kernels import active_backend
from .lie_structure import PSEUDO, RIEMANNIAN, signature_label
from .report import CheckReport
from .surfaces import SURFACE_IDS, sample_rows, surface_summary, write_csv

_SIGNATURE_CHOICES = {"riemannian": (RIEMANNIAN,), "pseudo": (PSEUDO,),
                      "both": (RIEMANNIAN, PSEUDO)}

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _env(name: str, default):
    return os.environ.get(f"NKFLAG_{name}", default)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nkflag",
        description="Numerical certification of the nearly Kahler flag six-manifold.",
    )
    parser.add_argument("--version", action="version", version=f"nkflag {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the structural verification suites")
    p_verify.add_argument("--signature", choices=sorted(_SIGNATURE_CHOICES),
                          default=_env("SIGNATURE", "both"))
    p_verify.add_argument("--seed", type=int, default=int(_env("SEED", constants.DEFAULT_SEED)))
    p_verify.add_argument("--tol-exact", type=float,
                          default=float(_env("TOL_EXACT", constants.TOL_EXACT)))
    p_verify.add_argument("--out", default=_env("OUT", None),
                          help="write the JSON report here")
    p_verify.add_argument("--self-test", action="store_true",
                          help="also flip one basis sign and require the "
                               "curvature cross-check to notice")

    p_classify = sub.add_parser("classify", help="print the solution-family tables")
    p_classify.add_argument("--signature", choices=sorted(_SIGNATURE_CHOICES),
                            default=_env("SIGNATURE", "both"))
    p_classify.add_argument("--no-oracle", action="store_true",
                            help="skip the grid-scan cross check")

    p_surface = sub.add_parser("surface", help="sample and export one example immersion")
    p_surface.add_argument("--id", type=int, required=True, help="surface id, 1..6")
    p_surface.add_argument("--grid", type=int, default=int(_env("GRID", constants.DEFAULT_GRID)))
    p_surface.add_argument("--tol-fd", type=float,
                           default=float(_env("TOL_FD", constants.TOL_CURVATURE)))
    p_surface.add_argument("--out", default=_env("OUT", None))
    p_surface.add_argument("--format", choices=("csv", "json"),
                           default=_env("FORMAT", "csv"))
    return parser


def _cmd_verify(args) -> int:
    reports: list[CheckReport] = []
    for eps in _SIGNATURE_CHOICES[args.signature]:
        reports.extend(verify.run_verification(eps, seed=args.seed, tol_exact=args.tol_exact))
        if args.self_test:
            detected = verify.corruption_self_test(eps) > constants.CONTROL_RESIDUAL_MIN
            reports.append(CheckReport(
                f"self_test_corruption_detected[{signature_label(eps)}]",
                0.0 if detected else 1.0, 0.5, 216))
    print(f"backend: {active_backend()}")
    print(report.format_table(reports))
    if args.out:
        try:
            report.write_report_file(
                args.out, reports,
                generated_by=f"nkflag {__version__}",
                signature=args.signature, seed=args.seed)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        print(f"report written to {args.out}")
    return EXIT_OK if report.all_pass(reports) else EXIT_CHECK_FAILED


_EXPECTED_TABLES = {
    RIEMANNIAN: (((1.0, 0.0, 0.0), 4.0),
                 ((1.0 / math.sqrt(2), 1.0 / math.sqrt(2), 0.0), 1.0),
                 ((1.0 / math.sqrt(3),) * 3, 0.0)),
    PSEUDO: (((1.0, 0.0, 0.0), 4.0),
             ((0.0, 1.0, 0.0), 4.0),
             ((0.0, 1.0 / math.sqrt(2), 1.0 / math.sqrt(2)), 1.0)),
}


def _cmd_classify(args) -> int:
    ok = True
    for eps in _SIGNATURE_CHOICES[args.signature]:
        print(f"signature: {signature_label(eps)}")
        try:
            fams = solve_families(eps, oracle=not args.no_oracle)
        except ClassificationError as exc:
            print(f"  CLASSIFICATION MISMATCH: {exc}")
            ok = False
            continue
        print(f"  {'a':>12} {'b':>12} {'c':>12}  {'K':>4}  description")
        for fam in fams:
            a, b, c = fam.amplitudes
            print(f"  {a:12.9f} {b:12.9f} {c:12.9f}  {fam.K:4.1f}  {fam.description}")
        expected = _EXPECTED_TABLES[eps]
        for fam, (amp, k) in zip(fams, expected):
            if max(abs(x - y) for x, y in zip(fam.amplitudes, amp)) > 1e-10 or abs(fam.K - k) > 1e-11:
                print(f"  MISMATCH: expected amplitudes {amp} with K={k}")
                ok = False
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_surface(args, parser: argparse.ArgumentParser) -> int:
    if args.id not in SURFACE_IDS:
        parser.error(f"--id must be one of {SURFACE_IDS}, got {args.id}")
    if args.grid < 9:
        parser.error("--grid must be at least 9")
    summary = surface_summary(args.id, args.grid)
    print(f"surface {args.id}: {summary['label']}")
    print(f"  signature            {signature_label(summary['signature'])}")
    print(f"  samples              {summary['samples']} ({summary['degenerate_points']} degenerate skipped)")
    print(f"  max expm error       {summary['expm_defect']:.3e}")
    print(f"  max group defect     {summary['group_defect']:.3e}")
    print(f"  max horizontality    {summary['horizontality']:.3e}")
    print(f"  max metric error     {summary['metric_closed_form_error']:.3e}")
    print(f"  amplitude drift      {summary['amplitude_error']:.3e}")
    print(f"  K mean / expected    {summary['K_mean']:.6f} / {summary['K_expected']}")
    print(f"  K max deviation      {summary['K_max_deviation']:.3e}")
    print(f"  max tg residual      {summary['tg_residual_max']:.3e}")
    print(f"  max ac residual      {summary['ac_residual_max']:.3e}")
    if args.out:
        rows = sample_rows(args.id, args.grid)
        try:
            if args.format == "csv":
                write_csv(args.out, rows)
            else:
                with open(args.out, "w") as fh:
                    json.dump({"schema_version": report.SCHEMA_VERSION,
                               "surface": args.id, "rows": rows}, fh, indent=1)
                    fh.write("\n")
        except OSError as exc:
            print(f"error: cannot write samples: {exc}", file=sys.stderr)
            return EXIT_CHECK_FAILED
        print(f"samples written to {args.out} ({args.format})")
    failed = (
        summary["expm_defect"] > constants.TOL_EXPM_CLOSED_FORM
        or summary["group_defect"] > constants.TOL_GROUP_MEMBERSHIP
        or summary["horizontality"] > constants.TOL_HORIZONTAL
        or summary["metric_closed_form_error"] > constants.TOL_METRIC_CLOSED_FORM
        or summary["amplitude_error"] > constants.TOL_AMPLITUDE_CONST
        or summary["K_max_deviation"] > args.tol_fd
        or summary["tg_residual_max"] > args.tol_fd
        or summary["ac_residual_max"] > constants.TOL_AC_RESIDUAL
    )
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "classify":
        return _cmd_classify(args)
    if args.command == "surface":
        return _cmd_surface(args, parser)
    parser.error(f"unknown command {args.command!r}")  # pragma: no cover
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
