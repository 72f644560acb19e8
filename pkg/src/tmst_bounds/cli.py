"""Command-line interface: ``tmst-bounds eval | sweep | figure | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 convergence or resource error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bound_lower, fock_oracle, measures, verify
from .bound_lower import SeriesConvergenceError
from .gaussian_core import DomainError, tmst_from, tmst_from_squeezing

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

COLUMNS = ("E_lf", "E_uf", "E_ur", "E_LN", "I_B")
COLUMN_TO_FIELD = dict(zip(COLUMNS, ("e_lf", "e_uf", "e_ur", "e_ln", "i_b")))

# caption-mandated curves
FIGURES = {
    1: (0.99, ("E_uf", "E_ur", "E_LN", "I_B")),
    2: (0.5, COLUMNS),
    3: (0.01, ("E_lf", "E_uf", "E_ur", "I_B")),
}
FIGURE_STEPS = 200
FIGURE_N_CAP = 2.0


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    lam: float
    n_min: float
    n_max: float
    steps: int
    quantities: tuple = COLUMNS

    def __post_init__(self):
        if not self.n_min >= 0:
            raise UsageError(f"n_min must be >= 0, got {self.n_min}")
        if not self.n_max > self.n_min:
            raise UsageError(f"n_max must exceed n_min, got [{self.n_min}, {self.n_max}]")
        if not 2 <= self.steps <= 10 ** 6:
            raise UsageError(f"steps must be in [2, 1e6], got {self.steps}")
        unknown = set(self.quantities) - set(COLUMNS)
        if unknown:
            raise UsageError(f"unknown quantities {sorted(unknown)}")
        tmst_from(self.lam, 0.0)

    def photon_numbers(self) -> np.ndarray:
        return np.linspace(self.n_min, self.n_max, self.steps)


def _threads() -> int:
    env = os.environ.get("TMST_BOUNDS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"TMST_BOUNDS_THREADS must be an integer, got {env!r}")
    return min(4, os.cpu_count() or 1)


def run_sweep(spec: SweepSpec, tol: float = bound_lower.DEFAULT_TOL,
              max_shell: int = bound_lower.DEFAULT_MAX_SHELL) -> list[measures.MeasureReport]:
    """Evaluate ``spec`` row by row; rows come back ordered by ``N``."""
    fields = tuple(COLUMN_TO_FIELD[c] for c in spec.quantities)

    def row(n: float) -> measures.MeasureReport:
        return measures.measure_report(tmst_from_squeezing(math.atanh(spec.lam), n),
                                       tol=tol, quantities=fields, max_shell=max_shell)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(row, spec.photon_numbers()))
    for report in reports:
        if report.errors:
            raise SeriesConvergenceError(
                f"N={report.params.n_thermal:.9g}: " + "; ".join(report.errors.values()))
    return reports


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def rows_to_csv(reports, columns=COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lambda", "v", "r", "N", *columns, "separable"])
    for rep in reports:
        p = rep.params
        writer.writerow([_fmt(p.lam), _fmt(p.v), _fmt(p.r), _fmt(p.n_thermal),
                         *(_fmt(getattr(rep, COLUMN_TO_FIELD[c])) for c in columns),
                         "true" if rep.separable else "false"])
    return buf.getvalue()


def rows_to_json(reports, columns=COLUMNS) -> str:
    rows = []
    for rep in reports:
        p = rep.params
        row = {"lambda": p.lam, "v": p.v, "r": p.r, "N": p.n_thermal}
        row.update({c: getattr(rep, COLUMN_TO_FIELD[c]) for c in columns})
        row["separable"] = rep.separable
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def figure_spec(fig_id: int, steps: int = FIGURE_STEPS, n_cap: float = FIGURE_N_CAP) -> SweepSpec:
    if fig_id not in FIGURES:
        raise UsageError(f"unknown figure id {fig_id}; choose 1, 2 or 3")
    lam, columns = FIGURES[fig_id]
    # the entangled region ends where v = lambda, i.e. N = lambda / (1 - lambda)
    n_max = min(lam / (1.0 - lam), n_cap)
    return SweepSpec(lam=lam, n_min=0.0, n_max=n_max, steps=steps, quantities=columns)


def figure_rows(fig_id: int, steps: int = FIGURE_STEPS, n_cap: float = FIGURE_N_CAP,
                tol: float = bound_lower.DEFAULT_TOL):
    """Return ``(columns, reports)`` for one of the comparison figures."""
    spec = figure_spec(fig_id, steps, n_cap)
    return spec.quantities, run_sweep(spec, tol=tol)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmst-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return _json_safe(obj.item())
    return obj


def eval_document(report: measures.MeasureReport) -> dict:
    doc = report.as_dict()
    params = doc.pop("params")
    return _json_safe({**params, **doc})


def cmd_eval(args) -> int:
    by_lv = args.lam is not None or args.v is not None
    by_rn = args.r is not None or args.n is not None
    if by_lv == by_rn:
        raise UsageError("give exactly one of (--lambda, --v) or (--r, --n)")
    if by_lv:
        if args.lam is None or args.v is None:
            raise UsageError("--lambda and --v must be given together")
        p = tmst_from(args.lam, args.v)
    else:
        if args.r is None or args.n is None:
            raise UsageError("--r and --n must be given together")
        p = tmst_from_squeezing(args.r, args.n)
    report = measures.measure_report(p, tol=args.tol, max_shell=args.max_shell)
    sys.stdout.write(json.dumps(eval_document(report), indent=2) + "\n")
    if report.errors:
        print("error: " + "; ".join(report.errors.values()), file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def _render(reports, columns, fmt) -> str:
    return rows_to_json(reports, columns) if fmt == "json" else rows_to_csv(reports, columns)


def cmd_sweep(args) -> int:
    if args.lam is None:
        raise UsageError("--lambda is required")
    spec = SweepSpec(lam=args.lam, n_min=args.n_min, n_max=args.n_max, steps=args.steps)
    reports = run_sweep(spec, tol=args.tol, max_shell=args.max_shell)
    _write_output(_render(reports, spec.quantities, args.format), args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    spec = figure_spec(args.id, args.steps or FIGURE_STEPS, args.n_max)
    reports = run_sweep(spec, tol=args.tol, max_shell=args.max_shell)
    _write_output(_render(reports, spec.quantities, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_all(fock_dim=args.fock_dim, tol=args.tol, grid=args.grid)
    width = max(len(r.name) for r, _ in results)
    print(f"{'check':<{width}}  status  max_deviation   seconds")
    for res, secs in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{res.name:<{width}}  {status:<6}  {res.max_deviation:<14.3e}  {secs:7.2f}")
        if res.detail and not res.passed:
            print(f"    {res.detail}")
    failed = sum(not r.passed for r, _ in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=bound_lower.DEFAULT_TOL,
                        help="relative tolerance of the t11 series (default 1e-10)")
    common.add_argument("--max-shell", type=int, default=bound_lower.DEFAULT_MAX_SHELL,
                        help="shell cap of the t11 series (default 2000)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", help="output file (default stdout)")
    output.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="tmst-bounds",
        description="Entanglement bounds for two-mode squeezed thermal states.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate one parameter point (JSON)")
    ev.add_argument("--lambda", dest="lam", type=float)
    ev.add_argument("--v", type=float)
    ev.add_argument("--r", type=float)
    ev.add_argument("--n", type=float)
    ev.add_argument("--format", choices=("json",), default="json")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", parents=[common, output], help="sweep N at fixed lambda")
    sw.add_argument("--lambda", dest="lam", type=float)
    sw.add_argument("--n-min", type=float, default=0.0)
    sw.add_argument("--n-max", type=float, default=1.0)
    sw.add_argument("--steps", type=int, default=FIGURE_STEPS)
    sw.set_defaults(func=cmd_sweep)

    fg = sub.add_parser("figure", parents=[common, output], help="data of comparison figure 1-3")
    fg.add_argument("--id", type=int, required=True)
    fg.add_argument("--steps", type=int)
    fg.add_argument("--n-max", type=float, default=FIGURE_N_CAP,
                    help="cap on the N range (default 2)")
    fg.set_defaults(func=cmd_figure)

    vf = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    vf.add_argument("--fock-dim", type=int, default=fock_oracle.DEFAULT_DIM)
    vf.add_argument("--grid", choices=("coarse", "full"), default="full")
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SeriesConvergenceError, fock_oracle.MemoryCapError,
            fock_oracle.TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
