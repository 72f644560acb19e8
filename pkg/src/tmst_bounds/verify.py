"""Cross-checks of the analytic bounds against brute force and each other.

Each check returns a :class:`CheckResult`; :func:`run_all` runs the suite
used by ``tmst-bounds verify``.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from . import bound_lower, bound_upper, fock_oracle, measures
from .gaussian_core import tmst_from

ORACLE_LAMBDAS = (0.1, 0.3, 0.5, 0.7)
ORACLE_VS = (0.0, 0.1, 0.2, 0.4)
COARSE_ORACLE_LAMBDAS = (0.3, 0.5)
COARSE_ORACLE_VS = (0.0, 0.2)


def boundary_lambdas(count: int) -> np.ndarray:
    return np.linspace(0.02, 0.8, count)


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


def entangled_grid(size: int) -> list[tuple[float, float]]:
    """``size x size`` points with ``v < lambda``: lambda on a uniform grid in
    ``[0.05, 0.9]`` and ``v`` a fraction ``j / size`` of lambda.

    The t11 series slows sharply as ``v -> lambda -> 1`` (about 1e8 terms at
    ``lambda = v = 0.9``), which bounds the grid.
    """
    lams = np.linspace(0.05, 0.9, size)
    return [(float(lam), float(lam * j / size)) for lam in lams for j in range(size)]


class OracleCache:
    """Builds each truncated state once per ``(lambda, v)``."""

    def __init__(self, dim: int):
        self.dim = dim
        self._states = {}

    def __call__(self, lam: float, v: float) -> fock_oracle.TruncatedState:
        key = (lam, v)
        if key not in self._states:
            self._states[key] = fock_oracle.build_tmst_density(tmst_from(lam, v), dim=self.dim)
        return self._states[key]


def _oracle_compare(name, points, cache, analytic, oracle, tol) -> CheckResult:
    worst = 0.0
    failed = []
    for lam, v in points:
        try:
            dev = abs(analytic(lam, v) - oracle(cache(lam, v)))
        except fock_oracle.DeficitGateError as exc:
            failed.append(f"({lam}, {v}): {exc}")
            continue
        worst = max(worst, dev)
        if not dev < tol:
            failed.append(f"({lam}, {v}): deviation {dev:.3e}")
    return CheckResult(name, not failed, worst, "; ".join(failed))


def check_t11_agreement(cache, points, tol=bound_lower.DEFAULT_TOL) -> CheckResult:
    return _oracle_compare(
        "t11_series_vs_oracle", points, cache,
        lambda lam, v: bound_lower.qubit_projection(tmst_from(lam, v), tol=tol).t11,
        lambda s: fock_oracle.oracle_t11(s).t11, 1e-8)


def check_log_negativity(cache, points) -> CheckResult:
    res = _oracle_compare(
        "log_negativity_vs_oracle", points, cache,
        lambda lam, v: measures.e_ln(tmst_from(lam, v)),
        fock_oracle.oracle_log_negativity, 1e-6)
    exact = abs(measures.e_ln(tmst_from(0.5, 0.2)) - 1.0)
    if exact > 1e-12:
        res.passed = False
        res.detail += f"; e_ln(0.5, 0.2) off 1 by {exact:.3e}"
    return res


def check_spin_symmetries(cache, points) -> CheckResult:
    """Oracle-internal consistency: t11 = -t22 and S_A = S_B."""
    worst = 0.0
    failed = []
    for lam, v in points:
        try:
            s = cache(lam, v)
            t = fock_oracle.oracle_t11(s)
            s_a, s_b, _ = fock_oracle.oracle_entropies(s)
        except fock_oracle.DeficitGateError:
            continue
        dev = max(abs(t.t11 + t.t22), abs(s_a - s_b))
        worst = max(worst, dev)
        if not dev < 1e-10:
            failed.append(f"({lam}, {v})")
    ops = fock_oracle.SpinHalfOps.build(cache.dim - cache.dim % 2)
    algebra = ops.algebra_defect()
    if algebra > 1e-12:
        failed.append(f"spin algebra defect {algebra:.3e}")
    return CheckResult("oracle_spin_symmetries", not failed, max(worst, algebra), "; ".join(failed))


def check_pure_states(cache) -> CheckResult:
    worst = 0.0
    failed = []
    for lam in (0.3, 0.5, 0.7):
        p = tmst_from(lam, 0.0)
        s_a, _, s_ab = fock_oracle.oracle_entropies(cache(lam, 0.0))
        uf = bound_upper.e_uf(p)
        ib = measures.coherent_info(p)
        dev = max(abs(uf - ib), abs(uf - s_a), abs(ib - s_a))
        worst = max(worst, dev)
        if not (dev < 1e-6 and s_ab < 1e-8):
            failed.append(f"lambda={lam}: dev {dev:.3e}, S_AB {s_ab:.3e}")
    return CheckResult("pure_state_consistency", not failed, worst, "; ".join(failed))


def ordering_violation(report: measures.MeasureReport) -> float:
    """Largest violation of ``e_ln >= e_uf >= e_lf`` and ``min(e_uf, e_ur) >= i_b``."""
    r = report
    return max(r.e_uf - r.e_ln, r.e_lf - r.e_uf, r.i_b - min(r.e_uf, r.e_ur))


def check_ordering(points, tol=bound_lower.DEFAULT_TOL) -> CheckResult:
    worst = -math.inf
    failed = []
    for lam, v in points:
        report = measures.measure_report(tmst_from(lam, v), tol=tol)
        if report.errors:
            failed.append(f"({lam}, {v}): {report.errors}")
            continue
        viol = ordering_violation(report)
        worst = max(worst, viol)
        if viol > 1e-9:
            failed.append(f"({lam}, {v}): violation {viol:.3e}")
    return CheckResult("bound_ordering", not failed, worst, "; ".join(failed[:5]))


def check_separability_boundary(count=20, tol=bound_lower.DEFAULT_TOL) -> CheckResult:
    worst = 0.0
    failed = []
    for lam in boundary_lambdas(count):
        p = tmst_from(lam, lam)
        report = measures.measure_report(p, tol=tol)
        values = [report.e_lf, report.e_uf, report.e_ur, report.e_ln, report.i_b]
        search = bound_upper.minimize_relative_entropy(p)
        dev_q = max(abs(x) for x in values)
        dev_v = max(abs(search.v_tilde_star - p.v), abs(bound_upper.e_ur(p).v_tilde_star - p.v))
        worst = max(worst, dev_q)
        if not (dev_q <= 1e-9 and dev_v <= 1e-6):
            failed.append(f"lambda=v={lam:.4f}: values {dev_q:.3e}, v* off {dev_v:.3e}")
    return CheckResult("separability_boundary", not failed, worst, "; ".join(failed))


def check_low_squeezing(tol=bound_lower.DEFAULT_TOL) -> CheckResult:
    gaps = []
    for lam in (0.3, 0.1, 0.03, 0.01):
        p = tmst_from(lam, lam / 10)
        uf = bound_upper.e_uf(p)
        gaps.append((uf - bound_lower.e_lf(p, tol=tol)) / uf)
    ok = all(a > b for a, b in itertools.pairwise(gaps))
    return CheckResult("low_squeezing_coincidence", ok, gaps[-1],
                       "relative gaps " + ", ".join(f"{g:.4e}" for g in gaps))


def check_high_squeezing() -> CheckResult:
    v = 0.25 / 1.25
    gaps = []
    for lam in (0.9, 0.99, 0.999):
        p = tmst_from(lam, v)
        gaps.append(bound_upper.e_ur(p).e_ur - measures.coherent_info(p))
    ok = all(a > b for a, b in itertools.pairwise(gaps)) and min(gaps) >= -1e-9
    return CheckResult("high_squeezing_coincidence", ok, gaps[-1],
                       "e_ur - i_b " + ", ".join(f"{g:.4e}" for g in gaps))


def dense_scan_minimum(p, points: int) -> float:
    xs = np.linspace(bound_upper.SEARCH_LO, bound_upper.SEARCH_HI, points)
    return float(np.min(bound_upper.e_ur_objective(p, xs)))


def check_optimizer(points=1_000_000) -> CheckResult:
    worst = 0.0
    failed = []
    for lam, v in ((0.5, 0.2), (0.99, 0.1)):
        p = tmst_from(lam, v)
        dev = abs(bound_upper.e_ur(p).e_ur - dense_scan_minimum(p, points))
        worst = max(worst, dev)
        if not dev < 1e-8:
            failed.append(f"({lam}, {v}): {dev:.3e}")
    return CheckResult("e_ur_optimizer_vs_dense_scan", not failed, worst, "; ".join(failed))


def check_concurrence(tol=bound_lower.DEFAULT_TOL) -> CheckResult:
    points = [(0.5, 0.2), (0.5, 0.0), (0.3, 0.1), (0.7, 0.4), (0.9, 0.2),
              (0.2, 0.2), (0.1, 0.5), (0.6, 0.3), (0.8, 0.05), (0.05, 0.01)]
    worst = 0.0
    for lam, v in points:
        p = tmst_from(lam, v)
        qp = bound_lower.qubit_projection(p, tol=tol)
        formula = bound_lower.concurrence_of(qp, p).concurrence
        worst = max(worst, abs(fock_oracle.oracle_concurrence(qp.rho_qubit) - formula))
    return CheckResult("concurrence_specialization", worst < 1e-10, worst)


def check_figures() -> CheckResult:
    from .cli import figure_rows

    worst = -math.inf
    failed = []
    for fig_id in (1, 2, 3):
        _, reports = figure_rows(fig_id, steps=50)
        for report in reports:
            # quantities omitted from a figure are nan and compare as no violation
            viol = np.nanmax([report.e_uf - report.e_ln, report.e_lf - report.e_uf,
                              report.i_b - report.e_uf, report.i_b - report.e_ur])
            worst = max(worst, viol)
            if viol > 1e-9:
                failed.append(f"figure {fig_id} N={report.params.n_thermal:.4g}")
    return CheckResult("figure_ordering", not failed, worst, "; ".join(failed[:5]))


def check_truncation_convergence(dim: int) -> CheckResult:
    """Going from ``dim`` to ``dim + 10`` barely moves oracle quantities."""
    p = tmst_from(0.3, 0.1)
    lo = fock_oracle.build_tmst_density(p, dim=dim)
    hi = fock_oracle.build_tmst_density(p, dim=dim + 10)
    if not lo.trace_deficit < 1e-10:
        return CheckResult("oracle_truncation_convergence", False, math.nan,
                           f"trace deficit {lo.trace_deficit:.3e} at dim={dim}")
    dev = max(abs(fock_oracle.oracle_t11(lo).t11 - fock_oracle.oracle_t11(hi).t11),
              abs(fock_oracle.oracle_log_negativity(lo) - fock_oracle.oracle_log_negativity(hi)))
    return CheckResult("oracle_truncation_convergence", dev < 1e-9, dev)


def run_all(fock_dim: int = fock_oracle.DEFAULT_DIM, tol: float = bound_lower.DEFAULT_TOL,
            grid: str = "full") -> list[tuple[CheckResult, float]]:
    """Run every check; returns ``(result, seconds)`` pairs.

    Oracle construction errors (memory cap, gross truncation) propagate.
    """
    coarse = grid == "coarse"
    lams = COARSE_ORACLE_LAMBDAS if coarse else ORACLE_LAMBDAS
    vs = COARSE_ORACLE_VS if coarse else ORACLE_VS
    points = list(itertools.product(lams, vs))
    cache = OracleCache(fock_dim)
    checks = [
        lambda: check_t11_agreement(cache, points, tol),
        lambda: check_log_negativity(cache, points),
        lambda: check_spin_symmetries(cache, points),
        lambda: check_pure_states(cache),
        lambda: check_ordering(entangled_grid(8 if coarse else 20), tol),
        lambda: check_separability_boundary(8 if coarse else 20, tol),
        lambda: check_low_squeezing(tol),
        lambda: check_high_squeezing(),
        lambda: check_optimizer(100_000 if coarse else 1_000_000),
        lambda: check_concurrence(tol),
        check_figures,
        lambda: check_truncation_convergence(fock_dim),
    ]
    out = []
    for check in checks:
        start = time.perf_counter()
        result = check()
        out.append((result, time.perf_counter() - start))
    return out
