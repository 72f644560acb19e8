"""Logarithmic negativity, coherent information and the combined report."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import bound_lower, bound_upper
from .bound_lower import SeriesConvergenceError
from .gaussian_core import TmstParams, g_entropy, is_entangled

ORDERING_SLACK = 1e-9

QUANTITIES = ("e_lf", "e_uf", "e_ur", "e_ln", "i_b")


def e_ln(p: TmstParams) -> float:
    """Logarithmic negativity in bits, 0 for separable states."""
    if p.lam <= p.v:
        return 0.0
    value = (math.log2((1.0 + p.lam) / (1.0 - p.lam))
             - math.log2((1.0 + p.v) / (1.0 - p.v)))
    return max(value, 0.0)


def reduced_photon_number(p: TmstParams) -> float:
    """Mean photon number ``N'`` of either single-mode reduction."""
    return (p.v + p.lam ** 2) / ((1.0 - p.v) * (1.0 - p.lam ** 2))


def coherent_info_raw(p: TmstParams) -> float:
    """``S(rho_B) - S(rho_AB)`` without clamping."""
    return g_entropy(reduced_photon_number(p)) - 2.0 * g_entropy(p.n_thermal)


def coherent_info(p: TmstParams) -> float:
    """Coherent information ``max(S(rho_B) - S(rho_AB), 0)`` in bits."""
    return max(coherent_info_raw(p), 0.0)


@dataclass
class MeasureReport:
    """All five quantities at one parameter point.

    A quantity that failed to compute is ``nan`` and its error message is
    kept in ``errors``; ordering flags that involve it are ``None``.
    """

    params: TmstParams
    e_lf: float
    e_uf: float
    e_ur: float
    e_ln: float
    i_b: float
    n_prime: float
    ordering_ok: dict
    separable: bool
    diagnostics: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    @property
    def all_ordered(self) -> bool:
        return all(flag is not False for flag in self.ordering_ok.values())

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "separable": self.separable,
            "e_lf": self.e_lf,
            "e_uf": self.e_uf,
            "e_ur": self.e_ur,
            "e_ln": self.e_ln,
            "i_b": self.i_b,
            "n_prime": self.n_prime,
            "ordering_ok": dict(self.ordering_ok),
            "diagnostics": dict(self.diagnostics),
            "errors": dict(self.errors),
        }


def _geq(a: float, b: float, slack: float):
    if math.isnan(a) or math.isnan(b):
        return None
    return a >= b - slack


def measure_report(p: TmstParams, tol: float = bound_lower.DEFAULT_TOL,
                   quantities=QUANTITIES, max_shell: int = bound_lower.DEFAULT_MAX_SHELL,
                   ) -> MeasureReport:
    """Evaluate the requested quantities and the ordering checks.

    Quantities not in ``quantities`` are reported as ``nan``.
    """
    nan = math.nan
    values = dict.fromkeys(QUANTITIES, nan)
    diagnostics: dict = {}
    errors: dict = {}

    if "e_lf" in quantities:
        try:
            qp = bound_lower.qubit_projection(p, tol=tol, max_shell=max_shell)
            conc = bound_lower.concurrence_of(qp, p)
            values["e_lf"] = conc.e_lf
            diagnostics.update(t11=qp.t11, concurrence=conc.concurrence,
                               series_terms=qp.terms_used,
                               series_residual=qp.series_residual)
        except SeriesConvergenceError as exc:
            errors["e_lf"] = str(exc)
    if "e_uf" in quantities:
        dec = bound_upper.decompose(p)
        values["e_uf"] = dec.e_uf
        diagnostics.update(seed_x0=dec.seed_x0, y=dec.y, m_min_eig=dec.m_min_eig)
    if "e_ur" in quantities:
        search = bound_upper.e_ur(p)
        values["e_ur"] = search.e_ur
        diagnostics.update(v_tilde_star=search.v_tilde_star,
                           objective_evals=search.objective_evals,
                           multiple_minima=search.multiple_minima)
    if "e_ln" in quantities:
        values["e_ln"] = e_ln(p)
    if "i_b" in quantities:
        values["i_b"] = coherent_info(p)

    s = ORDERING_SLACK
    ordering = {
        "e_ln>=e_uf": _geq(values["e_ln"], values["e_uf"], s),
        "e_uf>=e_lf": _geq(values["e_uf"], values["e_lf"], s),
        "e_ur>=i_b": _geq(values["e_ur"], values["i_b"], s),
        "e_uf>=i_b": _geq(values["e_uf"], values["i_b"], s),
    }
    return MeasureReport(params=p, n_prime=reduced_photon_number(p), ordering_ok=ordering,
                         separable=not is_entangled(p), diagnostics=diagnostics,
                         errors=errors, **values)
