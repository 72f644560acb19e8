"""Upper bounds for a TMST: entanglement of formation and relative entropy.

Entanglement of formation
    A mixed Gaussian state with covariance ``alpha_P`` is a Gaussian mixture
    of displaced copies of a pure seed with covariance ``alpha_s`` whenever
    ``M = alpha_P - alpha_s`` is positive semidefinite. Seeding with a
    two-mode squeezed vacuum of squeezing ``x`` is feasible for
    ``x >= r - w``; the least entangled feasible seed gives the bound
    ``g(sinh^2(r - w))``.

Relative entropy of entanglement
    Restricting the closest separable state to TMSTs on the separability
    boundary ``lambda~ = v~`` leaves a one-dimensional minimization over
    ``v~``, done by a grid scan followed by golden-section refinement.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .gaussian_core import (
    DomainError,
    StandardFormCov,
    TmstParams,
    g_entropy,
    min_eigenvalue,
)

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
SEARCH_LO = 1e-6
SEARCH_HI = 1.0 - 1e-6
DEFAULT_GRID = 512
DEFAULT_ABS_TOL = 1e-10


class MultipleMinimaWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class DecompositionResult:
    seed_x0: float
    y: float
    m_matrix: np.ndarray
    m_min_eig: float
    e_uf: float


@dataclass(frozen=True)
class RelEntSearch:
    v_tilde_star: float
    w_tilde_star: float
    e_ur: float
    objective_evals: int
    bracket: float
    multiple_minima: bool = False


def squeezed_vacuum_cov(x: float) -> np.ndarray:
    """Covariance of the two-mode squeezed vacuum with squeezing ``x``."""
    ch = 0.5 * math.cosh(2.0 * x)
    sh = 0.5 * math.sinh(2.0 * x)
    return StandardFormCov(b1=ch, b2=ch, c1=sh, c2=-sh).matrix()


def feasibility_margin(p: TmstParams, x: float) -> float:
    """Smallest eigenvalue of ``alpha_P - alpha_s(x)``; >= 0 means feasible."""
    if x < 0:
        raise DomainError(f"seed squeezing must be >= 0, got {x!r}")
    m = StandardFormCov.from_tmst(p).matrix() - squeezed_vacuum_cov(x)
    return min_eigenvalue(m)


def decompose(p: TmstParams) -> DecompositionResult:
    """Least entangled squeezed-vacuum seed and the resulting upper bound.

    Separable states (``lambda <= v``) get ``x0 = 0``, ``y = 0`` and a zero
    bound.
    """
    x0 = max(p.r - p.w, 0.0)
    if p.lam > p.v:
        y = (p.lam - p.v) ** 2 / ((1.0 - p.lam ** 2) * (1.0 - p.v ** 2))
    else:
        y = 0.0
    m = StandardFormCov.from_tmst(p).matrix() - squeezed_vacuum_cov(x0)
    m_min = min_eigenvalue(m)
    if m_min < -1e-8:
        raise RuntimeError(
            f"seed at x0={x0} is infeasible (min eigenvalue {m_min}); "
            "decomposition is internally inconsistent")
    m.setflags(write=False)
    return DecompositionResult(seed_x0=x0, y=y, m_matrix=m, m_min_eig=m_min,
                               e_uf=g_entropy(y))


def e_uf(p: TmstParams) -> float:
    """Upper bound on the entanglement of formation, in bits."""
    return decompose(p).e_uf


def e_ur_objective(p: TmstParams, v_tilde):
    """Relative entropy, in bits, from the state to the boundary TMST at ``v_tilde``.

    ``-2 g(N) - 2 log2(1 - v~) - [(1+v)/(1-v) cosh 2(r - w~) - 1] log2 v~``
    where ``w~ = atanh(v~)``; the bracket is the mean total photon number of
    the state in the frame where the reference state is a thermal product.
    Accepts a scalar or an array of ``v_tilde`` values.
    """
    vt = np.asarray(v_tilde, dtype=float)
    if np.any(~((vt > 0.0) & (vt < 1.0))):
        raise DomainError(f"v_tilde must be in (0, 1), got {v_tilde!r}")
    # difference taken before exponentiating, so r ~ w~ does not cancel
    d = 2.0 * (p.r - np.arctanh(vt))
    cosh_d = 0.5 * (np.exp(d) + np.exp(-d))
    photons = (1.0 + p.v) / (1.0 - p.v) * cosh_d - 1.0
    out = (-2.0 * g_entropy(p.n_thermal) - 2.0 * np.log2(1.0 - vt)
           - photons * np.log2(vt))
    return float(out) if out.ndim == 0 else out


def golden_section(f, lo: float, hi: float, abs_tol: float = DEFAULT_ABS_TOL,
                   max_iter: int = 500) -> tuple[float, float, int, float]:
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x_min, f_min, evaluations, final_width)``.
    """
    a, b = float(lo), float(hi)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    for _ in range(max_iter):
        if b - a <= abs_tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
        evals += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    return x, fx, evals, b - a


def minimize_relative_entropy(p: TmstParams, abs_tol: float = DEFAULT_ABS_TOL,
                              grid: int = DEFAULT_GRID) -> RelEntSearch:
    """Grid scan then golden-section search of :func:`e_ur_objective` over ``v~``.

    Runs for any state, separable or not. If the scan sees more than one
    interior local minimum a :class:`MultipleMinimaWarning` is issued and the
    bracket of the lowest grid value is refined.
    """
    xs = np.linspace(SEARCH_LO, SEARCH_HI, grid)
    fs = e_ur_objective(p, xs)
    i = int(np.argmin(fs))
    interior = (fs[1:-1] < fs[:-2]) & (fs[1:-1] <= fs[2:])
    multiple = int(interior.sum()) > 1
    if multiple:
        warnings.warn(f"objective has several local minima at lambda={p.lam}, v={p.v}",
                      MultipleMinimaWarning, stacklevel=2)
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid - 1)]
    x, fx, evals, width = golden_section(lambda t: e_ur_objective(p, t), lo, hi, abs_tol)
    if fs[i] < fx:
        x, fx = float(xs[i]), float(fs[i])
    return RelEntSearch(v_tilde_star=x, w_tilde_star=math.atanh(x), e_ur=fx,
                        objective_evals=evals + grid, bracket=width,
                        multiple_minima=multiple)


def e_ur(p: TmstParams, abs_tol: float = DEFAULT_ABS_TOL, grid: int = DEFAULT_GRID) -> RelEntSearch:
    """Upper bound on the relative entropy of entanglement.

    For ``lambda <= v`` the state is itself a separable TMST, so the bound is
    0 at ``v~ = v`` and no search runs.
    """
    if p.lam <= p.v:
        return RelEntSearch(v_tilde_star=p.v, w_tilde_star=p.w, e_ur=0.0,
                            objective_evals=0, bracket=0.0)
    res = minimize_relative_entropy(p, abs_tol=abs_tol, grid=grid)
    if res.e_ur < 0.0:
        # relative entropy is nonnegative; tiny negatives are rounding
        res = RelEntSearch(res.v_tilde_star, res.w_tilde_star, max(res.e_ur, 0.0),
                           res.objective_evals, res.bracket, res.multiple_minima)
    return res
