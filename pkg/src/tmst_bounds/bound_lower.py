"""Lower bound on the entanglement of formation of a TMST.

Each mode is projected onto a qubit with the spin one-half operators

    S1 + i S2 = 2 sum_m |2m><2m+1|,    S3 = sum_m (-1)^m |m><m|,

which is a local operation, so the entanglement of formation of the resulting
two-qubit state is a lower bound for the original one. The only nontrivial
correlation is ``t11 = Tr(rho S1 S1)``, given by a triple series in
``tau`` and ``omega``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .gaussian_core import TmstParams, h_binary

DEFAULT_TOL = 1e-10
DEFAULT_MAX_SHELL = 2000


class SeriesConvergenceError(RuntimeError):
    """The t11 series did not reach its tolerance within the shell cap."""


class SeriesResult(NamedTuple):
    t11: float
    terms_used: int
    residual: float


@dataclass(frozen=True)
class QubitProjection:
    """Output of the spin one-half map for one TMST.

    ``rho_qubit`` is the two-qubit density matrix in the basis
    ``|00>, |01>, |10>, |11>`` (X-shaped: diagonal plus the ``|00><11|``
    coherence ``t11 / 2``).
    """

    c0: float
    tau: float
    omega: float
    v_prime: float
    t11: float
    t33: float
    rho_qubit: np.ndarray
    terms_used: int
    series_residual: float


@dataclass(frozen=True)
class ConcurrenceResult:
    concurrence: float
    mix_x: float
    e_lf: float


def series_coefficients(p: TmstParams) -> tuple[float, float, float]:
    """Return ``(c0, tau, omega)`` for the t11 series."""
    lam, v = p.lam, p.v
    den = 1.0 - v * v * lam * lam
    c0 = (1.0 - v) ** 2 * (1.0 - lam * lam) / den
    tau = lam * (1.0 - v * v) / den
    omega = v * (1.0 - lam * lam) / den
    return c0, tau, omega


def _shell_sum(s: int, k_lo: int, k_hi: int, log_tau: float, log_omega: float,
               lfact: np.ndarray) -> tuple[float, int]:
    """Sum the terms of shell ``m + n = s`` whose ``omega`` power ``2k`` has
    ``k_lo <= k <= k_hi`` (``k = s - l``)."""
    k = np.arange(k_lo, k_hi + 1)
    l_of_k = s - k
    m_lo = (l_of_k + 1) // 2
    counts = np.maximum(s - 2 * m_lo + 1, 0)
    if counts.sum() == 0:
        return 0.0, 0
    l = np.repeat(l_of_k, counts)
    k = np.repeat(k, counts)
    starts = np.cumsum(counts) - counts
    m = np.repeat(m_lo, counts) + np.arange(counts.sum()) - np.repeat(starts, counts)
    n = s - m
    log_binom = (lfact[2 * m + 1] - lfact[l + 1] - lfact[2 * m - l]
                 + lfact[2 * n] - lfact[l] - lfact[2 * n - l])
    log_term = log_binom + (2 * l + 1) * log_tau
    if k_hi > 0:
        log_term = log_term + 2 * k * log_omega
    terms = np.sqrt((2 * n + 1) / (2 * m + 1)) * np.exp(log_term)
    return float(terms.sum()), int(terms.size)


def _power_window(s: int, log_tau: float, log_omega: float, lfact: np.ndarray,
                  log_budget: float) -> tuple[int, int, float]:
    """Range ``[k_lo, k_hi]`` of ``omega`` powers outside which shell ``s`` is negligible.

    Every term with ``omega`` power ``2k`` is bounded using
    ``C(2m+1, l+1) C(2n, l) <= C(2s+1, 2l+1)`` and
    ``sqrt((2n+1)/(2m+1)) <= sqrt(2s+1)``, with at most ``s + 1`` pairs
    ``(m, n)`` per power. The bound is binomial in ``k``, so both ends can be
    dropped while their total stays below ``exp(log_budget)``. Returns
    ``(k_lo, k_hi, bound on the dropped part)``.
    """
    if log_omega == -math.inf:
        return 0, 0, 0.0
    if log_budget == -math.inf:
        return 0, s, 0.0
    k = np.arange(s + 1)
    log_bound = (lfact[2 * s + 1] - lfact[2 * k] - lfact[2 * s + 1 - 2 * k]
                 + (2 * s + 1 - 2 * k) * log_tau + 2 * k * log_omega)
    log_bound += math.log(s + 1) + 0.5 * math.log(2 * s + 1)
    half = log_budget - math.log(2.0)
    # head[j] = log sum_{k <= j}, tail[j] = log sum_{k >= j}
    head = np.logaddexp.accumulate(log_bound)
    tail = np.logaddexp.accumulate(log_bound[::-1])[::-1]
    drop_head = np.flatnonzero(head <= half)
    drop_tail = np.flatnonzero(tail <= half)
    k_lo = int(drop_head[-1]) + 1 if drop_head.size else 0
    k_hi = int(drop_tail[0]) - 1 if drop_tail.size else s
    dropped = 0.0
    if k_lo > 0:
        dropped += math.exp(head[k_lo - 1])
    if k_hi < s:
        dropped += math.exp(tail[k_hi + 1])
    return k_lo, k_hi, dropped


def t11_series(c0: float, tau: float, omega: float, tol: float = DEFAULT_TOL,
               max_shell: int = DEFAULT_MAX_SHELL) -> SeriesResult:
    """Sum the t11 series shell by shell in ``m + n``.

    Terms are all nonnegative. Shells are consumed in pairs ``(2k, 2k+1)``
    because for ``omega = 0`` every odd shell vanishes identically; the sum
    stops once a pair adds less than ``tol`` times the running total.

    Within a shell, terms whose ``omega`` power lies far from where the shell
    concentrates are skipped when a rigorous bound on their total is below
    ``1e-3 * tol`` of the running sum; the skipped bound is added to the
    residual.

    Returns
    -------
    SeriesResult
        ``(t11, terms_used, residual)``; the residual is a geometric tail
        estimate from the ratio of the last two shell pairs plus the bound on
        skipped terms.

    Raises
    ------
    SeriesConvergenceError
        If ``m + n`` would exceed ``max_shell`` before convergence.
    """
    if not c0 > 0 or not 0 <= tau < 1 or not 0 <= omega < 1 or not tol > 0:
        raise ValueError(f"invalid series inputs c0={c0}, tau={tau}, omega={omega}, tol={tol}")
    if tau == 0.0:
        return SeriesResult(0.0, 0, 0.0)
    log_tau = math.log(tau)
    log_omega = math.log(omega) if omega > 0 else -math.inf
    lfact = gammaln(np.arange(2 * max_shell + 4) + 1.0)

    total = 0.0
    skipped = 0.0
    terms_used = 0
    prev_pair = math.inf
    s = 0
    while True:
        if s + 1 > max_shell:
            raise SeriesConvergenceError(
                f"t11 series not converged to tol={tol} by shell {max_shell}")
        pair = 0.0
        for shell in (s, s + 1):
            log_budget = math.log(1e-3 * tol * total) if total > 0 else -math.inf
            k_lo, k_hi, dropped = _power_window(shell, log_tau, log_omega, lfact, log_budget)
            value, count = _shell_sum(shell, k_lo, k_hi, log_tau, log_omega, lfact)
            pair += value
            skipped += dropped
            terms_used += count
        total += pair
        s += 2
        if pair <= tol * total:
            ratio = pair / prev_pair if prev_pair > 0 else 0.0
            tail = pair * ratio / (1.0 - ratio) if ratio < 1 else pair
            return SeriesResult(2.0 * c0 * total, terms_used, 2.0 * c0 * (tail + skipped))
        prev_pair = pair


def qubit_projection(p: TmstParams, tol: float = DEFAULT_TOL,
                     max_shell: int = DEFAULT_MAX_SHELL) -> QubitProjection:
    """Map a TMST onto a pair of qubits with the spin one-half operators."""
    lam, v = p.lam, p.v
    c0, tau, omega = series_coefficients(p)
    series = t11_series(c0, tau, omega, tol=tol, max_shell=max_shell)
    t11 = series.t11

    norm = (1.0 + v) ** 2 * (1.0 + lam * lam)
    rho = np.zeros((4, 4))
    rho[0, 0] = (1.0 + v * v * lam * lam) / norm
    rho[1, 1] = rho[2, 2] = v / (1.0 + v) ** 2
    rho[3, 3] = (v * v + lam * lam) / norm
    rho[0, 3] = rho[3, 0] = t11 / 2.0
    rho.setflags(write=False)

    return QubitProjection(
        c0=c0, tau=tau, omega=omega,
        v_prime=(v + lam * lam) / (1.0 + v * lam * lam),
        t11=t11,
        t33=((1.0 - v) / (1.0 + v)) ** 2,
        rho_qubit=rho,
        terms_used=series.terms_used,
        series_residual=series.residual,
    )


def concurrence_of(qp: QubitProjection, p: TmstParams) -> ConcurrenceResult:
    """Concurrence and entanglement of formation of the projected qubits.

    For the X-shaped qubit state the Wootters concurrence reduces to
    ``max(0, t11 - 2v/(1+v)^2)``.
    """
    c = max(0.0, qp.t11 - 2.0 * p.v / (1.0 + p.v) ** 2)
    c = min(c, 1.0)
    x = 0.5 * (1.0 + math.sqrt(1.0 - c * c))
    return ConcurrenceResult(concurrence=c, mix_x=x, e_lf=h_binary(x))


def e_lf(p: TmstParams, tol: float = DEFAULT_TOL, max_shell: int = DEFAULT_MAX_SHELL) -> float:
    """Lower bound on the entanglement of formation, in bits.

    The series is evaluated for separable states as well; the concurrence
    clamp then yields 0.
    """
    qp = qubit_projection(p, tol=tol, max_shell=max_shell)
    return concurrence_of(qp, p).e_lf
