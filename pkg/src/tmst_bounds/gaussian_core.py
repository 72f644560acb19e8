"""Parameterizations, covariance matrices and entropy functions for
two-mode squeezed thermal states (TMST).

Conventions used throughout the package:

* the vacuum variance is 1/2, so a single-mode vacuum has covariance
  ``diag(1/2, 1/2)`` (other libraries often use 1);
* quadratures are ordered ``(q_A, p_A, q_B, p_B)``;
* every logarithm is base 2, so entropies come out in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

VACUUM_VARIANCE = 0.5

# lambda or v this close to 1 makes 1/(1 - lambda^2) cancel catastrophically
UNIT_EDGE = 1.0 - 1e-9

_SYMMETRY_TOL = 1e-12


class DomainError(ValueError):
    """Raised when a parameter lies outside the physical domain."""


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value):
        raise DomainError(f"{name} is NaN")
    if not 0.0 <= value < 1.0:
        raise DomainError(f"{name}={value!r} outside [0, 1)")
    if value >= UNIT_EDGE:
        raise DomainError(f"{name}={value!r} too close to 1 (limit {UNIT_EDGE})")
    return value


@dataclass(frozen=True)
class TmstParams:
    """A two-mode squeezed thermal state.

    The canonical coordinates are ``lam = tanh r`` and ``v = N / (N + 1)``;
    the remaining fields are derived from them. Build instances with
    :func:`tmst_from` or :func:`tmst_from_squeezing`.

    Attributes
    ----------
    lam : float
        Unit-scale squeezing ``tanh r`` in ``[0, 1)``.
    v : float
        Unit-scale temperature ``N / (N + 1)`` in ``[0, 1)``.
    r : float
        Squeezing parameter.
    n_thermal : float
        Mean thermal photon number ``N`` of each mode before squeezing.
    w : float
        ``atanh(v)``, the squeezing-like coordinate of the temperature.
    b, c : float
        Standard-form covariance entries ``(N + 1/2) cosh 2r`` and
        ``(N + 1/2) sinh 2r``.
    """

    lam: float
    v: float
    r: float
    n_thermal: float
    w: float
    b: float
    c: float

    def as_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "v": self.v,
            "r": self.r,
            "n_thermal": self.n_thermal,
            "w": self.w,
            "b": self.b,
            "c": self.c,
        }


def tmst_from(lam: float, v: float) -> TmstParams:
    """Build a :class:`TmstParams` from ``(lambda, v)``.

    Raises
    ------
    DomainError
        If either argument is NaN or outside ``[0, 1 - 1e-9)``.
    """
    lam = _check_unit("lambda", lam)
    v = _check_unit("v", v)
    n = v / (1.0 - v)
    half = n + VACUUM_VARIANCE
    one_minus = 1.0 - lam * lam
    # cosh 2r = (1 + lam^2)/(1 - lam^2), sinh 2r = 2 lam/(1 - lam^2)
    b = half * (1.0 + lam * lam) / one_minus
    c = half * 2.0 * lam / one_minus
    return TmstParams(lam=lam, v=v, r=math.atanh(lam), n_thermal=n,
                      w=math.atanh(v), b=b, c=c)


def tmst_from_squeezing(r: float, n_thermal: float) -> TmstParams:
    """Build a :class:`TmstParams` from squeezing ``r`` and photon number ``N``."""
    r = float(r)
    n_thermal = float(n_thermal)
    if math.isnan(r) or math.isnan(n_thermal):
        raise DomainError("NaN input")
    if r < 0 or n_thermal < 0 or math.isinf(r) or math.isinf(n_thermal):
        raise DomainError(f"need r >= 0 and N >= 0, got r={r!r}, N={n_thermal!r}")
    return tmst_from(math.tanh(r), n_thermal / (n_thermal + 1.0))


def is_entangled(p: TmstParams) -> bool:
    """Inseparability test for a TMST: entangled iff ``lambda > v``."""
    return p.lam > p.v


@dataclass(frozen=True)
class StandardFormCov:
    """Two-mode covariance matrix in standard form.

    The matrix is::

        [[b1, 0,  c1, 0 ],
         [0,  b1, 0,  c2],
         [c1, 0,  b2, 0 ],
         [0,  c2, 0,  b2]]
    """

    b1: float
    b2: float
    c1: float
    c2: float

    def __post_init__(self):
        for name in ("b1", "b2"):
            value = getattr(self, name)
            if not value >= VACUUM_VARIANCE - 1e-12:
                raise DomainError(f"{name}={value!r} below vacuum variance 1/2")

    @classmethod
    def from_tmst(cls, p: TmstParams) -> "StandardFormCov":
        return cls(b1=p.b, b2=p.b, c1=p.c, c2=-p.c)

    def matrix(self) -> np.ndarray:
        b1, b2, c1, c2 = self.b1, self.b2, self.c1, self.c2
        return np.array([
            [b1, 0.0, c1, 0.0],
            [0.0, b1, 0.0, c2],
            [c1, 0.0, b2, 0.0],
            [0.0, c2, 0.0, b2],
        ])


def xlog2x(x: float) -> float:
    """``x * log2(x)`` with the limit value 0 at ``x = 0``."""
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def g_entropy(n: float) -> float:
    """Von Neumann entropy in bits of a thermal mode with mean photon number ``n``.

    ``g(n) = (n + 1) log2(n + 1) - n log2(n)``.
    """
    n = float(n)
    if math.isnan(n) or n < 0:
        raise DomainError(f"mean photon number must be >= 0, got {n!r}")
    if n < 1e-15:
        return 0.0
    return (n + 1.0) * math.log2(n + 1.0) - n * math.log2(n)


def h_binary(x: float) -> float:
    """Binary entropy in bits."""
    x = float(x)
    if math.isnan(x) or not 0.0 <= x <= 1.0:
        raise DomainError(f"probability must be in [0, 1], got {x!r}")
    return 0.0 - xlog2x(x) - xlog2x(1.0 - x)


def min_eigenvalue(m) -> float:
    """Smallest eigenvalue of a real symmetric matrix."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if np.max(np.abs(m - m.T), initial=0.0) > _SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(m)[0])
