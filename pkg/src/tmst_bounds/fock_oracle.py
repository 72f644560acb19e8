"""Brute-force TMST in a truncated two-mode Fock space.

Nothing here uses the closed forms from the other modules: the state is built
by exponentiating the squeezing generator and every quantity is read off the
resulting density matrix. This makes it an independent check of the
analytic expressions.

Basis ordering: ``|m, n>`` (mode A occupation ``m``, mode B occupation ``n``)
sits at index ``m * dim + n``.

The squeeze is exponentiated in a padded working space of ``dim + pad``
levels per mode and then cropped to ``dim``. Without padding the truncated
generator exponentiates to an exact unitary of the truncated space, the trace
stays 1 and the truncation error is invisible; with padding the trace deficit
of the cropped state measures the photon-number tail that was discarded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .gaussian_core import TmstParams

DEFAULT_DIM = 40
DEFAULT_MEMORY_CAP = 400_000_000
VALIDATION_DEFICIT = 1e-8
BUILD_DEFICIT = 1e-4
_EIG_FLOOR = 1e-12


class TruncationError(RuntimeError):
    """The truncation discards so much probability that the state is unusable."""


class DeficitGateError(RuntimeError):
    """The trace deficit is too large for a validation-grade result."""


class MemoryCapError(RuntimeError):
    """The requested truncation would exceed the configured memory cap."""


@dataclass(frozen=True)
class TruncatedState:
    dim: int
    rho: np.ndarray
    trace_deficit: float
    working_dim: int


@dataclass(frozen=True)
class SpinHalfOps:
    """Spin one-half operators on a single truncated mode.

    ``s1 + 1j * s2 = 2 * sum_m |2m><2m+1|`` and ``s3 = diag((-1)^m)``.
    """

    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray

    @classmethod
    def build(cls, dim: int) -> "SpinHalfOps":
        raising = np.zeros((dim, dim))
        for m in range(0, dim - 1, 2):
            raising[m, m + 1] = 2.0
        s1 = (raising + raising.T) / 2.0
        s2 = (raising - raising.T) / 2.0j
        s3 = np.diag((-1.0) ** np.arange(dim))
        return cls(s1=s1, s2=s2, s3=s3)

    def algebra_defect(self) -> float:
        """Largest deviation from ``[S_i, S_j] = 2i eps_ijk S_k``."""
        ops = (self.s1, self.s2, self.s3)
        worst = 0.0
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            comm = ops[i] @ ops[j] - ops[j] @ ops[i]
            worst = max(worst, float(np.max(np.abs(comm - 2j * ops[k]))))
        return worst


class SpinCorrelations(NamedTuple):
    t11: float
    t22: float
    t33: float


def _annihilation(dim: int) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, dim, dtype=float)), 1, format="csr")


def squeeze_generator(r: float, dim: int) -> sp.csr_matrix:
    """``K = -r (a1^+ a2^+ - a1 a2)`` on ``dim`` levels per mode (sparse)."""
    a = _annihilation(dim)
    eye = sp.identity(dim, format="csr")
    a1 = sp.kron(a, eye, format="csr")
    a2 = sp.kron(eye, a, format="csr")
    return (-r * (a1.T @ a2.T - a1 @ a2)).tocsr()


def build_tmst_density(p: TmstParams, dim: int = DEFAULT_DIM, pad: int | None = None,
                       memory_cap: int = DEFAULT_MEMORY_CAP) -> TruncatedState:
    """Numerically construct ``S2(r)^+ rho_0 S2(r)`` truncated to ``dim`` levels per mode.

    Parameters
    ----------
    p : TmstParams
        State parameters; only ``r`` and ``v`` are used.
    dim : int
        Per-mode truncation of the returned state.
    pad : int, optional
        Extra levels per mode used while exponentiating. Defaults to ``dim``.
    memory_cap : int
        Maximum number of entries in the ``dim^2 x dim^2`` density matrix.

    Raises
    ------
    MemoryCapError
        If ``dim**4`` exceeds ``memory_cap``.
    TruncationError
        If more than ``1e-4`` of the probability lies outside the truncation.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if dim ** 4 > memory_cap:
        raise MemoryCapError(f"dim={dim} needs {dim ** 4} entries > cap {memory_cap}")
    pad = dim if pad is None else pad
    big = dim + pad

    k_gen = squeeze_generator(p.r, big)
    weights = (1.0 - p.v) * p.v ** np.arange(big)
    rho0_diag = np.outer(weights, weights).ravel()

    occ_a, occ_b = np.divmod(np.arange(big * big), big)
    rho = np.zeros((dim * dim, dim * dim))
    # K conserves occ_a - occ_b, so it is block diagonal in that label
    for diff in range(-(big - 1), big):
        idx = np.flatnonzero(occ_a - occ_b == diff)
        block = k_gen[idx][:, idx].toarray()
        u = scipy.linalg.expm(block)
        # S2^+ rho0 S2 with S2 = exp(K) real, so S2^+ = u.T
        sector = u.T @ (rho0_diag[idx, None] * u)
        inside = (occ_a[idx] < dim) & (occ_b[idx] < dim)
        if not inside.any():
            continue
        small = occ_a[idx][inside] * dim + occ_b[idx][inside]
        rho[np.ix_(small, small)] = sector[np.ix_(inside, inside)]

    rho = 0.5 * (rho + rho.T)
    deficit = 1.0 - float(np.trace(rho))
    if deficit >= BUILD_DEFICIT:
        raise TruncationError(
            f"trace deficit {deficit:.3e} at dim={dim}; truncation grossly insufficient")
    rho.setflags(write=False)
    return TruncatedState(dim=dim, rho=rho, trace_deficit=deficit, working_dim=big)


def _require_valid(s: TruncatedState) -> None:
    if not s.trace_deficit < VALIDATION_DEFICIT:
        raise DeficitGateError(
            f"trace deficit {s.trace_deficit:.3e} >= {VALIDATION_DEFICIT} at dim={s.dim}")


def _expect(rho: np.ndarray, op: np.ndarray) -> complex:
    # Tr(rho op) without forming the product
    return complex(np.sum(rho * op.T))


def oracle_t11(s: TruncatedState) -> SpinCorrelations:
    """Spin correlations ``t_jj = Tr(rho S_j^A S_j^B)`` for ``j = 1, 2, 3``."""
    _require_valid(s)
    ops = SpinHalfOps.build(s.dim)
    t = [_expect(s.rho, np.kron(op, op)).real for op in (ops.s1, ops.s2, ops.s3)]
    return SpinCorrelations(*t)


def partial_transpose_b(rho: np.ndarray, dim: int) -> np.ndarray:
    return rho.reshape(dim, dim, dim, dim).transpose(0, 3, 2, 1).reshape(dim * dim, dim * dim)


def oracle_log_negativity(s: TruncatedState) -> float:
    """``log2`` of the trace norm of the partial transpose on mode B."""
    _require_valid(s)
    eigs = np.linalg.eigvalsh(partial_transpose_b(s.rho, s.dim))
    return math.log2(float(np.sum(np.abs(eigs))))


def _entropy_bits(rho: np.ndarray) -> float:
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -1e-10:
        raise ValueError(f"density matrix has eigenvalue {eigs[0]:.3e}")
    eigs = eigs[eigs > _EIG_FLOOR]
    return float(-np.sum(eigs * np.log2(eigs)))


def reduced_states(s: TruncatedState) -> tuple[np.ndarray, np.ndarray]:
    t = s.rho.reshape(s.dim, s.dim, s.dim, s.dim)
    return np.einsum("mnkn->mk", t), np.einsum("mnmk->nk", t)


def oracle_entropies(s: TruncatedState) -> tuple[float, float, float]:
    """Von Neumann entropies ``(S_A, S_B, S_AB)`` in bits."""
    _require_valid(s)
    rho_a, rho_b = reduced_states(s)
    return _entropy_bits(rho_a), _entropy_bits(rho_b), _entropy_bits(s.rho)


_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    eigs, vecs = np.linalg.eigh(rho)
    return (vecs * np.sqrt(np.clip(eigs, 0.0, None))) @ vecs.conj().T


def oracle_concurrence(qubit_rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The decreasing square roots ``l_i`` of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)`` are taken as the singular values of
    ``sqrt(rho) sqrt(rho~)``, which stays accurate for rank-deficient states.
    """
    rho = np.asarray(qubit_rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho.shape}")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError(f"trace {np.trace(rho).real} differs from 1")
    root = _psd_sqrt(rho)
    flipped_root = _SIGMA_YY @ root.conj() @ _SIGMA_YY
    ls = np.linalg.svd(root @ flipped_root, compute_uv=False)
    return float(max(0.0, ls[0] - ls[1] - ls[2] - ls[3]))


def oracle_relative_entropy(s_rho: TruncatedState, s_sigma: TruncatedState) -> float:
    """Quantum relative entropy ``S(rho || sigma)`` in bits.

    Eigenvalues of ``sigma`` below ``1e-300`` are floored before the matrix
    logarithm; both states must pass the trace-deficit gate.
    """
    _require_valid(s_rho)
    _require_valid(s_sigma)
    if s_rho.dim != s_sigma.dim:
        raise ValueError("states must share the truncation dimension")
    eigs, vecs = np.linalg.eigh(s_sigma.rho)
    log_sigma = (vecs * np.log2(np.clip(eigs, 1e-300, None))) @ vecs.T
    neg_entropy = -_entropy_bits(s_rho.rho)
    return float(neg_entropy - np.sum(s_rho.rho * log_sigma))
