"""Joint-sparse recovery of the coefficient matrix from ``X = C Z``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import RankDeficientError

RANK_TOL = 1e-10


@dataclass(frozen=True)
class SupportSet:
    """Row support in lattice indices ``k`` (sorted), with its budget."""

    indices: tuple[int, ...]
    K0: int
    S_max: int

    def __post_init__(self):
        idx = tuple(sorted(int(k) for k in self.indices))
        if len(set(idx)) != len(idx):
            raise ValueError("support indices must be distinct")
        if any(abs(k) > self.K0 for k in idx):
            raise ValueError(f"support index outside [-{self.K0}, {self.K0}]")
        if len(idx) > self.S_max:
            raise ValueError(f"support size {len(idx)} exceeds budget {self.S_max}")
        object.__setattr__(self, "indices", idx)

    @property
    def rows(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=int) + self.K0

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    support: SupportSet
    Z_hat: np.ndarray
    residual: float
    iterations: int
    rip_estimate: float | None = None


def ls_on_support(X, C, rows) -> np.ndarray:
    """Least-squares ``Z`` restricted to ``rows`` (zero elsewhere)."""
    X = np.asarray(X, dtype=complex)
    C = np.asarray(C, dtype=float)
    rows = np.asarray(rows, dtype=int)
    Z = np.zeros((C.shape[1], X.shape[1]), dtype=complex)
    if rows.size == 0:
        return Z
    Q, R = np.linalg.qr(C[:, rows])
    d = np.abs(np.diag(R))
    if d.min() <= RANK_TOL * max(d.max(), 1.0):
        raise RankDeficientError(tuple(rows.tolist()))
    Z[rows] = solve_triangular(R, Q.T @ X)
    return Z


SELECTION_RULES = ("classic", "rank_aware")


def _scores(C, R, rows, rule, col_norms):
    if rule == "classic":
        return np.linalg.norm(C.T @ R, axis=1) / col_norms
    # correlate with an orthonormal basis of the residual range and normalize
    # by each column's norm after projecting out the active set
    U, sv, _ = np.linalg.svd(R, full_matrices=False)
    U = U[:, sv > 1e-10 * sv[0]]
    num = np.linalg.norm(C.T @ U, axis=1)
    if not rows:
        return num / col_norms
    Q, _ = np.linalg.qr(C[:, rows])
    P = C - Q @ (Q.T @ C)
    den = np.linalg.norm(P, axis=0)
    out = np.zeros_like(num)
    ok = den > RANK_TOL * col_norms
    out[ok] = num[ok] / den[ok]
    return out


def somp(X, C, S: int, residual_tol: float = 0.0, K0: int | None = None,
         rule: str = "rank_aware") -> RecoveryResult:
    """Simultaneous orthogonal matching pursuit.

    Each step adds the column of ``C`` best correlated with the current
    residual, then refits all active rows jointly by least squares.  Stops
    after ``S`` atoms or once ``||R||_F <= max(residual_tol, 1e-12 ||X||_F)``.
    Ties resolve to the lowest column index.

    ``rule="classic"`` scores columns by ``||c_j^T R||_2``.  ``"rank_aware"``
    replaces ``R`` by an orthonormal basis of its range and divides by the
    norm of ``c_j`` projected off the active set, which keeps weak rows from
    being masked by strong ones.
    """
    if rule not in SELECTION_RULES:
        raise ValueError(f"rule must be one of {SELECTION_RULES}")
    X = np.asarray(X, dtype=complex)
    C = np.asarray(C, dtype=float)
    M, K = C.shape
    if X.shape[0] != M:
        raise ValueError(f"X has {X.shape[0]} rows, C has {M}")
    if S < 0:
        raise ValueError("S must be non-negative")
    if K0 is None:
        if K % 2 == 0:
            raise ValueError("K must be odd when K0 is not given")
        K0 = (K - 1) // 2
    S = min(S, K, M)
    stop = max(residual_tol, 1e-12 * np.linalg.norm(X))
    col_norms = np.linalg.norm(C, axis=0)
    col_norms[col_norms == 0] = np.inf

    rows: list[int] = []
    Z = np.zeros((K, X.shape[1]), dtype=complex)
    R = X.copy()
    while len(rows) < S and np.linalg.norm(R) > stop:
        scores = _scores(C, R, rows, rule, col_norms)
        scores[rows] = -1.0
        rows.append(int(np.argmax(scores)))
        Z = ls_on_support(X, C, rows)
        R = X - C @ Z
    support = SupportSet(tuple(r - K0 for r in rows), K0, max(S, len(rows)))
    return RecoveryResult(support, Z, float(np.linalg.norm(R)), len(rows))


def recover_noisy(X, C, S: int, noise_norm: float, K0: int | None = None,
                  rule: str = "rank_aware") -> RecoveryResult:
    """SOMP stopped at the noise level ``noise_norm`` (Frobenius)."""
    if noise_norm < 0:
        raise ValueError("noise_norm must be non-negative")
    return somp(X, C, S, residual_tol=noise_norm, K0=K0, rule=rule)


def best_s_term(Z, S: int, K0: int | None = None):
    """Keep the ``S`` rows of largest l2 norm.

    Returns ``(support, Z_S, defect)`` where ``defect = ||Z - Z_S||_{2,1}``.
    """
    Z = np.asarray(Z, dtype=complex)
    K = Z.shape[0]
    if K0 is None:
        K0 = (K - 1) // 2
    norms = np.linalg.norm(Z, axis=1)
    order = np.argsort(-norms, kind="stable")
    keep = np.sort(order[:min(S, K)])
    Z_S = np.zeros_like(Z)
    Z_S[keep] = Z[keep]
    defect = float(np.linalg.norm(Z - Z_S, axis=1).sum())
    return SupportSet(tuple(int(r) - K0 for r in keep), K0, S), Z_S, defect


def empirical_rip(C, S: int, trials: int, seed: int) -> float:
    """Lower estimate of the order-``S`` restricted isometry constant of ``C/sqrt(M)``.

    Uses random column subsets; the true constant is at least this value.
    """
    C = np.asarray(C, dtype=float) / math.sqrt(C.shape[0])
    K = C.shape[1]
    if not 1 <= S <= K:
        raise ValueError("S must lie in [1, K]")
    rng = np.random.default_rng(seed)
    delta = 0.0
    for _ in range(trials):
        cols = rng.permutation(K)[:S]
        sv = np.linalg.svd(C[:, cols], compute_uv=False)
        delta = max(delta, abs(sv[0] ** 2 - 1), abs(sv[-1] ** 2 - 1))
    return float(delta)


def rip_constants(delta: float) -> tuple[float, float]:
    """``(C0, C1)`` of the stable-recovery bound; requires ``delta < sqrt(2) - 1``."""
    if not 0 <= delta < math.sqrt(2) - 1:
        raise ValueError(f"delta={delta} outside [0, sqrt(2) - 1)")
    den = 1 - (1 + math.sqrt(2)) * delta
    C0 = 2 * (1 - (1 - math.sqrt(2)) * delta) / den
    C1 = 4 * math.sqrt(1 + delta) / den
    return C0, C1


def stable_recovery_bound(delta: float, S: int, M: int, defect_21: float, noise_norm: float) -> float:
    """``C0/sqrt(S) * ||Z - Z_S||_{2,1} + C1/sqrt(M) * ||N||_F`` for the unnormalized ``C``."""
    C0, C1 = rip_constants(delta)
    return C0 / math.sqrt(S) * defect_21 + C1 / math.sqrt(M) * noise_norm
