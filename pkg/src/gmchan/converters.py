"""Conversions between the weight-table and eigenvalue-table channel forms.

A weight-table channel is diagonal in the Gell-Mann basis iff, within every
column l >= 1, the symmetrized weights p~_jl := p_jl + p_lj agree for all
rows j < l. An eigenvalue-table channel admits a weight-table realization iff
the symmetrized eigenvalues satisfy the same column-equality and the diagonal
eigenvalues follow a fixed linear recursion. Both converters re-verify their
closed-form output against direct operator application before returning: the
off-diagonal basis matrices are always eigenvectors of the weight-table map,
so the eigenvalue read-off is checkable entrywise.

Conversion can succeed with negative weights: that means the eigenvalue data
is realizable by this operator sum only with signed coefficients (the map may
even be CP, just not manifestly so in this form). Negative weights are
reported, not rejected; check `KrausChannel.nonnegative`.
"""

from __future__ import annotations

import numpy as np

from .basis import full_basis
from .channels import DEFAULT_TOL, EigenChannel, KrausChannel, tp_residuals
from .errors import InvariantError, NotEV, NotKF, NotTracePreserving

COND_TOL = 1e-12
ORACLE_TOL = 1e-11


def _kf_images(p: np.ndarray, n: int) -> np.ndarray:
    """Images of every basis matrix under X -> sum_a p_a sigma_a X sigma_a."""
    b = full_basis(n)
    return np.einsum(
        "a,aij,bjk,akl->bil", p.ravel(), b.stack, b.stack, b.stack, optimize=True
    )


def _verify_kf_ev_pair(p: np.ndarray, lam: np.ndarray, n: int, what: str) -> None:
    """Demand that the weight table maps sigma_b to lam_b sigma_b, entrywise."""
    b = full_basis(n)
    expected = lam.reshape(-1, 1, 1) * b.stack
    defect = float(np.max(np.abs(_kf_images(p, n) - expected)))
    if defect > ORACLE_TOL:
        raise InvariantError(
            f"{what}: closed-form output fails the application oracle "
            f"(defect {defect:.3e})"
        )


def _require_tp(ch: KrausChannel) -> None:
    worst = float(np.max(np.abs(tp_residuals(ch))))
    if worst > DEFAULT_TOL:
        raise NotTracePreserving(f"max trace residual {worst:.3e} exceeds 1e-10")


def kf_is_ev(ch: KrausChannel, tol: float = COND_TOL):
    """Is the weight-table channel diagonal in the basis?

    Returns (flag, violations); each violation is a triple (j, k, l) of two
    rows j < k whose symmetrized weights disagree in column l.
    """
    _require_tp(ch)
    pt = ch.p + ch.p.T
    violations = []
    for l in range(1, ch.n):
        for j in range(l):
            for k in range(j + 1, l):
                if abs(pt[j, l] - pt[k, l]) > tol:
                    violations.append((j, k, l))
    return (not violations), violations


def kf_to_ev(
    ch: KrausChannel, tol: float = COND_TOL, verify: bool = True
) -> EigenChannel:
    """Read off the eigenvalue table of a basis-diagonal weight channel.

    Diagonal eigenvalues come from the column-common symmetrized weights;
    off-diagonal ones from trace-orthogonality of the sandwich terms, which
    holds unconditionally: with M = max(k, l),

        lam_kl = p_00 + (p_kl - p_lk) - 2 p_MM/(M+1)
                 + sum_{M<j<n} 2 p_jj/(j(j+1)).
    """
    ok, violations = kf_is_ev(ch, tol)
    if not ok:
        raise NotEV(
            f"weight table is not basis-diagonal ({len(violations)} violations)",
            violations,
        )
    n = ch.n
    p = ch.p
    pt = p + p.T
    ptc = pt[0, :]  # column-common symmetrized weights, index l >= 1
    lam = np.ones((n, n))
    for k in range(1, n):
        lam[k, k] = 1.0 - (k + 1.0) * ptc[k] - float(np.sum(ptc[k + 1:]))
    for k in range(n):
        for l in range(n):
            if k == l:
                continue
            M = max(k, l)
            jj = np.arange(M + 1, n)
            tail = 2.0 * float(np.sum(p[jj, jj] / (jj * (jj + 1.0)))) if jj.size else 0.0
            lam[k, l] = p[0, 0] + (p[k, l] - p[l, k]) - 2.0 * p[M, M] / (M + 1.0) + tail
    if verify:
        _verify_kf_ev_pair(p, lam, n, "kf_to_ev")
    return EigenChannel(n=n, lam=lam, trace_preserving=True)


def ev_is_kf(ch: EigenChannel, tol: float = COND_TOL):
    """Does the eigenvalue table admit a weight-table realization?

    Two condition families, both linear: (a) column-equality of the
    symmetrized eigenvalues, violations tagged ("tilde", j, k, l); (b) the
    diagonal recursion lam_kk = lam_11 + (lt_1 + sum_{0<j<k} lt_j - k lt_k)/2
    with lt_j := lam_0j + lam_j0, violations tagged ("diag", k).
    """
    if abs(ch.lam[0, 0] - 1.0) > DEFAULT_TOL:
        raise NotTracePreserving(f"lam_00 = {ch.lam[0, 0]!r}, expected 1")
    lam = ch.lam
    lt = lam + lam.T
    violations = []
    for l in range(1, ch.n):
        for j in range(l):
            for k in range(j + 1, l):
                if abs(lt[j, l] - lt[k, l]) > tol:
                    violations.append(("tilde", j, k, l))
    for k in range(2, ch.n):
        target = lam[1, 1] + 0.5 * (
            lt[0, 1] + float(np.sum(lt[0, 1:k])) - k * lt[0, k]
        )
        if abs(lam[k, k] - target) > tol:
            violations.append(("diag", k))
    return (not violations), violations


def ev_to_kf(
    ch: EigenChannel, tol: float = COND_TOL, verify: bool = True
) -> KrausChannel:
    """Solve for the weight table realizing an admissible eigenvalue table.

    p~_m = 1/n - lam_mm/(m+1) + sum_{m<j<n} lam_jj/(j(j+1)) gives the
    symmetrized off-diagonal weights; the antisymmetric split is fixed by
    p_kl - p_lk = (lam_kl - lam_lk)/2. Negative weights are possible and are
    returned as-is.
    """
    ok, violations = ev_is_kf(ch, tol)
    if not ok:
        raise NotKF(
            f"eigenvalue table admits no weight realization "
            f"({len(violations)} violations)",
            violations,
        )
    n = ch.n
    lam = ch.lam
    lt = lam + lam.T
    ptc = np.zeros(n)  # symmetrized weight per column, index m >= 1
    for m in range(1, n):
        jj = np.arange(m + 1, n)
        tail = float(np.sum(lam[jj, jj] / (jj * (jj + 1.0)))) if jj.size else 0.0
        ptc[m] = 1.0 / n - lam[m, m] / (m + 1.0) + tail
    p = np.zeros((n, n))
    for k in range(n):
        for l in range(n):
            if k != l:
                p[k, l] = 0.5 * ptc[max(k, l)] + 0.25 * (lam[k, l] - lam[l, k])
    s_all = lt[0, 1] + float(np.sum(lt[0, 1:]))
    for k in range(1, n):
        p[k, k] = (1.0 - lam[1, 1] + n * lam[k, k] - 0.5 * s_all) / (2.0 * n)
    p[0, 0] = (1.0 + 0.5 * (n - 1.0) * (2.0 * lam[1, 1] + s_all)) / (n * n)
    if verify:
        _verify_kf_ev_pair(p, lam, n, "ev_to_kf")
    return KrausChannel(n=n, p=p, trace_preserving=True)
