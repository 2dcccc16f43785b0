"""Channels diagonal in, or built from, the Gell-Mann basis.

Two representations of the same family of maps on n×n operators:

  KrausChannel  -- weight table p:      X -> sum_ij p_ij sigma_ij X sigma_ij
  EigenChannel  -- eigenvalue table l:  sigma_ij -> l_ij sigma_ij

plus the machinery to test trace preservation (a linear system in the p table
with one free diagonal weight), complete positivity (three independent
routes), and to act on density matrices.

CP checking routes, in decreasing order of authority:

  cp_check_oracle      eigen-spectrum of the Choi matrix, assembled by
                       applying the map to every matrix unit. Ground truth.
  cp_check_normalized  closed-form block criterion for eigenvalue-form maps,
                       derived from the norm-weighted eigenvector sum
                       sum_a l_a conj(sigma_a) (x) sigma_a / Tr(sigma_a²).
                       Exactly equivalent to the oracle.
  cp_check_paper       closed-form block criterion from the unnormalized sum
                       sum_a l_a conj(sigma_a) (x) sigma_a, which equals
                       2J + ((n-2)/n) l_00 I. Exact for n = 2, strictly
                       weaker (necessary, not sufficient) for n >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import decompose, full_basis, recompose, _check_dimension, _check_square
from .errors import (
    ConstraintViolated,
    InvalidChannel,
    InvariantError,
    NegativeCoefficient,
    NonLinearMap,
)

DEFAULT_TOL = 1e-10

CP = "CP"
NOT_CP = "NotCP"

METHOD_ORACLE = "choi_oracle"
METHOD_PAPER = "paper_conditions"
METHOD_NORMALIZED = "normalized_conditions"


def _coeff_table(n: int, table, what: str) -> np.ndarray:
    arr = np.array(table, dtype=float)
    if arr.shape != (n, n):
        raise InvariantError(f"{what} table must be {n}x{n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvariantError(f"{what} table contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class KrausChannel:
    """Weight-table channel X -> sum_ij p_ij sigma_ij X sigma_ij.

    A genuine channel has p_ij >= 0 (each term is then a scaled conjugation,
    so the map is manifestly CP). The constructor tolerates negative entries
    because converters report them rather than reject them; check
    `nonnegative` when it matters. With trace_preserving=True the linear
    trace conditions are enforced at construction.
    """

    n: int
    p: np.ndarray
    trace_preserving: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        object.__setattr__(self, "p", _coeff_table(self.n, self.p, "weight"))
        if self.trace_preserving:
            worst = float(np.max(np.abs(_tp_residuals_table(self.p))))
            if worst > DEFAULT_TOL:
                raise InvariantError(
                    f"flagged trace-preserving but max residual is {worst:.3e}"
                )

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.p >= 0.0))


@dataclass(frozen=True)
class EigenChannel:
    """Eigenvalue-table channel sigma_ij -> lam_ij sigma_ij."""

    n: int
    lam: np.ndarray
    trace_preserving: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        object.__setattr__(self, "lam", _coeff_table(self.n, self.lam, "eigenvalue"))
        if self.trace_preserving and abs(self.lam[0, 0] - 1.0) > DEFAULT_TOL:
            raise InvariantError(
                f"flagged trace-preserving but lam_00 = {self.lam[0, 0]!r}"
            )


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi matrix J = sum_kl e_kl (x) map(e_kl), with spectrum diagnostics."""

    n: int
    entries: np.ndarray
    spectrum: np.ndarray
    min_eigenvalue: float
    hermiticity_defect: float


@dataclass(frozen=True)
class DensityMatrix:
    """State: Hermitian, unit trace, positive semidefinite (within tolerance)."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        m = _check_square(self.entries, self.n).copy()
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > 1e-12:
            raise InvariantError(f"not Hermitian: defect {herm:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > 1e-12:
            raise InvariantError(f"trace is {tr!r}, expected 1")
        low = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        if low < -DEFAULT_TOL:
            raise InvariantError(f"negative eigenvalue {low:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


@dataclass(frozen=True)
class CpReport:
    """Outcome of one complete-positivity check.

    verdict is "CP" or "NotCP"; margin is the smallest slack among the
    conditions the method evaluates (negative = violated); diagnostics holds
    method-specific arrays (per-pair margins, block spectra, Choi spectrum).
    """

    verdict: str
    method: str
    margin: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_cp(self) -> bool:
        return self.verdict == CP


def _verdict(margin: float, tol: float) -> str:
    return CP if margin >= -tol else NOT_CP


def apply_kf(ch: KrausChannel, X: np.ndarray) -> np.ndarray:
    """sum_ij p_ij sigma_ij X sigma_ij."""
    b = full_basis(ch.n)
    X = _check_square(X, ch.n)
    return np.einsum("a,aij,jk,akl->il", ch.p.ravel(), b.stack, X, b.stack, optimize=True)


def apply_ev(ch: EigenChannel, X: np.ndarray) -> np.ndarray:
    """Scale each basis coefficient of X by its eigenvalue and recompose."""
    b = full_basis(ch.n)
    return recompose(decompose(X, b) * ch.lam, b)


def _tp_residuals_table(p: np.ndarray) -> np.ndarray:
    """Residuals of the trace-preservation system for a weight table.

    Trace preservation pins every diagonal weight except p_11: one equation
    fixes p_00, one is a pure constraint on the off-diagonals, and the rest
    determine p_22..p_{n-1,n-1}. Residual = stored value minus the value the
    system demands (constraint rows are returned as their left-hand side).
    """
    n = p.shape[0]
    pt = p + p.T
    ll = np.arange(1, n)
    diag_tail = 2.0 * np.sum(p[ll, ll] / (ll * (ll + 1.0)))
    res = [p[0, 0] - (1.0 - np.sum(pt[0, 1:]) - diag_tail)]
    if n == 2:
        return np.array(res)
    res.append(float(np.sum(pt[1, 2:] - pt[0, 2:])))
    res.append(p[2, 2] - (p[1, 1] + pt[0, 1] - pt[1, 2] + np.sum(pt[0, 3:] - pt[2, 3:])))
    for k in range(3, n):
        acc = 0.0
        for j in range(2, k):
            inner = np.sum(pt[:j, j] - pt[:j, j + 1])
            inner += np.sum(pt[j, j + 2:] - pt[j + 1, j + 2:])
            acc += (j + 1.0) / (2.0 * j) * inner
        res.append(p[k, k] - (p[2, 2] + acc))
    return np.array(res)


def tp_residuals(ch: KrausChannel) -> np.ndarray:
    """Trace-preservation residuals: one entry for n=2, n entries for n>=3."""
    return _tp_residuals_table(ch.p)


def complete_tp(offdiag: np.ndarray, p_11: float) -> KrausChannel:
    """Fill in the diagonal weights forced by trace preservation.

    Takes the off-diagonal weights (diagonal entries of the argument are
    ignored) and the one free diagonal weight p_11; computes p_22.. and p_00.
    Raises ConstraintViolated when the off-diagonals break the one equation
    that no diagonal can absorb, NegativeCoefficient when a completed weight
    comes out negative.
    """
    off = np.array(offdiag, dtype=float)
    n = _check_dimension(off.shape[0])
    if off.shape != (n, n):
        raise InvariantError(f"off-diagonal table must be square, got {off.shape}")
    p = off.copy()
    np.fill_diagonal(p, 0.0)
    pt = p + p.T
    p[1, 1] = float(p_11)
    if n >= 3:
        gap = float(np.sum(pt[1, 2:] - pt[0, 2:]))
        if abs(gap) > 1e-12:
            raise ConstraintViolated(
                f"off-diagonal weights violate the row-1/row-0 balance by {gap:.3e}"
            )
        p[2, 2] = p[1, 1] + pt[0, 1] - pt[1, 2] + np.sum(pt[0, 3:] - pt[2, 3:])
        for k in range(3, n):
            acc = 0.0
            for j in range(2, k):
                inner = np.sum(pt[:j, j] - pt[:j, j + 1])
                inner += np.sum(pt[j, j + 2:] - pt[j + 1, j + 2:])
                acc += (j + 1.0) / (2.0 * j) * inner
            p[k, k] = p[2, 2] + acc
        for k in range(2, n):
            if p[k, k] < 0:
                raise NegativeCoefficient(
                    f"completed p_{k}{k} = {p[k, k]:.6g} < 0", index=(k, k)
                )
    ll = np.arange(1, n)
    p[0, 0] = 1.0 - np.sum(pt[0, 1:]) - 2.0 * np.sum(p[ll, ll] / (ll * (ll + 1.0)))
    if p[0, 0] < 0:
        raise NegativeCoefficient(f"completed p_00 = {p[0, 0]:.6g} < 0", index=(0, 0))
    return KrausChannel(n=n, p=p, trace_preserving=True)


def choi(apply, n: int) -> ChoiMatrix:
    """Assemble J = sum_kl e_kl (x) apply(e_kl) and diagonalize it.

    `apply` is any function on n×n complex matrices; it is probed for
    linearity first so a silently affine map cannot masquerade as a channel.
    """
    n = _check_dimension(n)
    rng = np.random.default_rng(12345)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    B = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    add_defect = np.max(np.abs(apply(A + B) - apply(A) - apply(B)))
    c = 0.7 - 0.3j
    scale_defect = np.max(np.abs(apply(c * A) - c * apply(A)))
    if max(add_defect, scale_defect) > 1e-10:
        raise NonLinearMap(
            f"linearity probe failed: additivity {add_defect:.3e}, "
            f"homogeneity {scale_defect:.3e}"
        )
    J = np.zeros((n * n, n * n), dtype=complex)
    unit = np.zeros((n, n), dtype=complex)
    for k in range(n):
        for l in range(n):
            unit[k, l] = 1.0
            J[k * n:(k + 1) * n, l * n:(l + 1) * n] = apply(unit)
            unit[k, l] = 0.0
    defect = float(np.max(np.abs(J - J.conj().T)))
    J = (J + J.conj().T) / 2.0
    spectrum = np.linalg.eigvalsh(J)
    J.setflags(write=False)
    spectrum.setflags(write=False)
    return ChoiMatrix(
        n=n,
        entries=J,
        spectrum=spectrum,
        min_eigenvalue=float(spectrum[0]),
        hermiticity_defect=defect,
    )


def choi_of_channel(ch) -> ChoiMatrix:
    """Choi matrix of either channel representation."""
    if isinstance(ch, KrausChannel):
        return choi(lambda X: apply_kf(ch, X), ch.n)
    if isinstance(ch, EigenChannel):
        return choi(lambda X: apply_ev(ch, X), ch.n)
    raise TypeError(f"expected a channel, got {type(ch).__name__}")


def cp_check_oracle(ch, tol: float = DEFAULT_TOL) -> CpReport:
    """Ground-truth CP check: smallest Choi eigenvalue."""
    cm = choi_of_channel(ch)
    return CpReport(
        verdict=_verdict(cm.min_eigenvalue, tol),
        method=METHOD_ORACLE,
        margin=cm.min_eigenvalue,
        diagnostics={
            "spectrum": cm.spectrum,
            "min_eigenvalue": cm.min_eigenvalue,
            "hermiticity_defect": cm.hermiticity_defect,
        },
    )


def _diag_tail(lam: np.ndarray, j: int, weight: float) -> float:
    """sum over j < k < n of weight * lam_kk / (k(k+1))."""
    n = lam.shape[0]
    kk = np.arange(j + 1, n)
    if kk.size == 0:
        return 0.0
    return float(weight * np.sum(lam[kk, kk] / (kk * (kk + 1.0))))


def cp_check_paper(ch: EigenChannel, tol: float = DEFAULT_TOL) -> CpReport:
    """Closed-form block conditions from the unnormalized eigenvector sum.

    Checks PSD of the n(n-1)/2 two-by-two blocks (margin c_j - |l_ij - l_ji|)
    and of one n×n diagonal-sector matrix A. Exact for n=2; for n>=3 the
    underlying sum is 2J + ((n-2)/n) l_00 I, so the check is necessary but
    not sufficient for CP. Diagnostics carry the corrected A spectrum, the
    variant with the halved diagonal self-term (`a_spectrum_printed`), and
    det(A), so the variants can be compared downstream.
    """
    if not isinstance(ch, EigenChannel):
        raise TypeError("closed-form CP conditions need the eigenvalue form")
    lam = ch.lam
    n = ch.n
    l00 = lam[0, 0]
    pair_margins = {}
    for j in range(1, n):
        c_j = l00 - 2.0 * lam[j, j] / (j + 1.0) + _diag_tail(lam, j, 2.0)
        for i in range(j):
            pair_margins[(i, j)] = float(c_j - abs(lam[i, j] - lam[j, i]))
    A = lam + lam.T
    A_printed = A.astype(float).copy()
    for j in range(n):
        tail = _diag_tail(lam, j, 2.0)
        A[j, j] = l00 + (2.0 * j / (j + 1.0)) * lam[j, j] + tail
        A_printed[j, j] = l00 + (j / (j + 1.0)) * lam[j, j] + tail
    a_spectrum = np.linalg.eigvalsh(A)
    margin = min(min(pair_margins.values()), float(a_spectrum[0]))
    return CpReport(
        verdict=_verdict(margin, tol),
        method=METHOD_PAPER,
        margin=margin,
        diagnostics={
            "pair_margins": pair_margins,
            "a_matrix": A,
            "a_spectrum": a_spectrum,
            "det_a": float(np.linalg.det(A)),
            "a_spectrum_printed": np.linalg.eigvalsh(A_printed),
        },
    )


def cp_check_normalized(ch: EigenChannel, tol: float = DEFAULT_TOL) -> CpReport:
    """Closed-form block conditions equivalent to the Choi spectrum test.

    Blocks of sum_a l_a conj(sigma_a)(x)sigma_a / Tr(sigma_a²), i.e. of the
    Choi matrix itself: one n×n diagonal-sector block and one 2×2 block per
    index pair. The union of the block spectra is the Choi spectrum, so the
    verdict must match cp_check_oracle up to eigensolver noise.
    """
    if not isinstance(ch, EigenChannel):
        raise TypeError("closed-form CP conditions need the eigenvalue form")
    lam = ch.lam
    n = ch.n
    l00 = lam[0, 0]
    A = (lam + lam.T) / 2.0
    for a in range(n):
        self_term = (a / (a + 1.0)) * lam[a, a] if a else 0.0
        A[a, a] = l00 / n + self_term + _diag_tail(lam, a, 1.0)
    a_spectrum = np.linalg.eigvalsh(A)
    pair_margins = {}
    for j in range(1, n):
        d_j = l00 / n - lam[j, j] / (j + 1.0) + _diag_tail(lam, j, 1.0)
        for i in range(j):
            pair_margins[(i, j)] = float(d_j - abs(lam[i, j] - lam[j, i]) / 2.0)
    margin = min(min(pair_margins.values()), float(a_spectrum[0]))
    return CpReport(
        verdict=_verdict(margin, tol),
        method=METHOD_NORMALIZED,
        margin=margin,
        diagnostics={
            "pair_margins": pair_margins,
            "a_block": A,
            "a_spectrum": a_spectrum,
        },
    )


def apply_to_state(ch, rho, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Act on a density matrix; the channel must be TP and CP (by oracle)."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(n=np.asarray(rho).shape[0], entries=rho)
    if isinstance(ch, KrausChannel):
        worst = float(np.max(np.abs(tp_residuals(ch))))
        if worst > tol:
            raise InvalidChannel(f"not trace-preserving: max residual {worst:.3e}")
        out = apply_kf(ch, rho.entries)
    elif isinstance(ch, EigenChannel):
        if abs(ch.lam[0, 0] - 1.0) > tol:
            raise InvalidChannel(f"not trace-preserving: lam_00 = {ch.lam[0, 0]!r}")
        out = apply_ev(ch, rho.entries)
    else:
        raise TypeError(f"expected a channel, got {type(ch).__name__}")
    report = cp_check_oracle(ch, tol)
    if not report.is_cp:
        raise InvalidChannel(f"not completely positive: margin {report.margin:.3e}")
    return DensityMatrix(n=ch.n, entries=out)
