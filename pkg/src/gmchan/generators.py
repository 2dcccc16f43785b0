"""Time-local generators built on the Gell-Mann basis, in two forms.

  LindbladGenerator -- rate table g:
      L[X] = sum_ij g_ij (sigma_ij X sigma_ij - (sigma_ij² X + X sigma_ij²)/2)
  EigenGenerator    -- eigenvalue table h:  L[sigma_ij] = h_ij sigma_ij

The rate form annihilates traces for any rates (so the generated map is
always trace-preserving); rates may be negative — that is the standard way
time-local generators express memory effects, and whether the generated map
stays CP is a property of the trajectory, checked in dynamics, not here.

The (0,0) entries are inert: sigma_00 is the identity, so its sandwich term
vanishes in the rate form and trace preservation forces the (0,0) eigenvalue
to zero. Both constructors normalize the entry to 0 and warn if the input
had it nonzero.

eta_from_lambda / lambda_from_eta translate between generator eigenvalues
h(t) and channel eigenvalues l(t) per h = d/dt ln l and l = exp(integral h):
second-order finite differences in log space one way, trapezoid quadrature
the other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .basis import decompose, full_basis, recompose, _check_dimension, _check_square
from .channels import _coeff_table
from .errors import (
    ConstraintViolated,
    DimensionMismatch,
    InvariantError,
    NotEV,
    NotLF,
    ZeroEigenvalue,
)

COND_TOL = 1e-12
ORACLE_TOL = 1e-11
ZERO_TOL = 1e-13


def _normalized_00(table: np.ndarray, what: str) -> np.ndarray:
    if abs(table[0, 0]) > 0.0:
        warnings.warn(
            f"{what}[0,0] = {table[0, 0]:.6g} is inert; normalized to 0",
            stacklevel=3,
        )
        table = table.copy()
        table[0, 0] = 0.0
        table.setflags(write=False)
    return table


@dataclass(frozen=True)
class LindbladGenerator:
    """Rate-table generator; field `gamma` is the n×n real rate table."""

    n: int
    gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        g = _coeff_table(self.n, self.gamma, "rate")
        object.__setattr__(self, "gamma", _normalized_00(g, "gamma"))


@dataclass(frozen=True)
class EigenGenerator:
    """Eigenvalue-table generator; field `eta` is the n×n real table."""

    n: int
    eta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        h = _coeff_table(self.n, self.eta, "generator eigenvalue")
        object.__setattr__(self, "eta", _normalized_00(h, "eta"))


def apply_lf(gen: LindbladGenerator, X: np.ndarray) -> np.ndarray:
    """Rate-form action: sandwich sum minus the anticommutator half."""
    b = full_basis(gen.n)
    X = _check_square(X, gen.n)
    g = gen.gamma.ravel()
    sandwich = np.einsum("a,aij,jk,akl->il", g, b.stack, X, b.stack, optimize=True)
    S = np.einsum("a,aij->ij", g, b.squares)
    return sandwich - 0.5 * (S @ X + X @ S)


def apply_ev_gen(gen: EigenGenerator, X: np.ndarray) -> np.ndarray:
    """Eigenvalue-form action: scale basis coefficients by eta."""
    b = full_basis(gen.n)
    return recompose(decompose(X, b) * gen.eta, b)


def _lf_images(gen: LindbladGenerator) -> np.ndarray:
    """Images of every basis matrix under apply_lf, one einsum batch."""
    b = full_basis(gen.n)
    g = gen.gamma.ravel()
    sand = np.einsum("a,aij,bjk,akl->bil", g, b.stack, b.stack, b.stack, optimize=True)
    S = np.einsum("a,aij->ij", g, b.squares)
    return sand - 0.5 * (
        np.einsum("ij,bjk->bik", S, b.stack) + np.einsum("bij,jk->bik", b.stack, S)
    )


def lf_is_ev(gen: LindbladGenerator, tol: float = COND_TOL):
    """Is the rate-form generator diagonal in the basis?

    Returns (flag, violations); violations are triples (j, k, l) of rows
    whose symmetrized rates disagree in column l.
    """
    gt = gen.gamma + gen.gamma.T
    violations = []
    for l in range(1, gen.n):
        for j in range(l):
            for k in range(j + 1, l):
                if abs(gt[j, l] - gt[k, l]) > tol:
                    violations.append((j, k, l))
    return (not violations), violations


def lf_to_ev(
    gen: LindbladGenerator, tol: float = COND_TOL, verify: bool = True
) -> EigenGenerator:
    """Read off generator eigenvalues from an admissible rate table."""
    ok, violations = lf_is_ev(gen, tol)
    if not ok:
        raise NotEV(
            f"rate table is not basis-diagonal ({len(violations)} violations)",
            violations,
        )
    n = gen.n
    g = gen.gamma
    gt = np.zeros(n)  # column-common symmetrized rate, index l >= 1
    for l in range(1, n):
        gt[l] = g[0, l] + g[l, 0]
    eta = np.zeros((n, n))
    for k in range(1, n):
        eta[k, k] = -(k + 1.0) * gt[k] - float(np.sum(gt[k + 1:]))
    for k in range(n):
        for l in range(n):
            if k == l:
                continue
            m, M = min(k, l), max(k, l)
            v = -2.0 * g[l, k]
            v -= 0.5 * (
                m * gt[m]
                + (M - 1.0) * gt[M]
                + float(np.sum(gt[m + 1:M]))
                + 2.0 * float(np.sum(gt[M + 1:]))
            )
            jj = np.arange(m + 1, M)
            if jj.size:
                v -= float(np.sum(g[jj, jj] / (jj * (jj + 1.0))))
            if m >= 1:
                v -= m / (m + 1.0) * g[m, m]
            v -= (M + 1.0) / M * g[M, M]
            eta[k, l] = v
    result = EigenGenerator(n=n, eta=eta)
    if verify:
        _verify_lf_ev_pair(gen, eta, "lf_to_ev")
    return result


def _verify_lf_ev_pair(gen: LindbladGenerator, eta: np.ndarray, what: str) -> None:
    b = full_basis(gen.n)
    expected = eta.reshape(-1, 1, 1) * b.stack
    defect = float(np.max(np.abs(_lf_images(gen) - expected)))
    if defect > ORACLE_TOL:
        raise InvariantError(
            f"{what}: closed-form output fails the application oracle "
            f"(defect {defect:.3e})"
        )


def ev_is_lf(gen: EigenGenerator, tol: float = COND_TOL):
    """Does the eigenvalue table admit a rate-table realization?

    Three linear condition families on ht_kl := eta_kl + eta_lk:
      ("tilde01", l)     ht_0l = ht_1l                        for 2 <= l <= n-1
      ("diag", k)        eta_kk follows the fixed recursion   for 2 <= k <= n-2
      ("mixing", k,l,m)  ht_kl - ht_{k-1,l} = ht_km - ht_{k-1,m}
                                                      for 1 <= k < l < m <= n-1
    """
    eta = gen.eta
    n = gen.n
    ht = eta + eta.T
    violations = []
    for l in range(2, n):
        if abs(ht[0, l] - ht[1, l]) > tol:
            violations.append(("tilde01", l))
    for k in range(2, n - 1):
        acc = eta[1, 1]
        for j in range(1, k):
            acc += (j + 1.0) / 2.0 * (
                -(j + 2.0) / j * (ht[j, j + 2] - ht[j + 1, j + 2])
                + ht[j - 1, j]
                - ht[j - 1, j + 1]
            )
        if abs(eta[k, k] - acc) > tol:
            violations.append(("diag", k))
    for k in range(1, n):
        for l in range(k + 1, n):
            for m in range(l + 1, n):
                gap = (ht[k, l] - ht[k - 1, l]) - (ht[k, m] - ht[k - 1, m])
                if abs(gap) > tol:
                    violations.append(("mixing", k, l, m))
    return (not violations), violations


def ev_to_lf(
    gen: EigenGenerator, tol: float = COND_TOL, verify: bool = True
) -> LindbladGenerator:
    """Solve for the rate table realizing an admissible eigenvalue table.

    Negative rates are legitimate output (time-local, non-Markovian); they
    are returned as-is. The closed forms are re-checked against direct
    application on the full basis before returning.
    """
    ok, violations = ev_is_lf(gen, tol)
    if not ok:
        raise NotLF(
            f"eigenvalue table admits no rate realization "
            f"({len(violations)} violations)",
            violations,
        )
    n = gen.n
    eta = gen.eta
    ht = eta + eta.T
    gt = np.zeros(n)  # symmetrized rate per column, index l >= 1
    for l in range(1, n):
        jj = np.arange(l + 1, n)
        tail = float(np.sum(eta[jj, jj] / (jj * (jj + 1.0)))) if jj.size else 0.0
        gt[l] = -eta[l, l] / (l + 1.0) + tail
    g = np.zeros((n, n))
    for k in range(n):
        for l in range(n):
            if k != l:
                g[k, l] = 0.5 * gt[max(k, l)] + 0.25 * (eta[k, l] - eta[l, k])
    for k in range(1, n):
        jj = np.arange(k + 1, n)
        tail = 2.0 * float(np.sum(eta[jj, jj] / (jj * (jj + 1.0)))) if jj.size else 0.0
        value = -0.25 * (ht[k - 1, k] - tail - 2.0 * eta[k, k] / (k * (k + 1.0)))
        frac = (k - 1.0) / (k + 1.0)
        if k >= 2:
            value += 0.25 * frac * (ht[0, k - 1] - ht[0, k] + 2.0 * eta[k, k])
            value += frac * eta[k - 1, k - 1] / (2.0 * k)
        g[k, k] = value
    result = LindbladGenerator(n=n, gamma=g)
    if verify:
        _verify_lf_ev_pair(result, eta, "ev_to_lf")
    return result


def eta_from_lambda(lams: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Generator eigenvalues from sampled channel eigenvalues.

    First axis of `lams` is time. Uses second-order finite differences of
    ln|l| (log space is better conditioned than dl/dt / l near small l);
    works for any fixed sign. A component that reaches zero or changes sign
    on the grid makes the generator singular there: ZeroEigenvalue, carrying
    the first offending grid index.
    """
    lams = np.asarray(lams, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise DimensionMismatch("need a 1-d time grid with at least 3 points")
    if np.any(np.diff(grid) <= 0):
        raise ConstraintViolated("time grid must be strictly increasing")
    if lams.shape[0] != grid.size:
        raise DimensionMismatch(
            f"trajectory has {lams.shape[0]} frames for {grid.size} grid points"
        )
    flat = lams.reshape(grid.size, -1)

    def _where(flat_index):
        return tuple(int(x) for x in np.unravel_index(flat_index, lams.shape[1:]))

    tiny = np.abs(flat) <= ZERO_TOL
    if np.any(tiny):
        t_idx, comp = np.argwhere(tiny)[0]
        where = _where(comp)
        raise ZeroEigenvalue(
            f"eigenvalue component {where} vanishes at grid index {t_idx}",
            time_index=int(t_idx),
            component=where,
        )
    signs = np.sign(flat)
    flipped = signs != signs[0]
    if np.any(flipped):
        t_idx, comp = np.argwhere(flipped)[0]
        where = _where(comp)
        raise ZeroEigenvalue(
            f"eigenvalue component {where} changes sign by grid index {t_idx} "
            "(crossed zero between samples)",
            time_index=int(t_idx),
            component=where,
        )
    return np.gradient(np.log(np.abs(lams)), grid, axis=0, edge_order=2)


def lambda_from_eta(etas: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Channel eigenvalues from sampled generator eigenvalues.

    Trapezoid cumulative integral on the user grid, exponentiated; the first
    frame is exactly 1. The grid must start at t = 0.
    """
    etas = np.asarray(etas, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise DimensionMismatch("need a 1-d time grid with at least 2 points")
    if grid[0] != 0.0:
        raise ConstraintViolated(f"grid must start at t=0, got {grid[0]!r}")
    if np.any(np.diff(grid) <= 0):
        raise ConstraintViolated("time grid must be strictly increasing")
    if etas.shape[0] != grid.size:
        raise DimensionMismatch(
            f"trajectory has {etas.shape[0]} frames for {grid.size} grid points"
        )
    dt = np.diff(grid).reshape((-1,) + (1,) * (etas.ndim - 1))
    steps = 0.5 * (etas[1:] + etas[:-1]) * dt
    integral = np.concatenate(
        [np.zeros((1,) + etas.shape[1:]), np.cumsum(steps, axis=0)], axis=0
    )
    return np.exp(integral)
