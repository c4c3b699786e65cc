"""Steady states, time evolution, emission spectra, and observables.

The steady state is obtained from a direct linear solve of the generator
with a trace-normalization row folded in.  Spectra use the resolvent of the
generator: per-point linear solves for small grids, a one-off
eigendecomposition of the generator for large grids (identical results, far
cheaper per point).  A time-domain route (integrate, then Fourier
transform) is kept as an independent cross-check.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.integrate import solve_ivp

from .dressed import TransitionSet
from .liouvillian import Superoperator, unvec, vec


class SteadyStateError(RuntimeError):
    pass


def kernel_dimension(
    lv: Superoperator, gap_ratio: float = 1e6
) -> int:
    """Number of singular values of L within ``gap_ratio`` of the smallest.

    Expensive (full SVD); intended for tests and small generators.
    """
    s = sla.svdvals(lv.matrix)
    s = np.sort(s)
    floor = max(s[0], np.finfo(float).eps * s[-1])
    return int(np.sum(s <= gap_ratio * floor))


def steady_state(
    lv: Superoperator,
    residual_tol: float = 1e-10,
    check_kernel: bool = False,
) -> np.ndarray:
    """Unit-trace Hermitian density matrix in the kernel of the generator.

    Solves (L + w e_0 t^T) x = w e_0 where t is the trace functional; the
    result is validated against ``residual_tol`` and hermitized.
    """
    n = lv.dim
    if check_kernel:
        kdim = kernel_dimension(lv)
        if kdim != 1:
            raise SteadyStateError(f"generator kernel dimension is {kdim}, not 1")
    m = lv.matrix.copy()
    weight = float(np.mean(np.abs(np.diag(m)))) or 1.0
    trace_idx = np.arange(n) * (n + 1)
    m[0, trace_idx] += weight
    rhs = np.zeros(n * n, dtype=complex)
    rhs[0] = weight
    try:
        lu, piv = sla.lu_factor(m)
        x = sla.lu_solve((lu, piv), rhs)
        # one step of iterative refinement; the generator entries are large
        # (meV scale) and the bordered system can be ill-conditioned
        x += sla.lu_solve((lu, piv), rhs - m @ x)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SteadyStateError(f"steady-state solve failed: {exc}") from exc
    rho = unvec(x)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = float(np.max(np.abs(lv.apply(rho))))
    if residual > residual_tol:
        raise SteadyStateError(
            f"steady-state residual {residual:.2e} exceeds {residual_tol:.2e} "
            "(degenerate kernel or ill-conditioned generator?)"
        )
    return rho


def time_evolve(
    lv: Superoperator,
    rho0: np.ndarray,
    t_grid: np.ndarray,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> np.ndarray:
    """rho(t) on ``t_grid`` via an adaptive explicit integrator.

    Returns an array of shape (len(t_grid), N, N).  Trace drift beyond 1e-8
    raises, as it signals an inconsistent generator or tolerance.
    """
    n = lv.dim
    if rho0.shape != (n, n):
        raise ValueError("initial state dimension mismatch")
    y0 = vec(rho0)
    mat = lv.matrix

    sol = solve_ivp(
        lambda _t, y: mat @ y,
        (float(t_grid[0]), float(t_grid[-1])),
        y0,
        t_eval=np.asarray(t_grid, dtype=float),
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"time evolution failed: {sol.message}")
    rhos = np.array([unvec(sol.y[:, i]) for i in range(sol.y.shape[1])])
    traces = np.einsum("tii->t", rhos)
    drift = float(np.max(np.abs(traces - np.trace(rho0))))
    if drift > 1e-8:
        raise RuntimeError(f"trace drift {drift:.2e} exceeds 1e-8")
    return rhos


@dataclass(frozen=True)
class SpectrumResult:
    """Cavity emission amplitude versus detuning from the laser (meV)."""

    detuning: np.ndarray
    values: np.ndarray
    max_imag_residual: float  # diagnostic: |Im| before taking the real part


def _correlation_seeds(x_plus: np.ndarray, rho_ss: np.ndarray):
    """Seeds and trace functionals for both time branches of the correlation.

    Positive times: <x-(t) x+(0)> = Tr[x- e^{Lt}(x+ rho)], negative times
    (by stationarity) <x-(0) x+(t)> = Tr[x+ e^{Lt}(rho x-)]; both with the
    steady coherence subtracted.
    """
    x_minus = x_plus.conj().T
    expect_plus = np.trace(x_plus @ rho_ss)
    seed_pos = x_plus @ rho_ss - expect_plus * rho_ss
    seed_neg = rho_ss @ x_minus - np.trace(rho_ss @ x_minus) * rho_ss
    left_pos = vec(x_minus.T)  # Tr[x- M] = vec(x-^T) . vec(M)
    left_neg = vec(x_plus.T)
    return vec(seed_pos), left_pos, vec(seed_neg), left_neg


def emission_spectrum(
    lv: Superoperator,
    tset_c: TransitionSet,
    rho_ss: np.ndarray,
    detuning: np.ndarray,
    method: str = "auto",
) -> SpectrumResult:
    """Two-sided emission spectrum at detuning delta = w - w_L:

        S_c(delta) = integral dt e^{-i delta t} <x_c-(t) x_c+(0)>_ss

    evaluated through the resolvent: the positive-time branch as
    Tr[x- (i delta - L)^-1 seed] and the negative-time branch through the
    independent conjugate solve, so their sum is real up to solver roundoff
    (the reported imaginary residual).

    ``method``: 'solve' (per-point linear solves), 'eig' (one
    eigendecomposition of L), or 'auto' (eig for grids above 48 points).
    """
    detuning = np.asarray(detuning, dtype=float)
    x_plus = tset_c.weighted_plus()
    seed_p, left_p, seed_n, left_n = _correlation_seeds(x_plus, rho_ss)
    n2 = seed_p.size
    if method == "auto":
        method = "eig" if detuning.size > 48 else "solve"

    if method == "eig":
        evals, evecs = np.linalg.eig(lv.matrix)
        w_pos = (left_p @ evecs) * np.linalg.solve(evecs, seed_p)
        w_neg = (left_n @ evecs) * np.linalg.solve(evecs, seed_n)
        # the kernel mode carries no physical weight (the steady coherence
        # is subtracted); zero it so delta = 0 is not a 0/0
        kernel = np.argmin(np.abs(evals))
        w_pos[kernel] = 0.0
        w_neg[kernel] = 0.0
        raw = np.array(
            [
                np.sum(w_pos / (1j * d - evals)) + np.sum(w_neg / (-1j * d - evals))
                for d in detuning
            ]
        )
    elif method == "solve":
        # deflate the kernel with a trace-row rank-one shift: the physical
        # (trace-free) solution is unchanged and delta = 0 is nonsingular
        n = lv.dim
        trace_row = np.zeros(n2)
        trace_row[np.arange(n) * (n + 1)] = 1.0
        weight = float(np.mean(np.abs(np.diag(lv.matrix)))) or 1.0
        deflation = weight * np.outer(vec(rho_ss.astype(complex)), trace_row)
        eye = np.eye(n2)
        raw = np.empty(detuning.size, dtype=complex)
        for i, d in enumerate(detuning):
            mat = 1j * d * eye - lv.matrix + deflation
            raw[i] = left_p @ np.linalg.solve(mat, seed_p)
            mat -= 2j * d * eye
            raw[i] += left_n @ np.linalg.solve(mat, seed_n)
    else:
        raise ValueError(f"unknown spectrum method {method!r}")

    return SpectrumResult(
        detuning=detuning,
        values=np.real(raw),
        max_imag_residual=float(np.max(np.abs(np.imag(raw)))),
    )


def emission_spectrum_timedomain(
    lv: Superoperator,
    tset_c: TransitionSet,
    rho_ss: np.ndarray,
    detuning: np.ndarray,
    t_max: float,
    n_steps: int = 4000,
) -> SpectrumResult:
    """Independent route: integrate the correlation in time, then transform.

    Uses the quantum regression rule: the seeded matrix x+ rho_ss evolves
    under the same generator; the negative-time branch is the complex
    conjugate by stationarity.  Intended as an oracle; accuracy is limited
    by the time window and quadrature.
    """
    x_plus = tset_c.weighted_plus()
    seed, left, _, _ = _correlation_seeds(x_plus, rho_ss)
    t_grid = np.linspace(0.0, t_max, n_steps)
    mat = lv.matrix
    sol = solve_ivp(
        lambda _t, y: mat @ y,
        (0.0, float(t_max)),
        seed,
        t_eval=t_grid,
        method="DOP853",
        rtol=1e-10,
        atol=1e-13,
    )
    if not sol.success:
        raise RuntimeError(f"correlation evolution failed: {sol.message}")
    corr = left @ sol.y  # <x-(t) x+(0)> - <x-><x+>, t >= 0
    phases = np.exp(-1j * np.outer(detuning, t_grid))
    one_sided = np.trapezoid(phases * corr[None, :], t_grid, axis=1)
    raw = one_sided + one_sided.conj()
    return SpectrumResult(
        detuning=np.asarray(detuning, dtype=float),
        values=np.real(raw),
        max_imag_residual=float(np.max(np.abs(np.imag(raw)))),
    )


@dataclass(frozen=True)
class PopulationsResult:
    """Mean dressed-operator occupations n_i = <x_i- x_i+>."""

    n_c: float
    n_x: float
    n_m: float


def populations(
    rho_ss: np.ndarray,
    tset_c: TransitionSet,
    tset_x: TransitionSet,
    tset_m: TransitionSet,
) -> PopulationsResult:
    def occ(tset: TransitionSet) -> float:
        plus = tset.weighted_plus()
        return float(np.real(np.trace(plus.conj().T @ plus @ rho_ss)))

    return PopulationsResult(n_c=occ(tset_c), n_x=occ(tset_x), n_m=occ(tset_m))


def detuning_sweep(
    make_generator,
    omega_laser_grid: np.ndarray,
    tset_c: TransitionSet,
    tset_x: TransitionSet,
    tset_m: TransitionSet,
    workers: int = 1,
) -> tuple[list[PopulationsResult | None], list[tuple[int, str]]]:
    """Steady-state populations per laser frequency.

    ``make_generator(omega_laser)`` must return the full generator for that
    point.  Points are independent and run on a thread pool when
    ``workers > 1`` (LAPACK releases the GIL); output order always follows
    the grid.  Failed points are reported as (index, message) and leave a
    None in the results; the sweep continues.
    """

    def solve_point(wl: float) -> PopulationsResult:
        rho = steady_state(make_generator(wl))
        return populations(rho, tset_c, tset_x, tset_m)

    grid = [float(w) for w in omega_laser_grid]
    results: list[PopulationsResult | None] = [None] * len(grid)
    failures: list[tuple[int, str]] = []
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(solve_point, wl) for wl in grid]
        for i, fut in enumerate(futures):
            try:
                results[i] = fut.result()
            except (SteadyStateError, RuntimeError) as exc:
                failures.append((i, str(exc)))
    else:
        for i, wl in enumerate(grid):
            try:
                results[i] = solve_point(wl)
            except (SteadyStateError, RuntimeError) as exc:
                failures.append((i, str(exc)))
    return results, failures
