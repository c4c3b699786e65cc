"""Dressed-state basis: blockwise diagonalization, truncation, and the
decomposition of system coupling operators into positive-frequency
transition operators x+(w), x-(w) and a zero-frequency part x0.

The hybrid Hamiltonian conserves N_exc = a^dag a + s+s-, which is diagonal
in the bare product basis; diagonalization is done per N_exc sector so that
every retained eigenstate carries an exactly integer excitation number.
"""

from dataclasses import dataclass, field

import numpy as np

from .hilbert import hermiticity_defect

# Transition frequencies below this are treated as degenerate and routed to
# the zero-frequency channel.
OMEGA_DEGENERATE = 1e-9

# Matrix elements below this fraction of the largest element are pruned.
ELEMENT_PRUNE_REL = 1e-12


@dataclass(frozen=True)
class DressedBasis:
    """Truncated eigendecomposition of the system Hamiltonian.

    energies ascending (meV); vectors are orthonormal columns in the bare
    product basis; n_exc holds the per-state excitation number (integers up
    to roundoff).
    """

    energies: np.ndarray  # (N,)
    vectors: np.ndarray  # (dim, N)
    n_exc: np.ndarray  # (N,)

    @property
    def size(self) -> int:
        return self.energies.size

    @property
    def dim_full(self) -> int:
        return self.vectors.shape[0]

    def project(self, op: np.ndarray) -> np.ndarray:
        """Operator in the retained dressed subspace: V^dag O V."""
        return self.vectors.conj().T @ op @ self.vectors


def diagonalize_truncate(
    h: np.ndarray,
    n_exc_diag: np.ndarray,
    n_levels: int,
    hermitian_tol: float = 1e-9,
) -> DressedBasis:
    """Lowest ``n_levels`` eigenpairs of h, solved per excitation sector.

    ``n_exc_diag`` is the (integer-valued) diagonal of the conserved
    excitation-number operator in the bare basis.  Ties in energy are broken
    by ascending excitation number.
    """
    defect = hermiticity_defect(h)
    if defect > hermitian_tol:
        raise ValueError(f"Hamiltonian is not Hermitian (defect {defect:.2e})")
    dim = h.shape[0]
    if not 1 <= n_levels <= dim:
        raise ValueError(f"need 1 <= n_levels <= {dim}, got {n_levels}")

    sector_labels = np.rint(np.real(n_exc_diag)).astype(int)
    if np.max(np.abs(np.real(n_exc_diag) - sector_labels)) > 1e-8:
        raise ValueError("excitation-number diagonal is not integer-valued")

    energies = []
    n_excs = []
    vectors = []
    for sector in np.unique(sector_labels):
        idx = np.flatnonzero(sector_labels == sector)
        block = h[np.ix_(idx, idx)]
        vals, vecs = np.linalg.eigh(block)
        full = np.zeros((dim, idx.size), dtype=complex)
        full[idx, :] = vecs
        energies.append(vals)
        vectors.append(full)
        n_excs.append(np.full(idx.size, sector, dtype=float))
    energies = np.concatenate(energies)
    n_excs = np.concatenate(n_excs)
    vectors = np.hstack(vectors)

    order = np.lexsort((n_excs, energies))[:n_levels]
    return DressedBasis(
        energies=energies[order], vectors=vectors[:, order], n_exc=n_excs[order]
    )


@dataclass(frozen=True)
class TransitionSet:
    """Positive-frequency transition content of one system operator.

    Arrays are aligned: transition t lowers dressed state ``upper[t]`` to
    ``lower[t]`` at frequency ``omega[t] = E_upper - E_lower > 0`` with bare
    matrix element ``element[t] = <lower| O |upper>``.  ``x0`` collects the
    diagonal plus any degenerate (|w| < OMEGA_DEGENERATE) pairs.
    """

    label: str
    size: int  # retained dressed levels
    lower: np.ndarray  # (M,) int
    upper: np.ndarray  # (M,) int
    omega: np.ndarray  # (M,) float, > 0
    element: np.ndarray  # (M,) complex
    x0: np.ndarray = field(repr=False)  # (N, N) Hermitian

    def weighted_plus(self, rate_of_omega=None) -> np.ndarray:
        """Sum over transitions of rate(w) <l|O|u> |l><u| as an N x N matrix.

        With ``rate_of_omega=None`` the weights are 1, giving the total
        lowering part x+ = sum_w x+(w).
        """
        m = np.zeros((self.size, self.size), dtype=complex)
        if rate_of_omega is None:
            weights = np.ones_like(self.omega)
        else:
            weights = np.array([rate_of_omega(w) for w in self.omega])
        np.add.at(m, (self.lower, self.upper), weights * self.element)
        return m

    def reconstruct(self) -> np.ndarray:
        """x+ + x- + x0; equals the projected operator up to pruning."""
        plus = self.weighted_plus()
        return plus + plus.conj().T + self.x0


def transition_decomposition(
    basis: DressedBasis,
    op: np.ndarray,
    prune_rel: float = ELEMENT_PRUNE_REL,
    omega_degenerate: float = OMEGA_DEGENERATE,
    label: str = "",
) -> TransitionSet:
    """Decompose a bare-basis operator over the retained dressed levels."""
    od = basis.project(op)
    n = basis.size
    scale = float(np.max(np.abs(od))) if od.size else 0.0
    threshold = prune_rel * scale

    omega_jk = basis.energies[None, :] - basis.energies[:, None]  # E_k - E_j
    strict_upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    degenerate = strict_upper & (np.abs(omega_jk) < omega_degenerate)
    listed = strict_upper & ~degenerate & (np.abs(od) > threshold)

    j_idx, k_idx = np.nonzero(listed)
    x0 = np.diag(np.diag(od)).astype(complex)
    dj, dk = np.nonzero(degenerate)
    x0[dj, dk] = od[dj, dk]
    x0[dk, dj] = od[dk, dj]

    return TransitionSet(
        label=label,
        size=n,
        lower=j_idx,
        upper=k_idx,
        omega=omega_jk[j_idx, k_idx],
        element=od[j_idx, k_idx],
        x0=x0,
    )


def truncation_leak(rho: np.ndarray, n_guard: int) -> float:
    """Total population in the top ``n_guard`` retained dressed levels."""
    if n_guard < 1:
        raise ValueError("guard band must contain at least one level")
    pops = np.real(np.diag(rho))
    return float(np.sum(pops[-n_guard:]))
