"""Finite-dimensional operator algebra on the exciton (x) photon (x) phonon space.

Operators are plain dense complex ``numpy`` arrays.  The tensor order is
fixed as exciton (2) x photon (n_ph) x phonon (n_vib); the global index of
the bare product state |s, n, k> is ``(s * n_ph + n) * n_vib + k``.
Two-level basis order: index 0 = ground, index 1 = excited.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

# Tensor slot positions in the fixed ordering.
SLOT_EXCITON = 0
SLOT_PHOTON = 1
SLOT_PHONON = 2


@dataclass(frozen=True)
class HilbertDims:
    """Fock cutoffs of the truncated product space (total dim = 2 * n_ph * n_vib)."""

    n_ph: int
    n_vib: int

    def __post_init__(self):
        if self.n_ph < 2:
            raise ValueError(f"photon cutoff must be >= 2, got {self.n_ph}")
        if self.n_vib < 2:
            raise ValueError(f"phonon cutoff must be >= 2, got {self.n_vib}")

    @property
    def slot_dims(self) -> tuple[int, int, int]:
        return (2, self.n_ph, self.n_vib)

    @property
    def dim(self) -> int:
        return 2 * self.n_ph * self.n_vib


def fock_annihilator(n: int) -> np.ndarray:
    """Lowering operator on an n-level Fock space; entry (k-1, k) = sqrt(k)."""
    if n < 2:
        raise ValueError(f"Fock cutoff must be >= 2, got {n}")
    a = np.zeros((n, n), dtype=complex)
    ks = np.arange(1, n)
    a[ks - 1, ks] = np.sqrt(ks)
    return a


def fock_number(n: int) -> np.ndarray:
    return np.diag(np.arange(n, dtype=complex))


def sigma_minus() -> np.ndarray:
    """|g><e| on the two-level space (0 = ground, 1 = excited)."""
    s = np.zeros((2, 2), dtype=complex)
    s[0, 1] = 1.0
    return s


def sigma_plus() -> np.ndarray:
    return sigma_minus().conj().T


def embed(local: np.ndarray, slot: int, dims: HilbertDims) -> np.ndarray:
    """Embed a single-slot operator into the full product space.

    Identity acts on all other slots; result has dimension ``dims.dim``.
    """
    slot_dims = dims.slot_dims
    if not (0 <= slot < len(slot_dims)):
        raise ValueError(f"slot must be in 0..2, got {slot}")
    d = slot_dims[slot]
    if local.shape != (d, d):
        raise ValueError(
            f"operator shape {local.shape} does not match slot {slot} dimension {d}"
        )
    out = np.eye(1, dtype=complex)
    for pos, dp in enumerate(slot_dims):
        factor = local if pos == slot else np.eye(dp, dtype=complex)
        out = np.kron(out, factor)
    return out


def photon_annihilator(dims: HilbertDims) -> np.ndarray:
    return embed(fock_annihilator(dims.n_ph), SLOT_PHOTON, dims)


def vib_annihilator(dims: HilbertDims) -> np.ndarray:
    return embed(fock_annihilator(dims.n_vib), SLOT_PHONON, dims)


def exciton_lower(dims: HilbertDims) -> np.ndarray:
    return embed(sigma_minus(), SLOT_EXCITON, dims)


def displacement(lam: float, n: int) -> np.ndarray:
    """D(lam) = exp[lam (b^dag - b)] on an n-level Fock space.

    Unitary up to truncation error; caller should keep |lam|^2 << n.
    """
    b = fock_annihilator(n)
    return expm(lam * (b.conj().T - b))


def hermiticity_defect(op: np.ndarray) -> float:
    return float(np.max(np.abs(op - op.conj().T)))


def is_hermitian(op: np.ndarray, tol: float = 1e-12) -> bool:
    return hermiticity_defect(op) < tol


def unitarity_defect(op: np.ndarray) -> float:
    """Max-norm deviation of op^dag op from the identity (truncation quality)."""
    return float(np.max(np.abs(op.conj().T @ op - np.eye(op.shape[0]))))


def basis_state(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def product_index(s: int, n: int, k: int, dims: HilbertDims) -> int:
    """Global index of the bare product state |s, n, k>."""
    if not (0 <= s < 2 and 0 <= n < dims.n_ph and 0 <= k < dims.n_vib):
        raise ValueError(f"state ({s},{n},{k}) outside cutoffs {dims}")
    return (s * dims.n_ph + n) * dims.n_vib + k
