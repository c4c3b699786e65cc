"""System Hamiltonians, pump term, and analytic polaron-frame cross-checks.

Two models are built here:

* the hybrid cavity-exciton-vibration Hamiltonian (lab frame, meV)
      H_s = w_c a^dag a + w_x s+s- + w_m b^dag b
            + d0 w_m s+s- (b^dag + b) + g (s+ a + a^dag s-),
  which conserves N_exc = a^dag a + s+s-;
* the standard optomechanical Hamiltonian on the photon (x) phonon space
      H = w_c a^dag a + w_m b^dag b - g_om a^dag a (b^dag + b),
  whose exact eigenstructure (displaced-oscillator manifolds) serves as
  an analytic oracle for the numerics.

Polaron-transformed forms are provided as spectral-equivalence checks.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    SLOT_EXCITON,
    SLOT_PHONON,
    HilbertDims,
    displacement,
    embed,
    exciton_lower,
    fock_annihilator,
    fock_number,
    photon_annihilator,
    sigma_minus,
    sigma_plus,
    vib_annihilator,
)


@dataclass(frozen=True)
class SystemParams:
    """Energies and couplings of the hybrid system, all in meV."""

    omega_c: float  # cavity frequency
    omega_x: float  # exciton frequency
    omega_m: float  # vibrational frequency
    g: float  # cavity-exciton coupling
    d0: float  # dimensionless vibrational displacement
    rabi: float = 0.0  # CW pump amplitude Omega
    omega_laser: float = 0.0  # laser frequency

    def __post_init__(self):
        for name in ("omega_c", "omega_x", "omega_m"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.g < 0 or self.d0 < 0 or self.rabi < 0:
            raise ValueError("g, d0 and rabi must be >= 0")
        if self.g / self.omega_c >= 0.2:
            warnings.warn(
                f"g/omega_c = {self.g / self.omega_c:.2f} >= 0.2: counter-rotating "
                "cavity-exciton terms are excluded by construction and the model "
                "is unreliable here",
                stacklevel=2,
            )

    @property
    def polaron_shift(self) -> float:
        return polaron_shift(self.d0, self.omega_m)


@dataclass(frozen=True)
class OptomechParams:
    """Standard optomechanics parameters (photon (x) phonon space), meV."""

    omega_c: float
    omega_m: float
    g_om: float

    def __post_init__(self):
        if self.omega_c <= 0 or self.omega_m <= 0:
            raise ValueError("frequencies must be > 0")
        if self.omega_m / self.omega_c > 0.2:
            warnings.warn(
                f"omega_m/omega_c = {self.omega_m / self.omega_c:.2f} > 0.2: "
                "neglect of photon-pair (dynamical Casimir) terms is questionable",
                stacklevel=2,
            )


def polaron_shift(d0: float, omega_m: float) -> float:
    """Polaron shift Delta_P = d0^2 w_m (meV)."""
    return d0 * d0 * omega_m


def excitation_number(dims: HilbertDims) -> np.ndarray:
    """N_exc = a^dag a + s+ s-; diagonal and integer in the bare product basis."""
    return embed(fock_number(dims.n_ph), 1, dims) + embed(
        np.diag([0.0, 1.0]).astype(complex), SLOT_EXCITON, dims
    )


def build_system_hamiltonian(p: SystemParams, dims: HilbertDims) -> np.ndarray:
    a = photon_annihilator(dims)
    b = vib_annihilator(dims)
    sm = exciton_lower(dims)
    sp = sm.conj().T
    proj_e = sp @ sm
    h = (
        p.omega_c * (a.conj().T @ a)
        + p.omega_x * proj_e
        + p.omega_m * (b.conj().T @ b)
        + p.d0 * p.omega_m * proj_e @ (b.conj().T + b)
        + p.g * (sp @ a + a.conj().T @ sm)
    )
    return h


def pump_hamiltonian_bare(rabi: float, dims: HilbertDims) -> np.ndarray:
    """Coherent cavity drive Omega (a + a^dag) in the full space."""
    if rabi < 0:
        raise ValueError("pump amplitude must be >= 0")
    a = photon_annihilator(dims)
    return rabi * (a + a.conj().T)


def _optomech_ops(n_ph: int, n_vib: int):
    a = np.kron(fock_annihilator(n_ph), np.eye(n_vib, dtype=complex))
    b = np.kron(np.eye(n_ph, dtype=complex), fock_annihilator(n_vib))
    return a, b


def build_optomech_hamiltonian(
    p: OptomechParams, n_ph: int, n_vib: int, sign: int = -1
) -> np.ndarray:
    """Optomechanical Hamiltonian on photon (x) phonon, coupling sign configurable.

    The spectrum is invariant under sign flip (b -> -b basis redefinition).
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be +-1")
    a, b = _optomech_ops(n_ph, n_vib)
    return (
        p.omega_c * (a.conj().T @ a)
        + p.omega_m * (b.conj().T @ b)
        + sign * p.g_om * (a.conj().T @ a) @ (b.conj().T + b)
    )


def analytic_optomech_eigs(n: int, k: int, p: OptomechParams) -> float:
    """Exact eigenenergy n w_c + k w_m - n^2 g_om^2 / w_m of the optomech model."""
    if n < 0 or k < 0:
        raise ValueError("quantum numbers must be >= 0")
    return n * p.omega_c + k * p.omega_m - n * n * p.g_om**2 / p.omega_m


def analytic_optomech_state(
    n: int, k: int, p: OptomechParams, n_ph: int, n_vib: int
) -> np.ndarray:
    """Exact eigenvector of the (-g_om) optomech Hamiltonian: displaced |n, k>.

    The phonon factor is exp[(g_om n / w_m)(b^dag - b)] |k>, i.e. the phonon
    displaced oppositely to the photon-number-conditioned shift of the well.
    """
    if not (0 <= n < n_ph and 0 <= k < n_vib):
        raise ValueError("quantum numbers outside the cutoffs")
    lam = p.g_om * n / p.omega_m
    phot = np.zeros(n_ph, dtype=complex)
    phot[n] = 1.0
    phon = np.zeros(n_vib, dtype=complex)
    phon[k] = 1.0
    return np.kron(phot, displacement(lam, n_vib) @ phon)


def polaron_transform_offres(p: OptomechParams, n_ph: int, n_vib: int) -> np.ndarray:
    """Polaron frame of the optomech model: Kerr form, spectrally equivalent.

    (w_c - Delta_P) a^dag a + w_m b^dag b - Delta_P a^dag a^dag a a.
    """
    a, b = _optomech_ops(n_ph, n_vib)
    shift = p.g_om**2 / p.omega_m
    num = a.conj().T @ a
    return (
        (p.omega_c - shift) * num
        + p.omega_m * (b.conj().T @ b)
        - shift * (a.conj().T @ a.conj().T @ a @ a)
    )


def polaron_transform_onres(p: SystemParams, dims: HilbertDims) -> np.ndarray:
    """Polaron frame of the hybrid Hamiltonian; spectrum equals the lab frame.

    H~ = w_c a^dag a + w_m b^dag b + (w_x - Delta_P) s+s-
         + g (s+ a X + a^dag X^dag s-),   X = exp[d0 (b - b^dag)].
    """
    a = photon_annihilator(dims)
    b_loc = fock_annihilator(dims.n_vib)
    x_loc = displacement(-p.d0, dims.n_vib)  # exp[d0 (b - b^dag)]
    x_full = embed(x_loc, SLOT_PHONON, dims)
    b = vib_annihilator(dims)
    sm = exciton_lower(dims)
    sp = sm.conj().T
    h = (
        p.omega_c * (a.conj().T @ a)
        + p.omega_m * (b.conj().T @ b)
        + (p.omega_x - p.polaron_shift) * (sp @ sm)
        + p.g * (sp @ a @ x_full + a.conj().T @ x_full.conj().T @ sm)
    )
    return h
