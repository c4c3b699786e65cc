"""Bath spectral functions, frequency-resolved rates, and thermal occupations.

Cavity and vibrational reservoirs are Ohmic: J(w) = Gamma w / (2 pi w_ref),
giving decay rates Gamma(w) = gamma w / w_ref and a temperature-linear pure
dephasing channel Gamma'(T) = gamma k_B T / w_ref.  The exciton couples to a
pure-dephasing bath with a Gaussian-cutoff spectral function
J_phi(w) = eta w exp(-w^2 / w_cut^2); its up/down rates obey detailed balance
by construction.
"""

import math
from dataclasses import dataclass

# Boltzmann constant in meV per Kelvin.
KB_MEV_PER_K = 0.0861733


def thermal_energy(temperature: float) -> float:
    """k_B T in meV."""
    if temperature < 0:
        raise ValueError("temperature must be >= 0 K")
    return KB_MEV_PER_K * temperature


def bose_occupation(omega: float, temperature: float) -> float:
    """Thermal occupation 1 / (exp(w / k_B T) - 1); 0 at T = 0."""
    if omega <= 0:
        raise ValueError(f"bose_occupation needs omega > 0, got {omega}")
    if temperature == 0:
        return 0.0
    x = omega / thermal_energy(temperature)
    if x > 700:  # exp overflow; occupation is numerically zero anyway
        return 0.0
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class OhmicBath:
    """Ohmic reservoir pinned by its rate at a reference frequency (both meV)."""

    gamma: float  # Gamma(omega_ref)
    omega_ref: float

    def __post_init__(self):
        if self.omega_ref <= 0:
            raise ValueError("reference frequency must be > 0")
        if self.gamma < 0:
            raise ValueError("reference rate must be >= 0")


def ohmic_rate(bath: OhmicBath, omega: float) -> float:
    """Gamma(w) = gamma w / w_ref, exactly linear in w."""
    if omega < 0:
        raise ValueError("ohmic_rate takes omega >= 0")
    return bath.gamma * omega / bath.omega_ref


def ohmic_pure_dephasing(bath: OhmicBath, temperature: float) -> float:
    """Zero-frequency (diagonal) channel rate Gamma'(T) = gamma k_B T / w_ref."""
    return bath.gamma * thermal_energy(temperature) / bath.omega_ref


@dataclass(frozen=True)
class DephasingBath:
    """Gaussian-cutoff dephasing reservoir for the exciton projector."""

    eta: float  # dimensionless coupling
    omega_cut: float  # meV

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError("eta must be >= 0")
        if self.omega_cut <= 0:
            raise ValueError("omega_cut must be > 0")


def dephasing_spectral_density(bath: DephasingBath, omega: float) -> float:
    """J_phi(w) = eta w exp(-w^2 / w_cut^2) for w >= 0."""
    if omega < 0:
        raise ValueError("spectral density defined for omega >= 0")
    return bath.eta * omega * math.exp(-((omega / bath.omega_cut) ** 2))


def calibrate_eta(gamma_phi_target: float, t_cal: float) -> float:
    """Coupling eta reproducing Gamma_phi(0) = gamma_phi_target at T = t_cal.

    The zero-frequency limit of 2 pi J_phi(w) nbar(w) is 2 pi eta k_B T.
    """
    if gamma_phi_target < 0:
        raise ValueError("target dephasing rate must be >= 0")
    if t_cal <= 0:
        raise ValueError("calibration temperature must be > 0")
    return gamma_phi_target / (2.0 * math.pi * thermal_energy(t_cal))


def dephasing_rates(bath: DephasingBath, omega: float, temperature: float) -> float:
    """Up/down dephasing-bath rate at signed transition frequency (meV).

    omega > 0: downward rate 2 pi J(w) (1 + nbar(w));
    omega < 0: upward rate 2 pi J(-w) nbar(-w);
    omega = 0: the limit value Gamma_phi(0) = 2 pi eta k_B T.
    """
    if omega == 0:
        return 2.0 * math.pi * bath.eta * thermal_energy(temperature)
    w = abs(omega)
    j = dephasing_spectral_density(bath, w)
    n = bose_occupation(w, temperature)
    if omega > 0:
        return 2.0 * math.pi * j * (1.0 + n)
    return 2.0 * math.pi * j * n


@dataclass(frozen=True)
class BathParams:
    """Dissipation inputs: rates in meV, temperatures in Kelvin.

    kappa is the cavity energy decay rate (kappa = 2 gamma_c); gamma_phi is
    the exciton pure-dephasing rate at the calibration temperature t_cal and
    scales linearly with the operating temperature.
    """

    kappa: float
    gamma_m: float
    gamma_phi: float
    omega_cut: float
    temperature: float
    t_cal: float = 300.0

    def __post_init__(self):
        if min(self.kappa, self.gamma_m, self.gamma_phi) < 0:
            raise ValueError("rates must be >= 0")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0 K")
        if self.omega_cut <= 0 or self.t_cal <= 0:
            raise ValueError("omega_cut and t_cal must be > 0")

    def cavity_bath(self, omega_c: float) -> OhmicBath:
        # kappa is the full-linewidth energy decay rate; the Ohmic reference
        # rate matching the kappa/2 Lindblad prefactor is gamma_c = kappa/2.
        return OhmicBath(gamma=self.kappa / 2.0, omega_ref=omega_c)

    def vib_bath(self, omega_m: float) -> OhmicBath:
        return OhmicBath(gamma=self.gamma_m, omega_ref=omega_m)

    def dephasing_bath(self) -> DephasingBath:
        return DephasingBath(
            eta=calibrate_eta(self.gamma_phi, self.t_cal), omega_cut=self.omega_cut
        )

    def gamma_phi_at_temperature(self) -> float:
        """Pure dephasing rate at the operating temperature (linear in T)."""
        return self.gamma_phi * self.temperature / self.t_cal
