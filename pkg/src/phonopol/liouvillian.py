"""Master-equation generators as superoperators on vectorized density matrices.

Vectorization is column-stacking: vec(rho) = rho.reshape(-1, order='F'),
so vec(A rho B) = (B^T kron A) vec(rho).  Generators act on the retained
dressed subspace (N levels -> N^2 vectors) and are stored dense.

Two master-equation kinds are assembled:

* SME: bare-operator Lindblad dissipators (cavity decay, vibrational decay
  and heating, exciton pure dephasing) with flat rates, projected into the
  dressed subspace;
* GME: non-secular dressed dissipators with frequency-resolved bath rates.
  For each bath operator O the double sum over transition pairs (w, w')
  factorizes into products of a rate-weighted and an unweighted lowering
  part, so assembly needs only a handful of N x N matrices.  Terms
  oscillating at +-(w + w') (x+x+ / x-x- products) are never generated.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .baths import (
    BathParams,
    DephasingBath,
    OhmicBath,
    bose_occupation,
    dephasing_rates,
    ohmic_pure_dephasing,
    ohmic_rate,
)
from .dressed import DressedBasis, TransitionSet
from .model import SystemParams


class MasterEquationKind(enum.Enum):
    SME = "sme"
    GME = "gme"


@dataclass(frozen=True)
class Superoperator:
    """Dense linear map on column-stacked density matrices."""

    matrix: np.ndarray  # (N^2, N^2) complex

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        n = self.dim
        return (self.matrix @ rho.reshape(-1, order="F")).reshape((n, n), order="F")

    def __add__(self, other: "Superoperator") -> "Superoperator":
        return Superoperator(self.matrix + other.matrix)


def vec(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    n = int(round(np.sqrt(v.size)))
    return v.reshape((n, n), order="F")


def spre(a: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(a.shape[0]), a)


def spost(b: np.ndarray) -> np.ndarray:
    return np.kron(b.T, np.eye(b.shape[0]))


def sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> a rho b."""
    return np.kron(b.T, a)


def hamiltonian_superop(h: np.ndarray) -> Superoperator:
    """-i [H, .] as a superoperator."""
    return Superoperator(-1j * (spre(h) - spost(h)))


def lindblad_dissipator(op: np.ndarray) -> Superoperator:
    """D[O] rho = O rho O^dag - (1/2){O^dag O, rho}; trace-annihilating."""
    if op.shape[0] != op.shape[1]:
        raise ValueError("jump operator must be square")
    od_o = op.conj().T @ op
    return Superoperator(
        sandwich(op, op.conj().T) - 0.5 * spre(od_o) - 0.5 * spost(od_o)
    )


def _add_sandwich(out, a, b, coeff):
    """out += coeff * superop(rho -> a rho b), one temporary at a time."""
    tmp = np.kron(b.T, a)
    tmp *= coeff
    out += tmp


def _add_spre(out, a, coeff):
    _add_sandwich(out, a, np.eye(a.shape[0]), coeff)


def _add_spost(out, b, coeff):
    _add_sandwich(out, np.eye(b.shape[0]), b, coeff)


def _nonsecular_dissipator(
    tset: TransitionSet,
    down_rate,
    up_rate,
    diag_rate: float,
    out: np.ndarray,
) -> None:
    """Shared non-secular structure for Ohmic and dephasing baths.

    down_rate(w) weights emission terms, up_rate(w) absorption terms, and
    diag_rate the zero-frequency x0 channel.  The global 1/2 prefactor of
    the dressed dissipator is applied here.  Accumulates into ``out``
    (superoperators at desk scale are large; temporaries are kept to one).
    """
    b_plus = tset.weighted_plus()  # unweighted x+ = sum_w x+(w)
    a_plus = tset.weighted_plus(down_rate)
    c_plus = tset.weighted_plus(up_rate)
    b_minus = b_plus.conj().T
    a_minus = a_plus.conj().T
    c_minus = c_plus.conj().T

    # emission, rate at w:    x+(w) rho x-(w') - x-(w') x+(w) rho
    _add_sandwich(out, a_plus, b_minus, 0.5)
    _add_spre(out, b_minus @ a_plus, -0.5)
    # emission, rate at w':   x+(w) rho x-(w') - rho x-(w') x+(w)
    _add_sandwich(out, b_plus, a_minus, 0.5)
    _add_spost(out, a_minus @ b_plus, -0.5)
    # absorption, rate at w:  x-(w') rho x+(w) - rho x+(w) x-(w')
    _add_sandwich(out, b_minus, c_plus, 0.5)
    _add_spost(out, c_plus @ b_minus, -0.5)
    # absorption, rate at w': x-(w') rho x+(w) - x+(w) x-(w') rho
    _add_sandwich(out, c_minus, b_plus, 0.5)
    _add_spre(out, b_plus @ c_minus, -0.5)
    # zero-frequency (diagonal / degenerate) channel
    x0 = tset.x0
    _add_sandwich(out, x0, x0, diag_rate)
    _add_spre(out, x0 @ x0, -0.5 * diag_rate)
    _add_spost(out, x0 @ x0, -0.5 * diag_rate)


def gme_dissipator(
    tset: TransitionSet,
    bath: OhmicBath,
    temperature: float,
    out: np.ndarray | None = None,
) -> Superoperator:
    """Non-secular dressed dissipator for one Ohmic bath channel."""

    def down(w):
        return ohmic_rate(bath, w) * (1.0 + bose_occupation(w, temperature))

    def up(w):
        return ohmic_rate(bath, w) * bose_occupation(w, temperature)

    if out is None:
        n2 = tset.size**2
        out = np.zeros((n2, n2), dtype=complex)
    _nonsecular_dissipator(
        tset, down, up, ohmic_pure_dephasing(bath, temperature), out
    )
    return Superoperator(out)


def dephasing_dissipator(
    tset: TransitionSet,
    bath: DephasingBath,
    temperature: float,
    out: np.ndarray | None = None,
) -> Superoperator:
    """Non-secular dressed dissipator for the exciton dephasing bath."""

    def down(w):
        return dephasing_rates(bath, w, temperature)

    def up(w):
        return dephasing_rates(bath, -w, temperature)

    if out is None:
        n2 = tset.size**2
        out = np.zeros((n2, n2), dtype=complex)
    _nonsecular_dissipator(
        tset, down, up, dephasing_rates(bath, 0.0, temperature), out
    )
    return Superoperator(out)


def rotating_frame(basis: DressedBasis, omega_laser: float) -> np.ndarray:
    """Dressed Hamiltonian diag(E_j - w_L n_exc,j) in the laser frame.

    Valid because the excitation number commutes with the system
    Hamiltonian; requires integer excitation numbers.
    """
    if np.max(np.abs(basis.n_exc - np.rint(basis.n_exc))) > 1e-8:
        raise ValueError("non-integer excitation numbers: rotating frame invalid")
    return np.diag(basis.energies - omega_laser * np.rint(basis.n_exc)).astype(complex)


def pump_dressed(rabi: float, tset_c: TransitionSet) -> np.ndarray:
    """Pump Omega (x_c+ + x_c-) in the dressed basis, time-independent."""
    if rabi < 0:
        raise ValueError("pump amplitude must be >= 0")
    plus = tset_c.weighted_plus()
    return rabi * (plus + plus.conj().T)


@dataclass(frozen=True)
class DressedModel:
    """Retained dressed basis plus the transition sets of all bath operators
    and the projected bare jump operators needed by the SME path."""

    basis: DressedBasis
    tset_c: TransitionSet  # O_c = a + a^dag
    tset_m: TransitionSet  # O_m = b + b^dag
    tset_x: TransitionSet  # O_x = s+ s-
    a_proj: np.ndarray
    b_proj: np.ndarray
    proj_e: np.ndarray  # projected s+ s-


def build_dressed_model(
    params: SystemParams, dims, n_levels: int
) -> DressedModel:
    """Diagonalize the system Hamiltonian and precompute every dressed object
    the generators need (transition sets, projected jump operators)."""
    from . import hilbert, model as model_mod
    from .dressed import diagonalize_truncate, transition_decomposition

    h = model_mod.build_system_hamiltonian(params, dims)
    n_exc_diag = np.diag(model_mod.excitation_number(dims))
    basis = diagonalize_truncate(h, n_exc_diag, n_levels)

    a = hilbert.photon_annihilator(dims)
    b = hilbert.vib_annihilator(dims)
    sm = hilbert.exciton_lower(dims)
    proj_e = sm.conj().T @ sm
    return DressedModel(
        basis=basis,
        tset_c=transition_decomposition(basis, a + a.conj().T, label="c"),
        tset_m=transition_decomposition(basis, b + b.conj().T, label="m"),
        tset_x=transition_decomposition(basis, proj_e, label="x"),
        a_proj=basis.project(a),
        b_proj=basis.project(b),
        proj_e=basis.project(proj_e),
    )


def sme_dissipator(
    model: DressedModel, params: SystemParams, bath_params: BathParams
) -> Superoperator:
    """Bare-operator Lindblad dissipators, projected to the dressed subspace.

    Prefactors follow the flat-rate master equation: (kappa/2) D[a],
    (gamma_phi/2) D[s+s-], (gamma_m (1+nbar)/2) D[b], (gamma_m nbar/2) D[b^dag],
    with gamma_phi evaluated at the operating temperature.
    """
    nbar_m = bose_occupation(params.omega_m, bath_params.temperature)
    gamma_phi = bath_params.gamma_phi_at_temperature()
    a = model.a_proj
    b = model.b_proj
    n2 = a.shape[0] ** 2
    out = np.zeros((n2, n2), dtype=complex)

    def add_lindblad(op, coeff):
        od_o = op.conj().T @ op
        _add_sandwich(out, op, op.conj().T, coeff)
        _add_spre(out, od_o, -0.5 * coeff)
        _add_spost(out, od_o, -0.5 * coeff)

    add_lindblad(a, 0.5 * bath_params.kappa)
    add_lindblad(model.proj_e, 0.5 * gamma_phi)
    add_lindblad(b, 0.5 * bath_params.gamma_m * (1.0 + nbar_m))
    add_lindblad(b.conj().T, 0.5 * bath_params.gamma_m * nbar_m)
    return Superoperator(out)


def dissipator(
    kind: MasterEquationKind,
    model: DressedModel,
    params: SystemParams,
    bath_params: BathParams,
) -> Superoperator:
    """Laser-frequency-independent dissipative part of the generator."""
    if kind is MasterEquationKind.SME:
        return sme_dissipator(model, params, bath_params)
    temp = bath_params.temperature
    n2 = model.basis.size**2
    out = np.zeros((n2, n2), dtype=complex)
    gme_dissipator(
        model.tset_c, bath_params.cavity_bath(params.omega_c), temp, out=out
    )
    gme_dissipator(model.tset_m, bath_params.vib_bath(params.omega_m), temp, out=out)
    dephasing_dissipator(model.tset_x, bath_params.dephasing_bath(), temp, out=out)
    return Superoperator(out)


def full_liouvillian(
    kind: MasterEquationKind,
    model: DressedModel,
    params: SystemParams,
    bath_params: BathParams,
    dissipative: Superoperator | None = None,
    omega_laser: float | None = None,
) -> Superoperator:
    """Complete generator in the rotating frame at the laser frequency.

    ``dissipative`` may be passed to reuse a cached dissipator across a
    laser-frequency sweep (the rates are lab-frame and do not change).
    """
    if omega_laser is None:
        omega_laser = params.omega_laser
    if dissipative is None:
        dissipative = dissipator(kind, model, params, bath_params)
    h = rotating_frame(model.basis, omega_laser) + pump_dressed(
        params.rabi, model.tset_c
    )
    out = dissipative.matrix.copy()
    _add_sandwich(out, -1j * h, np.eye(h.shape[0]), 1.0)
    _add_sandwich(out, np.eye(h.shape[0]), 1j * h, 1.0)
    return Superoperator(out)
