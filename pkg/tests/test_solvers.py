"""Steady states, propagation, spectra, and sweeps against analytic oracles."""

import numpy as np
import pytest
import scipy.linalg as sla

from conftest import random_density_matrix
from phonopol.baths import BathParams
from phonopol.hilbert import HilbertDims, fock_annihilator
from phonopol.liouvillian import (
    MasterEquationKind,
    Superoperator,
    build_dressed_model,
    full_liouvillian,
    hamiltonian_superop,
    lindblad_dissipator,
    vec,
)
from phonopol.model import SystemParams
from phonopol.solvers import (
    SteadyStateError,
    detuning_sweep,
    emission_spectrum,
    emission_spectrum_timedomain,
    kernel_dimension,
    populations,
    steady_state,
    time_evolve,
)

DIMS = HilbertDims(n_ph=2, n_vib=4)
PARAMS = SystemParams(
    omega_c=1700.0,
    omega_x=1700.0,
    omega_m=20.0,
    g=30.0,
    d0=0.3,
    rabi=6.0,
    omega_laser=1700.0,
)
BATHS = BathParams(
    kappa=100.0, gamma_m=10.0, gamma_phi=10.0, omega_cut=160.0, temperature=300.0
)
N_LEVELS = 10


@pytest.fixture(scope="module")
def model():
    return build_dressed_model(PARAMS, DIMS, N_LEVELS)


@pytest.fixture(scope="module")
def generator(model):
    return full_liouvillian(MasterEquationKind.GME, model, PARAMS, BATHS)


def thermal_ladder_generator(n: int, rate_down: float, rate_up: float):
    """Damped bosonic mode with heating; exact steady state is a geometric
    distribution p_k proportional to (rate_up / rate_down)^k (birth-death
    detailed balance, valid even with the truncated ladder)."""
    b = fock_annihilator(n)
    mat = (
        rate_down * lindblad_dissipator(b).matrix
        + rate_up * lindblad_dissipator(b.conj().T).matrix
    )
    return Superoperator(mat)


class TestSteadyState:
    def test_thermal_ladder_matches_geometric_distribution(self):
        n, down, up = 7, 2.0, 0.6
        rho = steady_state(thermal_ladder_generator(n, down, up))
        r = up / down
        expected = r ** np.arange(n)
        expected /= expected.sum()
        assert np.allclose(np.real(np.diag(rho)), expected, atol=1e-12)
        off = rho - np.diag(np.diag(rho))
        assert np.max(np.abs(off)) < 1e-12

    def test_properties(self, generator):
        rho = steady_state(generator)
        assert abs(np.trace(rho) - 1.0) < 1e-12
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
        assert np.min(np.linalg.eigvalsh(rho)) > -1e-10
        assert np.max(np.abs(generator.apply(rho))) < 1e-10

    def test_kernel_dimension(self, generator):
        assert kernel_dimension(generator) == 1

    def test_degenerate_kernel_detected(self):
        # block-diagonal pair of independent ladders: two steady states
        lv = thermal_ladder_generator(3, 2.0, 0.0)
        twin = Superoperator(sla.block_diag(lv.matrix, lv.matrix))
        assert kernel_dimension(twin) >= 2
        with pytest.raises(SteadyStateError, match="kernel"):
            steady_state(twin, check_kernel=True)


class TestTimeEvolve:
    def test_matches_matrix_exponential(self, rng):
        lv = thermal_ladder_generator(5, 2.0, 0.5)
        rho0 = random_density_matrix(rng, 5)
        t_grid = np.linspace(0.0, 1.5, 6)
        rhos = time_evolve(lv, rho0, t_grid)
        for t, rho in zip(t_grid, rhos):
            expected = (sla.expm(lv.matrix * t) @ vec(rho0)).reshape((5, 5), order="F")
            assert np.max(np.abs(rho - expected)) < 1e-8

    def test_relaxes_to_steady_state(self):
        lv = thermal_ladder_generator(5, 2.0, 0.5)
        rho0 = np.zeros((5, 5), dtype=complex)
        rho0[4, 4] = 1.0
        final = time_evolve(lv, rho0, np.linspace(0.0, 40.0, 5))[-1]
        assert np.max(np.abs(final - steady_state(lv))) < 1e-7

    def test_rejects_mismatched_state(self):
        lv = thermal_ladder_generator(5, 2.0, 0.5)
        with pytest.raises(ValueError):
            time_evolve(lv, np.eye(4), np.linspace(0.0, 1.0, 3))


class TestSpectrum:
    def test_undriven_zero_temperature_spectrum_vanishes(self, model):
        import dataclasses

        cold = dataclasses.replace(PARAMS, rabi=0.0)
        frozen = dataclasses.replace(BATHS, temperature=0.0)
        lv = full_liouvillian(MasterEquationKind.GME, model, cold, frozen)
        rho = steady_state(lv)
        spec = emission_spectrum(
            lv, model.tset_c, rho, np.linspace(-50.0, 50.0, 11)
        )
        assert np.max(np.abs(spec.values)) < 1e-12

    def test_solve_and_eig_methods_agree(self, model, generator):
        rho = steady_state(generator)
        grid = np.linspace(-60.0, 60.0, 60)
        a = emission_spectrum(generator, model.tset_c, rho, grid, method="solve")
        b = emission_spectrum(generator, model.tset_c, rho, grid, method="eig")
        scale = np.max(np.abs(a.values))
        assert np.max(np.abs(a.values - b.values)) < 1e-10 * scale

    def test_imaginary_residual_small(self, model, generator):
        rho = steady_state(generator)
        spec = emission_spectrum(
            generator, model.tset_c, rho, np.linspace(-60.0, 60.0, 21)
        )
        assert spec.max_imag_residual < 1e-12 * max(np.max(np.abs(spec.values)), 1e-30)

    def test_unknown_method_rejected(self, model, generator):
        rho = steady_state(generator)
        with pytest.raises(ValueError):
            emission_spectrum(generator, model.tset_c, rho, np.zeros(3), method="bad")

    def test_time_domain_route_agrees(self, model, generator):
        rho = steady_state(generator)
        grid = np.linspace(-50.0, 50.0, 50)
        res = emission_spectrum(generator, model.tset_c, rho, grid, method="solve")
        td = emission_spectrum_timedomain(
            generator, model.tset_c, rho, grid, t_max=8.0, n_steps=60000
        )
        scale = np.max(np.abs(res.values))
        assert np.max(np.abs(res.values - td.values)) < 1e-6 * scale

    def test_weak_drive_peak_sits_on_a_dressed_transition(self, model):
        import dataclasses

        weak = dataclasses.replace(PARAMS, rabi=0.5)
        lv = full_liouvillian(MasterEquationKind.GME, model, weak, BATHS)
        rho = steady_state(lv)
        # strongest cavity transition frequency, in the rotating frame
        tset = model.tset_c
        frame = tset.omega - weak.omega_laser * (
            np.rint(model.basis.n_exc[tset.upper])
            - np.rint(model.basis.n_exc[tset.lower])
        )
        strongest = frame[np.argmax(np.abs(tset.element))]
        grid = np.linspace(strongest - 40.0, strongest + 40.0, 161)
        spec = emission_spectrum(lv, tset, rho, grid)
        peak = grid[np.argmax(spec.values)]
        assert abs(peak - strongest) < BATHS.kappa


class TestPopulationsAndSweep:
    def test_populations_match_direct_expectation(self, model, generator):
        rho = steady_state(generator)
        pops = populations(rho, model.tset_c, model.tset_x, model.tset_m)
        for tset, value in zip(
            (model.tset_c, model.tset_x, model.tset_m),
            (pops.n_c, pops.n_x, pops.n_m),
        ):
            plus = tset.weighted_plus()
            direct = float(np.real(np.trace(plus.conj().T @ plus @ rho)))
            assert value == pytest.approx(direct, abs=1e-14)
        assert pops.n_c > 0 and pops.n_x > 0 and pops.n_m > 0

    def make(self, model):
        def factory(wl):
            return full_liouvillian(
                MasterEquationKind.GME, model, PARAMS, BATHS, omega_laser=wl
            )

        return factory

    def test_sweep_serial_and_threaded_agree(self, model):
        grid = PARAMS.omega_x + np.linspace(-40.0, 40.0, 5)
        serial, fail_s = detuning_sweep(
            self.make(model), grid, model.tset_c, model.tset_x, model.tset_m
        )
        threaded, fail_t = detuning_sweep(
            self.make(model), grid, model.tset_c, model.tset_x, model.tset_m,
            workers=2,
        )
        assert not fail_s and not fail_t
        for a, b in zip(serial, threaded):
            assert a.n_m == pytest.approx(b.n_m, rel=1e-12)

    def test_sweep_records_failures_and_continues(self, model):
        factory = self.make(model)

        def flaky(wl):
            if abs(wl - 1700.0) < 1e-9:
                raise RuntimeError("injected failure")
            return factory(wl)

        grid = np.array([1660.0, 1700.0, 1740.0])
        results, failures = detuning_sweep(
            flaky, grid, model.tset_c, model.tset_x, model.tset_m
        )
        assert [i for i, _ in failures] == [1]
        assert "injected failure" in failures[0][1]
        assert results[0] is not None and results[2] is not None
        assert results[1] is None
