"""Per-cell energies, constitutive maps, and phase-space residuals."""

import numpy as np
import pytest

from cmx.contact import legendre_transform
from cmx.dec import FormField, Mesh, Region
from cmx.fiber import (
    MaxwellState,
    MediumProfile,
    Orientation,
    coenergy_density,
    contact_hamiltonian_density,
    energy_density,
    energy_quadratic,
    functional,
    induction_from_intensity,
    intensity_from_induction,
    pairing_density,
    phase_residuals,
)


@pytest.fixture
def mesh():
    return Mesh((8, 8, 8))


def constant_field(mesh, degree, values, dual):
    data = np.stack([np.full(mesh.dims, v) for v in values])
    return FormField(mesh, degree, data, dual)


class TestMediumProfile:
    def test_positivity_enforced(self, mesh):
        with pytest.raises(ValueError):
            MediumProfile(mesh, 0.0, 1.0)
        with pytest.raises(ValueError):
            MediumProfile(mesh, 1.0, -2.0)

    def test_sech_slab_profile(self):
        mesh = Mesh((4, 4, 32), spacing=0.5)
        medium = MediumProfile.sech_slab(mesh, eps0=2.0, z30=3.0, mu0=1.5)
        mid = mesh.extent[2] / 2
        z = mesh.coords((0.5, 0.5, 0.5))[2]
        expected = 2.0 / np.cosh((z - mid) / 3.0) ** 2
        np.testing.assert_allclose(medium.eps, expected)
        np.testing.assert_allclose(medium.mu, 1.5)

    def test_staggered_sampling_averages_neighbors(self, mesh):
        rng = np.random.default_rng(0)
        medium = MediumProfile(mesh, 1.0 + rng.random(mesh.dims), 1.0)
        # the first edge offset only moves along the two transverse axes
        manual = 0.25 * (
            medium.eps
            + np.roll(medium.eps, 1, axis=1)
            + np.roll(medium.eps, 1, axis=2)
            + np.roll(np.roll(medium.eps, 1, axis=1), 1, axis=2)
        )
        np.testing.assert_allclose(medium.eps_edge[0], manual)


class TestEnergyDensities:
    def test_unit_medium_unit_induction(self, mesh):
        m = MediumProfile.vacuum(mesh)
        D = constant_field(mesh, 2, [1.0, 0.0, 0.0], dual=True)
        B = FormField.zeros(mesh, 2)
        np.testing.assert_allclose(energy_density(D, B, m).data, 0.5)

    def test_permittivity_scaling(self, mesh):
        m = MediumProfile.uniform(mesh, 2.0, 1.0)
        D = constant_field(mesh, 2, [2.0, 0.0, 0.0], dual=True)
        B = FormField.zeros(mesh, 2)
        np.testing.assert_allclose(energy_density(D, B, m).data, 1.0)

    def test_zero_fields(self, mesh):
        m = MediumProfile.vacuum(mesh)
        zero = energy_density(FormField.zeros(mesh, 2, dual=True),
                              FormField.zeros(mesh, 2), m)
        assert not zero.data.any()

    def test_coenergy_values(self, mesh):
        m = MediumProfile.uniform(mesh, 2.0, 3.0)
        e = constant_field(mesh, 1, [1.0, 0.0, 0.0], dual=False)
        h = FormField.zeros(mesh, 1, dual=True)
        np.testing.assert_allclose(coenergy_density(e, h, m).data, 1.0)
        h2 = constant_field(mesh, 1, [0.0, 1.0, 0.0], dual=True)
        e0 = FormField.zeros(mesh, 1)
        np.testing.assert_allclose(coenergy_density(e0, h2, m).data, 1.5)
        assert not coenergy_density(e0, FormField.zeros(mesh, 1, dual=True),
                                    m).data.any()

    def test_nonnegative_and_definite(self, mesh):
        rng = np.random.default_rng(1)
        m = MediumProfile(mesh, 0.5 + rng.random(mesh.dims),
                          0.5 + rng.random(mesh.dims))
        D = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)), dual=True)
        B = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)))
        psi = energy_density(D, B, m)
        assert psi.data.min() >= 0.0


class TestFunctional:
    def test_constant_density(self, mesh):
        m = MediumProfile.vacuum(mesh)
        half = FormField(mesh, 0, np.full(mesh.dims, 0.5), dual=True)
        assert functional(half) == 256.0

    def test_zero_density(self, mesh):
        assert functional(FormField.zeros(mesh, 0, dual=True)) == 0.0

    def test_region_restriction(self, mesh):
        half = FormField(mesh, 0, np.full(mesh.dims, 0.5), dual=True)
        assert functional(half, Region(lo=(0, 0, 0), hi=(8, 8, 4))) == 128.0


class TestConstitutiveMaps:
    def test_intensity_from_induction(self, mesh):
        m = MediumProfile.uniform(mesh, 2.0, 1.0)
        D = constant_field(mesh, 2, [2.0, 0.0, 0.0], dual=True)
        B = FormField(mesh, 2, np.random.default_rng(2).standard_normal((3, *mesh.dims)))
        e, h = intensity_from_induction(D, B, m)
        np.testing.assert_allclose(e.data[0], 1.0)
        np.testing.assert_array_equal(h.data, B.data)  # identity permeability

    def test_induction_from_intensity(self, mesh):
        m = MediumProfile.uniform(mesh, 2.0, 3.0)
        e = constant_field(mesh, 1, [1.0, 0.0, 0.0], dual=False)
        h = constant_field(mesh, 1, [0.0, 0.0, 1.0], dual=True)
        D, B = induction_from_intensity(e, h, m)
        np.testing.assert_allclose(D.data[0], 2.0)
        np.testing.assert_allclose(B.data[2], 3.0)

    def test_round_trip(self, mesh):
        rng = np.random.default_rng(3)
        m = MediumProfile(mesh, 0.5 + rng.random(mesh.dims),
                          0.5 + rng.random(mesh.dims))
        D = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)), dual=True)
        B = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)))
        e, h = intensity_from_induction(D, B, m)
        D2, B2 = induction_from_intensity(e, h, m)
        np.testing.assert_allclose(D2.data, D.data, rtol=0, atol=1e-14)
        np.testing.assert_allclose(B2.data, B.data, rtol=0, atol=1e-14)


def random_onshell_state(mesh, rng):
    medium = MediumProfile(mesh, 0.5 + rng.random(mesh.dims),
                           0.5 + rng.random(mesh.dims))
    D = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)), dual=True)
    B = FormField(mesh, 2, rng.standard_normal((3, *mesh.dims)))
    return MaxwellState.from_induction(D, B, medium), medium


class TestPhaseResiduals:
    def test_onshell_state_both_orientations(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(4))
        scale = state.field_scale() ** 2
        for orientation in (Orientation.DB, Orientation.EH):
            res = phase_residuals(state, medium, orientation)
            assert res.max_abs() <= 1e-14 * scale

    def test_perturbed_intensity_shows_in_residual(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(5))
        e = state.e.copy()
        e.data[0, 2, 3, 4] += 1.0
        bumped = MaxwellState(D=state.D, B=state.B, e=e, h=state.h,
                              energy=state.energy, time=state.time)
        res = phase_residuals(bumped, medium, Orientation.DB)
        assert abs(res.delta_De.data[0, 2, 3, 4] + 1.0) < 1e-14
        mask = np.ones(mesh.dims, dtype=bool)
        mask[2, 3, 4] = False
        assert not res.delta_De.data[0][mask].any()

    def test_onshell_energy_identity(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(6))
        lhs = pairing_density(state.D, state.B, state.e, state.h) \
            - coenergy_density(state.e, state.h, medium)
        gap = np.abs((lhs - state.energy).data).max()
        assert gap <= 1e-12 * state.field_scale() ** 2


class TestContactHamiltonianDensity:
    def test_onshell_is_zero(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(7))
        for orientation in (Orientation.DB, Orientation.EH):
            dens = contact_hamiltonian_density(state, medium, orientation)
            assert np.abs(dens.data).max() <= 1e-12 * state.field_scale() ** 2

    def test_energy_perturbation_enters_linearly(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(8))
        energy = state.energy.copy()
        energy.data[1, 2, 3] += 0.25
        bumped = MaxwellState(D=state.D, B=state.B, e=state.e, h=state.h,
                              energy=energy, time=state.time)
        kappa = 1.75
        dens = contact_hamiltonian_density(bumped, medium, Orientation.DB, kappa)
        assert abs(dens.data[1, 2, 3] + kappa * 0.25) < 1e-12
        mask = np.ones(mesh.dims, dtype=bool)
        mask[1, 2, 3] = False
        assert np.abs(dens.data[mask]).max() <= 1e-12 * state.field_scale() ** 2

    def test_uniform_fields_leave_only_the_gauge_term(self, mesh):
        medium = MediumProfile.uniform(mesh, 2.0, 1.0)
        D = constant_field(mesh, 2, [1.0, 0.5, 0.0], dual=True)
        B = constant_field(mesh, 2, [0.0, 1.0, 0.0], dual=False)
        e_wrong = constant_field(mesh, 1, [3.0, 3.0, 3.0], dual=False)
        h = constant_field(mesh, 1, [0.0, 1.0, 0.0], dual=True)
        energy = energy_density(D, B, medium)
        state = MaxwellState(D=D, B=B, e=e_wrong, h=h, energy=energy)
        dens = contact_hamiltonian_density(state, medium, Orientation.DB, 2.0)
        # curls of uniform fields vanish, so the residual terms drop out
        np.testing.assert_allclose(dens.data, 0.0, atol=1e-14)

    def test_kappa_must_be_positive(self, mesh):
        state, medium = random_onshell_state(mesh, np.random.default_rng(9))
        with pytest.raises(ValueError):
            contact_hamiltonian_density(state, medium, Orientation.DB, kappa=0.0)


class TestEnergyQuadratic:
    def test_legendre_matches_coenergy_closed_form(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            eps = float(rng.uniform(0.2, 5.0))
            mu = float(rng.uniform(0.2, 5.0))
            p = rng.uniform(-2, 2, 6)
            value, argmax = legendre_transform(energy_quadratic(eps, mu), p)
            closed = 0.5 * (eps * p[:3] @ p[:3] + mu * p[3:] @ p[3:])
            assert abs(value - closed) <= 1e-12 * (1 + abs(closed))
            np.testing.assert_allclose(
                argmax, np.concatenate([eps * p[:3], mu * p[3:]]), atol=1e-12)

    def test_hessian_is_the_expected_diagonal(self):
        gen = energy_quadratic(2.0, 4.0)
        np.testing.assert_array_equal(
            gen.hessian(np.zeros(6)),
            np.diag([0.5, 0.5, 0.5, 0.25, 0.25, 0.25]))
