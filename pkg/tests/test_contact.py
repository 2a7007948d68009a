"""Contact-geometry kernel: coordinate formulas, restriction, transforms."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cmx.contact import (
    ContactHamiltonian,
    ContactPoint,
    Generator,
    GeneratorKind,
    OffSubmanifoldError,
    Tangent,
    adapted_hamiltonian,
    adapted_residuals,
    contact_hamiltonian_field,
    eval_contact_form,
    integrate_flow,
    legendre_dual,
    legendre_transform,
    reeb_field,
    restricted_field,
)


def quadratic_x(coeff=1.0):
    return Generator.quadratic(np.array([[coeff]]))


def quadratic_p(coeff=1.0):
    return Generator.quadratic(np.array([[coeff]]), kind=GeneratorKind.P_TYPE)


class TestContactForm:
    def test_zero_momentum_kills_pairing(self):
        pt = ContactPoint([0.0], [0.0], 0.0)
        v = Tangent([1.0], [0.0], 0.0)
        assert eval_contact_form(pt, v) == 0.0

    def test_direct_value(self):
        pt = ContactPoint([0.0], [2.0], 0.0)
        v = Tangent([1.0], [0.0], 5.0)
        assert eval_contact_form(pt, v) == 3.0

    def test_reeb_is_normalized(self):
        for n in (1, 3, 6):
            pt = ContactPoint(np.arange(n), np.arange(n) - 1.0, 0.7)
            assert eval_contact_form(pt, reeb_field(n)) == 1.0

    def test_reeb_components(self):
        r = reeb_field(1)
        assert np.array_equal(r.dx, [0.0]) and np.array_equal(r.dp, [0.0])
        assert r.dz == 1.0
        r3 = reeb_field(3)
        assert not r3.dx.any() and not r3.dp.any() and r3.dz == 1.0

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            eval_contact_form(ContactPoint([0.0], [0.0], 0.0),
                              Tangent([1.0, 2.0], [0.0, 0.0], 0.0))

    @given(st.integers(min_value=1, max_value=5), st.integers())
    @settings(max_examples=50, deadline=None)
    def test_reeb_normalization_property(self, n, seed):
        rng = np.random.default_rng(seed % (2**32))
        pt = ContactPoint(rng.normal(size=n), rng.normal(size=n), rng.normal())
        assert eval_contact_form(pt, reeb_field(n)) == 1.0


class TestHamiltonianField:
    def test_momentum_hamiltonian(self):
        h = ContactHamiltonian(
            value=lambda x, p, z: p[0],
            gradient=lambda x, p, z: (np.zeros_like(x), np.ones_like(p), 0.0),
        )
        t = contact_hamiltonian_field(h, ContactPoint([0.0], [2.0], 5.0))
        assert np.array_equal(t.dx, [-1.0])
        assert np.array_equal(t.dp, [0.0])
        assert t.dz == 0.0

    def test_z_hamiltonian(self):
        h = ContactHamiltonian(
            value=lambda x, p, z: z,
            gradient=lambda x, p, z: (np.zeros_like(x), np.zeros_like(p), 1.0),
        )
        t = contact_hamiltonian_field(h, ContactPoint([1.0], [2.0], 3.0))
        assert np.array_equal(t.dx, [0.0])
        assert np.array_equal(t.dp, [2.0])
        assert t.dz == 3.0

    def test_position_hamiltonian(self):
        h = ContactHamiltonian(
            value=lambda x, p, z: x[0],
            gradient=lambda x, p, z: (np.ones_like(x), np.zeros_like(p), 0.0),
        )
        t = contact_hamiltonian_field(h, ContactPoint([4.0], [0.0], 0.0))
        assert np.array_equal(t.dx, [0.0])
        assert np.array_equal(t.dp, [1.0])
        assert t.dz == 4.0

    @given(st.integers())
    @settings(max_examples=100, deadline=None)
    def test_pairing_identity_random_quadratic(self, seed):
        rng = np.random.default_rng(seed % (2**32))
        n = int(rng.integers(1, 4))
        A = rng.normal(size=(n, n))
        b = rng.normal(size=n)
        c = rng.normal()

        def value(x, p, z):
            return float(x @ A @ p + b @ x + c * z)

        def gradient(x, p, z):
            return A @ p + b, A.T @ x, c

        h = ContactHamiltonian(value=value, gradient=gradient)
        pt = ContactPoint(rng.normal(size=n), rng.normal(size=n), rng.normal())
        X = contact_hamiltonian_field(h, pt)
        hv = value(pt.x, pt.p, pt.z)
        assert abs(eval_contact_form(pt, X) - hv) <= 1e-12 * (1 + abs(hv))


class TestAdaptedResiduals:
    def test_on_submanifold_x_type(self):
        res = adapted_residuals(quadratic_x(), ContactPoint([1.0], [1.0], 0.5))
        assert res.delta0 == 0.0 and np.array_equal(res.delta, [0.0])

    def test_off_submanifold_x_type(self):
        res = adapted_residuals(quadratic_x(), ContactPoint([1.0], [0.0], 0.0))
        assert res.delta0 == 0.5 and np.array_equal(res.delta, [1.0])

    def test_on_submanifold_p_type(self):
        res = adapted_residuals(quadratic_p(), ContactPoint([1.0], [1.0], 0.5))
        assert res.delta0 == 0.0 and np.array_equal(res.delta, [0.0])


class TestRestrictedField:
    def test_x_type_unit_quadratic(self):
        pt = ContactPoint([1.0], [1.0], 0.5)
        t = restricted_field(quadratic_x(), [2.0], pt, strict=True)
        assert np.array_equal(t.dx, [2.0])
        assert np.array_equal(t.dp, [2.0])
        assert t.dz == 2.0

    def test_p_type_unit_quadratic(self):
        pt = ContactPoint([1.0], [1.0], 0.5)
        t = restricted_field(quadratic_p(), [3.0], pt, strict=True)
        assert np.array_equal(t.dx, [3.0])
        assert np.array_equal(t.dp, [3.0])
        assert t.dz == 3.0

    def test_two_dimensional_matches_finite_difference_oracle(self):
        # momentum rate along the flow equals d/dt of the gradient of the
        # generator, estimated with central differences in time
        gen = Generator.quadratic(np.diag([1.0, 2.0]))
        x = np.array([1.0, 1.0])
        F = np.array([1.0, 1.0])
        pt = ContactPoint(x, gen.gradient(x), gen.value(x))
        t = restricted_field(gen, F, pt, strict=True)
        delta = 1e-6
        dp_fd = (np.asarray(gen.gradient(x + delta * F))
                 - np.asarray(gen.gradient(x - delta * F))) / (2 * delta)
        dz_fd = (gen.value(x + delta * F) - gen.value(x - delta * F)) / (2 * delta)
        assert np.array_equal(t.dx, F)
        np.testing.assert_allclose(t.dp, dp_fd, rtol=0, atol=1e-9)
        np.testing.assert_allclose(t.dp, [1.0, 2.0], atol=1e-12)
        assert abs(t.dz - dz_fd) < 1e-9 and abs(t.dz - 3.0) < 1e-12

    def test_p_type_z_rate_matches_chain_rule(self):
        # dz = p . Hess(phi) . F, cross-checked against d/dt of
        # z(p) = p . grad phi - phi along the prescribed momentum velocity
        rng = np.random.default_rng(12)
        A = rng.normal(size=(3, 3))
        gen = Generator.quadratic(A.T @ A + np.eye(3), kind=GeneratorKind.P_TYPE)
        p = rng.uniform(-1, 1, 3)
        x = np.asarray(gen.gradient(p))
        pt = ContactPoint(x, p, float(x @ p) - gen.value(p))
        F = rng.uniform(-1, 1, 3)
        t = restricted_field(gen, F, pt, strict=True)

        def z_of(q):
            return float(q @ np.asarray(gen.gradient(q))) - gen.value(q)

        delta = 1e-6
        dz_fd = (z_of(p + delta * F) - z_of(p - delta * F)) / (2 * delta)
        assert abs(t.dz - dz_fd) < 1e-8

    def test_strict_mode_rejects_off_shell(self):
        with pytest.raises(OffSubmanifoldError):
            restricted_field(quadratic_x(), [1.0],
                             ContactPoint([1.0], [0.0], 0.0), strict=True)

    def test_equals_adapted_hamiltonian_field_on_shell(self):
        rng = np.random.default_rng(7)
        for kind in (GeneratorKind.X_TYPE, GeneratorKind.P_TYPE):
            A = rng.normal(size=(3, 3))
            gen = Generator.quadratic(A.T @ A + np.eye(3), kind=kind)
            u = rng.uniform(-1, 1, 3)
            if kind is GeneratorKind.X_TYPE:
                pt = ContactPoint(u, gen.gradient(u), gen.value(u))
            else:
                x = np.asarray(gen.gradient(u))
                pt = ContactPoint(x, u, float(x @ u) - gen.value(u))
            F = rng.uniform(-1, 1, 3)
            t1 = restricted_field(gen, F, pt)
            t2 = contact_hamiltonian_field(adapted_hamiltonian(gen, F, 1.3), pt)
            np.testing.assert_allclose(t1.dx, t2.dx, atol=1e-12)
            np.testing.assert_allclose(t1.dp, t2.dp, atol=1e-12)
            assert abs(t1.dz - t2.dz) < 1e-12


class TestLegendreTransform:
    def test_self_dual_quadratic(self):
        value, argmax = legendre_transform(quadratic_x(), [3.0])
        assert value == 4.5 and np.allclose(argmax, [3.0])

    def test_scaled_quadratic(self):
        value, argmax = legendre_transform(quadratic_x(2.0), [2.0])
        assert abs(value - 1.0) < 1e-14 and np.allclose(argmax, [1.0])

    def test_quartic_against_grid_search(self):
        gen = Generator(
            kind=GeneratorKind.X_TYPE,
            value=lambda x: 0.25 * float(x[0] ** 4),
            gradient=lambda x: x**3,
            hessian=lambda x: np.array([[3.0 * x[0] ** 2]]),
            strictly_convex=True,
        )
        p = 8.0
        grid = np.arange(-4.0, 4.0, 1e-4)
        brute = (grid * p - 0.25 * grid**4).max()
        value, argmax = legendre_transform(gen, [p])
        assert abs(value - brute) < 1e-6
        assert abs(value - 12.0) < 1e-10
        assert abs(argmax[0] - 2.0) < 1e-10

    def test_requires_convexity_flag(self):
        gen = Generator.quadratic(np.array([[-1.0]]))
        with pytest.raises(ValueError):
            legendre_transform(gen, [1.0])

    def test_involution_on_random_quadratics(self):
        rng = np.random.default_rng(3)
        worst = 0.0
        for _ in range(30):
            n = int(rng.integers(1, 4))
            A = rng.normal(size=(n, n))
            gen = Generator.quadratic(A.T @ A + 0.5 * np.eye(n))
            x = rng.uniform(-2, 2, n)
            val, _ = legendre_transform(legendre_dual(gen), x)
            worst = max(worst, abs(val - gen.value(x)))
        assert worst < 1e-9


class TestIntegrateFlow:
    def test_constant_hamiltonian_advances_z_only(self):
        h = ContactHamiltonian(
            value=lambda x, p, z: 1.0,
            gradient=lambda x, p, z: (np.zeros_like(x), np.zeros_like(p), 0.0),
        )
        traj = integrate_flow(lambda pt: contact_hamiltonian_field(h, pt),
                              ContactPoint([0.5], [0.25], 0.0), dt=0.1, steps=10)
        assert len(traj) == 11
        final = traj[-1]
        assert np.array_equal(final.x, [0.5]) and np.array_equal(final.p, [0.25])
        assert abs(final.z - 1.0) < 1e-12

    def test_zero_hamiltonian_freezes_trajectory(self):
        h = ContactHamiltonian(
            value=lambda x, p, z: 0.0,
            gradient=lambda x, p, z: (np.zeros_like(x), np.zeros_like(p), 0.0),
        )
        traj = integrate_flow(lambda pt: contact_hamiltonian_field(h, pt),
                              ContactPoint([1.0], [2.0], 3.0), dt=0.2, steps=5)
        for pt in traj:
            assert pt.x[0] == 1.0 and pt.p[0] == 2.0 and pt.z == 3.0

    def test_restricted_linear_flow_stays_on_shell(self):
        gen = quadratic_x()
        pt0 = ContactPoint([0.3], [0.3], 0.045)
        traj = integrate_flow(lambda pt: restricted_field(gen, [1.0], pt),
                              pt0, dt=0.1, steps=100)
        for k, pt in enumerate(traj):
            assert abs(pt.x[0] - (0.3 + 0.1 * k)) < 1e-12
            assert adapted_residuals(gen, pt).max_abs < 1e-10

    def test_bad_arguments(self):
        pt = ContactPoint([0.0], [0.0], 0.0)
        with pytest.raises(ValueError):
            integrate_flow(lambda q: reeb_field(1), pt, dt=-0.1, steps=3)
        with pytest.raises(ValueError):
            integrate_flow(lambda q: reeb_field(1), pt, dt=0.1, steps=0)


class TestFiniteDifferenceFallback:
    def test_fd_gradient_matches_analytic(self):
        def value(x, p, z):
            return float(np.sin(x[0]) + x[0] * p[0] + 0.5 * z * z)

        analytic = ContactHamiltonian(
            value=value,
            gradient=lambda x, p, z: (np.cos(x) + p, x.copy(), z),
        )
        fd = ContactHamiltonian.from_value(value)
        assert not fd.analytic
        rng = np.random.default_rng(11)
        for _ in range(25):
            pt = ContactPoint(rng.uniform(-2, 2, 1), rng.uniform(-2, 2, 1),
                              rng.uniform(-2, 2))
            ga = analytic.gradient(pt.x, pt.p, pt.z)
            gf = fd.gradient(pt.x, pt.p, pt.z)
            for a, f in zip(ga, gf):
                np.testing.assert_allclose(f, a, rtol=1e-6, atol=1e-8)
