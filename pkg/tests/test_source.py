import numpy as np
import pytest
from scipy.integrate import quad

from tenmom import (SourceIntegrals, absorption_residual, cons_to_prim,
                    is_admissible, prim_to_cons, propagate_source,
                    source_integrals)
from tenmom.source import (check_gradient, potential_gaussian_2d,
                           potential_linear_x, potential_traveling_sine,
                           potential_zero)

from conftest import random_states


def test_linear_potential_integral():
    p = potential_linear_x(1.0)
    si = source_integrals(p, 0.3, 0.0, 0.0, 0.2)
    assert si.a_hat == pytest.approx(-0.1, abs=1e-15)
    assert si.b_hat == pytest.approx(0.0, abs=1e-15)


def test_zero_tau_gives_zero_integrals():
    p = potential_traveling_sine()
    si = source_integrals(p, 0.25, 0.0, 1.3, 0.0)
    assert float(si.a_hat) == 0.0 and float(si.b_hat) == 0.0


def test_traveling_sine_against_adaptive_quadrature():
    # oracle: adaptive quadrature of the printed integrand
    p = potential_traveling_sine(1.0, 2.0 * np.pi, 1.0)
    x, t, tau = 0.25, 0.0, 0.5
    expected, err = quad(
        lambda s: -0.5 * 2.0 * np.pi * np.cos(2.0 * np.pi * (x - s)),
        t, t + tau, epsabs=1e-13, epsrel=1e-13)
    assert err < 1e-12
    si = source_integrals(p, x, 0.0, t, tau)
    assert float(si.a_hat) == pytest.approx(expected, abs=1e-10)
    # backward in time as well
    expected_b, _ = quad(
        lambda s: -0.5 * 2.0 * np.pi * np.cos(2.0 * np.pi * (x - s)),
        t, t - tau, epsabs=1e-13, epsrel=1e-13)
    si_b = source_integrals(p, x, 0.0, t, -tau)
    assert float(si_b.a_hat) == pytest.approx(expected_b, abs=1e-10)


def test_propagate_identity_at_zero():
    u = prim_to_cons([1.7, 0.4, -0.2, 2.0, 0.3, 1.5])
    out = propagate_source(u, SourceIntegrals(0.0, 0.0))
    assert np.array_equal(out, u)


def test_propagate_shifts_velocity_only():
    u = prim_to_cons([1, 0, 0, 2, 0, 2])
    out = propagate_source(u, SourceIntegrals(-0.1, 0.0))
    assert np.allclose(cons_to_prim(out), [1, -0.1, 0, 2, 0, 2])


def test_forward_backward_identity(rng):
    for u in random_states(rng, 200):
        a, b = rng.uniform(-10, 10, size=2)
        fwd = propagate_source(u, SourceIntegrals(a, b))
        back = propagate_source(fwd, SourceIntegrals(-a, -b))
        assert np.abs(back - u).max() <= 1e-13 * (1.0 + np.abs(u).max())


def test_pressure_invariance(rng):
    for u in random_states(rng, 1000):
        a, b = rng.uniform(-10, 10, size=2)
        out = propagate_source(u, SourceIntegrals(a, b))
        Vin = cons_to_prim(u)
        Vout = cons_to_prim(out)
        assert np.allclose(Vout[0], Vin[0], rtol=1e-12)
        assert np.allclose(Vout[3:], Vin[3:], rtol=1e-12, atol=1e-12)
        assert np.allclose(Vout[1], Vin[1] + a, rtol=1e-12, atol=1e-12)
        assert np.allclose(Vout[2], Vin[2] + b, rtol=1e-12, atol=1e-12)


def test_admissibility_preserved_for_large_coefficients(rng):
    for u in random_states(rng, 200):
        a, b = rng.uniform(-100, 100, size=2)
        assert is_admissible(propagate_source(u, SourceIntegrals(a, b)))


def test_matches_truncated_taylor_series(rng):
    # exp(C) u against a 12-term scaled Taylor series of the printed matrix
    def c_matrix(a, b):
        C = np.zeros((6, 6))
        C[1, 0] = a
        C[2, 0] = b
        C[3, 1] = a
        C[4, 1] = 0.5 * b
        C[4, 2] = 0.5 * a
        C[5, 2] = b
        return C

    for u in random_states(rng, 50):
        a, b = rng.uniform(-5, 5, size=2)
        E = np.eye(6)
        term = np.eye(6)
        for k in range(1, 12):
            term = term @ c_matrix(a, b) / k
            E = E + term
        out = propagate_source(u, SourceIntegrals(a, b))
        assert np.abs(out - E @ u).max() <= 1e-12 * (1 + np.abs(out).max())


def test_absorption_residual_shape_and_values():
    pot = potential_gaussian_2d(1.0, 1e-2, 1e-2, 50.0, 50.0, "x", v_t=1.0)
    u = prim_to_cons([0.109885, 0, 0, 1, 0, 1])
    res = absorption_residual(u, pot, 50.0, 50.0, 0.0)
    assert res[3] == pytest.approx(0.109885, rel=1e-12)
    assert np.all(res[[0, 1, 2, 4, 5]] == 0.0)
    # linear in v_t
    pot2 = potential_gaussian_2d(1.0, 1e-2, 1e-2, 50.0, 50.0, "x", v_t=3.0)
    res2 = absorption_residual(u, pot2, 50.0, 50.0, 0.0)
    assert np.allclose(res2, 3.0 * res)
    # zero coefficient gives the zero vector
    z = absorption_residual(u, potential_zero(), 50.0, 50.0, 0.0)
    assert np.all(z == 0.0)


def test_builtin_gradients_consistent():
    for pot in (potential_linear_x(2.0), potential_traveling_sine(),
                potential_gaussian_2d(25.0, 200.0, 200.0, 2.0, 2.0)):
        assert check_gradient(pot, 1.9, 2.2, 0.4)
