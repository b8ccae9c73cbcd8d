import math

import numpy as np
import pytest

from cfreach.chenfliess import SampledInput
from cfreach.mmreach import DivergenceError, decomposition, embedding_field, integrate_embedding
from cfreach.oracle import sample_inputs, simulate_batch
from cfreach.polylie import Polynomial, PolySystem


def corners(spec):
    s = spec.system
    return np.full(s.m, spec.box.a), np.full(s.m, spec.box.b)


def test_scalar_decomposition(ferfera):
    assert decomposition(ferfera.system, 0, [1.0], [1.0], [2.0], [2.8]) == 1.0
    # reversed ordering takes the max with y pinned to x
    assert decomposition(ferfera.system, 0, [2.0], [2.8], [1.0], [1.0]) == pytest.approx(5.6)


def test_diagonal_property(lotka_volterra):
    s = lotka_volterra.system
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = rng.uniform(-1, 1, 2)
        u = rng.uniform(-1, 1, 2)
        f = s.vector_field(x, u)
        for i in range(2):
            assert decomposition(s, i, x, u, x, u) == f[i]


def test_lotka_volterra_point(lotka_volterra):
    s = lotka_volterra.system
    x = [1 / 6, 1 / 6]
    d = decomposition(s, 0, x, [-1, -1], x, [1, 1])
    assert d == pytest.approx(-1 / 36 - 1 / 6, rel=1e-14)


def test_ordering_precondition(lotka_volterra):
    with pytest.raises(ValueError):
        decomposition(lotka_volterra.system, 0, [0, 1], [0, 0], [1, 0], [1, 1])


def test_embedding_matches_displayed_equations(lotka_volterra):
    """For positive ordered states the tight decomposition has a closed form."""
    s = lotka_volterra.system
    rng = np.random.default_rng(4)
    for _ in range(20):
        x = rng.uniform(0.05, 1.0, 2)
        xh = x + rng.uniform(0, 0.5, 2)
        u = rng.uniform(-1, 0, 2)
        uh = rng.uniform(0, 1, 2)
        dx, dxh = embedding_field(s, x, xh, u, uh)
        expected = [
            -x[0] * xh[1] + x[0] * u[0],
            x[1] * x[0] - x[1] * uh[1],
            -xh[0] * x[1] + xh[0] * uh[0],
            xh[1] * xh[0] - xh[1] * u[1],
        ]
        np.testing.assert_allclose(np.concatenate([dx, dxh]), expected, rtol=1e-12, atol=1e-15)


def test_ferfera_embedding_is_two_exponentials(ferfera):
    s = ferfera.system
    t = np.linspace(0, 1, 1001)
    traj = integrate_embedding(s, s.z0, s.z0, *corners(ferfera), t)
    assert abs(traj.x[-1, 0] - math.e) < 1e-8
    assert abs(traj.x_hat[-1, 0] - math.exp(2.8)) < 1e-8
    lo, hi = traj.output_box(s)
    np.testing.assert_array_equal(lo[0], traj.x[:, 0])
    np.testing.assert_array_equal(hi[0], traj.x_hat[:, 0])


def test_collapsed_box_is_plain_trajectory(lotka_volterra):
    s = lotka_volterra.system
    v = np.array([0.3, -0.6])
    u = SampledInput.constant(v, 1.0, 500)
    traj = integrate_embedding(s, s.z0, s.z0, v, v, u.t_grid)
    np.testing.assert_array_equal(traj.x, traj.x_hat)
    _, states = simulate_batch(s, [u], return_states=True)
    np.testing.assert_allclose(traj.x.T, states[0], rtol=1e-13, atol=1e-16)


@pytest.mark.parametrize("name", ["ferfera", "lotka_volterra"])
def test_se_order_and_containment(name, request):
    spec = request.getfixturevalue(name)
    s = spec.system
    steps = 1000
    t = np.linspace(0, 1, steps + 1)
    traj = integrate_embedding(s, s.z0, s.z0, *corners(spec), t)
    assert np.all(traj.x <= traj.x_hat)
    _, states = simulate_batch(s, sample_inputs(s.m, spec.box, 8, 1.0, 200, seed=21, steps=steps),
                               return_states=True)
    tol = 1e-6
    assert np.all(traj.x.T[None] - tol <= states)
    assert np.all(states <= traj.x_hat.T[None] + tol)


def test_decomposition_monotonicity(lotka_volterra):
    s = lotka_volterra.system
    rng = np.random.default_rng(8)
    tol, h = 1e-12, 1e-4
    for _ in range(50):
        x = rng.uniform(-1, 1, 2)
        xh = x + rng.uniform(0.01, 1, 2)
        u = rng.uniform(-1, 0, 2)
        uh = u + rng.uniform(0.01, 1, 2)
        for i in range(2):
            d0 = decomposition(s, i, x, u, xh, uh)
            for j in range(2):
                e = np.eye(2)[j] * h
                if j != i:
                    assert decomposition(s, i, x + e, u, xh, uh) >= d0 - tol
                assert decomposition(s, i, x, u, xh + e, uh) <= d0 + tol
                assert decomposition(s, i, x, u + e, xh, uh) >= d0 - tol
                assert decomposition(s, i, x, u, xh, uh + e) <= d0 + tol


def test_divergence_reported():
    z = Polynomial.variable(1, 0)
    s = PolySystem(1, 0, [[z * z]], [z], [1.0])
    with pytest.raises(DivergenceError) as info:
        integrate_embedding(s, [1.0], [1.0], [], [], np.linspace(0, 2, 2001))
    assert 0.9 < info.value.t <= 1.1


def test_embedding_preconditions(ferfera):
    s = ferfera.system
    with pytest.raises(ValueError):
        integrate_embedding(s, [2.0], [1.0], [1.0], [2.0], np.linspace(0, 1, 11))
