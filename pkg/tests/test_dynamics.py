import math

import numpy as np
import pytest

import softmode as sm
from softmode.fockspace import (
    FockConfig,
    basis_state,
    compose,
    density_state,
    expectation,
    ladder,
    number,
    vacuum_state,
)
from softmode.model import LindbladChannel, SystemParams
from softmode.dynamics import (
    EvolutionSpec,
    evolve,
    lindblad_rhs,
    liouvillian_matrix,
    quasi_steady_amplitudes,
    quasi_steady_state,
    steady_state,
)
from softmode.observables import g2_from_amplitudes, g2_zero


def single_mode(dim=5):
    return FockConfig((dim,), ("x",))


def test_rhs_single_decay():
    cfg = single_mode(3)
    a = ladder(cfg, "x")
    h = compose([(0.0, number(cfg, "x"))])
    rho = basis_state(cfg, (1,)).to_density()
    rate = 0.7
    dr = lindblad_rhs(rho, h, [LindbladChannel(a, rate)])
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 0] = rate
    expected[1, 1] = -rate
    np.testing.assert_allclose(dr, expected, atol=1e-14)


def test_rhs_vacuum_fixed_point():
    cfg = single_mode(4)
    a = ladder(cfg, "x")
    h = compose([(1.3, number(cfg, "x"))])
    rho = vacuum_state(cfg).to_density()
    dr = lindblad_rhs(rho, h, [LindbladChannel(a, 1.0)])
    np.testing.assert_allclose(dr, 0.0, atol=1e-15)


def test_rhs_traceless():
    rng = np.random.default_rng(11)
    cfg = FockConfig((3, 3), ("x", "y"))
    n = cfg.dim
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    h = compose([(1.0, number(cfg, "x")), (0.3, ladder(cfg, "x") @ ladder(cfg, "y").dag())])
    h = h + h.dag()
    channels = [LindbladChannel(ladder(cfg, "x"), 0.5),
                LindbladChannel(ladder(cfg, "y").dag(), 0.2)]
    dr = lindblad_rhs(density_state(cfg, rho), h, channels)
    assert abs(np.trace(dr)) < 1e-13


def test_evolve_exponential_decay():
    cfg = single_mode(3)
    a = ladder(cfg, "x")
    h = compose([(0.0, number(cfg, "x"))])
    kappa = 1.0
    spec = EvolutionSpec(t_final=3.0, record_times=[0.5, 1.0, 2.0, 3.0])
    traj = evolve(basis_state(cfg, (1,)), h, [LindbladChannel(a, kappa)], spec)
    for t, state in zip(traj.times, traj.states):
        n = expectation(state, number(cfg, "x")).real
        assert n == pytest.approx(math.exp(-kappa * t), rel=1e-6)
    assert traj.diagnostics["trace_drift"].max() < 1e-8


def test_evolve_driven_cavity_linear_response():
    # analytic steady amplitude beta/(kappa/2 + i Delta)
    cfg = single_mode(6)
    a = ladder(cfg, "x")
    beta, kappa, delta = 0.04, 1.0, 0.4
    h = compose([(delta, number(cfg, "x")), (1j * beta, a.dag()), (-1j * beta, a)])
    spec = EvolutionSpec(t_final=30.0, record_times=[30.0])
    traj = evolve(vacuum_state(cfg), h, [LindbladChannel(a, kappa)], spec)
    amp = expectation(traj.states[-1], a)
    assert amp == pytest.approx(beta / (kappa / 2 + 1j * delta), rel=1e-6)


def test_evolve_linearity_of_generator():
    cfg = single_mode(4)
    a = ladder(cfg, "x")
    h = compose([(0.8, number(cfg, "x")), (0.05j, a.dag()), (-0.05j, a)])
    channels = [LindbladChannel(a, 0.6)]
    rho1 = basis_state(cfg, (1,)).to_density().data
    rho2 = vacuum_state(cfg).to_density().data
    lam = 0.3
    mix = density_state(cfg, lam * rho1 + (1 - lam) * rho2)
    spec = EvolutionSpec(t_final=1.5, record_times=[1.5])
    out_mix = evolve(mix, h, channels, spec).states[-1].data
    out1 = evolve(density_state(cfg, rho1), h, channels, spec).states[-1].data
    out2 = evolve(density_state(cfg, rho2), h, channels, spec).states[-1].data
    np.testing.assert_allclose(out_mix, lam * out1 + (1 - lam) * out2, atol=1e-9)


def test_evolve_positivity_and_trace():
    cfg = FockConfig((3, 3), ("x", "y"))
    h = compose([
        (1.0, number(cfg, "x")), (1.4, number(cfg, "y")),
        (0.2, ladder(cfg, "x") @ ladder(cfg, "y").dag()),
        (0.2, ladder(cfg, "y") @ ladder(cfg, "x").dag()),
        (0.03j, ladder(cfg, "x").dag()), (-0.03j, ladder(cfg, "x")),
    ])
    channels = [LindbladChannel(ladder(cfg, "x"), 1.0),
                LindbladChannel(ladder(cfg, "y").dag(), 0.05)]
    spec = EvolutionSpec(t_final=10.0, record_times=np.linspace(1, 10, 10))
    traj = evolve(vacuum_state(cfg), h, channels, spec)
    for state in traj.states:
        assert abs(state.trace() - 1.0) < 1e-8
        assert state.min_eigenvalue() > -1e-8


def test_steady_state_decay_only_vacuum():
    cfg = single_mode(4)
    h = compose([(1.0, number(cfg, "x"))])
    rho = steady_state(h, [LindbladChannel(ladder(cfg, "x"), 1.0)])
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho.data, expected, atol=1e-12)


def test_steady_state_thermal_detailed_balance():
    nbar = 0.4
    cfg = single_mode(25)
    a = ladder(cfg, "x")
    h = compose([(1.0, number(cfg, "x"))])
    channels = [LindbladChannel(a, 1.0 * (nbar + 1)), LindbladChannel(a.dag(), 1.0 * nbar)]
    rho = steady_state(h, channels)
    n = expectation(rho, number(cfg, "x")).real
    assert n == pytest.approx(nbar, abs=1e-8)
    pops = np.diag(rho.data).real
    ratio = pops[1:5] / pops[:4]
    np.testing.assert_allclose(ratio, nbar / (nbar + 1), rtol=1e-6)


def test_steady_state_degenerate_null_space_detected():
    # two decoupled decay sectors with no transitions between them stay
    # degenerate: the solver must refuse
    cfg = FockConfig((2,), ("x",))
    h = compose([(0.0, number(cfg, "x"))])
    # dephasing-only channel keeps every diagonal distribution stationary
    with pytest.raises(RuntimeError):
        steady_state(h, [LindbladChannel(number(cfg, "x"), 1.0)])


def test_steady_state_methods_agree():
    cfg = single_mode(5)
    a = ladder(cfg, "x")
    beta = 0.08
    h = compose([(0.3, number(cfg, "x")), (1j * beta, a.dag()), (-1j * beta, a)])
    channels = [LindbladChannel(a, 1.0)]
    r1 = steady_state(h, channels, method="null_space")
    r2 = steady_state(h, channels, method="long_time", window=15.0, obs_tol=1e-10)
    assert np.linalg.norm(r1.data - r2.data) < 1e-6


def test_liouvillian_matrix_matches_rhs():
    rng = np.random.default_rng(2)
    cfg = FockConfig((3, 2), ("x", "y"))
    n = cfg.dim
    h = compose([(1.0, number(cfg, "x")), (0.5, number(cfg, "y")),
                 (0.2, ladder(cfg, "x") @ ladder(cfg, "y").dag())])
    h = h + h.dag()
    channels = [LindbladChannel(ladder(cfg, "x"), 0.7)]
    L = liouvillian_matrix(h, channels)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    via_matrix = (L @ rho.ravel()).reshape(n, n)
    direct = lindblad_rhs(density_state(cfg, rho), h, channels)
    np.testing.assert_allclose(via_matrix, direct, atol=1e-12)


# -- weak-drive quasi-steady solves ---------------------------------------


def qs_params(**kw):
    defaults = dict(delta_b=1e6, omega_m=100.0, g0=1.0, kappa=1.0,
                    r=math.sqrt(1 - 0.1 ** 2), probe_strength=0.02)
    defaults.update(kw)
    return SystemParams(**defaults)


def test_quasi_steady_zero_drive():
    amps = quasi_steady_amplitudes(qs_params(probe_strength=0.0))
    for i in range(1, 9):
        assert amps[f"c{i}"] == 0


def test_quasi_steady_linear_cavity_closed_form():
    # g_nl = 0: driven damped cavity; c1 and c4 are the coherent values,
    # every d-excited amplitude vanishes
    beta = 1e-3
    p = qs_params(g0=0.0, probe_strength=beta)
    amps = quasi_steady_amplitudes(p)
    alpha = 2 * beta / p.kappa
    assert amps["c1"] == pytest.approx(alpha, rel=1e-5)
    assert amps["c4"] == pytest.approx(alpha ** 2 / math.sqrt(2), rel=1e-5)
    for i in (2, 3, 5, 6, 7, 8):
        assert abs(amps[f"c{i}"]) < 1e-14


def test_quasi_steady_probe_power_scaling():
    p1 = qs_params(probe_strength=0.01)
    p2 = qs_params(probe_strength=0.005)
    a1 = quasi_steady_amplitudes(p1)
    a2 = quasi_steady_amplitudes(p2)
    assert abs(a1["c1"] / a2["c1"]) == pytest.approx(2.0, rel=1e-3)
    assert abs(a1["c4"] / a2["c4"]) == pytest.approx(4.0, rel=1e-3)


def test_quasi_steady_lattice_matches_nine_kets_dispersive():
    # deep in the dispersive regime the lattice solve restricted to weak
    # drive agrees with the nine-ket amplitudes
    p = qs_params(omega_m=1e4, probe_strength=0.005)  # omega_d = 1000 kappa
    amps = quasi_steady_amplitudes(p)
    cfg = sm.normal_config(3)
    psi = quasi_steady_state(sm.effective_hamiltonian(p, config=cfg))
    g_lattice = g2_zero(psi)
    g_nine = g2_from_amplitudes(amps)
    assert g_lattice == pytest.approx(g_nine, rel=2e-2)


def test_quasi_steady_singular_detection():
    # a generator with an exactly degenerate excited level (zero row)
    # has no unique pinned solution
    from softmode.fockspace import zero_operator

    cfg = single_mode(3)
    with pytest.raises(RuntimeError):
        quasi_steady_state(zero_operator(cfg))
