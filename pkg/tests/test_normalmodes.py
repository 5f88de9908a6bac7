import math

import numpy as np
import pytest

from softmode.fockspace import FockConfig, compose, ladder
from softmode.normalmodes import (
    BilinearParams,
    commutator_norm,
    diagonalize,
    first_order_coefficients,
    forward_matrix,
    inverse_transform,
    normal_mode_operators,
)


def symplectic_frequencies(p: BilinearParams):
    """Brute-force oracle: eigenvalues of the quadrature dynamical matrix.

    H_bc = (delta_b/2)(X_b^2 + Y_b^2) + (omega_m/2)(X_c^2 + Y_c^2)
           - 2 G0 X_b X_c
    in the ordering (X_b, Y_b, X_c, Y_c); the equations of motion are
    u' = Omega M u and stable normal frequencies are the positive
    imaginary parts of its eigenvalues.
    """
    db, wm, g = p.delta_b, p.omega_m, p.G0
    m = np.array([
        [db, 0.0, -2.0 * g, 0.0],
        [0.0, db, 0.0, 0.0],
        [-2.0 * g, 0.0, wm, 0.0],
        [0.0, 0.0, 0.0, wm],
    ])
    omega = np.array([
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ])
    ev = np.linalg.eigvals(omega @ m)
    return np.sort(ev.imag[ev.imag > 1e-300])


def test_decoupled_limit():
    p = BilinearParams.from_r(delta_b=1.0, omega_m=0.05, r=0.0)
    nm = diagonalize(p)
    assert nm.xi_plus == pytest.approx(1.0, abs=1e-15)
    assert nm.xi_minus == pytest.approx(0.05, rel=1e-14)  # tan(phi) = eta
    assert nm.theta == 0.0
    # d_- reduces to c exactly at r = 0
    np.testing.assert_allclose(nm.coeffs_dminus, [0, 0, 1, 0], atol=1e-14)
    np.testing.assert_allclose(nm.coeffs_dplus, [1, 0, 0, 0], atol=1e-14)


def test_instability_onset():
    p = BilinearParams.from_r(delta_b=1.0, omega_m=0.02, r=1.0)
    nm = diagonalize(p)
    assert nm.xi_minus == 0.0
    assert nm.stable

    p2 = BilinearParams.from_r(delta_b=1.0, omega_m=0.02, r=1.05)
    nm2 = diagonalize(p2)
    assert not nm2.stable
    assert nm2.xi_minus_sq < 0.0
    assert nm2.xi_minus < 0.0
    with pytest.raises(ValueError):
        inverse_transform(nm2)
    with pytest.raises(ValueError):
        normal_mode_operators(nm2, FockConfig((3, 3), ("b", "c")))


def test_frequencies_match_symplectic_oracle():
    rng = np.random.default_rng(1234)
    for _ in range(100):
        eta = rng.uniform(0.001, 0.2)
        r = rng.uniform(0.0, 0.999)
        p = BilinearParams.from_r(delta_b=1.0, omega_m=eta, r=r)
        nm = diagonalize(p)
        oracle = symplectic_frequencies(p)
        assert nm.xi_minus == pytest.approx(oracle[0], rel=1e-10)
        assert nm.xi_plus == pytest.approx(oracle[1], rel=1e-10)


def test_product_identity_and_firstorder_band():
    rng = np.random.default_rng(99)
    for _ in range(50):
        eta = rng.uniform(0.001, 0.1)
        r = rng.uniform(0.0, 0.999)
        nm = diagonalize(BilinearParams.from_r(1.0, eta, r))
        # xi+ xi- = eta zeta exactly
        assert nm.xi_plus * nm.xi_minus == pytest.approx(eta * nm.zeta_exact, rel=1e-12)
        assert nm.zeta_exact == pytest.approx(math.sqrt(1 - r * r), rel=1e-14)
        # first-order validity band for the soft frequency
        ratio = nm.xi_minus / (nm.zeta_exact * eta) if r < 0.999 else 1.0
        assert 1 - 5 * eta <= ratio <= 1 + 5 * eta


def test_delta_shift_third_order_remainder():
    for eta in (0.002, 0.01, 0.05, 0.1):
        for r in (0.1, 0.5, 0.9, 0.99):
            p = BilinearParams.from_r(delta_b=1.0, omega_m=eta, r=r)
            nm = diagonalize(p)
            exact_shift = nm.omega_plus - p.delta_b
            assert abs(exact_shift - nm.delta_shift) <= 2.0 * p.delta_b * eta ** 3


def test_mixing_angle_condition():
    rng = np.random.default_rng(5)
    for _ in range(50):
        eta = rng.uniform(0.001, 0.3)
        r = rng.uniform(0.0, 0.999)
        p = BilinearParams.from_r(1.0, eta, r)
        nm = diagonalize(p)
        a, b = nm.alpha, nm.beta
        residual = (p.delta_b * a * b * (1 - eta * eta)
                    - 2 * p.G0 * math.sqrt(eta) * (a * a - b * b))
        assert abs(residual) < 1e-10 * p.delta_b


def test_bosonic_normalization_of_coefficients():
    rng = np.random.default_rng(17)
    for _ in range(30):
        nm = diagonalize(BilinearParams.from_r(1.0, rng.uniform(0.001, 0.2),
                                               rng.uniform(0.0, 0.999)))
        assert commutator_norm(nm.coeffs_dplus) == pytest.approx(1.0, abs=1e-12)
        assert commutator_norm(nm.coeffs_dminus) == pytest.approx(1.0, abs=1e-12)


def test_roundtrip_inverse():
    rng = np.random.default_rng(31)
    for _ in range(30):
        nm = diagonalize(BilinearParams.from_r(1.0, rng.uniform(0.001, 0.2),
                                               rng.uniform(0.0, 0.999)))
        inv = inverse_transform(nm)
        np.testing.assert_allclose(inv.as_matrix() @ forward_matrix(nm), np.eye(4),
                                   atol=1e-12)
        # r = 0 limit: b = d_+
    nm0 = diagonalize(BilinearParams.from_r(1.0, 0.07, 0.0))
    np.testing.assert_allclose(inverse_transform(nm0).b_coeffs, [1, 0, 0, 0], atol=1e-14)


def test_soft_quadrature_coefficient_grows():
    # the (d_- + d_-dag) weight in c grows like 1/sqrt(xi_-) towards r -> 1
    values = []
    for r in (0.9, 0.99, 0.999):
        nm = diagonalize(BilinearParams.from_r(1.0, 0.05, r))
        values.append(inverse_transform(nm).c_coeffs[2])
    assert values[0] < values[1] < values[2]
    nm = diagonalize(BilinearParams.from_r(1.0, 0.05, 0.999))
    expected = 0.5 * nm.alpha * (math.sqrt(nm.eta / nm.xi_minus)
                                 + math.sqrt(nm.xi_minus / nm.eta))
    assert inverse_transform(nm).c_coeffs[2] == pytest.approx(expected, rel=1e-12)


def test_first_order_coefficients_close_to_exact():
    # difference between exact and first-order coefficient vectors is O(eta)
    r = 0.9
    for eta in (0.01, 0.02, 0.04):
        nm = diagonalize(BilinearParams.from_r(1.0, eta, r))
        bbar_fo, d_fo = first_order_coefficients(nm)
        err_b = np.max(np.abs(nm.coeffs_dplus - bbar_fo))
        err_d = np.max(np.abs(nm.coeffs_dminus - d_fo))
        assert err_b <= 3.0 * eta
        assert err_d <= 3.0 * eta / math.sqrt(nm.zeta_exact)


def test_operators_on_truncated_space():
    nm = diagonalize(BilinearParams.from_r(1.0, 0.05, 0.8))
    cfg = FockConfig((5, 5), ("b", "c"))
    d_plus, d_minus = normal_mode_operators(nm, cfg, b_label="b", c_label="c")
    # symbolic normalization is exact even though the truncated matrix
    # commutator carries edge artifacts
    assert commutator_norm(nm.coeffs_dminus) == pytest.approx(1.0, abs=1e-12)
    # operator matrix equals the same linear combination built by hand
    b, c = ladder(cfg, "b"), ladder(cfg, "c")
    by_hand = compose(zip(nm.coeffs_dminus, (b, b.dag(), c, c.dag())))
    assert (d_minus - by_hand).matrix.nnz == 0
    assert d_plus.matrix.nnz > 0
