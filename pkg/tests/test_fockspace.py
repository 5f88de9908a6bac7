import math

import numpy as np
import pytest

from softmode.fockspace import (
    FockConfig,
    basis_state,
    compose,
    creator,
    density_state,
    expectation,
    lab_config,
    ladder,
    normal_config,
    number,
    vacuum_state,
)


def test_config_validation():
    with pytest.raises(ValueError):
        FockConfig((1, 4), ("a", "b"))
    with pytest.raises(ValueError):
        FockConfig((4, 4), ("a", "a"))
    with pytest.raises(ValueError):
        FockConfig((4, 4, 4), ("a", "b"))
    cfg = lab_config(4)
    assert cfg.dim == 64
    assert cfg.mode_labels == ("a", "b", "c")
    assert normal_config(4, with_f=True).mode_labels == ("a", "bbar", "d", "f")


def test_basis_index_roundtrip():
    cfg = FockConfig((2, 3, 4), ("x", "y", "z"))
    for i in range(cfg.dim):
        occ = cfg.occupations(i)
        assert cfg.basis_index(occ) == i
    with pytest.raises(ValueError):
        cfg.basis_index((0, 3, 0))


def test_ladder_dim2_matrix():
    cfg = FockConfig((2,), ("x",))
    a = ladder(cfg, "x").toarray()
    np.testing.assert_array_equal(a, [[0, 1], [0, 0]])


def test_ladder_kron_lifting():
    cfg = FockConfig((2, 2), ("x", "y"))
    a0 = ladder(cfg, 0).toarray()
    single = np.array([[0, 1], [0, 0]], dtype=complex)
    np.testing.assert_array_equal(a0, np.kron(single, np.eye(2)))
    a1 = ladder(cfg, "y").toarray()
    np.testing.assert_array_equal(a1, np.kron(np.eye(2), single))


def test_ladder_sqrt_rule():
    cfg = FockConfig((4,), ("x",))
    a = ladder(cfg, "x").toarray()
    # <2|A|3> = sqrt(3)
    assert a[2, 3] == pytest.approx(math.sqrt(3.0), rel=1e-15)
    for n in range(1, 4):
        assert a[n - 1, n] == pytest.approx(math.sqrt(n), rel=1e-15)


def test_invalid_mode_errors():
    cfg = lab_config(3)
    with pytest.raises(ValueError):
        ladder(cfg, 3)
    with pytest.raises(ValueError):
        ladder(cfg, "nope")


def test_compose_position_operator():
    cfg = FockConfig((3,), ("x",))
    a = ladder(cfg, "x")
    x = compose([(1.0, a), (1.0, a.dag())])
    expected = np.array([
        [0, 1, 0],
        [1, 0, math.sqrt(2)],
        [0, math.sqrt(2), 0],
    ])
    np.testing.assert_allclose(x.toarray(), expected, atol=0)


def test_compose_zero_coefficient():
    cfg = FockConfig((3,), ("x",))
    z = compose([(0.0, ladder(cfg, "x"))])
    assert np.all(z.toarray() == 0)


def test_truncated_commutator():
    # [A, A+] = diag(1, ..., 1, -(D-1)) on a dim-D truncation
    for d in (2, 4, 7):
        cfg = FockConfig((d,), ("x",))
        a = ladder(cfg, "x")
        comm = compose([(1.0, (a, a.dag())), (-1.0, (a.dag(), a))])
        expected = np.diag([1.0] * (d - 1) + [-(d - 1.0)])
        np.testing.assert_allclose(comm.toarray(), expected, atol=1e-15)


def test_config_mismatch_rejected():
    a = ladder(lab_config(3), "a")
    b = ladder(lab_config(4), "a")
    with pytest.raises(ValueError):
        _ = a + b
    with pytest.raises(ValueError):
        _ = a @ b
    with pytest.raises(ValueError):
        expectation(vacuum_state(lab_config(4)), a)


def test_distinct_mode_operators_commute_exactly():
    cfg = FockConfig((3, 4), ("x", "y"))
    ax = ladder(cfg, "x")
    ny = number(cfg, "y")
    diff = (ax @ ny - ny @ ax).matrix
    assert diff.nnz == 0 or abs(diff).max() == 0.0


def test_expectation_vacuum_and_fock():
    cfg = FockConfig((4,), ("x",))
    n = number(cfg, "x")
    assert expectation(vacuum_state(cfg), n) == 0
    one = basis_state(cfg, (1,))
    assert expectation(one, n) == pytest.approx(1.0, abs=1e-15)


def test_expectation_truncated_coherent():
    # amplitude 0.1 on a truncated space; oracle is the direct series sum
    alpha, dim = 0.1, 8
    cfg = FockConfig((dim,), ("x",))
    amps = np.array([alpha ** n / math.sqrt(math.factorial(n)) for n in range(dim)])
    amps /= np.linalg.norm(amps)
    state = density_state(cfg, np.outer(amps, amps.conj()))
    oracle = float(sum(n * abs(a) ** 2 for n, a in enumerate(amps)))
    got = expectation(state, number(cfg, "x")).real
    assert got == pytest.approx(oracle, rel=1e-13)
    assert got == pytest.approx(0.01, rel=1e-3)


def test_hermitian_expectation_is_real():
    rng = np.random.default_rng(7)
    cfg = FockConfig((3, 3), ("x", "y"))
    n = cfg.dim
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = m @ m.conj().T
    rho /= np.trace(rho).real
    state = density_state(cfg, rho)
    herm = compose([(1.0, ladder(cfg, "x")), (1.0, creator(cfg, "x"))])
    val = expectation(state, herm)
    assert abs(val.imag) < 1e-12
    assert state.trace() == pytest.approx(1.0, abs=1e-10)


def test_state_validation():
    cfg = FockConfig((3,), ("x",))
    vacuum_state(cfg).validate()
    bad = density_state(cfg, np.diag([0.7, 0.4, -0.1]))
    with pytest.raises(ValueError):
        bad.validate()


def test_bumped_config():
    cfg = normal_config(4)
    up = cfg.bumped()
    assert up.mode_dims == (5, 5, 5)
    assert up.mode_labels == cfg.mode_labels
