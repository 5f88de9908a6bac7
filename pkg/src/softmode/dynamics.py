"""Lindblad time evolution, steady states, and weak-drive linear solves.

The master equation is integrated with an embedded Dormand-Prince 5(4)
pair on the flattened density matrix; the state is re-symmetrized after
every accepted step and the trace is never renormalized, so trace drift
stays available as an integration diagnostic.  Steady states come from
the vectorized generator's null space (direct sparse solve with a trace
row) with long-time integration as the cross-checking fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .fockspace import (
    FockConfig,
    ModeOperator,
    QuantumState,
    density_state,
    vacuum_state,
)
from .model import LindbladChannel, SystemParams, effective_hamiltonian
from .normalmodes import NormalModeData

__all__ = [
    "EvolutionSpec",
    "Trajectory",
    "lindblad_rhs",
    "evolve",
    "liouvillian_matrix",
    "steady_state",
    "quasi_steady_state",
    "quasi_steady_amplitudes",
    "S3_KETS",
]


@dataclass(frozen=True)
class EvolutionSpec:
    """Integration window and tolerances (time in the units of the rates)."""

    t_final: float
    dt_initial: Optional[float] = None
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    record_times: Optional[Sequence[float]] = None
    trace_bound: float = 1e-6

    def __post_init__(self):
        if self.t_final <= 0:
            raise ValueError("t_final must be positive")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")

    def times(self) -> np.ndarray:
        if self.record_times is not None:
            t = np.asarray(self.record_times, dtype=float)
            if np.any(t < 0) or np.any(np.diff(t) <= 0):
                raise ValueError("record_times must be strictly increasing and non-negative")
            return t
        return np.linspace(0.0, self.t_final, 101)


@dataclass
class Trajectory:
    """Recorded states with integration diagnostics."""

    times: np.ndarray
    states: list[QuantumState]
    diagnostics: dict = field(default_factory=dict)


class _Generator:
    """Dense-matrix Lindblad right-hand side."""

    def __init__(self, H: ModeOperator, channels: Sequence[LindbladChannel]):
        self.config = H.config
        for ch in channels:
            if ch.jump.config != H.config:
                raise ValueError("channel operators live on a different Fock configuration")
        self.h = H.toarray()
        self.channels = []
        for ch in channels:
            j = ch.jump.toarray()
            jd = j.conj().T
            self.channels.append((ch.rate, j, jd, jd @ j))

    def rhs(self, rho: np.ndarray) -> np.ndarray:
        out = -1j * (self.h @ rho - rho @ self.h)
        for rate, j, jd, jdj in self.channels:
            out += rate * (j @ rho @ jd - 0.5 * (jdj @ rho + rho @ jdj))
        return out


def lindblad_rhs(state: QuantumState, H: ModeOperator,
                 channels: Sequence[LindbladChannel]) -> np.ndarray:
    """d rho / dt for a density-matrix state.

    drho/dt = -i [H, rho] + sum_k rate_k (J rho J^ - {J^J, rho}/2),
    i.e. the master equation with the emission term moved to its usual
    gain position (the source text writes the same dissipator with an
    overall minus through its D[.] shorthand).
    """
    if state.kind != "density":
        raise ValueError("lindblad_rhs needs a density-matrix state")
    if state.config != H.config:
        raise ValueError("state and Hamiltonian live on different Fock configurations")
    return _Generator(H, channels).rhs(state.data)


# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                   187 / 2100, 1 / 40])
_DP_ERR = _DP_B5 - _DP_B4


def evolve(state: QuantumState, H: ModeOperator,
           channels: Sequence[LindbladChannel], spec: EvolutionSpec) -> Trajectory:
    """Adaptive integration of the master equation.

    Embedded 5(4) Runge-Kutta with PI-free step control; after every
    accepted step rho <- (rho + rho^)/2.  Raises on step-size underflow
    (stiffness) and when the trace drifts past spec.trace_bound at a
    record time.
    """
    gen = _Generator(H, channels)
    rho = state.to_density().data.astype(np.complex128).copy()
    record = spec.times()
    if record[-1] > spec.t_final + 1e-12:
        raise ValueError("record_times extend past t_final")

    states: list[QuantumState] = []
    drifts: list[float] = []
    n_steps = 0
    n_rhs = 0
    min_dt = math.inf

    t = 0.0
    k1 = gen.rhs(rho)
    n_rhs += 1
    scale0 = np.linalg.norm(k1)
    if spec.dt_initial is not None:
        dt = spec.dt_initial
    else:
        dt = 0.01 * np.linalg.norm(rho) / scale0 if scale0 > 0 else spec.t_final / 100.0
        dt = min(dt, spec.t_final / 10.0)
    dt_floor = max(1e-14, 1e-13 * spec.t_final)

    def take_record(tr: float, r: np.ndarray):
        drift = abs(np.trace(r).real - 1.0)
        if drift > spec.trace_bound:
            raise RuntimeError(
                f"trace drift {drift:.3e} exceeded bound {spec.trace_bound:.1e} at t={tr:g}"
            )
        drifts.append(drift)
        states.append(density_state(gen.config, r.copy()))

    idx = 0
    if record[0] == 0.0:
        take_record(0.0, rho)
        idx = 1

    ks = [None] * 7
    while idx < len(record):
        target = record[idx]
        while t < target - 1e-14:
            h_step = min(dt, target - t)
            # stages (linear, autonomous RHS: no explicit time argument)
            ks[0] = k1
            for i in range(1, 7):
                y = rho
                acc = np.zeros_like(rho)
                for j, aij in enumerate(_DP_A[i]):
                    if aij != 0.0:
                        acc = acc + aij * ks[j]
                ks[i] = gen.rhs(rho + h_step * acc)
                n_rhs += 1
            y5 = rho + h_step * sum(b * k for b, k in zip(_DP_B5, ks) if b != 0.0)
            err = h_step * sum(e * k for e, k in zip(_DP_ERR, ks) if e != 0.0)
            tol = spec.abs_tol + spec.rel_tol * max(np.linalg.norm(rho), np.linalg.norm(y5))
            err_norm = np.linalg.norm(err) / tol
            if err_norm <= 1.0:
                t += h_step
                rho = 0.5 * (y5 + y5.conj().T)
                k1 = gen.rhs(rho)  # FSAL does not survive the re-symmetrization
                n_rhs += 1
                n_steps += 1
                min_dt = min(min_dt, h_step)
            factor = 0.9 * err_norm ** -0.2 if err_norm > 0 else 5.0
            dt = h_step * min(5.0, max(0.2, factor))
            if dt < dt_floor:
                raise RuntimeError(
                    f"step size underflow (dt={dt:.3e} at t={t:g}); generator too stiff "
                    "for the requested tolerances"
                )
        take_record(target, rho)
        idx += 1

    return Trajectory(
        times=record,
        states=states,
        diagnostics={
            "trace_drift": np.array(drifts),
            "steps": n_steps,
            "rhs_evaluations": n_rhs,
            "min_dt": min_dt,
        },
    )


# ---------------------------------------------------------------------------
# Steady states


def liouvillian_matrix(H: ModeOperator, channels: Sequence[LindbladChannel]) -> sp.csr_matrix:
    """Sparse vectorized generator, row-major (C-order) flattening.

    vec(A rho B) = (A kron B^T) vec(rho).
    """
    n = H.config.dim
    eye = sp.identity(n, dtype=np.complex128, format="csr")
    h = H.matrix
    L = -1j * (sp.kron(h, eye) - sp.kron(eye, h.T))
    for ch in channels:
        if ch.jump.config != H.config:
            raise ValueError("channel operators live on a different Fock configuration")
        j = ch.jump.matrix
        jdj = (j.conjugate().transpose() @ j).tocsr()
        L = L + ch.rate * (
            sp.kron(j, j.conjugate())
            - 0.5 * sp.kron(jdj, eye)
            - 0.5 * sp.kron(eye, jdj.T)
        )
    return L.tocsr()


def _null_space_solve(L: sp.csr_matrix, n: int, pin_row: int) -> np.ndarray:
    """Solve L x = 0 with tr(x) = 1 by replacing one redundant row."""
    L = L.tolil(copy=True)
    trace_row = np.zeros(n * n, dtype=np.complex128)
    trace_row[:: n + 1] = 1.0
    L[pin_row, :] = trace_row
    rhs = np.zeros(n * n, dtype=np.complex128)
    rhs[pin_row] = 1.0
    x = spla.spsolve(L.tocsc(), rhs)
    return x


def steady_state(H: ModeOperator, channels: Sequence[LindbladChannel],
                 method: str = "auto",
                 check_unique: bool = True,
                 rho0: QuantumState | None = None,
                 window: float = 10.0,
                 obs_tol: float = 1e-9,
                 max_windows: int = 400) -> QuantumState:
    """Stationary density matrix of the Lindblad generator.

    null_space: direct sparse solve of L(rho) = 0 with the trace pinned.
    Uniqueness is probed by re-solving with a different pinned row; if
    the generator has a degenerate stationary subspace the two
    constrained solutions disagree.  long_time: propagate from rho0
    (vacuum by default) in windows until the state stops moving.  auto
    picks null_space up to superoperator dimension 4096 (Hilbert
    dimension 64), where the direct factorization is cheap, and
    long_time above it.
    """
    config = H.config
    n = config.dim
    if method == "auto":
        method = "null_space" if n <= 64 else "long_time"
    if method == "null_space":
        L = liouvillian_matrix(H, channels)
        scale = max(abs(L).max(), 1.0)
        x = _null_space_solve(L, n, pin_row=0)
        residual = np.linalg.norm(L @ x) / (scale * np.linalg.norm(x))
        if not np.isfinite(residual) or residual > 1e-8:
            raise RuntimeError(f"null-space solve did not converge (residual {residual:.2e})")
        if check_unique:
            x2 = _null_space_solve(L, n, pin_row=(n - 1) * (n + 1))
            if np.linalg.norm(x - x2) / np.linalg.norm(x) > 1e-6:
                raise RuntimeError("stationary state is not unique (degenerate null space)")
        rho = x.reshape(n, n)
        rho = 0.5 * (rho + rho.conj().T)
        rho /= np.trace(rho).real
        state = density_state(config, rho)
        if state.min_eigenvalue() < -1e-6:
            raise RuntimeError("null-space solution is not a positive density matrix")
        return state
    if method == "long_time":
        # march the exact propagator in windows; Krylov exponential
        # action keeps the cost at sparse matvecs, immune to the
        # stiffness that throttles explicit steppers and to the LU
        # fill-in that throttles the direct solve at large dimension
        L = liouvillian_matrix(H, channels).tocsr()
        v = (rho0 or vacuum_state(config)).to_density().data.ravel()
        previous = None
        for _ in range(max_windows):
            v = spla.expm_multiply(L, v, start=0.0, stop=window, num=2,
                                   endpoint=True)[-1]
            if previous is not None:
                if np.linalg.norm(v - previous) / window < obs_tol:
                    rho = v.reshape(n, n)
                    rho = 0.5 * (rho + rho.conj().T)
                    rho /= np.trace(rho).real
                    return density_state(config, rho)
            previous = v.copy()
        raise RuntimeError(f"long-time steady state did not converge in {max_windows} windows")
    raise ValueError(f"unknown steady-state method {method!r}")


# ---------------------------------------------------------------------------
# Weak-drive quasi-steady states of the non-Hermitian generator


def quasi_steady_state(h_eff: ModeOperator) -> QuantumState:
    """Stationary amplitudes of the no-jump generator, vacuum pinned to 1.

    Solves H_eff |psi> = 0 on the truncated lattice with the vacuum
    amplitude fixed, the weak-drive perturbative closure: the equation
    row of the vacuum itself (an O(beta^2) back-action on the vacuum
    amplitude) is dropped.  The returned state is normalized.
    """
    config = h_eff.config
    h = h_eff.toarray()
    vac = config.basis_index((0,) * config.n_modes)
    rest = [i for i in range(config.dim) if i != vac]
    a = h[np.ix_(rest, rest)]
    b = h[rest, vac]
    try:
        c = np.linalg.solve(a, -b)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"quasi-steady solve is singular: {exc}") from exc
    psi = np.zeros(config.dim, dtype=np.complex128)
    psi[vac] = 1.0
    psi[rest] = c
    return QuantumState("pure", psi / np.linalg.norm(psi), config)


# The nine-ket expansion basis of the weak-drive quasi-steady state,
# |n_a, n_bbar, n_d>, in amplitude order (c0 is the vacuum, pinned).
S3_KETS = (
    (0, 0, 0),
    (0, 1, 0),
    (1, 0, 1),
    (0, 1, 2),
    (0, 2, 0),
    (1, 1, 1),
    (2, 0, 2),
    (0, 2, 2),
    (2, 0, 0),
)


def quasi_steady_amplitudes(p: SystemParams, nm: NormalModeData | None = None,
                            paper_fidelity: bool = False) -> dict[str, complex]:
    """Amplitudes c1..c8 of the nine-ket quasi-steady expansion.

    The effective Hamiltonian is restricted to the two-photon ladder
    kets reachable from the vacuum by the probe and the resonant
    three-body interaction, and H_eff |psi> = 0 is solved with the
    vacuum amplitude pinned to 1.
    """
    if nm is None:
        nm = p.normal_modes()
    config = FockConfig((3, 3, 3), ("a", "bbar", "d"))
    h = effective_hamiltonian(p, nm, config, paper_fidelity).toarray()
    idx = [config.basis_index(k) for k in S3_KETS]
    h9 = h[np.ix_(idx, idx)]
    a = h9[1:, 1:]
    b = h9[1:, 0]
    try:
        c = np.linalg.solve(a, -b)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"nine-ket quasi-steady solve is singular: {exc}") from exc
    return {f"c{i}": complex(ci) for i, ci in enumerate(c, start=1)}
