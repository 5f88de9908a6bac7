"""Correlation functions, populations, and the measurable output field."""

from __future__ import annotations

import math

import numpy as np

from .fockspace import (
    FockConfig,
    ModeOperator,
    QuantumState,
    compose,
    creator,
    expectation,
    ladder,
    number,
)
from .dynamics import S3_KETS
from .normalmodes import NormalModeData

__all__ = [
    "UndefinedCorrelation",
    "POPULATION_FLOOR",
    "g2_zero",
    "g2_of_operator",
    "g2_from_amplitudes",
    "populations",
    "output_field_operator",
]

# Below this mean occupation the normalized correlation is pure noise
# amplification and is reported as undefined instead.
POPULATION_FLOOR = 1e-12


class UndefinedCorrelation(ValueError):
    """g2(0) requested on a mode with population below the numerical floor."""


def g2_of_operator(state: QuantumState, op: ModeOperator,
                   floor: float = POPULATION_FLOOR) -> float:
    """Equal-time normalized two-photon correlation of an arbitrary field operator.

    <O^ O^ O O> / <O^ O>^2, evaluated on the given pure state or density
    matrix.
    """
    od = op.dag()
    n = expectation(state, od @ op).real
    if n < floor:
        raise UndefinedCorrelation(
            f"population {n:.3e} below floor {floor:.1e}; g2(0) undefined"
        )
    numerator = expectation(state, od @ od @ op @ op).real
    return max(numerator, 0.0) / n ** 2


def g2_zero(state: QuantumState, mode: str = "bbar",
            floor: float = POPULATION_FLOOR) -> float:
    """g2(0) of one mode: <n(n-1)> / <n>^2 on the truncated space."""
    return g2_of_operator(state, ladder(state.config, mode), floor)


def g2_from_amplitudes(amps: dict[str, complex],
                       floor: float = POPULATION_FLOOR) -> float:
    """g2(0) of the probed mode evaluated on the nine-ket quasi-steady state.

    The state is the vacuum plus the amplitudes c1..c8 over the
    two-photon ladder kets; to leading order in the probe this reduces
    to 2 |c4|^2 / |c1|^4 (two-photon over one-photon-squared), but the
    full normalized expression is evaluated so the probe-independence
    check is meaningful at finite drive.
    """
    amplitudes = np.array([1.0] + [amps[f"c{i}"] for i in range(1, 9)], dtype=complex)
    weights = np.abs(amplitudes) ** 2
    n_b = np.array([k[1] for k in S3_KETS], dtype=float)
    norm = weights.sum()
    mean_n = float(weights @ n_b) / norm
    if mean_n < floor:
        raise UndefinedCorrelation(
            f"probed-mode population {mean_n:.3e} below floor; g2(0) undefined"
        )
    mean_nn = float(weights @ (n_b * (n_b - 1.0))) / norm
    return max(mean_nn, 0.0) / mean_n ** 2


def populations(state: QuantumState) -> dict[str, float]:
    """Mean occupation of every mode."""
    return {
        label: expectation(state, number(state.config, label)).real
        for label in state.config.mode_labels
    }


def output_field_operator(nm: NormalModeData, config: FockConfig) -> ModeOperator:
    """The field that leaves the cavity: bbar + sqrt(eta/zeta) (d + d^)/2.

    The antisymmetric cavity mode picks up a soft-mode quadrature
    admixture through the normal-mode rotation; its correlations differ
    from the pure bbar ones at relative order eta/zeta.
    """
    q = 0.5 * math.sqrt(nm.eta / nm.zeta_exact)
    return compose([
        (1.0, ladder(config, "bbar")),
        (q, ladder(config, "d")),
        (q, creator(config, "d")),
    ])
