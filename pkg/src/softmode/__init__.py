"""Simulation and analysis of photon blockade in a two-optical-mode,
one-mechanical-mode optomechanical system driven near its parametric
instability."""

from .fockspace import (
    FockConfig,
    ModeOperator,
    QuantumState,
    basis_state,
    compose,
    creator,
    expectation,
    lab_config,
    ladder,
    normal_config,
    number,
    vacuum_state,
)
from .normalmodes import (
    BilinearParams,
    NormalModeData,
    diagonalize,
    inverse_transform,
    normal_mode_operators,
)
from .model import (
    ALL_TERMS,
    CO_ROTATING_TERMS,
    COUNTER_ROTATING_TERMS,
    PROBE_FRAME_TERMS,
    LindbladChannel,
    NonlinearTerm,
    SystemParams,
    cooling_channel,
    dissipation_channels,
    effective_hamiltonian,
    hamiltonian_lab,
    hamiltonian_normal,
    hamiltonian_probe_frame,
    merit_and_stability,
    operating_point,
    probe_frame_channels,
    rates_updown,
)
from .dynamics import (
    EvolutionSpec,
    Trajectory,
    evolve,
    lindblad_rhs,
    quasi_steady_amplitudes,
    quasi_steady_state,
    steady_state,
)
from .observables import (
    UndefinedCorrelation,
    g2_from_amplitudes,
    g2_of_operator,
    g2_zero,
    output_field_operator,
    populations,
)

__version__ = "0.1.0"
