"""System Hamiltonians and dissipators in the lab and normal-mode bases.

Conventions: hbar = 1, every quantity in rate units (the CLI layer uses
units of kappa).  The pump phase is chosen so the enhanced linear
coupling G0 is real.  The probe rotating frame shifts both optical
modes by the probe frequency omega_p; the soft mode d does not rotate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .fockspace import (
    FockConfig,
    ModeOperator,
    compose,
    creator,
    ladder,
    number,
)
from .normalmodes import (
    BilinearParams,
    NormalModeData,
    diagonalize,
    first_order_coefficients,
    inverse_transform,
)

__all__ = [
    "SystemParams",
    "LindbladChannel",
    "NonlinearTerm",
    "ALL_TERMS",
    "CO_ROTATING_TERMS",
    "COUNTER_ROTATING_TERMS",
    "PROBE_FRAME_TERMS",
    "OperatingPoint",
    "operating_point",
    "hamiltonian_lab",
    "hamiltonian_normal",
    "hamiltonian_probe_frame",
    "effective_hamiltonian",
    "nonlinear_coefficients",
    "cooling_channel",
    "dissipation_channels",
    "probe_frame_channels",
    "rates_updown",
    "merit_and_stability",
    "MeritReport",
]


@dataclass(frozen=True)
class SystemParams:
    """Physical rates and detunings of the three-mode system.

    Exactly one of r (rescaled driving amplitude) and G0 (pump-enhanced
    coupling) must be given; the other is derived.  delta_a defaults to
    the resonant operating point delta_bbar - omega_d, and probe_freq to
    the lower one-photon dressed level delta_bbar - g_nl; both can be
    overridden for detuned studies.  J is stored for bookkeeping only,
    the left/right tunneling never enters the dynamics here.
    """

    delta_b: float
    omega_m: float
    g0: float
    kappa: float = 1.0
    r: Optional[float] = None
    G0: Optional[float] = None
    delta_a: Optional[float] = None
    gamma_m: float = 0.0
    n_th: float = 0.0
    alpha_e: float = 0.0
    probe_strength: float = 0.0
    probe_freq: Optional[float] = None
    J: float = 0.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.omega_m <= 0 or self.delta_b <= 0:
            raise ValueError("omega_m and delta_b must be positive")
        for name in ("g0", "gamma_m", "n_th", "alpha_e"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if (self.r is None) == (self.G0 is None):
            raise ValueError("give exactly one of r and G0")
        if self.r is None:
            object.__setattr__(self, "r", 2.0 * self.G0 / math.sqrt(self.omega_m * self.delta_b))
        else:
            if self.r < 0:
                raise ValueError("r must be non-negative")
            object.__setattr__(self, "G0", 0.5 * self.r * math.sqrt(self.omega_m * self.delta_b))

    # -- derived small parameters -----------------------------------------

    @property
    def eta(self) -> float:
        return self.omega_m / self.delta_b

    @property
    def zeta(self) -> float:
        """Instability parameter sqrt(1 - r^2); NaN beyond the instability."""
        return math.sqrt(1.0 - self.r * self.r) if self.r <= 1.0 else float("nan")

    @property
    def g_nl(self) -> float:
        """Normal-mode enhanced single-photon coupling g0 / sqrt(zeta)."""
        z = self.zeta
        return self.g0 / math.sqrt(z) if z > 0 else float("inf")

    @property
    def merit(self) -> float:
        """Figure of merit P = g0^2 omega_m / kappa^3."""
        return self.g0 ** 2 * self.omega_m / self.kappa ** 3

    @property
    def stable(self) -> bool:
        return self.r < 1.0

    def bilinear(self) -> BilinearParams:
        return BilinearParams(self.delta_b, self.omega_m, self.G0)

    def normal_modes(self) -> NormalModeData:
        return diagonalize(self.bilinear())


@dataclass(frozen=True)
class LindbladChannel:
    """One dissipation channel: jump operator and non-negative rate."""

    jump: ModeOperator
    rate: float

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError("channel rate must be non-negative")


class NonlinearTerm(Enum):
    """The five cubic interaction families in the normal-mode basis."""

    BDAG_A_D = "bdag_a_d"      # bbar^ a d + h.c., resonant at delta_bbar = delta_a + omega_d
    ADAG_B_D = "adag_b_d"      # a^ bbar d + h.c., resonant at delta_a = delta_bbar + omega_d
    ADAG_D_D = "adag_d_d"      # a^ d d + h.c., resonant at delta_a = 2 omega_d
    A_D_D = "a_d_d"            # a d d + h.c., always counter-rotating
    XA_ND = "xa_nd"            # (a + a^) d^ d, phonon-number force on a


ALL_TERMS = frozenset(NonlinearTerm)
CO_ROTATING_TERMS = frozenset({NonlinearTerm.BDAG_A_D, NonlinearTerm.ADAG_B_D,
                               NonlinearTerm.ADAG_D_D})
COUNTER_ROTATING_TERMS = frozenset({NonlinearTerm.A_D_D, NonlinearTerm.XA_ND})
# families that stay static when both optical modes rotate at the probe
# frequency: only the photon-number-conserving swap interactions
PROBE_FRAME_TERMS = frozenset({NonlinearTerm.BDAG_A_D, NonlinearTerm.ADAG_B_D})


@dataclass(frozen=True)
class OperatingPoint:
    """Frequencies of the normal-mode frame actually used by builders."""

    delta_bbar: float
    omega_d: float
    delta_a: float
    omega_p: float
    g_nl: float


def operating_point(p: SystemParams, nm: NormalModeData | None = None,
                    paper_fidelity: bool = False) -> OperatingPoint:
    """Resolve the operating frequencies.

    Default uses the exact normal-mode frequencies delta_b * xi_pm; the
    paper_fidelity toggle switches to the first-order values
    delta_b + r^2 omega_m eta / 2 and omega_m zeta.  The resonance
    condition and the probe placement are evaluated with whichever set
    is active, so the tuned interaction stays exactly resonant in both
    modes of operation.
    """
    if nm is None:
        nm = p.normal_modes()
    if not nm.stable:
        raise ValueError("operating point undefined beyond the instability (r >= 1)")
    if paper_fidelity:
        delta_bbar = p.delta_b + nm.delta_shift
        omega_d = p.omega_m * nm.zeta_exact
    else:
        delta_bbar = nm.omega_plus
        omega_d = nm.omega_minus
    delta_a = p.delta_a if p.delta_a is not None else delta_bbar - omega_d
    omega_p = p.probe_freq if p.probe_freq is not None else delta_bbar - p.g_nl
    return OperatingPoint(delta_bbar, omega_d, delta_a, omega_p, p.g_nl)


# ---------------------------------------------------------------------------
# Hamiltonians


def hamiltonian_lab(p: SystemParams, config: FockConfig) -> ModeOperator:
    """Pump-displaced lab-frame Hamiltonian on modes (a, b, c).

    delta_a a^a + delta_b b^b + omega_m c^c
    - G0 (b + b^)(c + c^) - g0 (a^b + b^a)(c + c^)
    """
    op = operating_point(p)
    n_a = number(config, "a")
    n_b = number(config, "b")
    n_c = number(config, "c")
    x_b = ladder(config, "b").plus_hc()
    x_c = ladder(config, "c").plus_hc()
    swap = (creator(config, "a") @ ladder(config, "b")).plus_hc()
    return compose([
        (op.delta_a, n_a),
        (p.delta_b, n_b),
        (p.omega_m, n_c),
        (-p.G0, x_b @ x_c),
        (-p.g0, swap @ x_c),
    ])


def nonlinear_coefficients(p: SystemParams, nm: NormalModeData | None = None,
                           paper_fidelity: bool = False) -> dict[NonlinearTerm, float]:
    """Coefficient of each cubic family in the normal-mode basis.

    Exact values follow from rewriting -g0 (a^b + b^a)(c + c^) through
    the inverse normal-mode map and collecting the terms with a single
    bbar or none; paper_fidelity substitutes the first-order couplings
    -g_nl and -g_nl sqrt(eta / 4 zeta).
    """
    if nm is None:
        nm = p.normal_modes()
    if not nm.stable or nm.xi_minus <= 0:
        raise ValueError("nonlinear couplings undefined at or beyond the instability")
    if paper_fidelity:
        g_nl = p.g_nl
        w = math.sqrt(nm.eta / (4.0 * nm.zeta_exact))
        return {
            NonlinearTerm.BDAG_A_D: -g_nl,
            NonlinearTerm.ADAG_B_D: -g_nl,
            NonlinearTerm.ADAG_D_D: -g_nl * w,
            NonlinearTerm.A_D_D: -g_nl * w,
            NonlinearTerm.XA_ND: -2.0 * g_nl * w,
        }
    al, be = nm.alpha, nm.beta
    xp, xm = nm.xi_plus, nm.xi_minus
    t3 = (al * al - be * be) / (2.0 * math.sqrt(xp * xm))
    t4 = 0.5 * be * be * math.sqrt(xm / xp)
    t5 = -0.5 * al * al * math.sqrt(xp / xm)
    pref = -p.g0 * math.sqrt(nm.eta)
    return {
        NonlinearTerm.BDAG_A_D: pref * (t3 + t4 - t5),
        NonlinearTerm.ADAG_B_D: pref * (t3 - t4 - t5),
        NonlinearTerm.ADAG_D_D: pref * 0.5 * al * be * (1.0 / xm + 1.0),
        NonlinearTerm.A_D_D: pref * 0.5 * al * be * (1.0 / xm - 1.0),
        NonlinearTerm.XA_ND: pref * al * be / xm,
    }


def _family_operators(config: FockConfig) -> dict[NonlinearTerm, ModeOperator]:
    a = ladder(config, "a")
    ad = creator(config, "a")
    b = ladder(config, "bbar")
    bd = creator(config, "bbar")
    d = ladder(config, "d")
    dd = creator(config, "d")
    return {
        NonlinearTerm.BDAG_A_D: (bd @ a @ d).plus_hc(),
        NonlinearTerm.ADAG_B_D: (ad @ b @ d).plus_hc(),
        NonlinearTerm.ADAG_D_D: (ad @ d @ d).plus_hc(),
        NonlinearTerm.A_D_D: (a @ d @ d).plus_hc(),
        NonlinearTerm.XA_ND: (a + ad) @ (dd @ d),
    }


def hamiltonian_normal(p: SystemParams, nm: NormalModeData | None = None,
                       config: FockConfig | None = None,
                       terms: Iterable[NonlinearTerm] = ALL_TERMS,
                       paper_fidelity: bool = False) -> ModeOperator:
    """Normal-mode Hamiltonian on (a, bbar, d): diagonal part plus the
    selected cubic families.

    With every family disabled this is the free Hamiltonian with
    frequencies (delta_a, delta_bbar, omega_d); each family can be
    enabled independently, with coefficients from the exact expansion or
    (paper_fidelity) the first-order ones.  The residual families with
    two bbar operators or with both optical quanta raised are not part
    of the catalog; they are smaller by eta and detuned by about
    2 delta_b.
    """
    if config is None:
        raise ValueError("config is required")
    if nm is None:
        nm = p.normal_modes()
    op = operating_point(p, nm, paper_fidelity)
    coeffs = nonlinear_coefficients(p, nm, paper_fidelity)
    fam = _family_operators(config)
    parts = [
        (op.delta_a, number(config, "a")),
        (op.delta_bbar, number(config, "bbar")),
        (op.omega_d, number(config, "d")),
    ]
    for term in terms:
        parts.append((coeffs[term], fam[term]))
    return compose(parts)


def hamiltonian_probe_frame(p: SystemParams, nm: NormalModeData | None = None,
                            config: FockConfig | None = None,
                            terms: Iterable[NonlinearTerm] = PROBE_FRAME_TERMS,
                            paper_fidelity: bool = False) -> ModeOperator:
    """Normal-mode Hamiltonian in the frame rotating at omega_p for the
    optical modes, with the coherent probe i beta (bbar^ - bbar) included.

    Both optical detunings are shifted by omega_p while the d frequency
    is untouched.  Only the photon-number-conserving swap families stay
    static in this frame; the other three acquire phases at the optical
    probe frequency, so writing them in as static terms fabricates
    near-resonant couplings that the true dynamics averages away (this
    is visible numerically as spurious bunching at moderate eta).  They
    are therefore excluded here by default; pass terms explicitly to
    study their static-approximation effect, or work in the pump frame
    (hamiltonian_normal) where all five families are legitimately
    time-independent.
    """
    if config is None:
        raise ValueError("config is required")
    if nm is None:
        nm = p.normal_modes()
    op = operating_point(p, nm, paper_fidelity)
    h = hamiltonian_normal(p, nm, config, terms, paper_fidelity)
    beta = p.probe_strength
    b = ladder(config, "bbar")
    return compose([
        (1.0, h),
        (-op.omega_p, number(config, "a")),
        (-op.omega_p, number(config, "bbar")),
        (1j * beta, b.dag()),
        (-1j * beta, b),
    ])


def effective_hamiltonian(p: SystemParams, nm: NormalModeData | None = None,
                          config: FockConfig | None = None,
                          paper_fidelity: bool = False) -> ModeOperator:
    """Non-Hermitian no-jump generator in the probe rotating frame.

    (delta_a - omega_p - i kappa/2) a^a + (g_nl - i kappa/2) bbar^bbar
    + omega_d d^d - g_nl (a^bbar + bbar^a)(d + d^) + i beta (bbar^ - bbar)

    At the resonant operating point delta_a - omega_p = g_nl - omega_d;
    the probe then sits exactly on the lower one-photon dressed level.
    The two-phonon and phonon-force families are omitted, as is every
    heating/cooling channel: the anti-Hermitian part is the kappa decay
    of the two optical modes and nothing else.
    """
    if config is None:
        raise ValueError("config is required")
    if nm is None:
        nm = p.normal_modes()
    if not p.stable:
        raise ValueError("effective Hamiltonian undefined beyond the instability")
    op = operating_point(p, nm, paper_fidelity)
    g_nl = p.g_nl
    beta = p.probe_strength
    half_k = 0.5j * p.kappa
    a = ladder(config, "a")
    b = ladder(config, "bbar")
    d = ladder(config, "d")
    swap = (a.dag() @ b).plus_hc()
    return compose([
        (op.delta_a - op.omega_p - half_k, number(config, "a")),
        (op.delta_bbar - op.omega_p - half_k, number(config, "bbar")),
        (op.omega_d, number(config, "d")),
        (-g_nl, swap @ d.plus_hc()),
        (1j * beta, b.dag()),
        (-1j * beta, b),
    ])


# ---------------------------------------------------------------------------
# Dissipation


def cooling_channel(p: SystemParams, nm: NormalModeData | None = None,
                    config: FockConfig | None = None,
                    variant: str = "effective",
                    paper_fidelity: bool = False,
                    ) -> tuple[list[ModeOperator], list[LindbladChannel]]:
    """Sideband cooling of the soft mode via the auxiliary f cavity.

    explicit: adds Delta_f f^f - g_nl alpha_e (f + f^)(d + d^) with
    Delta_f = omega_d and a kappa decay channel on f.  effective: the f
    mode is adiabatically eliminated into a single d decay channel with
    rate Gamma = 4 (g_nl alpha_e)^2 / kappa, the standard
    resolved-sideband cooling rate.  alpha_e = 0 yields nothing.
    """
    if config is None:
        raise ValueError("config is required")
    if nm is None:
        nm = p.normal_modes()
    if p.alpha_e == 0.0:
        return [], []
    g_cool = p.g_nl * p.alpha_e
    if variant == "effective":
        rate = 4.0 * g_cool ** 2 / p.kappa
        return [], [LindbladChannel(ladder(config, "d"), rate)]
    if variant != "explicit":
        raise ValueError(f"unknown cooling variant {variant!r}")
    if "f" not in config.mode_labels:
        raise ValueError("explicit cooling variant needs an f mode in the config")
    op = operating_point(p, nm, paper_fidelity)
    x_f = ladder(config, "f").plus_hc()
    x_d = ladder(config, "d").plus_hc()
    h = compose([
        (op.omega_d, number(config, "f")),
        (-g_cool, x_f @ x_d),
    ])
    return [h], [LindbladChannel(ladder(config, "f"), p.kappa)]


def dissipation_channels(p: SystemParams, nm: NormalModeData | None = None,
                         config: FockConfig | None = None,
                         basis: str = "lab",
                         paper_fidelity: bool = False) -> list[LindbladChannel]:
    """Loss and thermal channels of the master equation.

    lab: kappa on a and b, gamma_m (n_th + 1) on c and gamma_m n_th on
    c^.  normal: the same physical channels with the b and c jump
    operators rewritten through the normal-mode map, which is where the
    (d + d^) quadrature noise on the soft mode comes from.  Channels
    with exactly zero rate are dropped.
    """
    if config is None:
        raise ValueError("config is required")
    kappa, gm, nth = p.kappa, p.gamma_m, p.n_th
    if basis == "lab":
        b_op = ladder(config, "b")
        c_op = ladder(config, "c")
    elif basis == "normal":
        if nm is None:
            nm = p.normal_modes()
        bbar = ladder(config, "bbar")
        d = ladder(config, "d")
        ops = (bbar, bbar.dag(), d, d.dag())
        if paper_fidelity:
            zeta = nm.zeta_exact
            q = 0.5 * math.sqrt(nm.eta / zeta)
            b_op = compose([(1.0, bbar), (q, d), (q, d.dag())])
            sz = math.sqrt(zeta)
            c_op = compose([(0.5 / sz + 0.5 * sz, d), (0.5 / sz - 0.5 * sz, d.dag())])
        else:
            inv = inverse_transform(nm)
            b_op = compose(zip(inv.b_coeffs, ops))
            c_op = compose(zip(inv.c_coeffs, ops))
    else:
        raise ValueError(f"unknown basis {basis!r}")
    channels = [
        LindbladChannel(ladder(config, "a"), kappa),
        LindbladChannel(b_op, kappa),
    ]
    if gm * (nth + 1.0) > 0.0:
        channels.append(LindbladChannel(c_op, gm * (nth + 1.0)))
    if gm * nth > 0.0:
        channels.append(LindbladChannel(c_op.dag(), gm * nth))
    return channels


def rates_updown(p: SystemParams) -> tuple[float, float]:
    """Secular emission/absorption rates (gamma_down, gamma_up) of the d mode.

    gamma_down = (eta/4 zeta) kappa + (gamma_m/4 zeta)(2 n_th + 1 + 2 zeta)
    gamma_up   = (eta/4 zeta) kappa + (gamma_m/4 zeta)(2 n_th + 1 - 2 zeta)

    The difference gamma_down - gamma_up equals gamma_m identically, so
    near the instability the net relaxation is tiny compared to either
    rate and the mode heats towards large occupation unless cooled.
    """
    zeta = p.zeta
    if not zeta > 0.0:
        raise ValueError("rates require 0 <= r < 1 (zeta > 0)")
    cavity = p.eta * p.kappa / (4.0 * zeta)
    mech = p.gamma_m / (4.0 * zeta)
    down = cavity + mech * (2.0 * p.n_th + 1.0 + 2.0 * zeta)
    up = cavity + mech * (2.0 * p.n_th + 1.0 - 2.0 * zeta)
    return down, up


def probe_frame_channels(p: SystemParams, nm: NormalModeData | None = None,
                         config: FockConfig | None = None,
                         d_rates: tuple[float, float] | None = None,
                         include_cooling: bool = True) -> list[LindbladChannel]:
    """Channel set for the probe-frame master equation.

    kappa on a and bbar plus secular d-mode channels: either the derived
    (gamma_down, gamma_up) of rates_updown or directly imposed values,
    plus the effective cooling channel when alpha_e > 0.  The secular
    split keeps the generator static in the probe frame; the full
    transformed jump operators (dissipation_channels, normal basis) mix
    rotating and non-rotating quadratures and are meant for pump-frame
    validation work instead.
    """
    if config is None:
        raise ValueError("config is required")
    if nm is None:
        nm = p.normal_modes()
    if d_rates is None:
        down, up = rates_updown(p)
    else:
        down, up = d_rates
    if min(down, up) < 0:
        raise ValueError("d-mode rates must be non-negative")
    d = ladder(config, "d")
    channels = [
        LindbladChannel(ladder(config, "a"), p.kappa),
        LindbladChannel(ladder(config, "bbar"), p.kappa),
    ]
    if down > 0:
        channels.append(LindbladChannel(d, down))
    if up > 0:
        channels.append(LindbladChannel(d.dag(), up))
    if include_cooling:
        channels.extend(cooling_channel(p, nm, config, "effective")[1])
    return channels


# ---------------------------------------------------------------------------
# Stability / figure of merit


@dataclass(frozen=True)
class MeritLink:
    name: str
    ratio: float
    ok: bool


@dataclass(frozen=True)
class MeritReport:
    P: float
    r: float
    stable: bool
    instability_margin: float
    gamma_down: float
    gamma_up: float
    threshold: float
    links: tuple[MeritLink, ...]

    @property
    def passed(self) -> bool:
        return self.stable and all(link.ok for link in self.links)


def merit_and_stability(p: SystemParams, threshold: float = 10.0) -> MeritReport:
    """Evaluate P and the separation chain gamma_up << kappa << g_nl << omega_m zeta.

    Each "<<" is scored as a ratio that must reach the configurable
    threshold (default 10).  r >= 1 is reported as unstable, never
    clamped; the chain ratios are NaN there.
    """
    if p.stable:
        down, up = rates_updown(p) if p.zeta > 0 else (float("inf"), float("inf"))
        g_nl = p.g_nl
        soft = p.omega_m * p.zeta
        ratios = [
            ("gamma_up << kappa", p.kappa / up if up > 0 else float("inf")),
            ("kappa << g_nl", g_nl / p.kappa),
            ("g_nl << omega_m*zeta", soft / g_nl),
        ]
    else:
        down = up = float("nan")
        ratios = [
            ("gamma_up << kappa", float("nan")),
            ("kappa << g_nl", float("nan")),
            ("g_nl << omega_m*zeta", float("nan")),
        ]
    links = tuple(MeritLink(name, ratio, bool(ratio >= threshold)) for name, ratio in ratios)
    return MeritReport(
        P=p.merit,
        r=p.r,
        stable=p.stable,
        instability_margin=1.0 - p.r,
        gamma_down=down,
        gamma_up=up,
        threshold=threshold,
        links=links,
    )
