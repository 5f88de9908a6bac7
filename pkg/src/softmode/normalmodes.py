"""Diagonalization of the driven bilinear optical/mechanical Hamiltonian.

The coupled b-c quadratic form is rotated into decoupled oscillators by
rescaling the mechanical quadratures and rotating by a mixing angle
theta; the upper branch (mostly optical) keeps a dimensionless
frequency xi_+ near 1 while the lower branch (mostly mechanical)
softens as the rescaled driving amplitude r approaches 1 and its
frequency xi_- goes to zero.  Beyond r = 1 the lower branch is
dynamically unstable.

Everything exact is carried alongside the first-order-in-eta
approximants so callers can switch between the two regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockspace import FockConfig, ModeOperator, compose, creator, ladder

__all__ = [
    "BilinearParams",
    "NormalModeData",
    "InverseTransform",
    "diagonalize",
    "normal_mode_operators",
    "inverse_transform",
    "first_order_coefficients",
]


@dataclass(frozen=True)
class BilinearParams:
    """Inputs of the bilinear problem, all in the same rate units.

    delta_b: detuning of the driven optical mode (> 0)
    omega_m: mechanical frequency (> 0)
    G0:      pump-enhanced linear coupling (real, >= 0 by phase convention)
    """

    delta_b: float
    omega_m: float
    G0: float

    def __post_init__(self):
        if self.omega_m <= 0:
            raise ValueError("omega_m must be positive")
        if self.delta_b <= 0:
            raise ValueError("delta_b must be positive")
        if self.G0 < 0:
            raise ValueError("G0 must be non-negative (choose the pump phase)")

    @classmethod
    def from_r(cls, delta_b: float, omega_m: float, r: float) -> "BilinearParams":
        """Construct from the rescaled driving amplitude r = 2 G0 / sqrt(omega_m delta_b)."""
        return cls(delta_b, omega_m, 0.5 * r * math.sqrt(omega_m * delta_b))

    @property
    def eta(self) -> float:
        return self.omega_m / self.delta_b

    @property
    def r(self) -> float:
        return 2.0 * self.G0 / math.sqrt(self.omega_m * self.delta_b)


@dataclass(frozen=True)
class NormalModeData:
    """Exact diagonalization output plus first-order approximants.

    The coefficient vectors express the normal-mode annihilation
    operators in the ordered basis (b, b_dag, c, c_dag); they are real.
    For r > 1 the lower branch is unstable: xi_minus_sq < 0 is kept as a
    negative real, xi_minus is reported as -sqrt(-xi_minus_sq), and the
    lower-branch coefficient vector is NaN.
    """

    phi: float
    theta: float
    alpha: float
    beta: float
    xi_plus: float
    xi_minus: float
    xi_minus_sq: float
    omega_plus: float
    omega_minus: float
    eta: float
    r: float
    zeta_exact: float
    zeta_firstorder: float
    delta_shift: float
    stable: bool
    coeffs_dplus: np.ndarray
    coeffs_dminus: np.ndarray


def diagonalize(p: BilinearParams) -> NormalModeData:
    """Closed-form normal modes of the bilinear b-c Hamiltonian.

    Uses cancellation-free forms of the closed-form frequencies:
    xi_-^2 = (1+eta^2)/2 * s / (1 + sqrt(1-s)) with
    s = (1-r^2) sin^2(2 phi), which stays accurate deep into the
    near-instability corner where the textbook 1 - sqrt(...) expression
    loses every significant digit.  The product identity
    xi_+ xi_- = eta zeta holds exactly.
    """
    eta = p.eta
    r = p.r

    # tan(phi) = eta, so the double-angle values are rational in eta
    one_plus = 1.0 + eta * eta
    sin2phi = 2.0 * eta / one_plus
    cos2phi = (1.0 - eta * eta) / one_plus

    s = (1.0 - r * r) * sin2phi * sin2phi
    root = math.sqrt(1.0 - s)  # s <= sin^2(2 phi) <= 1 always
    xi_plus = math.sqrt(0.5 * one_plus * (1.0 + root))
    xi_minus_sq = 0.5 * one_plus * s / (1.0 + root)
    stable = xi_minus_sq >= 0.0
    xi_minus = math.copysign(math.sqrt(abs(xi_minus_sq)), xi_minus_sq)

    theta = 0.5 * math.atan2(r * sin2phi, cos2phi)
    alpha = math.cos(theta)
    beta = math.sin(theta)

    zeta_exact = math.sqrt(1.0 - r * r) if r <= 1.0 else float("nan")
    # effective zeta implied by the exact lower frequency (-> zeta as eta -> 0)
    zeta_first = xi_minus / eta if stable else float("nan")

    if stable and xi_minus > 0.0:
        coeffs_dplus = _mode_coefficients(xi_plus, eta, alpha, -beta)
        coeffs_dminus = _mode_coefficients(xi_minus, eta, beta, alpha)
    else:
        # r >= 1: the soft branch is a free/inverted oscillator, no bosonic d_-
        coeffs_dplus = _mode_coefficients(xi_plus, eta, alpha, -beta)
        coeffs_dminus = np.full(4, np.nan)

    return NormalModeData(
        phi=math.atan(eta),
        theta=theta,
        alpha=alpha,
        beta=beta,
        xi_plus=xi_plus,
        xi_minus=xi_minus,
        xi_minus_sq=xi_minus_sq,
        omega_plus=p.delta_b * xi_plus,
        omega_minus=p.delta_b * xi_minus,
        eta=eta,
        r=r,
        zeta_exact=zeta_exact,
        zeta_firstorder=zeta_first,
        delta_shift=0.5 * r * r * p.omega_m * eta,
        stable=stable,
        coeffs_dplus=coeffs_dplus,
        coeffs_dminus=coeffs_dminus,
    )


def _mode_coefficients(xi: float, eta: float, w_b: float, w_c: float) -> np.ndarray:
    """Coefficients of d = sqrt(xi/2) X + i Y / sqrt(2 xi) over (b, b_dag, c, c_dag).

    w_b, w_c are the rotation weights of the branch in the rescaled
    quadrature basis (X = w_b X_b' + w_c X_c', same for Y).
    """
    sx = math.sqrt(xi)
    se = math.sqrt(eta)
    return np.array([
        0.5 * w_b * (sx + 1.0 / sx),
        0.5 * w_b * (sx - 1.0 / sx),
        0.5 * w_c * (sx / se + se / sx),
        0.5 * w_c * (sx / se - se / sx),
    ])


def commutator_norm(coeffs: np.ndarray) -> float:
    """[d, d_dag] evaluated from a coefficient vector over (b, b_dag, c, c_dag).

    Bosonic normalization requires the symplectic combination
    |u_b|^2 - |u_bdag|^2 + |u_c|^2 - |u_cdag|^2 to equal one.
    """
    u = np.asarray(coeffs)
    return float(abs(u[0]) ** 2 - abs(u[1]) ** 2 + abs(u[2]) ** 2 - abs(u[3]) ** 2)


def normal_mode_operators(nm: NormalModeData, config: FockConfig,
                          b_label: str = "b", c_label: str = "c",
                          ) -> tuple[ModeOperator, ModeOperator]:
    """Build d_+ and d_- on a space containing the b and c modes.

    The exact coefficient vectors are used, not the first-order forms.
    """
    if not nm.stable or nm.xi_minus <= 0.0:
        raise ValueError("no bosonic lower branch at or beyond the instability (r >= 1)")
    b = ladder(config, b_label)
    bd = creator(config, b_label)
    c = ladder(config, c_label)
    cd = creator(config, c_label)
    basis = (b, bd, c, cd)
    d_plus = compose(zip(nm.coeffs_dplus, basis))
    d_minus = compose(zip(nm.coeffs_dminus, basis))
    return d_plus, d_minus


@dataclass(frozen=True)
class InverseTransform:
    """b and c expressed over the ordered basis (d_+, d_+dag, d_-, d_-dag)."""

    b_coeffs: np.ndarray
    c_coeffs: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """4x4 map (b, b_dag, c, c_dag) <- (d_+, d_+dag, d_-, d_-dag)."""
        return np.vstack([
            self.b_coeffs,
            _swap_pairs(self.b_coeffs),
            self.c_coeffs,
            _swap_pairs(self.c_coeffs),
        ])


def _swap_pairs(u: np.ndarray) -> np.ndarray:
    """Coefficients of the dagger of a real linear combination."""
    return np.array([u[1], u[0], u[3], u[2]])


def forward_matrix(nm: NormalModeData) -> np.ndarray:
    """4x4 map (d_+, d_+dag, d_-, d_-dag) <- (b, b_dag, c, c_dag)."""
    return np.vstack([
        nm.coeffs_dplus,
        _swap_pairs(nm.coeffs_dplus),
        nm.coeffs_dminus,
        _swap_pairs(nm.coeffs_dminus),
    ])


def inverse_transform(nm: NormalModeData) -> InverseTransform:
    """Closed-form inverse of the normal-mode map.

    The (d_- + d_-dag) coefficient of c carries the 1/sqrt(xi_-)
    harmonic-length growth that drives the whole nonlinearity
    enhancement near r = 1.
    """
    if not nm.stable or nm.xi_minus <= 0.0:
        raise ValueError("inverse transform undefined at or beyond the instability")
    a, b = nm.alpha, nm.beta
    xp, xm = nm.xi_plus, nm.xi_minus
    se = math.sqrt(nm.eta)
    sp_, sm = math.sqrt(xp), math.sqrt(xm)
    b_coeffs = np.array([
        0.5 * a * (1.0 / sp_ + sp_),
        0.5 * a * (1.0 / sp_ - sp_),
        0.5 * b * (1.0 / sm + sm),
        0.5 * b * (1.0 / sm - sm),
    ])
    c_coeffs = np.array([
        -0.5 * b * (se / sp_ + sp_ / se),
        -0.5 * b * (se / sp_ - sp_ / se),
        0.5 * a * (se / sm + sm / se),
        0.5 * a * (se / sm - sm / se),
    ])
    return InverseTransform(b_coeffs=b_coeffs, c_coeffs=c_coeffs)


def first_order_coefficients(nm: NormalModeData) -> tuple[np.ndarray, np.ndarray]:
    """First-order-in-eta normal-mode coefficients over (b, b_dag, c, c_dag).

    bbar ~ b - (r/2) sqrt(eta) (c + c_dag)
    d    ~ (c - c_dag)/(2 sqrt(zeta)) + sqrt(zeta) (c + c_dag)/2
           + (r/2) sqrt(eta/zeta) (b - b_dag)

    The (r/2) sqrt(eta/zeta) weight of the optical admixture in d
    follows from expanding the exact coefficients; a variant without
    the 1/sqrt(zeta) appears in some first-order write-ups but does not
    arise from the expansion, so this form is used.
    """
    r, eta, zeta = nm.r, nm.eta, nm.zeta_exact
    if not nm.stable or zeta == 0.0:
        raise ValueError("first-order forms need 0 <= r < 1")
    sq = 0.5 * r * math.sqrt(eta)
    bbar = np.array([1.0, 0.0, -sq, -sq])
    sz = math.sqrt(zeta)
    mix = 0.5 * r * math.sqrt(eta / zeta)
    d = np.array([mix, -mix, 0.5 / sz + 0.5 * sz, 0.5 * sz - 0.5 / sz])
    return bbar, d
