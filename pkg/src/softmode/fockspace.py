"""Operator algebra on truncated multi-mode bosonic Fock spaces.

Ladder operators are lifted onto the tensor-product space with
identity Kronecker factors.  Operators are stored sparse (CSR), states
dense; at the truncations used here (total dimension of order a few
hundred) superoperator actions are ordinary matrix products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.sparse as sp

__all__ = [
    "FockConfig",
    "ModeOperator",
    "QuantumState",
    "lab_config",
    "normal_config",
    "identity",
    "zero_operator",
    "ladder",
    "creator",
    "number",
    "compose",
    "expectation",
    "basis_state",
    "vacuum_state",
    "density_state",
]

ModeKey = Union[int, str]


@dataclass(frozen=True)
class FockConfig:
    """Truncation scheme: per-mode dimensions and symbolic labels.

    Mode ordering is significant; the composite basis index is row-major
    in the occupation tuple, so the first mode varies slowest.
    """

    mode_dims: tuple[int, ...]
    mode_labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "mode_dims", tuple(int(d) for d in self.mode_dims))
        object.__setattr__(self, "mode_labels", tuple(self.mode_labels))
        if len(self.mode_dims) != len(self.mode_labels):
            raise ValueError("mode_dims and mode_labels must have equal length")
        if len(set(self.mode_labels)) != len(self.mode_labels):
            raise ValueError(f"mode labels must be unique, got {self.mode_labels}")
        if any(d < 2 for d in self.mode_dims):
            raise ValueError(f"every mode dimension must be >= 2, got {self.mode_dims}")

    @property
    def n_modes(self) -> int:
        return len(self.mode_dims)

    @property
    def dim(self) -> int:
        return math.prod(self.mode_dims)

    def mode_index(self, mode: ModeKey) -> int:
        if isinstance(mode, str):
            try:
                return self.mode_labels.index(mode)
            except ValueError:
                raise ValueError(
                    f"unknown mode label {mode!r}; have {self.mode_labels}"
                ) from None
        idx = int(mode)
        if not 0 <= idx < self.n_modes:
            raise ValueError(f"mode index {idx} out of range for {self.n_modes} modes")
        return idx

    def basis_index(self, occupations: Sequence[int]) -> int:
        """Flat index of the basis ket |n_0, n_1, ...>."""
        if len(occupations) != self.n_modes:
            raise ValueError("occupation tuple length does not match mode count")
        idx = 0
        for n, d in zip(occupations, self.mode_dims):
            if not 0 <= n < d:
                raise ValueError(f"occupation {n} outside truncation (dim {d})")
            idx = idx * d + n
        return idx

    def occupations(self, basis_index: int) -> tuple[int, ...]:
        occ = []
        for d in reversed(self.mode_dims):
            occ.append(basis_index % d)
            basis_index //= d
        return tuple(reversed(occ))

    def bumped(self, extra: int = 1) -> "FockConfig":
        """Same modes with every dimension increased (truncation convergence runs)."""
        return FockConfig(tuple(d + extra for d in self.mode_dims), self.mode_labels)


def lab_config(dim: int = 4, dims: Sequence[int] | None = None) -> FockConfig:
    """Three-mode lab-basis space with modes (a, b, c)."""
    d = tuple(dims) if dims is not None else (dim,) * 3
    return FockConfig(d, ("a", "b", "c"))


def normal_config(dim: int = 4, with_f: bool = False,
                  dims: Sequence[int] | None = None) -> FockConfig:
    """Normal-mode space with ordering (a, bbar, d) and optional cooling mode f."""
    labels = ("a", "bbar", "d", "f") if with_f else ("a", "bbar", "d")
    d = tuple(dims) if dims is not None else (dim,) * len(labels)
    return FockConfig(d, labels)


class ModeOperator:
    """A sparse complex operator bound to the FockConfig it lives on."""

    __slots__ = ("matrix", "config")

    def __init__(self, matrix, config: FockConfig):
        matrix = sp.csr_matrix(matrix, dtype=np.complex128)
        if matrix.shape != (config.dim, config.dim):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match config dimension {config.dim}"
            )
        self.matrix = matrix
        self.config = config

    # -- algebra ---------------------------------------------------------

    def _check(self, other: "ModeOperator") -> None:
        if self.config != other.config:
            raise ValueError("operators live on different Fock configurations")

    def __add__(self, other: "ModeOperator") -> "ModeOperator":
        self._check(other)
        return ModeOperator(self.matrix + other.matrix, self.config)

    def __sub__(self, other: "ModeOperator") -> "ModeOperator":
        self._check(other)
        return ModeOperator(self.matrix - other.matrix, self.config)

    def __neg__(self) -> "ModeOperator":
        return ModeOperator(-self.matrix, self.config)

    def __mul__(self, scalar: complex) -> "ModeOperator":
        return ModeOperator(self.matrix * complex(scalar), self.config)

    __rmul__ = __mul__

    def __matmul__(self, other: "ModeOperator") -> "ModeOperator":
        self._check(other)
        return ModeOperator(self.matrix @ other.matrix, self.config)

    def dag(self) -> "ModeOperator":
        return ModeOperator(self.matrix.conjugate().transpose().tocsr(), self.config)

    def plus_hc(self) -> "ModeOperator":
        """O + O†."""
        return self + self.dag()

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def is_hermitian(self, tol: float = 0.0) -> bool:
        diff = self.matrix - self.matrix.conjugate().transpose()
        if diff.nnz == 0:
            return True
        return abs(diff).max() <= tol

    def norm(self) -> float:
        return sp.linalg.norm(self.matrix)

    def __repr__(self):
        return (f"ModeOperator(dim={self.config.dim}, nnz={self.matrix.nnz}, "
                f"modes={self.config.mode_labels})")


def identity(config: FockConfig) -> ModeOperator:
    return ModeOperator(sp.identity(config.dim, dtype=np.complex128, format="csr"), config)


def zero_operator(config: FockConfig) -> ModeOperator:
    return ModeOperator(sp.csr_matrix((config.dim, config.dim), dtype=np.complex128), config)


def ladder(config: FockConfig, mode: ModeKey) -> ModeOperator:
    """Annihilation operator of one mode on the full tensor-product space.

    On the truncated single-mode space <n-1|A|n> = sqrt(n) for 1 <= n < dim;
    the lift is I x ... x A x ... x I.  The creation operator is the
    conjugate transpose.  Note [A, A@] deviates from 1 in the highest
    Fock level, a truncation artifact shared by every finite scheme.
    """
    k = config.mode_index(mode)
    mat = None
    for i, d in enumerate(config.mode_dims):
        if i == k:
            factor = sp.diags(np.sqrt(np.arange(1, d)), 1, dtype=np.complex128)
        else:
            factor = sp.identity(d, dtype=np.complex128)
        mat = factor if mat is None else sp.kron(mat, factor, format="csr")
    return ModeOperator(mat, config)


def creator(config: FockConfig, mode: ModeKey) -> ModeOperator:
    return ladder(config, mode).dag()


def number(config: FockConfig, mode: ModeKey) -> ModeOperator:
    a = ladder(config, mode)
    return a.dag() @ a


Term = tuple  # (coefficient, ModeOperator | iterable of ModeOperator)


def compose(terms: Iterable[Term]) -> ModeOperator:
    """Sparse sum of scaled operator products.

    Each term is (coefficient, op) or (coefficient, [op1, op2, ...]);
    the product is taken left to right.  All operands must share one
    FockConfig.  Arithmetic is exact sparse arithmetic; nothing is
    thresholded away.
    """
    total = None
    for coeff, ops in terms:
        if isinstance(ops, ModeOperator):
            ops = (ops,)
        else:
            ops = tuple(ops)
        if not ops:
            raise ValueError("empty operator product in compose()")
        prod = ops[0]
        for op in ops[1:]:
            prod = prod @ op
        scaled = complex(coeff) * prod
        total = scaled if total is None else total + scaled
    if total is None:
        raise ValueError("compose() needs at least one term")
    return total


class QuantumState:
    """Pure vector or density matrix on a truncated Fock space."""

    __slots__ = ("kind", "data", "config")

    def __init__(self, kind: str, data: np.ndarray, config: FockConfig):
        if kind not in ("pure", "density"):
            raise ValueError(f"kind must be 'pure' or 'density', got {kind!r}")
        data = np.asarray(data, dtype=np.complex128)
        expected = (config.dim,) if kind == "pure" else (config.dim, config.dim)
        if data.shape != expected:
            raise ValueError(f"state shape {data.shape} does not match {expected}")
        self.kind = kind
        self.data = data
        self.config = config

    def trace(self) -> float:
        if self.kind == "pure":
            return float(np.vdot(self.data, self.data).real)
        return float(np.trace(self.data).real)

    def to_density(self) -> "QuantumState":
        if self.kind == "density":
            return self
        return QuantumState("density", np.outer(self.data, self.data.conj()), self.config)

    def normalized(self) -> "QuantumState":
        if self.kind == "pure":
            return QuantumState("pure", self.data / np.linalg.norm(self.data), self.config)
        return QuantumState("density", self.data / np.trace(self.data).real, self.config)

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the density matrix (positivity diagnostic)."""
        rho = self.to_density().data
        return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])

    def validate(self, tol: float = 1e-10) -> None:
        """Raise if the state violates its norm/Hermiticity/trace invariants."""
        if self.kind == "pure":
            if abs(np.linalg.norm(self.data) - 1.0) > tol:
                raise ValueError("pure state is not normalized")
            return
        rho = self.data
        if np.max(np.abs(rho - rho.conj().T)) > tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > tol:
            raise ValueError("density matrix trace differs from 1")
        if self.min_eigenvalue() < -tol:
            raise ValueError("density matrix has negative eigenvalues")

    def __repr__(self):
        return f"QuantumState(kind={self.kind!r}, dim={self.config.dim})"


def expectation(state: QuantumState, op: ModeOperator) -> complex:
    """tr(rho O) for density matrices, <psi|O|psi> for pure states."""
    if state.config != op.config:
        raise ValueError("state and operator live on different Fock configurations")
    if state.kind == "pure":
        return complex(np.vdot(state.data, op.matrix @ state.data))
    # tr(rho O) = sum_ij rho_ij O_ji
    return complex((op.matrix @ state.data).diagonal().sum())


def basis_state(config: FockConfig, occupations: Sequence[int]) -> QuantumState:
    vec = np.zeros(config.dim, dtype=np.complex128)
    vec[config.basis_index(occupations)] = 1.0
    return QuantumState("pure", vec, config)


def vacuum_state(config: FockConfig) -> QuantumState:
    return basis_state(config, (0,) * config.n_modes)


def density_state(config: FockConfig, rho: np.ndarray) -> QuantumState:
    return QuantumState("density", np.asarray(rho, dtype=np.complex128), config)
