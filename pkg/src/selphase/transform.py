"""Discrete integral transforms and the selective phase rotation kernel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ShapeError, StateVector, as_matrix, check_qubits, is_unitary, qubits_for_length


class NotInvertibleError(ValueError):
    """Kernel is not unitary, so no inverse transform is available."""


@dataclass(frozen=True, eq=False)
class PhaseProfile:
    """Raw phases ``phi[x]`` in radians, one per basis index. Not reduced mod 2*pi."""

    num_qubits: int
    phi: np.ndarray

    def __post_init__(self):
        m = check_qubits(self.num_qubits)
        phi = np.array(self.phi, dtype=np.float64)
        if phi.ndim != 1 or phi.shape[0] != 1 << m:
            raise ShapeError(f"expected {1 << m} phases for {m} qubits, got shape {phi.shape}")
        if not np.all(np.isfinite(phi)):
            raise ValueError("phases must be finite")
        phi.setflags(write=False)
        object.__setattr__(self, "num_qubits", m)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_phases(cls, values) -> PhaseProfile:
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1:
            raise ShapeError(f"phases must be one-dimensional, got shape {arr.shape}")
        return cls(qubits_for_length(arr.shape[0]), arr)

    @classmethod
    def additive(cls, coeffs) -> PhaseProfile:
        """``phi[x] = sum_j coeffs[j] * x_j``; such profiles never entangle."""
        coeffs = np.asarray(coeffs, dtype=np.float64)
        m = coeffs.shape[0]
        x = np.arange(1 << m)
        bits = (x[:, None] >> np.arange(m)) & 1
        return cls(m, bits @ coeffs)

    def __neg__(self) -> PhaseProfile:
        return PhaseProfile(self.num_qubits, -self.phi)

    def __add__(self, other: PhaseProfile) -> PhaseProfile:
        if other.num_qubits != self.num_qubits:
            raise ShapeError("phase profiles act on different qubit counts")
        return PhaseProfile(self.num_qubits, self.phi + other.phi)


@dataclass(frozen=True, eq=False)
class SelectivePhaseKernel:
    phases: PhaseProfile
    prefactor: float = 1.0

    @property
    def num_qubits(self) -> int:
        return self.phases.num_qubits

    def diagonal(self) -> np.ndarray:
        return self.prefactor * np.exp(1j * self.phases.phi)

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal())


def make_selective_kernel(phases: PhaseProfile, include_prefactor: bool = False) -> SelectivePhaseKernel:
    """Diagonal kernel ``prefactor * exp(i phi_x)``.

    With ``include_prefactor`` the kernel carries ``2**(-m/2)``, which exactly
    normalizes the unnormalized plus-product input but breaks unitarity.
    """
    prefactor = 2.0 ** (-phases.num_qubits / 2) if include_prefactor else 1.0
    return SelectivePhaseKernel(phases, prefactor)


def _kernel_matrix(k) -> np.ndarray:
    if isinstance(k, SelectivePhaseKernel):
        return k.dense()
    mat = as_matrix(k)
    qubits_for_length(mat.shape[0])
    return mat


def dit_apply(k, f: StateVector) -> StateVector:
    """``out[y] = sum_x K[x, y] f[x]``, i.e. contraction over the row index."""
    mat = _kernel_matrix(k)
    if mat.shape[0] != f.dim:
        raise ShapeError(f"kernel of dim {mat.shape[0]} cannot act on {f.dim} amplitudes")
    return StateVector(f.num_qubits, mat.T @ f.amplitudes)


def dit_invert(k, ftilde: StateVector, tol: float = 1e-10) -> StateVector:
    """Inverse of :func:`dit_apply`: ``f[x] = sum_y conj(K[x, y]) ftilde[y]``."""
    mat = _kernel_matrix(k)
    if mat.shape[0] != ftilde.dim:
        raise ShapeError(f"kernel of dim {mat.shape[0]} cannot act on {ftilde.dim} amplitudes")
    if not is_unitary(mat, tol):
        raise NotInvertibleError("kernel is not unitary within tolerance")
    return StateVector(ftilde.num_qubits, mat.conj() @ ftilde.amplitudes)


def apply_selective(k: SelectivePhaseKernel, f: StateVector) -> StateVector:
    if k.num_qubits != f.num_qubits:
        raise ShapeError(f"kernel on {k.num_qubits} qubits cannot act on a {f.num_qubits}-qubit state")
    return StateVector(f.num_qubits, k.diagonal() * f.amplitudes)
