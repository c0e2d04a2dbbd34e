"""Dense statevectors and small matrices.

Bit ``j`` of a basis index is the label of qubit ``j``; qubit ``m-1`` is the
most significant bit.  Matrices are plain complex ``numpy`` arrays.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

LIBRARY_MAX_QUBITS = 20
MAX_QUBITS_ENV = "ENTANGLER_MAX_QUBITS"


class InvalidSizeError(ValueError):
    """Qubit count out of the supported range."""


class ShapeError(ValueError):
    """Operand dimensions do not match."""


class InvalidStateError(ValueError):
    """State cannot be analysed (e.g. the zero vector)."""


def max_qubits(default: int = LIBRARY_MAX_QUBITS) -> int:
    """Size guard, overridable through ``ENTANGLER_MAX_QUBITS``."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidSizeError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidSizeError(f"{MAX_QUBITS_ENV} must be positive, got {value}")
    return value


def check_qubits(m: int, limit: int | None = None) -> int:
    limit = max_qubits() if limit is None else limit
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise InvalidSizeError(f"qubit count must be an integer, got {m!r}")
    if m < 1 or m > limit:
        raise InvalidSizeError(f"qubit count must be in [1, {limit}], got {m}")
    return int(m)


def qubits_for_length(n: int) -> int:
    """Return ``m`` with ``2**m == n``; raise :class:`ShapeError` otherwise."""
    if n < 2 or n & (n - 1):
        raise ShapeError(f"length must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over the binary basis ``0 .. 2**m - 1``. Never normalized implicitly."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        m = check_qubits(self.num_qubits)
        amps = _frozen(self.amplitudes, np.complex128)
        if amps.ndim != 1 or amps.shape[0] != 1 << m:
            raise ShapeError(f"expected {1 << m} amplitudes for {m} qubits, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "num_qubits", m)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, values) -> StateVector:
        arr = np.asarray(values, dtype=np.complex128)
        if arr.ndim != 1:
            raise ShapeError(f"amplitudes must be one-dimensional, got shape {arr.shape}")
        return cls(qubits_for_length(arr.shape[0]), arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        n = self.norm()
        if n == 0.0:
            raise InvalidStateError("cannot normalize the zero vector")
        return StateVector(self.num_qubits, self.amplitudes / n)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"


def basis_state(m: int, index: int) -> StateVector:
    m = check_qubits(m)
    if not 0 <= index < 1 << m:
        raise IndexError(f"basis index {index} out of range for {m} qubits")
    amps = np.zeros(1 << m, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(m, amps)


def plus_product_state(m: int, normalized: bool = False) -> StateVector:
    """Tensor power of ``|0> + |1>``; all ones, or ``2**(-m/2)`` when normalized."""
    m = check_qubits(m)
    value = 2.0 ** (-m / 2) if normalized else 1.0
    return StateVector(m, np.full(1 << m, value, dtype=np.complex128))


def kron(a: StateVector, b: StateVector) -> StateVector:
    """Index ``x * 2**m_b + y`` of the result holds ``a[x] * b[y]``."""
    m = a.num_qubits + b.num_qubits
    check_qubits(m)
    return StateVector(m, np.kron(a.amplitudes, b.amplitudes))


def as_matrix(a) -> np.ndarray:
    """Validate and convert to a square, finite complex matrix."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"matrix must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def apply_matrix(mat, s: StateVector) -> StateVector:
    mat = as_matrix(mat)
    if mat.shape[0] != s.dim:
        raise ShapeError(f"matrix of dim {mat.shape[0]} cannot act on {s.dim} amplitudes")
    return StateVector(s.num_qubits, mat @ s.amplitudes)


def _check_same(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matrix_product(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def max_abs_diff(a, b) -> float:
    a, b = np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    _check_same(a, b)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def is_unitary(a, tol: float = 1e-12) -> bool:
    a = as_matrix(a)
    return max_abs_diff(a.conj().T @ a, np.eye(a.shape[0])) <= tol
