"""Diagonal plus anti-diagonal entangler ``R``, generalized swap ``P`` and ``tau = R P``.

Layout of ``R`` for ``N = 2**m``: the corners ``(0, 0)`` and ``(N-1, N-1)``
hold ``alpha[0]`` and ``alpha[N-1]``; each middle row ``k`` holds ``alpha[k]``
in column ``N-1-k``.  Acting on the all-ones vector it therefore yields
``alpha`` itself, and ``R P = diag(alpha)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import StateVector, apply_matrix, check_qubits, plus_product_state, qubits_for_length


def swap_permutation(m: int) -> np.ndarray:
    """``sigma`` with ``sigma[0] = 0``, ``sigma[N-1] = N-1`` and ``sigma[k] = N-1-k`` otherwise."""
    n = 1 << m
    sigma = n - 1 - np.arange(n)
    sigma[0], sigma[-1] = 0, n - 1
    return sigma


@dataclass(frozen=True, eq=False)
class EntanglerR:
    num_qubits: int
    alpha: np.ndarray

    def __post_init__(self):
        m = check_qubits(self.num_qubits)
        alpha = np.array(self.alpha, dtype=np.complex128)
        if alpha.shape != (1 << m,):
            raise ValueError(f"expected {1 << m} coefficients, got shape {alpha.shape}")
        alpha.setflags(write=False)
        object.__setattr__(self, "num_qubits", m)
        object.__setattr__(self, "alpha", alpha)

    def columns(self) -> np.ndarray:
        """Column holding the single nonzero slot of each row."""
        return swap_permutation(self.num_qubits)

    def dense(self) -> np.ndarray:
        n = 1 << self.num_qubits
        mat = np.zeros((n, n), dtype=np.complex128)
        mat[np.arange(n), self.columns()] = self.alpha
        return mat


@dataclass(frozen=True)
class GeneralizedSwap:
    """Self-inverse permutation; the ordinary SWAP gate for two qubits."""

    num_qubits: int

    def permutation(self) -> np.ndarray:
        return swap_permutation(self.num_qubits)

    def dense(self) -> np.ndarray:
        n = 1 << self.num_qubits
        mat = np.zeros((n, n), dtype=np.complex128)
        mat[np.arange(n), self.permutation()] = 1.0
        return mat


def build_R(alpha) -> EntanglerR:
    alpha = np.asarray(alpha, dtype=np.complex128)
    if alpha.ndim != 1:
        raise ValueError(f"alpha must be one-dimensional, got shape {alpha.shape}")
    return EntanglerR(qubits_for_length(alpha.shape[0]), alpha)


def build_P(m: int) -> GeneralizedSwap:
    return GeneralizedSwap(check_qubits(m))


def tau(alpha) -> np.ndarray:
    r = build_R(alpha)
    return r.dense() @ build_P(r.num_qubits).dense()


def apply_R_to_plus(r: EntanglerR) -> StateVector:
    return apply_matrix(r.dense(), plus_product_state(r.num_qubits, normalized=False))


def r_unitarity_check(r: EntanglerR, tol: float = 1e-10) -> bool:
    """One nonzero per row and column, so ``R`` is unitary iff every ``|alpha|`` is 1."""
    return bool(np.all(np.abs(np.abs(r.alpha) - 1.0) <= tol))
