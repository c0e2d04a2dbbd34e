"""Full-separability test for pure multi-qubit states via Segre quadric minors.

A state is a product of single-qubit states iff every quadric

    a[x] a[y] - a[x'] a[y']

vanishes, where ``x'`` and ``y'`` are ``x`` and ``y`` with bit ``j`` exchanged.
Canonical quadrics have bit ``j`` of ``x`` equal 0, bit ``j`` of ``y`` equal 1,
and the remaining bits of ``x`` (its *context*) strictly smaller than those of
``y``.  Each is a 2x2 minor of the qubit-``j`` flattening.

The flattening-rank oracle below shares no code with the quadric path and is
used to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import InvalidStateError, StateVector, check_qubits, plus_product_state
from .transform import PhaseProfile, apply_selective, make_selective_kernel

DEFAULT_TOL = 1e-8
PRODUCT_TOL = 1e-10
EXPERIMENT_MAX_QUBITS = 10


class QuadricContractError(ValueError):
    """Quadric index is not in canonical form."""


@dataclass(frozen=True, order=True)
class QuadricIndex:
    j: int
    x: int
    y: int

    def exchanged(self) -> tuple[int, int]:
        """``(x', y')``: ``x`` with bit ``j`` of ``y`` and vice versa."""
        bit = 1 << self.j
        return self.x | bit, self.y & ~bit

    def check(self, m: int) -> None:
        bit = 1 << self.j
        if not 0 <= self.j < m:
            raise QuadricContractError(f"qubit index {self.j} out of range for {m} qubits")
        if not (0 <= self.x < 1 << m and 0 <= self.y < 1 << m):
            raise QuadricContractError(f"basis indices ({self.x}, {self.y}) out of range")
        if self.x & bit or not self.y & bit:
            raise QuadricContractError(f"bit {self.j} must be 0 in x and 1 in y")
        if (self.x ^ self.y) & ~bit == 0:
            raise QuadricContractError("x and y must differ outside bit j")


@lru_cache(maxsize=None)
def _quadric_table(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Arrays ``(j, x, y, x', y')`` over all canonical quadrics, in canonical order."""
    half = 1 << (m - 1)
    if half < 2:
        empty = np.zeros(0, dtype=np.int64)
        return (empty,) * 5
    cx, cy = np.triu_indices(half, k=1)
    js, xs, ys, xps, yps = [], [], [], [], []
    for j in range(m):
        low = (1 << j) - 1
        bit = 1 << j

        def insert(ctx, b):
            # Put bit b at position j, shifting the context's higher bits up.
            return ((ctx & ~low) << 1) | (ctx & low) | (b * bit)

        xs.append(insert(cx, 0))
        ys.append(insert(cy, 1))
        xps.append(insert(cx, 1))
        yps.append(insert(cy, 0))
        js.append(np.full(cx.shape, j))
    out = tuple(np.concatenate(a).astype(np.int64) for a in (js, xs, ys, xps, yps))
    for a in out:
        a.setflags(write=False)
    return out


def quadric_count(m: int) -> int:
    half = 1 << (m - 1)
    return m * half * (half - 1) // 2


def enumerate_quadrics(m: int) -> list[QuadricIndex]:
    j, x, y, _, _ = _quadric_table(check_qubits(m))
    return [QuadricIndex(int(a), int(b), int(c)) for a, b, c in zip(j, x, y)]


def segre_minor(s: StateVector, q: QuadricIndex) -> complex:
    q.check(s.num_qubits)
    xp, yp = q.exchanged()
    a = s.amplitudes
    return complex(a[q.x] * a[q.y] - a[xp] * a[yp])


def _minor_residuals(amps: np.ndarray, m: int) -> np.ndarray:
    _, x, y, xp, yp = _quadric_table(m)
    return np.abs(amps[x] * amps[y] - amps[xp] * amps[yp])


def _unit_amplitudes(s: StateVector) -> np.ndarray:
    n = np.linalg.norm(s.amplitudes)
    if n == 0.0:
        raise InvalidStateError("the zero vector is not a state")
    return s.amplitudes / n


@dataclass(frozen=True)
class SegreReport:
    verdict: str
    max_residual: float
    tolerance: float
    violations: tuple[tuple[QuadricIndex, float], ...] = field(default=())
    violation_count: int = 0

    @property
    def is_product(self) -> bool:
        return self.verdict == "product"

    def to_dict(self, max_violations: int | None = None) -> dict:
        shown = self.violations if max_violations is None else self.violations[:max_violations]
        return {
            "verdict": self.verdict,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "violation_count": self.violation_count,
            "violations": [
                {"j": q.j, "x": q.x, "y": q.y, "residual": r} for q, r in shown
            ],
        }


def is_fully_product(s: StateVector, tol: float = DEFAULT_TOL, max_violations: int | None = None) -> SegreReport:
    """Evaluate every canonical quadric on the unit-normalized amplitudes.

    ``max_violations`` caps how many violated quadrics are materialized in the
    report (the first ones in canonical order); ``violation_count`` is always
    the full count.
    """
    m = s.num_qubits
    res = _minor_residuals(_unit_amplitudes(s), m)
    max_res = float(res.max()) if res.size else 0.0
    bad = np.flatnonzero(res > tol)
    shown = bad if max_violations is None else bad[:max(max_violations, 1)]
    j, x, y, _, _ = _quadric_table(m)
    violations = tuple(
        (QuadricIndex(int(j[k]), int(x[k]), int(y[k])), float(res[k])) for k in shown
    )
    return SegreReport(
        verdict="entangled" if bad.size else "product",
        max_residual=max_res,
        tolerance=tol,
        violations=violations,
        violation_count=int(bad.size),
    )


def _phase_residuals(phases: PhaseProfile) -> np.ndarray:
    _, x, y, xp, yp = _quadric_table(phases.num_qubits)
    phi = phases.phi
    return np.abs(np.exp(1j * (phi[x] + phi[y])) - np.exp(1j * (phi[xp] + phi[yp])))


def phase_condition(phases: PhaseProfile, tol: float = DEFAULT_TOL) -> tuple[bool, list[QuadricIndex]]:
    """Whether some quadric's phase sums differ on the unit circle, plus all such witnesses."""
    res = _phase_residuals(phases)
    bad = np.flatnonzero(res > tol)
    j, x, y, _, _ = _quadric_table(phases.num_qubits)
    witnesses = [QuadricIndex(int(j[k]), int(x[k]), int(y[k])) for k in bad]
    return bool(bad.size), witnesses


def kernel_output(phases: PhaseProfile, include_prefactor: bool = True) -> StateVector:
    """The kernel applied to the unnormalized plus-product state."""
    k = make_selective_kernel(phases, include_prefactor)
    return apply_selective(k, plus_product_state(phases.num_qubits, normalized=False))


def entangles(phases: PhaseProfile, tol: float = DEFAULT_TOL, include_prefactor: bool = True) -> bool:
    out = kernel_output(phases, include_prefactor)
    res = _minor_residuals(_unit_amplitudes(out), out.num_qubits)
    return bool(res.size and res.max() > tol)


# -- independent oracle -------------------------------------------------------


def flattening(s: StateVector, j: int) -> np.ndarray:
    """``2 x 2**(m-1)`` matrix: row = bit ``j``, column = remaining bits in position order."""
    m = s.num_qubits
    if not 0 <= j < m:
        raise IndexError(f"qubit index {j} out of range for {m} qubits")
    r = np.arange(1 << (m - 1))
    low_mask = (1 << j) - 1
    base = ((r >> j) << (j + 1)) | (r & low_mask)
    a = s.amplitudes
    return np.stack([a[base], a[base | (1 << j)]])


def flattening_singular_values(s: StateVector, j: int) -> tuple[float, float]:
    """Singular values ``(s1, s2)`` of the flattening via its 2x2 Gram matrix.

    ``s1`` comes from the closed-form top eigenvalue.  ``s2`` is the norm of the
    flattening projected onto the orthogonal eigenvector, which stays accurate
    to rounding level when ``s2 << s1`` (the eigenvalue difference would not).
    """
    f = flattening(s, j)
    g00 = float(np.vdot(f[0], f[0]).real)
    g11 = float(np.vdot(f[1], f[1]).real)
    g01 = complex(np.vdot(f[1], f[0]))  # G = F F^dagger, entry (0, 1)
    lam1 = 0.5 * (g00 + g11 + math.hypot(g00 - g11, 2.0 * abs(g01)))
    # Eigenvector of [[g00, g01], [conj(g01), g11]] for lam1; take the better-conditioned form.
    c1 = np.array([g01, lam1 - g00])
    c2 = np.array([lam1 - g11, g01.conjugate()])
    v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    nv = np.linalg.norm(v)
    v = np.array([1.0, 0.0], dtype=complex) if nv == 0.0 else v / nv
    w = np.array([-v[1].conjugate(), v[0].conjugate()])
    s2 = float(np.linalg.norm(w.conj() @ f))
    return math.sqrt(max(lam1, 0.0)), s2


def oracle_is_product(s: StateVector, tol: float = DEFAULT_TOL) -> bool:
    """Rank-1 test of every single-qubit flattening, relative threshold ``tol``."""
    if not np.any(s.amplitudes):
        raise InvalidStateError("the zero vector is not a state")
    for j in range(s.num_qubits):
        s1, s2 = flattening_singular_values(s, j)
        if s2 > tol * s1:
            return False
    return True


# -- experiment ---------------------------------------------------------------


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial generator derived from ``(seed, trial)`` only."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def random_profile(m: int, rng: np.random.Generator) -> PhaseProfile:
    return PhaseProfile(m, rng.uniform(0.0, 2.0 * np.pi, size=1 << m))


def _run_trial(m: int, seed: int, trial: int, tol: float) -> tuple[bool, bool, bool]:
    phases = random_profile(m, trial_rng(seed, trial))
    by_phase = bool(_phase_residuals(phases).max(initial=0.0) > tol)
    by_segre = entangles(phases, tol)
    by_oracle = not oracle_is_product(kernel_output(phases), tol)
    return by_phase, by_segre, by_oracle


def consistency_experiment(m: int, trials: int, seed: int, tol: float = DEFAULT_TOL) -> dict:
    """Compare the phase condition, the quadric test and the flattening oracle on random profiles."""
    m = check_qubits(m, EXPERIMENT_MAX_QUBITS)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    agreements = disagreements = entangled = 0
    for t in range(trials):
        by_phase, by_segre, by_oracle = _run_trial(m, seed, t, tol)
        if by_phase == by_segre == by_oracle:
            agreements += 1
        else:
            disagreements += 1
        entangled += by_oracle
    return {
        "num_qubits": m,
        "trials": trials,
        "seed": seed,
        "tolerance": tol,
        "agreements": agreements,
        "disagreements": disagreements,
        "entangled_count": entangled,
    }
