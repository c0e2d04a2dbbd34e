"""Exact synthesis of selective phase kernels into value-controlled diagonal gates.

Block ``i`` reads qubits ``m-1 .. 1`` as an integer control value and applies
``diag(exp(i a), exp(i b))`` to qubit 0 when that value equals ``i``.  Block 0
is therefore a negated-control gate, and for ``m = 1`` the single block has no
controls at all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import ShapeError, check_qubits
from .transform import PhaseProfile


class CircuitParseError(ValueError):
    """Malformed circuit JSON; the message names the offending field."""


@dataclass(frozen=True)
class ControlledPhaseBlock:
    block_index: int
    num_qubits: int
    target_phases: tuple[float, float]

    def __post_init__(self):
        m = check_qubits(self.num_qubits)
        if not 0 <= self.block_index < 1 << (m - 1):
            raise ValueError(f"block_index {self.block_index} out of range for {m} qubits")
        a, b = self.target_phases
        object.__setattr__(self, "target_phases", (float(a), float(b)))

    def target_gate(self) -> np.ndarray:
        """The 2x2 single-qubit gate applied to qubit 0."""
        return np.diag(np.exp(1j * np.asarray(self.target_phases)))

    def diagonal(self) -> np.ndarray:
        diag = np.ones(1 << self.num_qubits, dtype=np.complex128)
        i = 2 * self.block_index
        diag[i:i + 2] = np.exp(1j * np.asarray(self.target_phases))
        return diag


@dataclass(frozen=True)
class CircuitDescription:
    num_qubits: int
    blocks: tuple[ControlledPhaseBlock, ...] = ()

    def __post_init__(self):
        m = check_qubits(self.num_qubits)
        blocks = tuple(self.blocks)
        for b in blocks:
            if b.num_qubits != m:
                raise ShapeError(f"block {b.block_index} acts on {b.num_qubits} qubits, circuit has {m}")
        object.__setattr__(self, "blocks", blocks)


def decompose(phases: PhaseProfile) -> CircuitDescription:
    m = phases.num_qubits
    phi = phases.phi
    blocks = tuple(
        ControlledPhaseBlock(i, m, (phi[2 * i], phi[2 * i + 1])) for i in range(1 << (m - 1))
    )
    return CircuitDescription(m, blocks)


def block_matrix(b: ControlledPhaseBlock) -> np.ndarray:
    return np.diag(b.diagonal())


def compose_diagonal(c: CircuitDescription) -> np.ndarray:
    """Diagonal of the ordered block product (all blocks are diagonal)."""
    diag = np.ones(1 << c.num_qubits, dtype=np.complex128)
    for b in c.blocks:
        if b.num_qubits != c.num_qubits:
            raise ShapeError("blocks act on different qubit counts")
        i = 2 * b.block_index
        diag[i:i + 2] *= np.exp(1j * np.asarray(b.target_phases))
    return diag


def compose_circuit(c: CircuitDescription) -> np.ndarray:
    """Dense product ``L_0 L_1 ...`` of the circuit's blocks, in order."""
    return np.diag(compose_diagonal(c))


def blocks_unitary(c: CircuitDescription, tol: float = 1e-12) -> bool:
    """Every block is diagonal, so unitarity reduces to unit-modulus entries."""
    return all(np.max(np.abs(np.abs(b.diagonal()) - 1.0)) <= tol for b in c.blocks)


def circuit_to_dict(c: CircuitDescription) -> dict:
    return {
        "num_qubits": c.num_qubits,
        "blocks": [
            {"block_index": b.block_index, "target_phases": list(b.target_phases)} for b in c.blocks
        ],
    }


def emit_circuit(c: CircuitDescription) -> str:
    return json.dumps(circuit_to_dict(c), indent=2) + "\n"


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CircuitParseError(f"{field}: expected a number, got {value!r}")
    if not np.isfinite(value):
        raise CircuitParseError(f"{field}: must be finite")
    return float(value)


def circuit_from_dict(data) -> CircuitDescription:
    if not isinstance(data, dict):
        raise CircuitParseError("circuit: expected a JSON object")
    m = data.get("num_qubits")
    if isinstance(m, bool) or not isinstance(m, int):
        raise CircuitParseError(f"num_qubits: expected an integer, got {m!r}")
    try:
        m = check_qubits(m)
    except ValueError as exc:
        raise CircuitParseError(f"num_qubits: {exc}") from None
    raw_blocks = data.get("blocks")
    if not isinstance(raw_blocks, list):
        raise CircuitParseError("blocks: expected a list")
    seen = set()
    blocks = []
    for n, raw in enumerate(raw_blocks):
        where = f"blocks[{n}]"
        if not isinstance(raw, dict):
            raise CircuitParseError(f"{where}: expected an object")
        if "block_index" not in raw:
            raise CircuitParseError(f"{where}.block_index: missing")
        idx = raw["block_index"]
        if isinstance(idx, bool) or not isinstance(idx, int):
            raise CircuitParseError(f"{where}.block_index: expected an integer, got {idx!r}")
        if not 0 <= idx < 1 << (m - 1):
            raise CircuitParseError(f"{where}.block_index: {idx} out of range [0, {(1 << (m - 1)) - 1}]")
        if idx in seen:
            raise CircuitParseError(f"{where}.block_index: duplicate value {idx}")
        seen.add(idx)
        if "target_phases" not in raw:
            raise CircuitParseError(f"{where}.target_phases: missing")
        tp = raw["target_phases"]
        if not isinstance(tp, list) or len(tp) != 2:
            raise CircuitParseError(f"{where}.target_phases: expected a pair of numbers")
        pair = (_number(tp[0], f"{where}.target_phases[0]"), _number(tp[1], f"{where}.target_phases[1]"))
        blocks.append(ControlledPhaseBlock(idx, m, pair))
    return CircuitDescription(m, tuple(blocks))


def parse_circuit(text: str) -> CircuitDescription:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(f"circuit: invalid JSON ({exc})") from None
    return circuit_from_dict(data)
