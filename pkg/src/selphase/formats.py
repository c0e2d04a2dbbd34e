"""JSON file formats shared by the library and the command line.

Amplitudes: ``{"num_qubits": m, "amplitudes": [[re, im], ...]}``
Phases:     ``{"num_qubits": m, "phases": [phi_0, ...]}``
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .core import StateVector, check_qubits
from .transform import PhaseProfile


class FormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def _real(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FormatError(f"{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise FormatError(f"{field}: must be finite")
    return float(value)


def _header(data, key: str, limit: int | None) -> tuple[int, list]:
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    m = data.get("num_qubits")
    if isinstance(m, bool) or not isinstance(m, int):
        raise FormatError(f"num_qubits: expected an integer, got {m!r}")
    try:
        m = check_qubits(m, limit)
    except ValueError as exc:
        raise FormatError(f"num_qubits: {exc}") from None
    values = data.get(key)
    if not isinstance(values, list):
        raise FormatError(f"{key}: expected a list")
    if len(values) != 1 << m:
        raise FormatError(f"{key}: expected {1 << m} entries for {m} qubits, got {len(values)}")
    return m, values


def state_from_dict(data, limit: int | None = None) -> StateVector:
    m, values = _header(data, "amplitudes", limit)
    amps = np.empty(1 << m, dtype=np.complex128)
    for k, v in enumerate(values):
        where = f"amplitudes[{k}]"
        if isinstance(v, list):
            if len(v) != 2:
                raise FormatError(f"{where}: expected [re, im]")
            amps[k] = complex(_real(v[0], where + "[0]"), _real(v[1], where + "[1]"))
        else:
            amps[k] = _real(v, where)
    return StateVector(m, amps)


def state_to_dict(s: StateVector) -> dict:
    return {
        "num_qubits": s.num_qubits,
        "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes],
    }


def phases_from_dict(data, limit: int | None = None) -> PhaseProfile:
    m, values = _header(data, "phases", limit)
    return PhaseProfile(m, [_real(v, f"phases[{k}]") for k, v in enumerate(values)])


def phases_to_dict(p: PhaseProfile) -> dict:
    return {"num_qubits": p.num_qubits, "phases": [float(v) for v in p.phi]}


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dumps(obj) -> str:
    # repr-based float output round-trips exactly, so reports are byte-stable.
    return json.dumps(obj, indent=2) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, renamed on success."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
