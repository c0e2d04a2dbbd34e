import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selphase.core import ShapeError, is_unitary, max_abs_diff
from selphase.synthesis import (
    CircuitDescription,
    CircuitParseError,
    ControlledPhaseBlock,
    block_matrix,
    compose_circuit,
    decompose,
    emit_circuit,
    parse_circuit,
)
from selphase.transform import PhaseProfile, make_selective_kernel

from conftest import phase_lists

A0 = np.diag([1.0, 0.0])
A1 = np.diag([0.0, 1.0])


def controlled_oracle(m, i, a, b):
    """Projector form: |i><i| (x) U + (I - |i><i|) (x) I on control qubits m-1..1, target qubit 0."""
    proj = np.zeros((1 << (m - 1), 1 << (m - 1)))
    proj[i, i] = 1.0
    u = np.diag([np.exp(1j * a), np.exp(1j * b)])
    return np.kron(proj, u) + np.kron(np.eye(1 << (m - 1)) - proj, np.eye(2))


def test_two_qubit_example_identity_then_cz():
    c = decompose(PhaseProfile(2, [0, 0, 0, np.pi]))
    assert [b.block_index for b in c.blocks] == [0, 1]
    np.testing.assert_array_equal(c.blocks[0].target_gate(), np.eye(2))
    np.testing.assert_allclose(c.blocks[1].target_gate(), np.diag([1, -1]), atol=1e-15)
    l0 = np.kron(A0, c.blocks[0].target_gate()) + np.kron(A1, np.eye(2))
    l1 = np.kron(A0, np.eye(2)) + np.kron(A1, c.blocks[1].target_gate())
    np.testing.assert_allclose(l0 @ l1, np.diag([1, 1, 1, -1]), atol=1e-15)
    np.testing.assert_array_equal(compose_circuit(c), l0 @ l1)


def test_single_qubit_has_one_uncontrolled_block():
    c = decompose(PhaseProfile(1, [0.2, 0.9]))
    assert len(c.blocks) == 1
    np.testing.assert_array_equal(block_matrix(c.blocks[0]), np.diag(np.exp(1j * np.array([0.2, 0.9]))))


def test_three_qubit_target_gates():
    phi = np.arange(8) * 0.37
    c = decompose(PhaseProfile(3, phi))
    assert len(c.blocks) == 4
    for i, b in enumerate(c.blocks):
        # U_i carries phi at 2i and 2i+1 (binary contexts 00, 01, 10, 11 on the top qubits)
        np.testing.assert_array_equal(b.target_gate(), np.diag(np.exp(1j * phi[2 * i:2 * i + 2])))


def test_block_matrix_two_qubit_forms():
    phi = [0.1, 0.2, 0.3, 0.4]
    c = decompose(PhaseProfile(2, phi))
    e = np.exp(1j * np.array(phi))
    np.testing.assert_array_equal(block_matrix(c.blocks[0]), np.diag([e[0], e[1], 1, 1]))
    np.testing.assert_array_equal(block_matrix(c.blocks[1]), np.diag([1, 1, e[2], e[3]]))
    for i in range(2):
        np.testing.assert_allclose(block_matrix(c.blocks[i]), controlled_oracle(2, i, *phi[2 * i:2 * i + 2]), atol=0)


def test_block_matrix_three_qubit_block_two():
    phi = np.linspace(-1, 2, 8)
    b = decompose(PhaseProfile(3, phi)).blocks[2]
    expected = np.diag([1, 1, 1, 1, np.exp(1j * phi[4]), np.exp(1j * phi[5]), 1, 1])
    np.testing.assert_array_equal(block_matrix(b), expected)


@pytest.mark.parametrize("m", range(2, 6))
def test_block_matrix_matches_projector_oracle(m):
    rng = np.random.default_rng(m)
    phi = rng.uniform(0, 2 * np.pi, 1 << m)
    for b in decompose(PhaseProfile(m, phi)).blocks:
        oracle = controlled_oracle(m, b.block_index, *b.target_phases)
        assert max_abs_diff(block_matrix(b), oracle) == 0.0


@pytest.mark.parametrize("m", range(1, 7))
def test_control_semantics_exhaustive(m):
    rng = np.random.default_rng(100 + m)
    phi = rng.uniform(-5, 5, 1 << m)
    for b in decompose(PhaseProfile(m, phi)).blocks:
        mat = block_matrix(b)
        for x in range(1 << m):
            col = mat[:, x]
            factor = np.exp(1j * phi[x]) if x // 2 == b.block_index else 1.0
            expected = np.zeros(1 << m, dtype=complex)
            expected[x] = factor
            np.testing.assert_array_equal(col, expected)


@pytest.mark.parametrize("m", range(1, 9))
def test_structure_counts_and_coverage(m):
    c = decompose(PhaseProfile(m, np.zeros(1 << m)))
    assert len(c.blocks) == 1 << (m - 1)
    assert [b.block_index for b in c.blocks] == list(range(1 << (m - 1)))
    touched = np.zeros(1 << m, dtype=int)
    phi = np.arange(1, (1 << m) + 1, dtype=float)
    for b in decompose(PhaseProfile(m, phi)).blocks:
        touched += np.abs(b.diagonal() - 1) > 0
    np.testing.assert_array_equal(touched, 1)


def test_empty_circuit_is_identity():
    np.testing.assert_array_equal(compose_circuit(CircuitDescription(2)), np.eye(4))


@pytest.mark.parametrize("m", range(1, 9))
def test_reconstruction_and_commutation(m):
    rng = np.random.default_rng(7 * m)
    p = PhaseProfile(m, rng.uniform(0, 2 * np.pi, 1 << m))
    c = decompose(p)
    kernel = make_selective_kernel(p).dense()
    assert max_abs_diff(compose_circuit(c), kernel) <= 1e-12
    rev = CircuitDescription(m, tuple(reversed(c.blocks)))
    assert max_abs_diff(compose_circuit(rev), compose_circuit(c)) <= 1e-12


@pytest.mark.parametrize("m", range(1, 7))
def test_dense_product_of_blocks_reproduces_kernel(m):
    # Independent of compose_circuit's diagonal fast path: literal matrix products.
    rng = np.random.default_rng(11 * m)
    p = PhaseProfile(m, rng.uniform(0, 2 * np.pi, 1 << m))
    prod = np.eye(1 << m, dtype=complex)
    for b in decompose(p).blocks:
        prod = prod @ block_matrix(b)
        assert is_unitary(block_matrix(b), 1e-12)
    assert max_abs_diff(prod, make_selective_kernel(p).dense()) <= 1e-12


def test_compose_rejects_mixed_sizes():
    b2 = ControlledPhaseBlock(0, 2, (0.0, 0.0))
    with pytest.raises(ShapeError):
        CircuitDescription(3, (b2,))


@settings(max_examples=50)
@given(st.integers(1, 6).flatmap(phase_lists))
def test_emit_parse_round_trip(phi):
    c = decompose(PhaseProfile.from_phases(phi))
    assert parse_circuit(emit_circuit(c)) == c


def _circuit_json(**overrides):
    data = {"num_qubits": 2, "blocks": [{"block_index": 0, "target_phases": [0.0, 0.0]},
                                        {"block_index": 1, "target_phases": [0.0, 3.14]}]}
    data.update(overrides)
    return data


@pytest.mark.parametrize(
    "data, field",
    [
        (_circuit_json(blocks=[{"block_index": 2, "target_phases": [0, 0]}]), "block_index"),
        (_circuit_json(blocks=[{"block_index": 0}]), "target_phases"),
        (_circuit_json(blocks=[{"block_index": 0, "target_phases": [0, 0]},
                               {"block_index": 0, "target_phases": [1, 1]}]), "duplicate"),
        (_circuit_json(num_qubits="two"), "num_qubits"),
        (_circuit_json(blocks={}), "blocks"),
        (_circuit_json(blocks=[{"block_index": 0, "target_phases": [0, "x"]}]), "target_phases[1]"),
        (_circuit_json(blocks=[{"target_phases": [0, 0]}]), "block_index"),
    ],
)
def test_parse_errors_name_field(data, field):
    with pytest.raises(CircuitParseError, match=field.replace("[", r"\[").replace("]", r"\]")):
        parse_circuit(json.dumps(data))


def test_parse_rejects_invalid_json():
    with pytest.raises(CircuitParseError):
        parse_circuit("{not json")
