import numpy as np
import pytest

from config.settings import Config
from cxsynth.circuit import Circuit, adjoint, concat, run_and_collect, schedule
from cxsynth.errors import OracleCapError, SpecError
from cxsynth.gates import cx, h, rx, rz
from cxsynth.generators import lnn
from cxsynth.labels import LabelState, k_body_labels
from cxsynth.topology import lnn as lnn_graph
from cxsynth.verification import (
    connectivity_check,
    dense_unitary,
    equal_up_to_perm_phase,
    generator_check,
    label_phase_check,
    logical_physical_check,
    permutation_matrix,
    target_labels,
)


def random_cx_rz(n, length, rng):
    gates = []
    for _ in range(length):
        if rng.random() < 0.6:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(cx(int(c), int(t)))
        else:
            gates.append(rz(int(rng.integers(n)), float(rng.uniform(-np.pi, np.pi))))
    return schedule(n, gates)


def test_cx_matrix_uses_qubit_zero_as_high_bit():
    U = dense_unitary(Circuit(2, ((cx(0, 1),),)))
    want = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    np.testing.assert_allclose(U, want)


def test_circuit_times_adjoint_is_identity(rng):
    gates = [cx(0, 2), h(1), rx(2, 0.4), rz(0, -1.2), cx(1, 0), rz(2, 2.5)]
    c = schedule(3, gates)
    U = dense_unitary(concat(c, adjoint(c)))
    np.testing.assert_allclose(U, np.eye(8), atol=1e-12)


def test_dense_oracle_respects_the_cap(monkeypatch):
    monkeypatch.setattr(Config, "TWINE_MAX_DENSE_N", 3)
    with pytest.raises(OracleCapError):
        dense_unitary(Circuit.empty(4))


def test_permutation_matrix_of_a_clean_generator():
    circuit = lnn.g2(4)
    final, _ = run_and_collect(circuit, LabelState.single_body(4))
    perm = final.permutation()
    ok, error = equal_up_to_perm_phase(dense_unitary(circuit), np.eye(16), perm)
    assert ok, error
    assert np.allclose(permutation_matrix((1, 0)), dense_unitary(Circuit(2, ((cx(0, 1),), (cx(1, 0),), (cx(0, 1),)))))


def test_global_phase_is_ignored():
    U = dense_unitary(schedule(2, [h(0), cx(0, 1), rz(1, 0.7)]))
    ok, _ = equal_up_to_perm_phase(np.exp(0.3j) * U, U)
    assert ok
    ok, _ = equal_up_to_perm_phase(U, dense_unitary(schedule(2, [h(0), cx(0, 1), rz(1, 0.8)])))
    assert not ok


def test_shape_mismatch_is_rejected():
    with pytest.raises(SpecError):
        equal_up_to_perm_phase(np.eye(4), np.eye(8))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_label_phase_rule_on_random_circuits(n, rng):
    for _ in range(5):
        ok, error = label_phase_check(random_cx_rz(n, 6 * n, rng))
        assert ok, error


def test_label_phase_rule_needs_cx_and_rz():
    with pytest.raises(SpecError):
        label_phase_check(Circuit(1, ((h(0),),)))


@pytest.mark.parametrize("qubit", [0, 2, 3])
def test_rotation_on_a_label_is_the_logical_rotation(qubit):
    ok, error = logical_physical_check(lnn.ptc(4), qubit, 0.7)
    assert ok, error


def test_generator_check_reports_cleanliness_and_permutation():
    certificate = generator_check(lnn.g2(5), LabelState.single_body(5), k_body_labels(5, 2))
    assert certificate.ok and certificate.clean
    assert certificate.permutation == (4, 3, 2, 1, 0)
    assert certificate.to_dict()["missing_count"] == 0


def test_generator_check_counts_missing_labels():
    circuit = Circuit(3, ((cx(0, 1),),))
    certificate = generator_check(circuit, LabelState.single_body(3), k_body_labels(3, 2))
    assert len(certificate.missing) == 2
    assert not certificate.ok
    with pytest.raises(SpecError):
        generator_check(circuit, LabelState.single_body(4), k_body_labels(4, 2))


def test_connectivity_violation_is_located():
    circuit = Circuit(3, ((cx(0, 1),), (cx(0, 2),)))
    certificate = connectivity_check(circuit, lnn_graph(3))
    assert not certificate.connectivity_ok
    moment, gate = certificate.first_violation
    assert moment == 1 and gate == cx(0, 2)
    assert certificate.to_dict()["first_violation"]["moment"] == 1


@pytest.mark.parametrize("text, size", [("k-body:2", 10), ("up-to:3", 20), ("special:3", 6)])
def test_target_labels(text, size):
    assert len(target_labels(text, 5)) == size


@pytest.mark.parametrize("text", ["k-body:x", "k-body:9", "pairs:2"])
def test_bad_targets(text):
    with pytest.raises(SpecError):
        target_labels(text, 5)
