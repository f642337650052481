import pytest

from cxsynth.circuit import Circuit
from cxsynth.errors import SpecError
from cxsynth.gates import cx, h, rx, rz
from cxsynth.generators import lnn
from cxsynth.utils import qasm


def test_emitted_file_parses_back_to_the_same_moments():
    circuit = Circuit(3, ((cx(0, 1), rz(2, -0.125)), (h(0), rx(1, 1e-05)), (cx(2, 1),)))
    text = qasm.emit(circuit)
    assert text.startswith("OPENQASM 2.0;")
    assert text.count("barrier q;") == 2
    assert qasm.parse(text) == circuit


def test_generator_export_counts():
    text = qasm.emit(lnn.g2(8))
    assert sum(1 for line in text.splitlines() if line.startswith("cx q[")) == 63


def test_comments_and_blank_lines_are_ignored():
    text = "OPENQASM 2.0;\n\nqreg q[2]; // two qubits\ncx q[0], q[1];\n"
    assert qasm.parse(text) == Circuit(2, ((cx(0, 1),),))


@pytest.mark.parametrize("text, message", [
    ("cx q[0],q[1];\n", "Line 1"),
    ("qreg q[2];\nmeasure q[0] -> c[0];\n", "Line 2"),
    ("qreg q[2];\nqreg q[3];\n", "Line 2"),
    ("OPENQASM 2.0;\n", "no qreg"),
])
def test_parse_errors(text, message):
    with pytest.raises(SpecError, match=message):
        qasm.parse(text)
