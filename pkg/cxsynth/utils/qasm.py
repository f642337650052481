"""OpenQASM 2.0 subset: cx, rz, rx and h on one register ``q``.

Moments are separated by ``barrier q;`` so parsing an emitted file restores the
moment structure exactly.
"""
import re

from cxsynth.circuit import Circuit
from cxsynth.errors import SpecError
from cxsynth.gates import cx, h, rx, rz

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";'

_restr_float = r"[-+]?(?:[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?|inf|nan)"
_re_qreg = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_re_cx = re.compile(r"^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$")
_re_rot = re.compile(rf"^(rz|rx)\s*\(\s*({_restr_float})\s*\)\s+q\[(\d+)\]\s*;$")
_re_h = re.compile(r"^h\s+q\[(\d+)\]\s*;$")
_re_barrier = re.compile(r"^barrier\s+q\s*;$")


def _gate_line(gate):
    if gate.kind == "cx":
        return f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];"
    if gate.kind == "h":
        return f"h q[{gate.qubits[0]}];"
    return f"{gate.kind}({gate.theta!r}) q[{gate.qubits[0]}];"


def emit(circuit):
    lines = [HEADER, f"qreg q[{circuit.n}];"]
    for index, moment in enumerate(circuit.moments):
        if index:
            lines.append("barrier q;")
        lines.extend(_gate_line(g) for g in moment)
    return "\n".join(lines) + "\n"


def _err_with_lineno(lineno, msg):
    raise SpecError(f"Line {lineno}: {msg}")


def parse(text):
    n = None
    moments = [[]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//", 1)[0].strip()
        if not line or line in ("OPENQASM 2.0;", 'include "qelib1.inc";'):
            continue
        if m := _re_qreg.match(line):
            if n is not None:
                _err_with_lineno(lineno, "only one register is supported")
            n = int(m.group(1))
            continue
        if n is None:
            _err_with_lineno(lineno, "gate before qreg declaration")
        if _re_barrier.match(line):
            moments.append([])
        elif m := _re_cx.match(line):
            moments[-1].append(cx(int(m.group(1)), int(m.group(2))))
        elif m := _re_rot.match(line):
            build = rz if m.group(1) == "rz" else rx
            moments[-1].append(build(int(m.group(3)), float(m.group(2))))
        elif m := _re_h.match(line):
            moments[-1].append(h(int(m.group(1))))
        else:
            _err_with_lineno(lineno, f"unsupported statement {line!r}")
    if n is None:
        raise SpecError("no qreg declaration found")
    return Circuit(n, tuple(tuple(m) for m in moments))
