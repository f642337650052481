"""Rotation placement on top of CX skeletons, and the records that certify it."""
import logging
from dataclasses import dataclass, field

from cxsynth.circuit import Circuit, schedule, trace
from cxsynth.errors import CertificationError
from cxsynth.gates import rx, rz
from cxsynth.labels import LabelState, _apply_in_place

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RotationRecord:
    moment: int
    qubit: int
    axis: str  # "z" or "x"
    label: object
    angle: float

    def to_dict(self):
        return {
            "moment": self.moment,
            "qubit": self.qubit,
            "axis": self.axis,
            "label": str(self.label),
            "angle": self.angle,
        }


@dataclass(frozen=True)
class RotationSchedule:
    records: tuple = ()

    def __len__(self):
        return len(self.records)

    def labels(self, axis="z"):
        return [r.label for r in self.records if r.axis == axis]

    def replay(self, circuit, start):
        """True when every record's qubit carries its label at its moment."""
        by_moment = {}
        for record in self.records:
            by_moment.setdefault(record.moment, []).append(record)
        for index, state in trace(circuit, start):
            for record in by_moment.pop(index, ()):
                labels = state.z if record.axis == "z" else state.x
                if labels is None or labels[record.qubit] != record.label:
                    return False
        return not by_moment

    def to_dict(self):
        return [r.to_dict() for r in self.records]


@dataclass(frozen=True)
class SynthResult:
    circuit: Circuit
    start: LabelState
    schedule: RotationSchedule
    permutation: tuple
    order: tuple = None
    meta: dict = field(default_factory=dict)


def record_rotations(circuit, start, intended=None):
    """Walk a finished circuit and record the label under every rotation.

    ``intended`` holds per-qubit queues of (axis, label) in emission order; a
    mismatch means the scheduler broke per-qubit order.
    """
    z = list(start.z)
    x = None if start.x is None else list(start.x)
    queues = None if intended is None else [list(q) for q in intended]
    records = []
    for index, moment in enumerate(circuit.moments):
        for gate in moment:
            _apply_in_place(z, x, gate)
            if gate.kind not in ("rz", "rx"):
                continue
            q = gate.qubits[0]
            axis = "z" if gate.kind == "rz" else "x"
            label = z[q] if axis == "z" else (None if x is None else x[q])
            if queues is not None:
                want = queues[q].pop(0)
                if want != (axis, label):
                    raise CertificationError(
                        f"rotation on qubit {q} at moment {index} sees {label}, expected {want[1]}"
                    )
            records.append(RotationRecord(index, q, axis, label, gate.theta))
    return RotationSchedule(tuple(records))


class RotationPlacer:
    """Sequential gate builder that tracks labels and drops rotations where labels appear."""

    def __init__(self, n, track_x=False, start=None):
        self.start = start or LabelState.single_body(n, track_x)
        self.n = n
        self.z = list(self.start.z)
        self.x = None if self.start.x is None else list(self.start.x)
        self.gates = []
        self.intended = [[] for _ in range(n)]

    def emit(self, gates):
        touched = []
        for gate in gates:
            _apply_in_place(self.z, self.x, gate)
            self.gates.append(gate)
            if gate.is_cx:
                touched.append(gate.qubits[1])
        return touched

    def rotate_z(self, q, angle):
        self.gates.append(rz(q, angle))
        self.intended[q].append(("z", self.z[q]))

    def rotate_x(self, q, angle):
        if self.x is None:
            raise CertificationError("x rotations need x-label tracking")
        self.gates.append(rx(q, angle))
        self.intended[q].append(("x", self.x[q]))

    def place(self, terms, placed, qubits):
        """Rotate every listed qubit whose current z-label is a pending term."""
        for q in qubits:
            label = self.z[q]
            if label in terms and label not in placed:
                self.rotate_z(q, terms[label])
                placed.add(label)

    def emit_with_terms(self, steps, terms, placed):
        for step in steps:
            self.place(terms, placed, self.emit(step))

    def state(self):
        return LabelState(self.z, self.x)

    def finish(self):
        circuit = schedule(self.n, self.gates)
        rotations = record_rotations(circuit, self.start, self.intended)
        return circuit, rotations


def interleave(circuit, start, terms, before=(), after=()):
    """Insert RZ moments right after the moment each term's label first appears.

    The CX moments are kept as they are. ``before``/``after`` are extra moments of
    single-qubit gates placed around the whole circuit.
    """
    z = list(start.z)
    placed = set()
    inserts = {}
    for q, label in enumerate(z):
        if label in terms and label not in placed:
            inserts.setdefault(-1, []).append(rz(q, terms[label]))
            placed.add(label)
    for index, moment in enumerate(circuit.moments):
        for gate in moment:
            _apply_in_place(z, None, gate)
            if gate.is_cx:
                t = gate.qubits[1]
                if z[t] in terms and z[t] not in placed:
                    inserts.setdefault(index, []).append(rz(t, terms[z[t]]))
                    placed.add(z[t])
    moments = [tuple(m) for m in before]
    if -1 in inserts:
        moments.append(tuple(inserts[-1]))
    for index, moment in enumerate(circuit.moments):
        moments.append(moment)
        if index in inserts:
            moments.append(tuple(inserts[index]))
    moments += [tuple(m) for m in after]
    missing = set(terms) - placed
    return Circuit(circuit.n, tuple(moments)), missing


def require_all_placed(terms, placed, what):
    missing = set(terms) - set(placed)
    if missing:
        sample = ", ".join(sorted(str(label) for label in missing)[:5])
        raise CertificationError(f"{what}: {len(missing)} term label(s) never produced ({sample})")
