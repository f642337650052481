from dataclasses import asdict, dataclass
from fractions import Fraction

from cxsynth.errors import SpecError


@dataclass(frozen=True)
class Metrics:
    cnot_count: int
    cnot_depth: int
    effective_depth: Fraction
    mu_n: Fraction
    nu_n: Fraction

    def to_dict(self):
        body = asdict(self)
        for key in ("effective_depth", "mu_n", "nu_n"):
            if body[key] is not None:
                body[key] = float(body[key])
        return body


def effective_depth(circuit):
    """Mean over qubits of the last CX moment touching each qubit (1-based, CX moments only)."""
    if circuit.n == 0:
        return Fraction(0)
    last = [0] * circuit.n
    position = 0
    for moment in circuit.moments:
        if moment and not any(g.is_cx for g in moment):
            continue
        position += 1
        for gate in moment:
            if gate.is_cx:
                for q in gate.qubits:
                    last[q] = position
    return Fraction(sum(last), circuit.n)


def metrics(circuit, label_set_size):
    if label_set_size <= 0:
        raise SpecError("label set must be non-empty")
    count = circuit.cx_count
    depth = circuit.cx_depth
    return Metrics(
        cnot_count=count,
        cnot_depth=depth,
        effective_depth=effective_depth(circuit),
        mu_n=Fraction(count, label_set_size),
        nu_n=Fraction(depth * circuit.n, 2 * label_set_size),
    )
