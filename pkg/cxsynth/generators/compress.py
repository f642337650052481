"""Compression of LNN circuits for all-to-all devices.

A dx block is replaced by a single CX followed by a virtual swap of the two
wires; an sw block becomes a pure virtual swap. Nothing physical moves.
"""
import logging
from dataclasses import dataclass

from cxsynth.circuit import schedule
from cxsynth.errors import CompressionError
from cxsynth.gates import Gate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VirtualPermutation:
    """``perm[v]`` is the device qubit currently standing in for LNN position v."""

    perm: tuple
    history: tuple = ()

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    def to_dict(self):
        return {"perm": list(self.perm), "history": [list(step) for step in self.history]}


def _moved(gate, perm):
    return Gate(gate.kind, tuple(perm[q] for q in gate.qubits), gate.theta)


def compress_all_to_all(circuit):
    """Return the compressed circuit and the final virtual permutation."""
    n = circuit.n
    perm = list(range(n))
    history = []
    emitted = []
    pending = {}
    untagged_tail = {q: () for q in range(n)}

    for gate in circuit.gates():
        if gate.block is not None:
            members = pending.setdefault(id(gate.block), [])
            members.append(gate)
            for q in gate.qubits:
                untagged_tail[q] = ()
            if len(members) < gate.block.size:
                continue
            del pending[id(gate.block)]
            c, t = members[-1].qubits
            if gate.block.kind == "dx":
                emitted.append(_moved(members[-1], perm))
            perm[c], perm[t] = perm[t], perm[c]
            history.append((c, t))
            continue

        if gate.is_cx:
            c, t = gate.qubits
            tail_c, tail_t = untagged_tail[c], untagged_tail[t]
            if tail_c == tail_t == ((c, t), (t, c)):
                raise CompressionError(
                    f"untagged SWAP pattern on qubits {c} and {t}; expand swaps as tagged blocks"
                )
            untagged_tail[c] = (tail_c + ((c, t),))[-2:]
            untagged_tail[t] = (tail_t + ((c, t),))[-2:]
        else:
            untagged_tail[gate.qubits[0]] = ()
        emitted.append(_moved(gate, perm))

    if pending:
        raise CompressionError(f"{len(pending)} block(s) left incomplete")
    if not history:
        return circuit, VirtualPermutation.identity(n)

    compressed = schedule(n, emitted)
    logger.debug(
        f"compressed {circuit.cx_count} CX / depth {circuit.cx_depth} to "
        f"{compressed.cx_count} CX / depth {compressed.cx_depth}"
    )
    return compressed, VirtualPermutation(tuple(perm), tuple(history))
