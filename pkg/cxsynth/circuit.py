"""Moment-structured circuits and the structural operations on them.

Moments are tuples of gates on disjoint qubits. Every operation returns a new
Circuit; nothing here mutates its input.
"""
import logging
from dataclasses import dataclass

from cxsynth.errors import OverlapCollision, QubitRangeError, SpecError
from cxsynth.gates import Block, Gate
from cxsynth.labels import LabelState, _apply_in_place

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Circuit:
    n: int
    moments: tuple = ()

    def __post_init__(self):
        moments = [tuple(m) for m in self.moments]
        while moments and not moments[0]:
            moments.pop(0)
        while moments and not moments[-1]:
            moments.pop()
        object.__setattr__(self, "moments", tuple(moments))
        for index, moment in enumerate(self.moments):
            seen = set()
            for gate in moment:
                for q in gate.qubits:
                    if not 0 <= q < self.n:
                        raise QubitRangeError(f"qubit {q} outside 0..{self.n - 1} at moment {index}")
                    if q in seen:
                        raise OverlapCollision(
                            f"two gates share qubit {q} in moment {index}", moment=index, qubit=q
                        )
                    seen.add(q)

    @classmethod
    def empty(cls, n):
        return cls(n, ())

    @classmethod
    def _trusted(cls, n, moments):
        """Wrap moments assembled from valid circuits without re-checking them."""
        circuit = object.__new__(cls)
        object.__setattr__(circuit, "n", n)
        object.__setattr__(circuit, "moments", moments)
        return circuit

    # ── Read-only views ───────────────────────────────────────────────────────

    @property
    def depth(self):
        return len(self.moments)

    def gates(self):
        for moment in self.moments:
            yield from moment

    @property
    def cx_count(self):
        return sum(1 for g in self.gates() if g.is_cx)

    size = cx_count

    @property
    def cx_depth(self):
        """Moments of the CX sub-circuit: rotation-only moments inside the span are skipped."""
        cx_moments = [i for i, m in enumerate(self.moments) if any(g.is_cx for g in m)]
        if not cx_moments:
            return 0
        first, last = cx_moments[0], cx_moments[-1]
        rotation_only = sum(
            1 for m in self.moments[first:last + 1] if m and not any(g.is_cx for g in m)
        )
        return last - first + 1 - rotation_only

    def first_use(self):
        out = {}
        for index, moment in enumerate(self.moments):
            for gate in moment:
                for q in gate.qubits:
                    out.setdefault(q, index)
        return out

    def last_use(self):
        out = {}
        for index, moment in enumerate(self.moments):
            for gate in moment:
                for q in gate.qubits:
                    out[q] = index
        return out

    def to_dict(self):
        return {"n": self.n, "moments": [[g.to_dict() for g in m] for m in self.moments]}

    def __add__(self, other):
        return concat(self, other)


# ── Block re-minting ──────────────────────────────────────────────────────────

class _Reminter:
    """Hands out one fresh Block per source Block seen."""

    def __init__(self):
        self._fresh = {}

    def __call__(self, block):
        if block is None:
            return None
        key = id(block)
        if key not in self._fresh:
            self._fresh[key] = (block, Block(block.kind))
        return self._fresh[key][1]


def _map_circuit(circuit, mapping, n=None, checked=True):
    fresh = _Reminter()
    moments = tuple(
        tuple(g.remap(mapping, fresh(g.block)) for g in moment) for moment in circuit.moments
    )
    n = circuit.n if n is None else n
    return Circuit(n, moments) if checked else Circuit._trusted(n, moments)


def _block_ids(circuit):
    return {id(g.block) for g in circuit.gates() if g.block is not None}


# ── Structural operations ─────────────────────────────────────────────────────

def place(circuit, offset, n):
    """Embed a circuit on qubits offset..offset+circuit.n-1 of an n-qubit register."""
    if offset < 0 or offset + circuit.n > n:
        raise QubitRangeError(f"cannot place {circuit.n} qubits at offset {offset} in {n}")
    return _map_circuit(circuit, lambda q: q + offset, n, checked=False)


def relabel(circuit, mapping, n=None):
    """Apply a device-qubit map given as a sequence or dict."""
    return _map_circuit(circuit, lambda q: mapping[q], n)


def reverse(circuit, p=0, q=None):
    """Mirror every gate inside the qubit range p..q (inclusive)."""
    q = circuit.n - 1 if q is None else q
    for index, moment in enumerate(circuit.moments):
        for gate in moment:
            if any(not p <= i <= q for i in gate.qubits):
                raise QubitRangeError(f"gate {gate.kind}{gate.qubits} at moment {index} outside {p}..{q}")
    return _map_circuit(circuit, lambda i: p + q - i, checked=False)


def adjoint(circuit):
    fresh = _Reminter()
    moments = tuple(
        tuple(Gate(g.kind, g.qubits, g.adjoint().theta, fresh(g.block)) for g in moment)
        for moment in reversed(circuit.moments)
    )
    return Circuit(circuit.n, moments)


def _merge(a, b, start):
    """Lay b over a with b's moment 0 at a's moment ``start`` (may be negative)."""
    if a.n != b.n:
        raise SpecError(f"cannot concatenate circuits on {a.n} and {b.n} qubits")
    offset_a = max(0, -start)
    offset_b = start + offset_a
    last_a = {q: m + offset_a for q, m in a.last_use().items()}
    clashes = [
        (m + offset_b, q) for q, m in b.first_use().items() if q in last_a and m + offset_b <= last_a[q]
    ]
    if clashes:
        moment, qubit = min(clashes)
        raise OverlapCollision(
            f"gate on qubit {qubit} at moment {moment} does not follow the first circuit's last use "
            f"(moment {last_a[qubit]})",
            moment=moment,
            qubit=qubit,
        )
    depth = max(offset_a + a.depth, offset_b + b.depth)
    moments = [[] for _ in range(depth)]
    for i, moment in enumerate(a.moments):
        moments[i + offset_a].extend(moment)
    shared = _block_ids(a)
    if shared and not shared.isdisjoint(_block_ids(b)):
        b = _map_circuit(b, lambda q: q, checked=False)
    for i, moment in enumerate(b.moments):
        moments[i + offset_b].extend(moment)
    return Circuit._trusted(a.n, tuple(tuple(m) for m in moments))


def concat_shifted(a, b, s):
    """Shifted concatenation.

    ``s > 0`` starts b at moment s of a; ``s <= 0`` starts b |s| moments before
    the end of a, so ``s == 0`` is plain concatenation. A start before a's first
    moment is allowed; the result is re-based so it begins at moment 0.
    """
    if not b.moments:
        return a
    if not a.moments:
        return b
    start = s if s > 0 else a.depth + s
    return _merge(a, b, start)


def concat(*circuits):
    out = circuits[0]
    for c in circuits[1:]:
        out = concat_shifted(out, c, 0)
    return out


def tight_start(a, b):
    """Smallest start >= 0 at which every shared qubit is used by b only after a."""
    last_a = a.last_use()
    start = 0
    for q, m in b.first_use().items():
        if q in last_a:
            start = max(start, last_a[q] + 1 - m)
    return start


def concat_tight(a, b):
    if not b.moments:
        return a
    if not a.moments:
        return b
    return _merge(a, b, tight_start(a, b))


# ── Scheduling ────────────────────────────────────────────────────────────────

def schedule(n, gates):
    """ASAP schedule of a sequential gate list.

    CX gates go to the earliest CX layer after the last CX on both qubits.
    Single-qubit gates stay between their qubit's neighbouring CX gates and ride in
    dedicated moments between CX layers. Per-qubit gate order is preserved.
    """
    level = [-1] * n
    stack = [0] * n
    cx_layers = {}
    rot_layers = {}
    fresh = _Reminter()
    for gate in gates:
        gate = Gate(gate.kind, gate.qubits, gate.theta, fresh(gate.block))
        for q in gate.qubits:
            if not 0 <= q < n:
                raise QubitRangeError(f"qubit {q} outside 0..{n - 1}")
        if gate.is_cx:
            c, t = gate.qubits
            layer = max(level[c], level[t]) + 1
            cx_layers.setdefault(layer, []).append(gate)
            level[c] = level[t] = layer
            stack[c] = stack[t] = 0
        else:
            q = gate.qubits[0]
            rot_layers.setdefault((level[q], stack[q]), []).append(gate)
            stack[q] += 1
    top = max(level, default=-1)
    moments = []
    for layer in range(-1, top + 1):
        if layer >= 0:
            moments.append(tuple(cx_layers.get(layer, ())))
        sub = 0
        while (layer, sub) in rot_layers:
            moments.append(tuple(rot_layers[(layer, sub)]))
            sub += 1
    return Circuit(n, tuple(moments))


def asap(circuit):
    """Re-pack a circuit with :func:`schedule`. Never applied implicitly."""
    return schedule(circuit.n, list(circuit.gates()))


# ── Label tracking over circuits ──────────────────────────────────────────────

def trace(circuit, start):
    """Yield (moment index, LabelState) after every moment."""
    if circuit.n != start.n:
        raise SpecError(f"circuit on {circuit.n} qubits, state on {start.n}")
    z = list(start.z)
    x = None if start.x is None else list(start.x)
    for index, moment in enumerate(circuit.moments):
        for gate in moment:
            _apply_in_place(z, x, gate)
        yield index, LabelState(z, x)


def run_and_collect(circuit, start):
    """Final state and every z-label that occurred, start labels included."""
    if circuit.n != start.n:
        raise SpecError(f"circuit on {circuit.n} qubits, state on {start.n}")
    z = list(start.z)
    x = None if start.x is None else list(start.x)
    collected = set(z)
    for moment in circuit.moments:
        for gate in moment:
            _apply_in_place(z, x, gate)
            if gate.is_cx:
                collected.add(z[gate.qubits[1]])
    return LabelState(z, x), collected
