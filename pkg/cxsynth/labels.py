"""Parity labels and the label-tracking rules of CX circuits.

A label is a set of logical indices stored as the bits of a Python int, so the
group operation (symmetric difference) is a single xor.
"""
import logging
from dataclasses import dataclass
from itertools import combinations

from config.settings import Config
from cxsynth.errors import LabelError, QubitRangeError, TrackingModeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Label:
    bits: int

    @classmethod
    def single(cls, index):
        return cls(1 << index)

    @classmethod
    def from_indices(cls, indices):
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(bits)

    def __xor__(self, other):
        return Label(self.bits ^ other.bits)

    __mul__ = __xor__

    def __contains__(self, index):
        return bool(self.bits >> index & 1)

    @property
    def weight(self):
        return bin(self.bits).count("1")

    @property
    def indices(self):
        out, bits, i = [], self.bits, 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return tuple(out)

    def is_empty(self):
        return self.bits == 0

    def mirror(self, n):
        return Label.from_indices(n - 1 - i for i in self.indices)

    def __str__(self):
        return "".join(f"l{i + 1}" for i in self.indices) or "()"


@dataclass(frozen=True)
class LabelState:
    z: tuple
    x: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(self.z))
        if self.x is not None:
            object.__setattr__(self, "x", tuple(self.x))
            if len(self.x) != len(self.z):
                raise LabelError("x-labels and z-labels differ in length")
        if len(self.z) > Config.LABEL_CAPACITY:
            raise LabelError(f"{len(self.z)} qubits exceed label capacity {Config.LABEL_CAPACITY}")
        if any(label.is_empty() for label in self.z):
            raise LabelError("a tracked z-label is empty")

    @classmethod
    def single_body(cls, n, track_x=False):
        labels = tuple(Label.single(i) for i in range(n))
        return cls(labels, labels if track_x else None)

    @property
    def n(self):
        return len(self.z)

    def mirror(self):
        n = self.n
        z = tuple(label.mirror(n) for label in reversed(self.z))
        x = None if self.x is None else tuple(label.mirror(n) for label in reversed(self.x))
        return LabelState(z, x)

    def is_basis(self):
        return gf2_rank(label.bits for label in self.z) == self.n

    def is_dual(self):
        """z-matrix times transposed x-matrix is the identity over GF(2)."""
        if self.x is None:
            return False
        for i, zl in enumerate(self.z):
            for j, xl in enumerate(self.x):
                if bin(zl.bits & xl.bits).count("1") % 2 != (i == j):
                    return False
        return True

    def permutation(self):
        """Logical index held by each qubit, or None unless every label is single-body."""
        if any(label.weight != 1 for label in self.z):
            return None
        return tuple(label.indices[0] for label in self.z)


def gf2_rank(rows):
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return rank


def apply_gate(state, gate):
    """Apply one gate's label action and return the new state."""
    z, x = list(state.z), None if state.x is None else list(state.x)
    _apply_in_place(z, x, gate)
    return LabelState(z, x)


def _apply_in_place(z, x, gate):
    n = len(z)
    for q in gate.qubits:
        if not 0 <= q < n:
            raise QubitRangeError(f"qubit {q} outside 0..{n - 1} in {gate.kind}")
    if gate.kind == "cx":
        c, t = gate.qubits
        z[t] = z[c] ^ z[t]
        if x is not None:
            x[c] = x[c] ^ x[t]
    elif gate.kind == "h":
        if x is None:
            raise TrackingModeError("h requires x-label tracking")
        q = gate.qubits[0]
        z[q], x[q] = x[q], z[q]


# ── Target label families ─────────────────────────────────────────────────────

def k_body_labels(n, k):
    return {Label.from_indices(c) for c in combinations(range(n), k)}


def up_to_k_body_labels(n, k):
    out = set()
    for j in range(2, k + 1):
        out |= k_body_labels(n, j)
    return out


def special_labels(n, k, special=0):
    """All k-body labels over 0..n-1 that contain the special index."""
    others = [i for i in range(n) if i != special]
    return {Label.from_indices((special,) + c) for c in combinations(others, k - 1)}
