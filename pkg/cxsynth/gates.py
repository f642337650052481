from dataclasses import dataclass, field

from cxsynth.errors import SpecError

GATE_KINDS = {"cx", "rz", "rx", "h"}
ROTATION_KINDS = {"rz", "rx"}


@dataclass(eq=False)
class Block:
    """Marks the CX gates of one expanded DCNOT ("dx") or SWAP ("sw").

    Identity equality: two blocks are the same block only if they are the same object.
    Every structural transform mints fresh blocks for the gates it produces.
    """

    kind: str

    @property
    def size(self):
        return 2 if self.kind == "dx" else 3


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    theta: float = None
    block: Block = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise SpecError(f"unknown gate kind {self.kind!r}")
        if self.kind == "cx":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise SpecError(f"cx needs two distinct qubits, got {self.qubits}")
        elif len(self.qubits) != 1:
            raise SpecError(f"{self.kind} acts on exactly one qubit, got {self.qubits}")

    @property
    def is_cx(self):
        return self.kind == "cx"

    @property
    def control(self):
        return self.qubits[0]

    @property
    def target(self):
        return self.qubits[-1]

    def adjoint(self):
        if self.kind in ROTATION_KINDS:
            return Gate(self.kind, self.qubits, -self.theta, self.block)
        return self

    def remap(self, mapping, block=None):
        return Gate(self.kind, tuple(mapping(q) for q in self.qubits), self.theta, block)

    def to_dict(self):
        if self.kind == "cx":
            return {"kind": "cx", "c": self.qubits[0], "t": self.qubits[1]}
        body = {"kind": self.kind, "q": self.qubits[0]}
        if self.kind in ROTATION_KINDS:
            body["theta"] = self.theta
        return body


# ── Constructors ──────────────────────────────────────────────────────────────

def cx(c, t, block=None):
    return Gate("cx", (c, t), block=block)


def rz(q, theta):
    return Gate("rz", (q,), float(theta))


def rx(q, theta):
    return Gate("rx", (q,), float(theta))


def h(q):
    return Gate("h", (q,))


def dx_gates(c, t):
    """DX(c,t) = CX(t,c) then CX(c,t), sharing one dx block."""
    block = Block("dx")
    return [cx(t, c, block), cx(c, t, block)]
