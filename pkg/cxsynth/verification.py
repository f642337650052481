"""Certification: label coverage, cleanliness, connectivity and a small dense unitary oracle.

Dense matrices use qubit 0 as the most significant bit of the basis index.
"""
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from config.settings import Config
from cxsynth.circuit import Circuit, adjoint, concat, run_and_collect
from cxsynth.errors import OracleCapError, SpecError
from cxsynth.gates import rz
from cxsynth.labels import LabelState, k_body_labels, special_labels, up_to_k_body_labels

logger = logging.getLogger(__name__)

SYNTH_TOL = 1e-9
ALGEBRA_TOL = 1e-12


@dataclass(frozen=True)
class Certificate:
    generated: frozenset = frozenset()
    missing: frozenset = frozenset()
    clean: bool = False
    permutation: tuple = None
    connectivity_ok: bool = True
    first_violation: tuple = None  # (moment, gate)
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self):
        return not self.missing and self.connectivity_ok

    def merge(self, other):
        return replace(
            self,
            connectivity_ok=self.connectivity_ok and other.connectivity_ok,
            first_violation=self.first_violation or other.first_violation,
        )

    def to_dict(self, missing_limit=50):
        violation = None
        if self.first_violation is not None:
            moment, gate = self.first_violation
            violation = {"moment": moment, "gate": gate.to_dict()}
        return {
            "generated_count": len(self.generated),
            "missing_count": len(self.missing),
            "missing": sorted(str(label) for label in self.missing)[:missing_limit],
            "clean": self.clean,
            "permutation": None if self.permutation is None else list(self.permutation),
            "connectivity_ok": self.connectivity_ok,
            "first_violation": violation,
        }


def generator_check(circuit, start, target):
    if circuit.n != start.n:
        raise SpecError(f"circuit on {circuit.n} qubits, start state on {start.n}")
    final, collected = run_and_collect(circuit, start)
    target = frozenset(target)
    missing = target - collected
    position = {label: q for q, label in enumerate(start.z)}
    clean = sorted(final.z) == sorted(start.z)
    permutation = tuple(position[label] for label in final.z) if clean else None
    if missing:
        logger.warning(f"generator check: {len(missing)} of {len(target)} target labels missing")
    return Certificate(frozenset(collected), missing, clean, permutation)


def connectivity_check(circuit, graph):
    for index, moment in enumerate(circuit.moments):
        for gate in moment:
            if gate.is_cx and not graph.has_edge(*gate.qubits):
                logger.warning(f"connectivity violation at moment {index}: cx{gate.qubits} on {graph.tag}")
                return Certificate(clean=False, connectivity_ok=False, first_violation=(index, gate))
    return Certificate(connectivity_ok=True)


def certify(circuit, graph, target, start=None):
    """Generator and connectivity certificate in one go."""
    start = start or LabelState.single_body(circuit.n)
    return generator_check(circuit, start, target).merge(connectivity_check(circuit, graph))


def target_labels(text, n):
    """Parse ``k-body:K``, ``up-to:K`` or ``special:K`` into a label set on n qubits."""
    kind, _, arg = text.partition(":")
    try:
        k = int(arg)
    except ValueError:
        raise SpecError(f"target {text!r} needs an integer order")
    if not 1 <= k <= n:
        raise SpecError(f"target order {k} outside 1..{n}")
    if kind == "k-body":
        return k_body_labels(n, k)
    if kind == "up-to":
        return up_to_k_body_labels(n, k)
    if kind == "special":
        return special_labels(n, k)
    raise SpecError(f"unknown target kind {kind!r}")


# ── Dense oracle ──────────────────────────────────────────────────────────────

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _rz(theta):
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


def _rx(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _check_cap(n):
    cap = Config.TWINE_MAX_DENSE_N
    if n > cap:
        raise OracleCapError(f"dense oracle limited to {cap} qubits, got {n}")


def _apply_single(tensor, matrix, q):
    tensor = np.tensordot(matrix, tensor, axes=([1], [q]))
    return np.moveaxis(tensor, 0, q)


def _apply_cx(tensor, c, t):
    out = tensor.copy()
    index = [slice(None)] * tensor.ndim
    index[c] = 1
    sub = tuple(index)
    out[sub] = np.flip(tensor[sub], axis=t if t < c else t - 1)
    return out


def _apply_phase(tensor, c, t, theta):
    out = tensor.copy()
    index = [slice(None)] * tensor.ndim
    index[c], index[t] = 1, 1
    out[tuple(index)] *= np.exp(1j * theta)
    return out


def _evolve(n, steps):
    """Left-multiply a sequence of ("kind", qubits, theta) steps onto the identity."""
    _check_cap(n)
    dim = 2 ** n
    tensor = np.eye(dim, dtype=complex).reshape([2] * n + [dim])
    for kind, qubits, theta in steps:
        if kind == "cx":
            tensor = _apply_cx(tensor, *qubits)
        elif kind == "cp":
            tensor = _apply_phase(tensor, *qubits, theta)
        elif kind == "h":
            tensor = _apply_single(tensor, _H, qubits[0])
        elif kind == "rz":
            tensor = _apply_single(tensor, _rz(theta), qubits[0])
        elif kind == "rx":
            tensor = _apply_single(tensor, _rx(theta), qubits[0])
        else:
            raise SpecError(f"dense oracle cannot apply {kind!r}")
    return tensor.reshape(dim, dim)


def dense_unitary(circuit):
    _check_cap(circuit.n)
    return _evolve(circuit.n, ((g.kind, g.qubits, g.theta) for g in circuit.gates()))


def permutation_matrix(perm):
    """Basis map |a> -> |b> with b[q] = a[perm[q]]."""
    n = len(perm)
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        bits = [(a >> (n - 1 - q)) & 1 for q in range(n)]
        b = 0
        for q in range(n):
            b = (b << 1) | bits[perm[q]]
        out[b, a] = 1
    return out


def equal_up_to_perm_phase(U, V, perm=None, tol=SYNTH_TOL):
    """Compare U against P(perm) @ V up to a global phase; returns (ok, max_error)."""
    U, V = np.asarray(U), np.asarray(V)
    if U.shape != V.shape or U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise SpecError(f"cannot compare matrices of shapes {U.shape} and {V.shape}")
    if perm is not None and 2 ** len(perm) != U.shape[0]:
        raise SpecError(f"permutation of {len(perm)} wires does not fit dimension {U.shape[0]}")
    target = V if perm is None else permutation_matrix(perm) @ V
    pivot = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    if abs(U[pivot]) < tol:
        return False, float(np.max(np.abs(U - target)))
    phase = U[pivot] / target[pivot]
    phase /= abs(phase)
    error = float(np.max(np.abs(U - phase * target)))
    return error <= tol, error


def _parities(n, label):
    indices = np.arange(2 ** n)
    parity = np.zeros(2 ** n, dtype=int)
    for i in label.indices:
        parity ^= (indices >> (n - 1 - i)) & 1
    return parity


def logical_rotation(n, label, theta):
    """exp(-i theta/2 Z_label) as a dense diagonal matrix."""
    signs = 1 - 2 * _parities(n, label)
    return np.diag(np.exp(-0.5j * theta * signs))


def logical_physical_check(prefix, qubit, theta):
    """RZ on ``qubit`` after ``prefix``, conjugated back, is the rotation of the label found there."""
    final, _ = run_and_collect(prefix, LabelState.single_body(prefix.n))
    label = final.z[qubit]
    conjugated = concat(prefix, Circuit(prefix.n, ((rz(qubit, theta),),)), adjoint(prefix))
    return equal_up_to_perm_phase(dense_unitary(conjugated), logical_rotation(prefix.n, label, theta), tol=ALGEBRA_TOL)


def label_phase_check(circuit, tol=SYNTH_TOL):
    """CX+RZ circuit: U|a> = exp(i phi(a)) |L a>, with phi summed from the labels under each RZ.

    Returns (ok, max_error). The phase is compared exactly, not up to a global phase.
    """
    n = circuit.n
    z = list(LabelState.single_body(n).z)
    phase = np.zeros(2 ** n)
    for gate in circuit.gates():
        if gate.kind == "cx":
            c, t = gate.qubits
            z[t] = z[c] ^ z[t]
        elif gate.kind == "rz":
            signs = 1 - 2 * _parities(n, z[gate.qubits[0]])
            phase += -0.5 * gate.theta * signs
        else:
            raise SpecError(f"label phase check takes cx and rz only, got {gate.kind}")
    outputs = np.zeros(2 ** n, dtype=int)
    for q in range(n):
        outputs |= _parities(n, z[q]) << (n - 1 - q)
    U = dense_unitary(circuit)
    columns = np.arange(2 ** n)
    predicted = np.exp(1j * phase)
    error = float(np.max(np.abs(U[outputs, columns] - predicted)))
    leak = float(np.sum(np.abs(U) ** 2) - np.sum(np.abs(U[outputs, columns]) ** 2))
    return error <= tol and abs(leak) <= tol, error


# ── Reference operators ───────────────────────────────────────────────────────

def reference_qft(n, order=None):
    """Textbook QFT without the closing bit reversal; rank r acts on wire order[r]."""
    order = tuple(range(n)) if order is None else tuple(order)
    steps = []
    for j in range(n):
        steps.append(("h", (order[j],), None))
        for r in range(j + 1, n):
            steps.append(("cp", (order[r], order[j]), math.pi / 2 ** (r - j)))
    return _evolve(n, steps)


def diagonal_of(n, terms):
    """Diagonal of sum(coef * Z_label) in the computational basis."""
    values = np.zeros(2 ** n)
    for label, coef in terms.items():
        values += coef * (1 - 2 * _parities(n, label))
    return values


def reference_qaoa(problem, betas, alphas):
    n = problem.n
    energies = diagonal_of(n, problem.z_terms())
    U = np.eye(2 ** n, dtype=complex)
    for beta, alpha in zip(betas, alphas):
        U = np.diag(np.exp(-1j * beta * energies)) @ U
        U = _evolve(n, [("rx", (q,), 2 * alpha) for q in range(n)]) @ U
    return U


def reference_trotter(problem, tau):
    n = problem.n
    energies = diagonal_of(n, problem.z_terms())
    half = _evolve(n, [("rx", (q,), problem.transverse(q) * tau) for q in range(n)])
    return half @ np.diag(np.exp(-1j * tau * energies)) @ half


def check_result(result, reference, tol=SYNTH_TOL):
    """Dense comparison of a synthesized result against its logical reference operator."""
    return equal_up_to_perm_phase(dense_unitary(result.circuit), reference, result.permutation, tol)
