"""Quantum Fourier transform from traveling-label chains.

Each Hadamard is split into RZ(pi/2) RX(pi/2) RZ(pi/2) and each controlled
phase CP(theta) into exp(-i theta/4 Z_a) exp(-i theta/4 Z_b) exp(+i theta/4 Z_a Z_b).
Single-body Z parts commute to the very start or end of the circuit, the RX
goes onto the chain head (whose x-label is single-body at that point) and the
Z_a Z_b part rides on the pair label as soon as the chain creates it.

Logical qubits are processed in the order the chains visit them; the result
reports that order and the final output permutation.
"""
import logging
import math

from cxsynth.apps.rotations import RotationPlacer, SynthResult, require_all_placed
from cxsynth.errors import CertificationError, SpecError, UnsupportedError
from cxsynth.gates import cx
from cxsynth.generators.graph import decode_gates, network_plan
from cxsynth.labels import Label, LabelState, _apply_in_place

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2


def pair_angle(distance):
    """Controlled-phase angle between qubits ``distance`` ranks apart."""
    return math.pi / 2 ** distance


def window_for(threshold, n):
    """Number of consecutive ranks coupled when phases below ``threshold`` are dropped."""
    if threshold < 0:
        raise SpecError("approximation threshold must be >= 0")
    if threshold == 0:
        return max(n, 1)
    kept = 0
    while kept + 1 < n and pair_angle(kept + 1) >= threshold:
        kept += 1
    return kept + 1


def _pre_angle(rank, window):
    return HALF_PI + sum(pair_angle(d) / 2 for d in range(1, min(rank, window - 1) + 1))


def _post_angle(rank, n, window):
    return HALF_PI + sum(pair_angle(d) / 2 for d in range(1, min(n - 1 - rank, window - 1) + 1))


def _check_x(placer, q, logical):
    if placer.x[q] != Label.single(logical):
        raise CertificationError(f"x-label on qubit {q} is {placer.x[q]}, expected {Label.single(logical)}")


def _qft_rows(n, window):
    """All-to-all QFT: row i couples qubit i with the next window-1 qubits.

    Qubit i holds l(i-1)l(i) while it drives row i and is decoded right after,
    so a qubit entering the window late can be prepared with one CX from the
    already decoded qubit i-1.
    """
    placer = RotationPlacer(n, track_x=True)
    for q in range(n):
        placer.rotate_z(q, _pre_angle(q, window))
    for i in range(n):
        _check_x(placer, i, i)
        placer.rotate_x(i, HALF_PI)
        late = i + window - 1
        if i >= 1 and window >= 2 and late < n:
            placer.emit([cx(i - 1, late)])
        for j in range(i + 1, min(n, i + window)):
            placer.emit([cx(i, j)])
            if placer.z[j] != Label.from_indices((i, j)):
                raise CertificationError(f"row {i} produced {placer.z[j]} on qubit {j}")
            placer.rotate_z(j, -pair_angle(j - i) / 2)
        if i >= 1 and window >= 2:
            placer.emit([cx(i - 1, i)])
    for q in range(n):
        placer.rotate_z(q, _post_angle(q, n, window))
    circuit, rotations = placer.finish()
    state = placer.state()
    return SynthResult(
        circuit,
        placer.start,
        rotations,
        state.permutation(),
        order=tuple(range(n)),
        meta={"algo": "qft", "window": window},
    )


def _visit_order(plan):
    """Logical index on each chain head's x-label, plus the one left at the end."""
    n = plan.n
    state = LabelState.single_body(n, track_x=True)
    z, x = list(state.z), list(state.x)
    order = []
    for chain in plan.chains:
        head = x[chain.path[0]]
        if head.weight != 1:
            raise CertificationError(f"chain head carries x-label {head}")
        order.append(head.indices[0])
        for step in chain.steps():
            for gate in step:
                _apply_in_place(z, x, gate)
    last = x[plan.retire[-1]]
    if last.weight != 1:
        raise CertificationError(f"final head carries x-label {last}")
    order.append(last.indices[0])
    if sorted(order) != list(range(n)):
        raise CertificationError(f"chains visit {order}, not a permutation")
    return order


def _qft_network(graph, plan):
    n = graph.n
    order = _visit_order(plan)
    rank = {logical: r for r, logical in enumerate(order)}
    placer = RotationPlacer(n, track_x=True)
    for q in range(n):
        placer.rotate_z(q, _pre_angle(rank[q], n))
    for j, chain in enumerate(plan.chains):
        head = chain.path[0]
        _check_x(placer, head, order[j])
        placer.rotate_x(head, HALF_PI)
        terms = {
            Label.from_indices((order[j], order[r])): -pair_angle(r - j) / 2 for r in range(j + 1, n)
        }
        placed = set()
        placer.emit_with_terms(chain.steps(), terms, placed)
        require_all_placed(terms, placed, f"qft chain {j}")
    last = plan.retire[-1]
    _check_x(placer, last, order[-1])
    placer.rotate_x(last, HALF_PI)
    placer.emit(decode_gates(graph, plan.retire))
    state = placer.state()
    permutation = state.permutation()
    if permutation is None:
        raise CertificationError("qft decode left multi-body labels")
    for q in range(n):
        placer.rotate_z(q, _post_angle(rank[permutation[q]], n, n))
    circuit, rotations = placer.finish()
    return SynthResult(
        circuit,
        placer.start,
        rotations,
        permutation,
        order=tuple(order),
        meta={"algo": "qft", "graph": graph.tag, "window": n},
    )


def qft(graph, hgp=None):
    """Exact QFT adapted to ``graph``; output qubit order is reported, not swapped back."""
    if graph.family == "all_to_all" or graph.n == 1:
        result = _qft_rows(graph.n, max(graph.n, 1))
    else:
        result = _qft_network(graph, network_plan(graph, hgp))
    result.meta["graph"] = graph.tag
    logger.info(f"qft on {graph.tag}: {result.circuit.cx_count} CX, depth {result.circuit.cx_depth}")
    return result


def qft_approx(graph, threshold):
    """Approximate QFT: phases below ``threshold`` are dropped together with the CX gates creating them."""
    if graph.family != "all_to_all":
        raise UnsupportedError("approximate QFT is built for all-to-all devices only")
    window = window_for(threshold, graph.n)
    result = _qft_rows(graph.n, window)
    result.meta.update({"algo": "qft-approx", "graph": graph.tag, "threshold": threshold})
    logger.info(f"approximate qft on {graph.tag} keeps distances < {window}: {result.circuit.cx_count} CX")
    return result
