"""Second-order Trotter step for the mixed-field Ising model.

exp(-i tau/2 sum g X) exp(-i tau (sum h Z + sum J ZZ)) exp(-i tau/2 sum g X),
with RX(phi) = exp(-i phi X / 2), so the half-step X layer is RX(g tau) and the
Z part is RZ(2 h tau) / RZ(2 J tau) on the matching labels.
"""
import logging

from cxsynth.apps.rotations import SynthResult, interleave, record_rotations, require_all_placed
from cxsynth.circuit import Circuit, run_and_collect
from cxsynth.errors import CertificationError, SpecError, UnsupportedError
from cxsynth.gates import rx
from cxsynth.generators.graph import g2_graph
from cxsynth.labels import LabelState

logger = logging.getLogger(__name__)


def trotter_step(graph, problem, tau, hgp=None):
    if problem.M:
        raise UnsupportedError("three-body terms are not supported by the Trotter step")
    if problem.n != graph.n:
        raise SpecError(f"problem on {problem.n} qubits, graph on {graph.n}")
    n = graph.n
    block = g2_graph(graph, hgp) if n > 1 else Circuit.empty(n)
    start = LabelState.single_body(n, track_x=True)
    final, _ = run_and_collect(block, start)
    permutation = final.permutation()
    if permutation is None:
        raise CertificationError("two-body block is not clean")

    terms = {label: 2 * tau * c for label, c in problem.z_terms().items()}
    opening = [tuple(rx(q, problem.transverse(q) * tau) for q in range(n))]
    closing = [tuple(rx(q, problem.transverse(permutation[q]) * tau) for q in range(n))]
    circuit, missing = interleave(block, start, terms, before=opening, after=closing)
    require_all_placed(terms, set(terms) - missing, "trotter step")
    rotations = record_rotations(circuit, start)
    logger.info(f"trotter step on {graph.tag}: {circuit.cx_count} CX, depth {circuit.cx_depth}")
    return SynthResult(
        circuit, start, rotations, permutation, meta={"algo": "trotter", "graph": graph.tag, "tau": tau}
    )
