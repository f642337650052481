import logging

from cxsynth.apps.rotations import RotationPlacer, SynthResult, require_all_placed
from cxsynth.circuit import adjoint, relabel
from cxsynth.errors import CertificationError, SpecError, UnsupportedError
from cxsynth.generators.graph import gk_graph
from cxsynth.topology import mirror_map

logger = logging.getLogger(__name__)

THREE_BODY_FAMILIES = ("lnn", "all_to_all")


def alternate_block(graph, base):
    """Second block of a QAOA pair.

    LNN and all-to-all use the mirror image; other built-in families use the
    adjoint of the mirror image, custom graphs the plain adjoint.
    """
    mapping = mirror_map(graph)
    if mapping is None:
        return adjoint(base)
    mirrored = relabel(base, mapping)
    if graph.family in ("lnn", "all_to_all"):
        return mirrored
    return adjoint(mirrored)


def encoder_blocks(graph, order, hgp=None):
    k = 3 if order >= 3 else 2
    if k == 3 and graph.family not in THREE_BODY_FAMILIES:
        raise UnsupportedError(f"three-body QAOA runs on lnn or all_to_all, not {graph.family}")
    if graph.n < k:
        raise SpecError(f"{k}-body encoder needs at least {k} qubits")
    base = gk_graph(graph, k, hgp)
    return base, alternate_block(graph, base)


def qaoa(graph, problem, betas, alphas, hgp=None):
    """p QAOA cycles: generator block with cost rotations, then an RX(2 alpha) mixer layer."""
    betas, alphas = list(betas), list(alphas)
    if not betas or len(betas) != len(alphas):
        raise SpecError(f"need p >= 1 and matching angle vectors, got {len(betas)} and {len(alphas)}")
    if problem.n != graph.n:
        raise SpecError(f"problem on {problem.n} qubits, graph on {graph.n}")
    n = graph.n
    blocks = encoder_blocks(graph, problem.order, hgp) if n > 1 else None
    placer = RotationPlacer(n, track_x=True)
    coefficients = problem.z_terms()
    for cycle, (beta, alpha) in enumerate(zip(betas, alphas)):
        terms = {label: 2 * beta * c for label, c in coefficients.items()}
        placed = set()
        placer.place(terms, placed, range(n))
        if blocks is not None:
            block = blocks[cycle % 2]
            placer.emit_with_terms(([g] for g in block.gates()), terms, placed)
        require_all_placed(terms, placed, f"qaoa cycle {cycle}")
        if placer.state().permutation() is None:
            raise CertificationError(f"qaoa cycle {cycle} did not end on single-body labels")
        for q in range(n):
            placer.rotate_x(q, 2 * alpha)
    circuit, rotations = placer.finish()
    logger.info(
        f"qaoa p={len(betas)} on {graph.tag}: {circuit.cx_count} CX, depth {circuit.cx_depth}"
    )
    return SynthResult(
        circuit,
        placer.start,
        rotations,
        placer.state().permutation(),
        meta={"algo": "qaoa", "graph": graph.tag, "p": len(betas)},
    )
