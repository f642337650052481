"""One entry point shared by the CLI and the REST layer: build, certify, report."""
import logging
from dataclasses import dataclass, field
from functools import partial

from config.settings import Config
from cxsynth.apps.qaoa import qaoa
from cxsynth.apps.qft import qft, qft_approx
from cxsynth.apps.trotter import trotter_step
from cxsynth.errors import CertificationError, SpecError
from cxsynth.generators.graph import gk_graph
from cxsynth.labels import LabelState, k_body_labels
from cxsynth.metrics import metrics
from cxsynth.noise import NoiseParams, circuit_fidelity
from cxsynth.verification import (
    Certificate,
    check_result,
    connectivity_check,
    generator_check,
    reference_qaoa,
    reference_qft,
    reference_trotter,
)

logger = logging.getLogger(__name__)

DENSE_CHECK_N = 6


@dataclass
class SynthReport:
    spec: dict
    circuit: object
    metrics: object
    certificate: Certificate
    permutation: tuple
    noise: float = None
    exports: list = field(default_factory=list)
    dense_error: float = None

    @property
    def certified(self):
        return self.certificate.ok and self.certificate.clean is not False

    def to_dict(self):
        body = {
            "spec": self.spec,
            "metrics": self.metrics.to_dict(),
            "certificate": self.certificate.to_dict(),
            "permutation": None if self.permutation is None else list(self.permutation),
            "exports": list(self.exports),
        }
        if self.noise is not None:
            body["noise"] = self.noise
        if self.dense_error is not None:
            body["dense_error"] = self.dense_error
        return body


def _gen(graph, options):
    k = options.get("k") or 2
    if graph.n < k:
        raise SpecError(f"{k}-body generator needs at least {k} qubits, graph has {graph.n}")
    circuit = gk_graph(graph, k, graph.hgp)
    target = k_body_labels(graph.n, k)
    certificate = generator_check(circuit, LabelState.single_body(graph.n), target)
    return circuit, certificate, certificate.permutation, len(target), None


def _app_certificate(result):
    replayed = result.schedule.replay(result.circuit, result.start)
    return Certificate(
        generated=frozenset(result.schedule.labels("z")),
        clean=replayed and result.permutation is not None,
        permutation=result.permutation,
    )


def _dense(result, reference, strict=True):
    if result.circuit.n > min(DENSE_CHECK_N, Config.TWINE_MAX_DENSE_N):
        return None
    ok, error = check_result(result, reference())
    if strict and not ok:
        raise CertificationError(f"dense check failed, max error {error:.3e}")
    return error


def _app(graph, options):
    algo = options["algo"]
    n = graph.n
    if algo == "qft":
        result = qft(graph, graph.hgp)
        reference = partial(reference_qft, n, result.order)
    elif algo == "qft-approx":
        result = qft_approx(graph, options.get("threshold", 0.0))
        reference = partial(reference_qft, n)
    elif algo == "qaoa":
        problem, angles = options["problem"], options["angles"]
        betas, alphas = list(angles["beta"]), list(angles["alpha"])
        p = options.get("p") or len(betas)
        if p != len(betas):
            raise SpecError(f"p={p} but {len(betas)} angle pairs given")
        result = qaoa(graph, problem, betas, alphas, graph.hgp)
        reference = partial(reference_qaoa, problem, betas, alphas)
    elif algo == "trotter":
        problem = options["problem"]
        tau = options.get("tau", 0.1)
        result = trotter_step(graph, problem, tau, graph.hgp)
        reference = partial(reference_trotter, problem, tau)
    else:
        raise SpecError(f"unknown algorithm {algo!r}")
    certificate = _app_certificate(result)
    dense_error = None
    if options.get("dense", True):
        dense_error = _dense(result, reference, strict=algo != "qft-approx")
    labels = max(len(result.schedule.labels("z")), 1)
    return result.circuit, certificate, result.permutation, labels, dense_error


def synthesize(graph, options):
    """Build the requested circuit on ``graph`` and certify it.

    ``options`` holds ``algo`` and its parameters (k, p, angles, problem, threshold, tau),
    optionally ``f_2q``/``f_idle`` for a noise score and ``allow_uncertified``.
    """
    algo = options["algo"]
    if algo == "gen":
        circuit, certificate, permutation, labels, dense_error = _gen(graph, options)
    else:
        circuit, certificate, permutation, labels, dense_error = _app(graph, options)
    certificate = certificate.merge(connectivity_check(circuit, graph))
    spec = {"algo": algo, "graph": graph.tag}
    spec.update({k: options[k] for k in ("k", "p", "threshold", "tau") if options.get(k) is not None})
    report = SynthReport(
        spec, circuit, metrics(circuit, labels), certificate, permutation, dense_error=dense_error
    )
    if options.get("f_2q") is not None and options.get("f_idle") is not None:
        params = NoiseParams(options["f_2q"], options["f_idle"])
        report.noise = circuit_fidelity(report.metrics, graph.n, params)
    if not report.certified:
        logger.warning(f"{algo} on {graph.tag} failed certification")
        if not options.get("allow_uncertified"):
            raise CertificationError(
                f"{algo} on {graph.tag} failed certification", detail=[str(report.certificate.to_dict())]
            )
    logger.info(f"{algo} on {graph.tag}: {circuit.cx_count} CX, depth {circuit.cx_depth}")
    return report
