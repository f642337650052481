from flask import Blueprint, request

from cxsynth.generators.lnn import GeneratorSpec, expected_metrics
from cxsynth.schemas import ExpectedQuerySchema, SynthRequestSchema
from cxsynth.sweeps import check_asymptote, sweep
from cxsynth.synthesis import synthesize
from cxsynth.utils.helpers import error, load_args, load_body, resolve_graph, success
from cxsynth.utils.qasm import emit

synth_bp = Blueprint("synth", __name__, url_prefix="/api/synth")


@synth_bp.post("/")
def synth():
    """
    Synthesize and certify a circuit.
    ---
    tags:
      - Synthesis
    requestBody:
      required: true
      content:
        application/json:
          schema:
            $ref: '#/definitions/SynthRequest'
    responses:
      200:
        description: Certified circuit and its report
        content:
          application/json:
            schema:
              type: object
              properties:
                success: { type: boolean }
                data:
                  type: object
                  properties:
                    report:  { $ref: '#/definitions/SynthReport' }
                    circuit: { $ref: '#/definitions/CircuitJson' }
                    qasm:    { type: string }
      400:
        description: Validation error
        content:
          application/json:
            schema:
              $ref: '#/definitions/ErrorResponse'
      422:
        description: Unsupported algorithm/family combination
      500:
        description: Certification failed
    """
    data = load_body(SynthRequestSchema())
    graph = resolve_graph(data.pop("graph"))
    report = synthesize(graph, data)
    body = {"report": report.to_dict()}
    if data["format"] == "qasm":
        body["qasm"] = emit(report.circuit)
    else:
        body["circuit"] = report.circuit.to_dict()
    return success(body, "Circuit synthesized")


@synth_bp.get("/expected")
def expected():
    """
    Closed-form size and depth of an LNN construction.
    ---
    tags:
      - Synthesis
    parameters:
      - in: query
        name: kind
        required: true
        schema: { type: string, example: g2 }
      - in: query
        name: n
        required: true
        schema: { type: integer, example: 8 }
      - in: query
        name: k
        schema: { type: integer }
    responses:
      200:
        description: Expected metrics
        content:
          application/json:
            schema:
              $ref: '#/definitions/MetricsJson'
      404:
        description: No closed form for this kind
    """
    args = load_args(ExpectedQuerySchema())
    spec = GeneratorSpec(args["kind"], args["n"], args["k"])
    return success({"spec": spec.to_dict(), "metrics": expected_metrics(spec).to_dict()})


@synth_bp.get("/sweep")
def sweep_table():
    """
    Count/depth sweep of the k-body generator over a range of n.
    ---
    tags:
      - Synthesis
    parameters:
      - in: query
        name: family
        schema: { type: string, example: lnn }
      - in: query
        name: k
        schema: { type: integer, example: 2 }
      - in: query
        name: n_min
        schema: { type: integer, example: 3 }
      - in: query
        name: n_max
        schema: { type: integer, example: 12 }
    responses:
      200:
        description: Sweep rows and asymptote check
    """
    family = request.args.get("family", "lnn")
    k = request.args.get("k", 2, type=int)
    n_min = request.args.get("n_min", k, type=int)
    n_max = request.args.get("n_max", 12, type=int)
    if n_max < n_min:
        return error("n_max must be >= n_min")
    rows = sweep(family, k, range(n_min, n_max + 1))
    return success({"rows": [r.to_dict() for r in rows], "asymptote": check_asymptote(rows)})
