from flask import Blueprint

from cxsynth.labels import LabelState
from cxsynth.schemas import VerifyRequestSchema
from cxsynth.utils.helpers import load_body, resolve_graph, success
from cxsynth.verification import connectivity_check, generator_check, target_labels

verify_bp = Blueprint("verify", __name__, url_prefix="/api/verify")


@verify_bp.post("/")
def verify():
    """
    Certify a circuit against a label target and, optionally, a device graph.
    ---
    tags:
      - Verification
    requestBody:
      required: true
      content:
        application/json:
          schema:
            $ref: '#/definitions/VerifyRequest'
    responses:
      200:
        description: Certificate
        content:
          application/json:
            schema:
              $ref: '#/definitions/Certificate'
      400:
        description: Validation error
    """
    data = load_body(VerifyRequestSchema())
    circuit = data["circuit"]
    target = target_labels(data["target"], circuit.n)
    certificate = generator_check(circuit, LabelState.single_body(circuit.n), target)
    if data["graph"]:
        certificate = certificate.merge(connectivity_check(circuit, resolve_graph(data["graph"])))
    return success(certificate.to_dict())
