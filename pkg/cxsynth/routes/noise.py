from flask import Blueprint

from cxsynth.noise import NoiseParams, best_design, fidelity_from_counts, process_fidelity
from cxsynth.schemas import BestDesignQuerySchema, NoiseRequestSchema, ProcessFidelitySchema
from cxsynth.utils.helpers import load_args, load_body, success

noise_bp = Blueprint("noise", __name__, url_prefix="/api/noise")


@noise_bp.post("/fidelity")
def fidelity():
    """
    Expected circuit fidelity from CX count and depth.
    ---
    tags:
      - Noise
    requestBody:
      required: true
      content:
        application/json:
          schema:
            $ref: '#/definitions/NoiseRequest'
    responses:
      200:
        description: Expected fidelity and the parameters used
      400:
        description: Invalid noise parameters
    """
    data = load_body(NoiseRequestSchema())
    if data["f_idle"] is not None:
        params = NoiseParams(data["f_2q"], data["f_idle"])
    else:
        params = NoiseParams.from_times(data["f_2q"], data["t1"], data["t2"], data["tg"])
    value = fidelity_from_counts(data["cnot_count"], data["cnot_depth"], data["n"], params)
    return success({"fidelity": value, "params": params.to_dict()})


@noise_bp.get("/best-design")
def design():
    """
    Rank locally connected layouts by expected two-body generator fidelity.
    ---
    tags:
      - Noise
    parameters:
      - in: query
        name: n
        required: true
        schema: { type: integer, example: 12 }
      - in: query
        name: f_2q
        required: true
        schema: { type: number, example: 0.99 }
      - in: query
        name: f_idle
        required: true
        schema: { type: number, example: 0.999 }
    responses:
      200:
        description: Ranking and pairwise crossover exponents
    """
    args = load_args(BestDesignQuerySchema())
    ranking = best_design(args["n"], NoiseParams(args["f_2q"], args["f_idle"]))
    return success(ranking.to_dict())


@noise_bp.post("/process-fidelity")
def process():
    """
    Process fidelity from the success probabilities of m prepared basis states.
    ---
    tags:
      - Noise
    requestBody:
      required: true
      content:
        application/json:
          schema:
            $ref: '#/definitions/ProcessFidelityRequest'
    responses:
      200:
        description: Process fidelity
    """
    data = load_body(ProcessFidelitySchema())
    return success({"process_fidelity": process_fidelity(data["probs"])})
