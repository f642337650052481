from flask import jsonify, request

from config.settings import Config
from cxsynth.errors import SpecError
from cxsynth.topology import builtin_hgp, parse_graph_spec


# ── Response helpers ──────────────────────────────────────────────────────────

def success(data=None, message="OK", status=200):
    return jsonify({"success": True, "message": message, "data": data}), status


def error(message="Error", status=400, detail=None):
    body = {"success": False, "error": message}
    if detail:
        body["detail"] = detail
    return jsonify(body), status


# ── Request parsing ───────────────────────────────────────────────────────────

def load_body(schema):
    """Validate the JSON body with a marshmallow schema; ValidationError propagates to the app handler."""
    return schema.load(request.get_json(silent=True) or {})


def load_args(schema):
    return schema.load(request.args.to_dict())


def resolve_graph(value):
    """Graph from a spec string (``lnn:8``) or an already loaded custom graph."""
    graph = parse_graph_spec(value) if isinstance(value, str) else value
    if graph.n > Config.MAX_SWEEP_N:
        raise SpecError(f"graph on {graph.n} qubits exceeds the service limit {Config.MAX_SWEEP_N}")
    if graph.family == "custom":
        builtin_hgp(graph)
    return graph
