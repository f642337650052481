from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from cxsynth.apps.problem import Problem
from cxsynth.circuit import Circuit
from cxsynth.gates import cx, h, rx, rz
from cxsynth.topology import Hgp, custom

ALGOS = ("gen", "qft", "qft-approx", "qaoa", "trotter")


class GateSchema(Schema):
    kind = fields.String(required=True, validate=validate.OneOf(["cx", "rz", "rx", "h"]))
    c = fields.Integer(validate=validate.Range(min=0))
    t = fields.Integer(validate=validate.Range(min=0))
    q = fields.Integer(validate=validate.Range(min=0))
    theta = fields.Float(allow_nan=False)

    @validates_schema
    def check_operands(self, data, **kwargs):
        kind = data.get("kind")
        if kind == "cx":
            if "c" not in data or "t" not in data:
                raise ValidationError("cx needs c and t")
            if data["c"] == data["t"]:
                raise ValidationError("cx control equals target")
        elif "q" not in data:
            raise ValidationError(f"{kind} needs q")
        if kind in ("rz", "rx") and "theta" not in data:
            raise ValidationError(f"{kind} needs theta")

    @post_load
    def make_gate(self, data, **kwargs):
        kind = data["kind"]
        if kind == "cx":
            return cx(data["c"], data["t"])
        if kind == "h":
            return h(data["q"])
        return (rz if kind == "rz" else rx)(data["q"], data["theta"])


class CircuitSchema(Schema):
    n = fields.Integer(required=True, validate=validate.Range(min=1))
    moments = fields.List(fields.List(fields.Nested(GateSchema)), required=True)

    @post_load
    def make_circuit(self, data, **kwargs):
        return Circuit(data["n"], tuple(tuple(m) for m in data["moments"]))


class HgpSchema(Schema):
    spine = fields.List(fields.Integer(), required=True, validate=validate.Length(min=1))
    neighbors = fields.Dict(keys=fields.String(), values=fields.List(fields.Integer()), load_default=dict)

    @post_load
    def make_hgp(self, data, **kwargs):
        return Hgp.from_mapping(data["spine"], data["neighbors"])


class GraphSchema(Schema):
    n = fields.Integer(required=True, validate=validate.Range(min=1))
    edges = fields.List(
        fields.List(fields.Integer(), validate=validate.Length(equal=2)), required=True
    )
    family = fields.String(load_default="custom", validate=validate.Equal("custom"))
    hgp = fields.Nested(HgpSchema, load_default=None)

    @post_load
    def make_graph(self, data, **kwargs):
        return custom(data["n"], [tuple(e) for e in data["edges"]], data["hgp"])


class ProblemSchema(Schema):
    n = fields.Integer(required=True, validate=validate.Range(min=1))
    J = fields.List(fields.List(fields.Float(), validate=validate.Length(equal=3)), load_default=list)
    h = fields.List(fields.List(fields.Float(), validate=validate.Length(equal=2)), load_default=list)
    g = fields.List(fields.List(fields.Float(), validate=validate.Length(equal=2)), load_default=list)
    M = fields.List(fields.List(fields.Float(), validate=validate.Length(equal=4)), load_default=list)

    @post_load
    def make_problem(self, data, **kwargs):
        return Problem.from_lists(data["n"], data["J"], data["h"], data["g"], data["M"])


class AnglesSchema(Schema):
    beta = fields.List(fields.Float(), required=True, validate=validate.Length(min=1))
    alpha = fields.List(fields.Float(), required=True, validate=validate.Length(min=1))

    @validates_schema
    def same_length(self, data, **kwargs):
        if len(data["beta"]) != len(data["alpha"]):
            raise ValidationError("beta and alpha need the same length")


class SynthRequestSchema(Schema):
    algo = fields.String(required=True, validate=validate.OneOf(ALGOS))
    graph = fields.Raw(required=True)
    k = fields.Integer(load_default=2, validate=validate.Range(min=2))
    p = fields.Integer(load_default=None, validate=validate.Range(min=1))
    angles = fields.Nested(AnglesSchema, load_default=None)
    problem = fields.Nested(ProblemSchema, load_default=None)
    threshold = fields.Float(load_default=0.0, validate=validate.Range(min=0))
    tau = fields.Float(load_default=0.1)
    format = fields.String(load_default="json", validate=validate.OneOf(["json", "qasm"]))
    f_2q = fields.Float(load_default=None)
    f_idle = fields.Float(load_default=None)
    allow_uncertified = fields.Boolean(load_default=False)

    @validates_schema
    def check_inputs(self, data, **kwargs):
        if data["algo"] in ("qaoa", "trotter") and data.get("problem") is None:
            raise ValidationError(f"{data['algo']} needs a problem", "problem")
        if data["algo"] == "qaoa" and data.get("angles") is None:
            raise ValidationError("qaoa needs angles", "angles")
        graph = data["graph"]
        if not isinstance(graph, (str, dict)):
            raise ValidationError("graph must be a spec string or a graph object", "graph")

    @post_load
    def load_graph(self, data, **kwargs):
        if isinstance(data["graph"], dict):
            data["graph"] = GraphSchema().load(data["graph"])
        return data


class VerifyRequestSchema(Schema):
    circuit = fields.Nested(CircuitSchema, required=True)
    target = fields.String(required=True, validate=validate.Regexp(r"^(k-body|up-to|special):\d+$"))
    graph = fields.String(load_default=None)


class NoiseRequestSchema(Schema):
    n = fields.Integer(required=True, validate=validate.Range(min=1))
    cnot_count = fields.Integer(required=True, validate=validate.Range(min=0))
    cnot_depth = fields.Float(required=True, validate=validate.Range(min=0))
    f_2q = fields.Float(required=True)
    f_idle = fields.Float(load_default=None)
    t1 = fields.Float(load_default=None)
    t2 = fields.Float(load_default=None)
    tg = fields.Float(load_default=None)

    @validates_schema
    def idle_source(self, data, **kwargs):
        times = [data.get(k) for k in ("t1", "t2", "tg")]
        if data.get("f_idle") is None and None in times:
            raise ValidationError("give f_idle or all of t1, t2, tg")


class BestDesignQuerySchema(Schema):
    n = fields.Integer(required=True, validate=validate.Range(min=2))
    f_2q = fields.Float(required=True)
    f_idle = fields.Float(required=True)


class ProcessFidelitySchema(Schema):
    probs = fields.List(fields.Float(), required=True, validate=validate.Length(min=2))


class ExpectedQuerySchema(Schema):
    kind = fields.String(required=True)
    n = fields.Integer(required=True, validate=validate.Range(min=1))
    k = fields.Integer(load_default=None)
