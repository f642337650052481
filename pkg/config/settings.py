import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    SECRET_KEY = os.getenv("SECRET_KEY", "dev-secret")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    DEBUG = os.getenv("FLASK_DEBUG", "0") == "1"
    PORT = int(os.getenv("PORT", "5000"))

    # Dense unitary oracle refuses circuits wider than this
    TWINE_MAX_DENSE_N = int(os.getenv("TWINE_MAX_DENSE_N", "12"))
    LABEL_CAPACITY = int(os.getenv("LABEL_CAPACITY", "4096"))
    MAX_SWEEP_N = int(os.getenv("MAX_SWEEP_N", "128"))

    SWAGGER = {
        "title": "CX Synthesis API",
        "uiversion": 3,
        "version": "1.0.0",
        "description": "Connectivity-aware CNOT/rotation circuit synthesis, certification and noise scoring",
        "definitions": {

            # ── Circuits & graphs ─────────────────────────────────────────────
            "GateJson": {
                "type": "object",
                "required": ["kind"],
                "properties": {
                    "kind":  {"type": "string", "enum": ["cx", "rz", "rx", "h"], "example": "cx"},
                    "c":     {"type": "integer", "example": 0},
                    "t":     {"type": "integer", "example": 1},
                    "q":     {"type": "integer", "example": 0},
                    "theta": {"type": "number",  "example": 0.785398}
                }
            },
            "CircuitJson": {
                "type": "object",
                "required": ["n", "moments"],
                "properties": {
                    "n":       {"type": "integer", "example": 3},
                    "moments": {
                        "type": "array",
                        "items": {"type": "array", "items": {"$ref": "#/definitions/GateJson"}}
                    }
                }
            },
            "GraphJson": {
                "type": "object",
                "required": ["n", "edges"],
                "properties": {
                    "n":      {"type": "integer", "example": 4},
                    "edges":  {"type": "array", "items": {"type": "array", "items": {"type": "integer"}},
                               "example": [[0, 1], [1, 2], [2, 3]]},
                    "family": {"type": "string", "example": "custom"},
                    "hgp": {
                        "type": "object",
                        "properties": {
                            "spine":     {"type": "array", "items": {"type": "integer"}, "example": [1, 2]},
                            "neighbors": {"type": "object", "example": {"1": [0], "2": [3]}}
                        }
                    }
                }
            },
            "ProblemJson": {
                "type": "object",
                "required": ["n"],
                "properties": {
                    "n": {"type": "integer", "example": 4},
                    "J": {"type": "array", "items": {"type": "array"}, "example": [[0, 1, 0.5], [1, 3, -1.0]]},
                    "h": {"type": "array", "items": {"type": "array"}, "example": [[2, 0.25]]},
                    "g": {"type": "array", "items": {"type": "array"}, "example": [[0, 1.0]]},
                    "M": {"type": "array", "items": {"type": "array"}, "example": [[0, 1, 2, 0.3]]}
                }
            },

            # ── Synthesis ─────────────────────────────────────────────────────
            "SynthRequest": {
                "type": "object",
                "required": ["algo", "graph"],
                "properties": {
                    "algo":      {"type": "string", "enum": ["gen", "qft", "qft-approx", "qaoa", "trotter"], "example": "gen"},
                    "graph":     {"type": "string", "example": "lnn:8"},
                    "k":         {"type": "integer", "example": 2},
                    "p":         {"type": "integer", "example": 1},
                    "angles":    {"type": "object", "example": {"beta": [0.3], "alpha": [0.7]}},
                    "problem":   {"$ref": "#/definitions/ProblemJson"},
                    "threshold": {"type": "number", "example": 0.0},
                    "tau":       {"type": "number", "example": 0.1},
                    "format":    {"type": "string", "enum": ["json", "qasm"], "example": "json"}
                }
            },
            "MetricsJson": {
                "type": "object",
                "properties": {
                    "cnot_count":      {"type": "integer", "example": 63},
                    "cnot_depth":      {"type": "integer", "example": 28},
                    "effective_depth": {"type": "number",  "example": 24.5},
                    "mu_n":            {"type": "number",  "example": 2.25},
                    "nu_n":            {"type": "number",  "example": 4.0}
                }
            },
            "SynthReport": {
                "type": "object",
                "properties": {
                    "spec":        {"type": "object"},
                    "metrics":     {"$ref": "#/definitions/MetricsJson"},
                    "certificate": {"$ref": "#/definitions/Certificate"},
                    "permutation": {"type": "array", "items": {"type": "integer"}},
                    "noise":       {"type": "number", "example": 0.87},
                    "exports":     {"type": "array", "items": {"type": "string"}}
                }
            },

            # ── Verification ──────────────────────────────────────────────────
            "VerifyRequest": {
                "type": "object",
                "required": ["circuit", "target"],
                "properties": {
                    "circuit": {"$ref": "#/definitions/CircuitJson"},
                    "target":  {"type": "string", "example": "k-body:2"},
                    "graph":   {"type": "string", "example": "lnn:3"}
                }
            },
            "Certificate": {
                "type": "object",
                "properties": {
                    "generated_count":  {"type": "integer", "example": 3},
                    "missing_count":    {"type": "integer", "example": 0},
                    "missing":          {"type": "array", "items": {"type": "string"}},
                    "clean":            {"type": "boolean", "example": True},
                    "permutation":      {"type": "array", "items": {"type": "integer"}},
                    "connectivity_ok":  {"type": "boolean", "example": True},
                    "first_violation":  {"type": "object"}
                }
            },

            # ── Noise ─────────────────────────────────────────────────────────
            "NoiseRequest": {
                "type": "object",
                "properties": {
                    "n":           {"type": "integer", "example": 12},
                    "cnot_count":  {"type": "integer", "example": 100},
                    "cnot_depth":  {"type": "number",  "example": 40},
                    "f_2q":        {"type": "number",  "example": 0.99},
                    "f_idle":      {"type": "number",  "example": 0.999},
                    "t1":          {"type": "number",  "example": 0.0001},
                    "t2":          {"type": "number",  "example": 0.0001},
                    "tg":          {"type": "number",  "example": 0.0000001}
                }
            },
            "ProcessFidelityRequest": {
                "type": "object",
                "required": ["probs"],
                "properties": {
                    "probs": {"type": "array", "items": {"type": "number"}, "example": [0.98, 0.95, 0.99]}
                }
            },

            # ── Generic ───────────────────────────────────────────────────────
            "ErrorResponse": {
                "type": "object",
                "properties": {
                    "success": {"type": "boolean", "example": False},
                    "error":   {"type": "string",  "example": "Something went wrong"},
                    "detail":  {"type": "array",   "items": {"type": "string"}}
                }
            }
        }
    }


class TestingConfig(Config):
    TESTING = True
    LOG_LEVEL = "DEBUG"
