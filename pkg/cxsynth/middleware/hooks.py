from flask import request
from marshmallow import ValidationError

from cxsynth.errors import CxSynthError
from cxsynth.utils.helpers import error


def _flatten_messages(messages, prefix=""):
    if isinstance(messages, dict):
        out = []
        for key, value in messages.items():
            out += _flatten_messages(value, f"{prefix}{key}.")
        return out
    if isinstance(messages, list) and all(isinstance(m, str) for m in messages):
        return [f"{prefix.rstrip('.')}: {m}" if prefix else m for m in messages]
    return [f"{prefix.rstrip('.')}: {messages}"]


def register_middleware(app):
    """Register app-level before/after request hooks and JSON error handlers."""

    @app.before_request
    def log_request():
        app.logger.debug(f"--> {request.method} {request.path}")

    @app.after_request
    def add_headers(response):
        response.headers["X-Content-Type-Options"] = "nosniff"
        response.headers["X-Frame-Options"] = "DENY"
        return response

    @app.errorhandler(ValidationError)
    def validation_failed(e):
        return error("Validation failed", 400, _flatten_messages(e.messages))

    @app.errorhandler(CxSynthError)
    def domain_error(e):
        app.logger.warning(f"{type(e).__name__}: {e.message}")
        return error(e.message, e.status, e.detail)

    @app.errorhandler(404)
    def not_found(e):
        return error("Route not found", 404)

    @app.errorhandler(500)
    def server_error(e):
        app.logger.error(f"unhandled error on {request.path}: {e}")
        return error("Internal server error", 500)
