from flask import Flask

from config.settings import Config, TestingConfig
from cxsynth.extensions import cors, swagger
from cxsynth.middleware.hooks import register_middleware


def create_app(testing=False):
    app = Flask(__name__)
    app.config.from_object(TestingConfig if testing else Config)

    # ── Init extensions ────────────────────────────────────────────────────────
    cors.init_app(app,
                  resources={r"/api/*": {"origins": "*"}},
                  allow_headers=["Content-Type"],
                  methods=["GET", "POST", "OPTIONS"]
                  )
    swagger.init_app(app)

    # ── Register middleware hooks ───────────────────────────────────────────────
    register_middleware(app)

    # ── Register blueprints ────────────────────────────────────────────────────
    from cxsynth.routes.noise import noise_bp
    from cxsynth.routes.synth import synth_bp
    from cxsynth.routes.verify import verify_bp

    app.register_blueprint(synth_bp)
    app.register_blueprint(verify_bp)
    app.register_blueprint(noise_bp)

    # ── CLI ────────────────────────────────────────────────────────────────────
    from cxsynth.cli import cli
    app.cli.add_command(cli)

    return app
