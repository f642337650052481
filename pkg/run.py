import logging

from config.settings import Config
from cxsynth import create_app

logging.basicConfig(level=Config.LOG_LEVEL)

# gunicorn entry point: gunicorn run:app
app = create_app()

if __name__ == "__main__":
    app.run(debug=Config.DEBUG, port=Config.PORT)
