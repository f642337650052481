from flasgger import Swagger
from flask_cors import CORS

cors = CORS()
swagger = Swagger()
