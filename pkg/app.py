from enum import Enum
from fractions import Fraction

from flask import Flask, jsonify
from flask.json.provider import DefaultJSONProvider
from werkzeug.exceptions import HTTPException

from config.config import Config
from routes.analysis import analysis_bp
from services.errors import DomainError, InvariantViolation


class ExactJSONProvider(DefaultJSONProvider):
    """JSON without floats: rationals as numerator/denominator strings."""

    sort_keys = False

    @staticmethod
    def default(obj):
        if isinstance(obj, Fraction):
            return {'numerator': str(obj.numerator), 'denominator': str(obj.denominator)}
        if isinstance(obj, Enum):
            return obj.value
        return DefaultJSONProvider.default(obj)


app = Flask(__name__)
app.config.from_object(Config)
app.json = ExactJSONProvider(app)

# Register blueprints
app.register_blueprint(analysis_bp, url_prefix='/api')


# Error handlers
@app.errorhandler(DomainError)
def handle_domain_error(error):
    return jsonify({
        'error': 'Invalid input',
        'message': str(error),
        'status': 400
    }), 400


@app.errorhandler(InvariantViolation)
def handle_invariant_violation(error):
    app.logger.error(f"Invariant violated: {str(error)}")
    return jsonify({
        'error': 'Invariant violated',
        'message': str(error),
        'status': 500
    }), 500


@app.errorhandler(Exception)
def handle_general_error(error):
    if isinstance(error, HTTPException):
        return error
    app.logger.error(f"Unhandled error: {str(error)}")
    return jsonify({
        'error': 'Internal server error',
        'message': str(error),
        'status': 500
    }), 500


if __name__ == '__main__':
    import os
    port = int(os.environ.get('PORT', 5002))
    print(f"Server is running on port {port}")
    app.run(host='0.0.0.0', port=port, debug=Config.ENVIRONMENT == 'development')
