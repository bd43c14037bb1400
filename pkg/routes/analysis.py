from flask import Blueprint, request, jsonify
from config.config import Config
from services import binomial_service, fermat_service, trinomial_service
from services.errors import DomainError
import logging

logger = logging.getLogger(__name__)
analysis_bp = Blueprint('analysis', __name__)


def _int_field(data, name, default=None):
    """Integer from a JSON number or a decimal string."""
    value = data.get(name, default)
    if value is None:
        raise DomainError(f"'{name}' is required")
    if isinstance(value, bool):
        raise DomainError(f"'{name}' must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip('-').isdigit():
        return int(value)
    raise DomainError(f"'{name}' must be an integer or a decimal string, got {value!r}")


@analysis_bp.route('/health', methods=['GET'])
def health():
    return jsonify({'status': 'ok'}), 200


@analysis_bp.route('/analyze', methods=['POST'])
def analyze():
    """
    Analyze U(a, b) or U(a, b, c).

    Expected JSON body:
    {
        "a": 1, "b": 2, "c": 3 (optional), "n": 3, "cap": 64 (optional)
    }
    """
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'error': 'JSON body is required', 'status': 400}), 400

    a, b, n = _int_field(data, 'a'), _int_field(data, 'b'), _int_field(data, 'n')
    cap = _int_field(data, 'cap', Config.VALUATION_CAP)
    if data.get('c') is not None:
        report = trinomial_service.verify3(a, b, _int_field(data, 'c'), n, cap=cap)
        payload = report.to_dict()
    else:
        report = binomial_service.verify(a, b, n, cap=cap)
        payload = report.to_dict()
        payload['diophantine_k'] = binomial_service.diophantine_exponent(report)
    logger.info(f"Analyzed {payload['case']} instance for n={n}: valuation {payload['valuation']}")
    return jsonify(payload), 200


@analysis_bp.route('/quotient', methods=['POST'])
def quotient():
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'error': 'JSON body is required', 'status': 400}), 400

    a, b, p = _int_field(data, 'a'), _int_field(data, 'b'), _int_field(data, 'p')
    triple = fermat_service.combination(a, b, p)
    check = fermat_service.exceptional_criterion(a, b, p)
    return jsonify({**triple.to_dict(), **check.to_dict()}), 200


@analysis_bp.route('/wieferich', methods=['GET'])
def wieferich():
    """Wieferich-type primes for a base: GET /api/wieferich?base=2&limit=4000&power=2"""
    args = request.args
    base = _int_field(args, 'base')
    limit = _int_field(args, 'limit')
    power = _int_field(args, 'power', Config.WIEFERICH_POWER)
    if limit > Config.API_MAX_PRIME_LIMIT:
        return jsonify({
            'error': f'limit may not exceed {Config.API_MAX_PRIME_LIMIT}; use the CLI for longer sweeps',
            'status': 400
        }), 400

    hits = fermat_service.wieferich_scan(base, limit, power)
    return jsonify({
        'base': str(base),
        'limit': str(limit),
        'power': power,
        'hits': [hit.to_dict() for hit in hits]
    }), 200
