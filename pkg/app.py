"""
Flask JSON API for rankpath
Mirrors the CLI verbs: identities, map, series and verify
"""

from datetime import datetime

from flask import Flask, jsonify, request

from rankpath import __version__, identities, maps
from rankpath.config import load_settings
from rankpath.errors import PreconditionError, RankPathError
from rankpath.logging_setup import configure_logging

app = Flask(__name__)
app.json.sort_keys = True

settings = load_settings()
logger = configure_logging(settings.log_level).getChild("api")


def _int_arg(name, value):
    """Parse an integer query parameter"""
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise PreconditionError(f"Parameter {name} must be an integer, got {value!r}") from e


def _json_body():
    body = request.get_json(silent=True)
    if body is None:
        return {}
    if not isinstance(body, dict):
        raise PreconditionError("Request body must be a JSON object")
    return body


@app.route('/api/health')
def health_check():
    """Health check endpoint"""
    return jsonify({
        'status': 'healthy',
        'timestamp': datetime.now().isoformat(),
        'version': __version__
    })


@app.route('/api/identities')
def list_identities():
    """Catalog of verifiable identities with their parameters"""
    return jsonify(identities.list_identities())


@app.route('/api/map/<name>', methods=['POST'])
def apply_map(name):
    """Apply a named bijection to {"input": ..., "ell": k}"""
    body = _json_body()
    if 'input' not in body:
        raise PreconditionError('Request body needs an "input" field')
    ell = body.get('ell')
    result = maps.apply_map(
        name,
        body['input'],
        None if ell is None else _int_arg('ell', ell),
        round_trip=bool(body.get('round_trip', False))
    )
    logger.info(f"map {name} served")
    return jsonify(result)


@app.route('/api/series/<name>')
def series(name):
    """Evaluate a named closed form; query parameters are integers"""
    params = {key: _int_arg(key, value) for key, value in request.args.items()}
    D = params.pop('D', None)
    value = identities.evaluate_formula(name, D, **params)
    logger.info(f"series {name} served")
    return jsonify({
        'formula': name,
        'params': params,
        'D': D,
        'value': identities.to_json_value(value),
        'text': str(value)
    })


@app.route('/api/verify/<identity>', methods=['POST'])
def verify(identity):
    """Run a verification sweep; the body maps parameter names to ranges"""
    overrides = {key: str(value) for key, value in _json_body().items()}
    report = identities.verify(identity, overrides, jobs=1, cap=load_settings().cap)
    return jsonify(report.to_json())


# Error handlers
@app.errorhandler(RankPathError)
def bad_request(error):
    logger.warning(f"Rejected request to {request.path}: {error}")
    return jsonify({'error': str(error), 'kind': error.kind}), 400


@app.errorhandler(404)
def not_found(error):
    return jsonify({'error': 'Not found', 'kind': 'not-found'}), 404


@app.errorhandler(405)
def method_not_allowed(error):
    return jsonify({'error': 'Method not allowed', 'kind': 'method-not-allowed'}), 405


@app.errorhandler(500)
def internal_error(error):
    logger.error(f"Internal error on {request.path}: {error}")
    return jsonify({'error': 'Internal server error', 'kind': 'internal'}), 500


if __name__ == '__main__':
    app.run(debug=True, host='0.0.0.0', port=5000)
