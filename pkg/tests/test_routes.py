import pytest

from app import app
from config.config import Config


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client


def test_health(client):
    response = client.get('/api/health')
    assert response.status_code == 200
    assert response.get_json() == {'status': 'ok'}


def test_analyze_pair(client):
    response = client.post('/api/analyze', json={'a': 1, 'b': 2, 'n': 7})
    assert response.status_code == 200
    data = response.get_json()
    assert data['case'] == 'case3-prime'
    assert data['valuation'] == '3'
    assert data['exceptional'] is True
    assert data['U'] == '2058'


def test_analyze_keeps_field_order(client):
    response = client.post('/api/analyze', json={'a': 1, 'b': 2, 'n': 3})
    assert list(response.get_json())[:3] == ['a', 'b', 'n']


def test_analyze_accepts_decimal_strings(client):
    big = str(10 ** 40 + 1)
    response = client.post('/api/analyze', json={'a': big, 'b': '2', 'n': '5'})
    assert response.status_code == 200
    assert response.get_json()['a'] == big


def test_analyze_triple(client):
    response = client.post('/api/analyze', json={'a': 1, 'b': 2, 'c': 3, 'n': 3})
    assert response.status_code == 200
    assert response.get_json()['case'] == 't-case2'


@pytest.mark.parametrize('body', [
    {'a': 1, 'b': 2},
    {'a': 0, 'b': 2, 'n': 3},
    {'a': 1.5, 'b': 2, 'n': 3},
    {'a': True, 'b': 2, 'n': 3},
    {'a': 3, 'b': 6, 'n': 1},
])
def test_analyze_bad_input(client, body):
    response = client.post('/api/analyze', json=body)
    assert response.status_code == 400
    assert response.get_json()['status'] == 400


def test_analyze_needs_json_body(client):
    assert client.post('/api/analyze', data='not json').status_code == 400


def test_quotient(client):
    response = client.post('/api/quotient', json={'a': 1, 'b': 2, 'p': 7})
    assert response.status_code == 200
    data = response.get_json()
    assert data['M'] == '294'
    assert data['exceptional'] is True


def test_quotient_needs_prime(client):
    assert client.post('/api/quotient', json={'a': 1, 'b': 2, 'p': 8}).status_code == 400


def test_wieferich(client):
    response = client.get('/api/wieferich?base=2&limit=4000')
    assert response.status_code == 200
    assert [hit['p'] for hit in response.get_json()['hits']] == [1093, 3511]


def test_wieferich_limit_is_bounded(client):
    response = client.get(f'/api/wieferich?base=2&limit={Config.API_MAX_PRIME_LIMIT + 1}')
    assert response.status_code == 400


def test_unknown_route_is_404(client):
    assert client.get('/api/nothing').status_code == 404
