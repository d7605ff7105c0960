"""
End-to-end tests for the HTTP service.

The flow mirrors a client session: list the corpus, submit groups and
scenarios, then read the verdicts back from the audit trail.
"""
import pytest
from fastapi.testclient import TestClient
import app as service
from perm import format_group_file, regular_representation
from sample_data import SAMPLE_GROUPS, load_sample, sample_path

client = TestClient(service.app)


@pytest.fixture(autouse=True)
def empty_audit_store():
    service.audit_store.clear()
    yield
    service.audit_store.clear()


def _group_text(name: str, regular: bool = False) -> str:
    if regular:
        return format_group_file(regular_representation(load_sample(name), name=f'{name}_regular'))
    return sample_path(name).read_text()


def test_health_check():
    response = client.get('/health')
    assert response.status_code == 200
    assert response.json()['status'] == 'healthy'


def test_samples():
    response = client.get('/samples')
    assert response.status_code == 200
    samples = response.json()['samples']
    assert [s['name'] for s in samples] == [s.name for s in SAMPLE_GROUPS]
    assert {s['name']: s['order'] for s in samples}['s3wrc3'] == 648


def test_check_passes_on_the_square():
    response = client.post('/check', json={
        'group_text': _group_text('d8'),
        'name': 'd8',
        'properties': ['jh', 'modular'],
    })
    assert response.status_code == 200
    record = response.json()
    assert (record['degree'], record['order'], record['point']) == (4, 8, 1)
    assert record['status'] == 'pass'
    assert record['reason'] == 'no property failed'
    assert [r['property'] for r in record['results']] == ['jh', 'modular']


def test_check_fails_on_regular_a4():
    response = client.post('/check', json={'group_text': _group_text('a4', regular=True), 'properties': ['jh']})
    assert response.status_code == 200
    record = response.json()
    assert record['status'] == 'fail'
    assert record['reason'] == 'failed: jh'
    assert record['results'][0]['details']['lengths'] == [2, 3]


def test_check_rejects_bad_input():
    response = client.post('/check', json={'group_text': '4\n(1 2 5)\n'})
    assert response.status_code == 422
    assert 'line 2' in response.json()['detail']

    response = client.post('/check', json={'group_text': '4\n(1 2)\n(3 4)\n'})
    assert response.status_code == 422
    assert 'transitive' in response.json()['detail']


def test_check_validates_the_request_body():
    response = client.post('/check', json={'group_text': _group_text('d8'), 'properties': ['confluence']})
    assert response.status_code == 422


def test_ratfunc_verify():
    response = client.post('/ratfunc/verify', json={'scenario': 'VERIFY z^2 o z + 1 == z^2 + 2z + 1\nVERIFY z^2 o z^2 == z^5\n'})
    assert response.status_code == 200
    payload = response.json()
    assert not payload['passed']
    assert [line['passed'] for line in payload['lines']] == [True, False]


def test_ratfunc_verify_parse_error():
    response = client.post('/ratfunc/verify', json={'scenario': 'VERIFY z + == z'})
    assert response.status_code == 422
    assert 'position 11' in response.json()['detail']


def test_audit_trail():
    first = client.post('/check', json={'group_text': _group_text('c12'), 'name': 'c12', 'properties': ['dedekind']}).json()
    second = client.post('/check', json={'group_text': _group_text('q8'), 'name': 'q8', 'properties': ['hamiltonian']}).json()

    listing = client.get('/audit').json()
    assert listing['total_records'] == 2
    assert {r['record_id'] for r in listing['records']} == {first['record_id'], second['record_id']}

    record = client.get(f"/audit/{first['record_id']}").json()
    assert record['group_name'] == 'c12'
    assert record['results'][0]['status'] == 'pass'


def test_unknown_audit_record():
    response = client.get('/audit/does-not-exist')
    assert response.status_code == 404
