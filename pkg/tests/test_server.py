import json

import pytest

from clusterchar.server import ApiError, SessionStore, handle_request


@pytest.fixture()
def store():
    return SessionStore()


def post(store, path, body=None):
    return handle_request(store, "POST", path, {}, body or {})


def get(store, path, query=None):
    return handle_request(store, "GET", path, query or {}, None)


def test_session_create_and_seed(store):
    status, payload = post(store, "/session", {"type": "A3", "ell": 1})
    assert status == 200
    sid = payload["session"]
    assert payload["seed"]["frozen"] == 3
    status, seed = get(store, f"/session/{sid}/seed")
    assert status == 200
    assert seed["seed"] == payload["seed"]


def test_mutate_twice_restores_initial(store):
    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    _, once = post(store, f"/session/{sid}/mutate", {"k": 2})
    assert once["exchange"]["relation"]
    _, twice = post(store, f"/session/{sid}/mutate", {"k": 2})
    assert twice["seed"] == created["seed"]
    assert twice["history"] == [2, 2]


def test_undo(store):
    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    post(store, f"/session/{sid}/mutate", {"k": 1})
    _, undone = post(store, f"/session/{sid}/undo")
    assert undone["seed"] == created["seed"]
    assert undone["history"] == []


def test_frozen_mutation_409(store):
    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    with pytest.raises(ApiError) as exc:
        post(store, f"/session/{sid}/mutate", {"k": 4})
    assert exc.value.status == 409


def test_unknown_session_404(store):
    with pytest.raises(ApiError) as exc:
        get(store, "/session/deadbeef/seed")
    assert exc.value.status == 404


def test_char_endpoint_a3(store):
    _, created = post(store, "/session", {"type": "A3", "ell": 1,
                                          "I0": [1, 3]})
    sid = created["session"]
    status, payload = get(store, f"/session/{sid}/char", {"var": "1,0,0"})
    assert status == 200
    assert payload["terms"] == 3
    # the displayed polynomial is the S(alpha_1) truncated character
    assert "Y[1,0]" in payload["polynomial"]


def test_char_out_of_scope_422(store):
    _, created = post(store, "/session", {"type": "A2", "ell": 2})
    sid = created["session"]
    with pytest.raises(ApiError) as exc:
        get(store, f"/session/{sid}/char", {"var": "1,0"})
    assert exc.value.status == 422
    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    with pytest.raises(ApiError) as exc:
        get(store, f"/session/{sid}/char", {"var": "2,0,0"})
    assert exc.value.status == 422


def test_atlas_endpoint(store):
    status, payload = get(store, "/atlas", {"type": "A3", "ell": "1"})
    assert status == 200
    assert payload["clusters"] == 14


def test_seed_roundtrip_bytes(store):
    """Seed payloads round-trip byte-identically through the JSON schema."""
    from clusterchar.cluster import Seed

    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    _, after = post(store, f"/session/{sid}/mutate", {"k": 1})
    blob = json.dumps(after["seed"], sort_keys=True)
    seed = Seed.from_json(json.loads(blob))
    assert json.dumps(seed.to_json(), sort_keys=True) == blob


def test_session_replay_determinism(store):
    _, created = post(store, "/session", {"type": "A3", "ell": 1})
    sid = created["session"]
    for k in (1, 2, 3, 2, 1):
        post(store, f"/session/{sid}/mutate", {"k": k})
    session = store.get(sid)
    assert session.replay_consistent()


def test_http_server_end_to_end():
    """One real HTTP round trip through the threaded server."""
    import threading
    import urllib.request

    from clusterchar.server import serve

    server = serve(port=0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/session",
            data=json.dumps({"type": "A3", "ell": 1}).encode(),
            headers={"Content-Type": "application/json"})
        with urllib.request.urlopen(req) as resp:
            created = json.loads(resp.read())
        assert created["seed"]["frozen"] == 3
        sid = created["session"]
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/session/{sid}/mutate",
            data=json.dumps({"k": 2}).encode())
        with urllib.request.urlopen(req) as resp:
            after = json.loads(resp.read())
        assert "exchange" in after
        # frozen direction surfaces as HTTP 409
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/session/{sid}/mutate",
            data=json.dumps({"k": 4}).encode())
        try:
            urllib.request.urlopen(req)
            raise AssertionError("expected 409")
        except urllib.error.HTTPError as err:
            assert err.code == 409
    finally:
        server.shutdown()
