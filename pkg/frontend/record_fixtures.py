"""Record API fixtures for the frontend snapshot tests.

Drives the backend request handler in-process (no sockets) and freezes the
JSON payloads the UI is tested against.  Re-run after any API change:

    python frontend/record_fixtures.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from clusterchar.server import ApiError, SessionStore, handle_request

OUT = pathlib.Path(__file__).resolve().parent / "fixtures"
OUT.mkdir(exist_ok=True)


def save(name, payload):
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print("wrote", path.name)


def main():
    store = SessionStore()
    _, created = handle_request(store, "POST", "/session", {},
                                {"type": "A3", "ell": 1, "I0": [1, 3]})
    sid = created["session"]
    created["session"] = "SESSION"      # make the fixture deterministic
    save("session_create_a3", created)

    _, once = handle_request(store, "POST", f"/session/{sid}/mutate",
                             {}, {"k": 2})
    once["session"] = "SESSION"
    save("mutate_k2", once)

    _, detail = handle_request(store, "GET", f"/session/{sid}/variable",
                               {"var": "1"}, None)
    save("variable_after_mutate", detail)

    _, twice = handle_request(store, "POST", f"/session/{sid}/mutate",
                              {}, {"k": 2})
    twice["session"] = "SESSION"
    save("mutate_k2_again", twice)

    _, undone = handle_request(store, "POST", f"/session/{sid}/undo", {}, {})
    save("undo_once", undone)

    try:
        handle_request(store, "POST", f"/session/{sid}/mutate", {}, {"k": 4})
        raise AssertionError("expected 409")
    except ApiError as exc:
        save("frozen_409", {"status": exc.status, "error": exc.message})

    try:
        handle_request(store, "GET", f"/session/{sid}/char",
                       {"var": "2,0,0"}, None)
        raise AssertionError("expected 422")
    except ApiError as exc:
        save("char_422", {"status": exc.status, "error": exc.message})

    _, char = handle_request(store, "GET", f"/session/{sid}/char",
                             {"var": "1,0,0"}, None)
    save("char_alpha1", char)

    _, detail0 = handle_request(store, "GET", f"/session/{sid}/variable",
                                {"var": "0"}, None)
    save("variable_x1", detail0)

    _, frozen_var = handle_request(store, "GET", f"/session/{sid}/variable",
                                   {"var": "4"}, None)
    save("variable_frozen_f2", frozen_var)


if __name__ == "__main__":
    main()
