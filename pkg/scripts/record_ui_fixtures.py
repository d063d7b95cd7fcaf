#!/usr/bin/env python3
"""Capture live API responses into the frontend's test fixtures.

The browser console's snapshot tests compare rendered values against these
recorded payloads, keeping the UI honest about doing no metric math itself.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from inspectkit.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"

CAPTURES = [
    ("projects.json", "GET", "/projects", None),
    ("p10_metrics.json", "GET", "/projects/P10/metrics", None),
    ("p10_compliance.json", "GET", "/projects/P10/compliance", None),
    ("p1_compliance.json", "GET", "/projects/P1/compliance", None),
    ("plot_di.json", "GET", "/plot/di", None),
    ("build_req_small.json", "POST", "/bbn/build", {"phase": "req", "size": "small"}),
    ("query_req_small_m.json", "POST", "/bbn/query",
     {"phase": "req", "size": "small", "evidence": {"num_inspectors": "M"}}),
    ("query_req_small_prior.json", "POST", "/bbn/query",
     {"phase": "req", "size": "small", "evidence": {}}),
]


def main() -> None:
    client = TestClient(create_app())
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, method, path, body in CAPTURES:
        response = client.get(path) if method == "GET" else client.post(path, json=body)
        response.raise_for_status()
        target = FIXTURES / name
        target.write_text(json.dumps(response.json(), indent=2) + "\n")
        print(f"wrote {target.relative_to(FIXTURES.parent.parent)}")


if __name__ == "__main__":
    main()
