#!/usr/bin/env python3
"""Regenerate docs/openapi.json from the service definition."""
from __future__ import annotations

import json
from pathlib import Path

from secclass.service import ServiceConfig, create_app
from secclass.store import FileStore


def main() -> None:
    app = create_app(ServiceConfig(store=FileStore("/tmp/secclass-openapi-scratch")))
    out = Path(__file__).resolve().parent.parent / "docs" / "openapi.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(app.openapi(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
