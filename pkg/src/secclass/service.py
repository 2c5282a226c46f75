"""HTTP/JSON service exposing the engine and store.

One server instance serves one workspace, optionally protected by a
single static bearer token (set via ``SECCLASS_TOKEN`` or the CLI
flag).  Responses are canonical JSON; for the same inputs the compute
body is byte-identical to the library/CLI output.

Error shape, used by every endpoint:

    {"error": {"status": <int>, "message": <str>, "details": [
        {"path": ..., "rule": ..., "message": ...}, ...]}}
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import __version__
from .catalog import CATALOG_SCHEMA_VERSION, catalog_from_doc
from .engine import classify_system
from .errors import (
    EmptySystemError,
    IncompleteAssessmentError,
    IssueCollector,
    ModelValidationError,
    NotFoundError,
    SchemaVersionError,
    SecclassError,
    VersionConflictError,
)
from .improve import improvement_search
from .jsonutil import canonical_json
from .levels import SecurityClass
from .model import (
    SYSTEM_SCHEMA_VERSION,
    SystemRecord,
    component_from_doc,
    new_id,
)
from .report import build_compute_doc
from .store import FileStore, Store
from .tables import (
    TABLES_SCHEMA_VERSION,
    WARN,
    default_tables,
    tables_from_doc,
    validate_tables,
)

DEFAULT_WORKSPACE = "default"


@dataclass
class ServiceConfig:
    store: Store
    workspace: str = DEFAULT_WORKSPACE
    token: str | None = None
    # optional hard cutoff for the static token; None = never expires
    token_expires_at: datetime | None = None

    def token_expired(self) -> bool:
        return (
            self.token_expires_at is not None
            and datetime.now(timezone.utc) >= self.token_expires_at
        )


class ApiError(SecclassError):
    def __init__(self, status: int, message: str, details: list[dict] | None = None):
        self.status = status
        self.message = message
        self.details = details or []
        super().__init__(message)


def _json(doc, status: int = 200) -> Response:
    return Response(
        content=canonical_json(doc), status_code=status, media_type="application/json"
    )


def _error_response(status: int, message: str, details: list[dict] | None = None) -> Response:
    return _json(
        {"error": {"status": status, "message": message, "details": details or []}},
        status=status,
    )


async def _read_json(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ApiError(400, "request body must be valid JSON") from None
    if not isinstance(body, dict):
        raise ApiError(400, "request body must be a JSON object")
    return body


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(
        title="secclass service",
        version=__version__,
        description="Security classification engine: systems, assessments, "
        "class computation, improvement search, and configuration.",
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store, workspace = config.store, config.workspace

    # -- cross-cutting -------------------------------------------------------

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if config.token and request.url.path not in ("/health", "/openapi.json", "/docs"):
            if config.token_expired():
                return _error_response(401, "the configured token has expired")
            supplied = request.headers.get("authorization", "")
            if supplied != f"Bearer {config.token}":
                return _error_response(401, "missing or invalid bearer token")
        return await call_next(request)

    @app.exception_handler(ApiError)
    async def handle_api_error(_, exc: ApiError):
        return _error_response(exc.status, exc.message, exc.details)

    @app.exception_handler(ModelValidationError)
    async def handle_validation(_, exc: ModelValidationError):
        return _error_response(
            400, "validation failed", [i.to_doc() for i in exc.issues]
        )

    @app.exception_handler(IncompleteAssessmentError)
    async def handle_incomplete(_, exc: IncompleteAssessmentError):
        return _error_response(
            400,
            str(exc),
            [{"path": "assessment", "rule": f"step-{exc.step}", "message": str(exc)}],
        )

    @app.exception_handler(EmptySystemError)
    async def handle_empty(_, exc: EmptySystemError):
        return _error_response(400, str(exc))

    @app.exception_handler(NotFoundError)
    async def handle_not_found(_, exc: NotFoundError):
        return _error_response(404, str(exc))

    @app.exception_handler(VersionConflictError)
    async def handle_conflict(_, exc: VersionConflictError):
        return _error_response(409, str(exc))

    @app.exception_handler(SchemaVersionError)
    async def handle_schema(_, exc: SchemaVersionError):
        return _error_response(400, str(exc))

    # -- meta ------------------------------------------------------------------

    @app.get("/health")
    async def health():
        return _json(
            {
                "name": "secclass",
                "version": __version__,
                "schema_versions": {
                    "system": SYSTEM_SCHEMA_VERSION,
                    "tables": TABLES_SCHEMA_VERSION,
                    "catalog": CATALOG_SCHEMA_VERSION,
                },
            }
        )

    # -- systems ----------------------------------------------------------------

    def _summary(record: SystemRecord) -> dict:
        freshness = store.result_freshness(workspace, record)
        cached_class = None
        if record.last_results:
            cached_class = record.last_results.get("computed", {}).get("system_class")
        return {
            "id": record.id,
            "name": record.name,
            "description": record.description,
            "version": record.version,
            "component_count": len(record.components),
            "last_class": cached_class,
            "results_freshness": freshness,
        }

    def _record_doc(record: SystemRecord) -> dict:
        doc = record.to_doc()
        doc["results_freshness"] = store.result_freshness(workspace, record)
        return doc

    @app.get("/systems")
    async def list_systems():
        return _json({"systems": [_summary(r) for r in store.list_systems(workspace)]})

    @app.post("/systems")
    async def create_system(request: Request):
        body = await _read_json(request)
        name = str(body.get("name", "")).strip()
        if not name:
            raise ApiError(
                400,
                "validation failed",
                [{"path": "name", "rule": "required", "message": "system name is required"}],
            )
        record = SystemRecord(
            id=new_id("sys"), name=name, description=str(body.get("description", "") or "")
        )
        saved = store.save_system(workspace, record)
        return _json(_record_doc(saved), status=201)

    @app.get("/systems/{system_id}")
    async def get_system(system_id: str):
        return _json(_record_doc(store.load_system(workspace, system_id)))

    @app.put("/systems/{system_id}")
    async def update_system(system_id: str, request: Request):
        body = await _read_json(request)
        record = store.load_system(workspace, system_id)
        submitted = replace(
            record,
            name=str(body.get("name", record.name)),
            description=str(body.get("description", record.description)),
            version=int(body.get("version", record.version)),
        )
        return _json(_record_doc(store.save_system(workspace, submitted)))

    @app.delete("/systems/{system_id}")
    async def delete_system(system_id: str):
        store.delete_system(workspace, system_id)
        return Response(status_code=204)

    # -- components ---------------------------------------------------------------

    @app.get("/systems/{system_id}/components")
    async def list_components(system_id: str):
        record = store.load_system(workspace, system_id)
        return _json({"components": [c.to_doc() for c in record.components]})

    @app.post("/systems/{system_id}/components")
    async def add_component(system_id: str, request: Request):
        body = await _read_json(request)
        record = store.load_system(workspace, system_id)
        catalog = store.active_catalog(workspace)
        body.setdefault("id", new_id("cmp"))
        if "answers" not in body:
            body["answers"] = default_answers_doc(catalog, str(body.get("component_type", "")))
        issues = IssueCollector()
        component = component_from_doc(body, "component", issues)
        issues.raise_if_any()
        if catalog.component_type(component.component_type) is None:
            known = ", ".join(t.name for t in catalog.component_types)
            raise ApiError(
                400,
                "validation failed",
                [
                    {
                        "path": "component.component_type",
                        "rule": "enum",
                        "message": f"unknown component type; expected one of: {known}",
                    }
                ],
            )
        if any(c.name == component.name for c in record.components):
            raise ApiError(
                400,
                "validation failed",
                [
                    {
                        "path": "component.name",
                        "rule": "unique",
                        "message": f"component name {component.name!r} already exists",
                    }
                ],
            )
        submitted = replace(
            record.with_component(component), version=int(body.get("version", record.version))
        )
        saved = store.save_system(workspace, submitted)
        return _json(saved.component(component.id).to_doc(), status=201)

    @app.get("/systems/{system_id}/components/{component_id}")
    async def get_component(system_id: str, component_id: str):
        record = store.load_system(workspace, system_id)
        component = record.component(component_id)
        if component is None:
            raise NotFoundError("component", component_id)
        return _json(component.to_doc())

    @app.delete("/systems/{system_id}/components/{component_id}")
    async def delete_component(system_id: str, component_id: str):
        record = store.load_system(workspace, system_id)
        if record.component(component_id) is None:
            raise NotFoundError("component", component_id)
        store.save_system(workspace, record.without_component(component_id))
        return Response(status_code=204)

    @app.put("/systems/{system_id}/components/{component_id}/assessment")
    async def put_assessment(system_id: str, component_id: str, request: Request):
        body = await _read_json(request)
        record = store.load_system(workspace, system_id)
        component = record.component(component_id)
        if component is None:
            raise NotFoundError("component", component_id)
        merged = component.to_doc()
        for key in (
            "name",
            "component_type",
            "description",
            "features",
            "impact",
            "communication_mechanisms",
            "network_scope",
            "connectivity",
            "answers",
        ):
            if key in body:
                merged[key] = body[key]
        issues = IssueCollector()
        updated = component_from_doc(merged, "assessment", issues)
        issues.raise_if_any()
        submitted = replace(
            record.with_component(updated), version=int(body.get("version", record.version))
        )
        saved = store.save_system(workspace, submitted)
        return _json(saved.component(component_id).to_doc())

    # -- computation -----------------------------------------------------------------

    @app.post("/systems/{system_id}/compute")
    async def compute(system_id: str):
        record = store.load_system(workspace, system_id)
        outcome = classify_system(
            store.active_tables(workspace), store.active_catalog(workspace), record
        )
        doc = build_compute_doc(record, outcome)
        store.save_results(
            workspace, system_id, {"input_hash": outcome.input_hash, "computed": doc}
        )
        return _json(doc)

    @app.post("/systems/{system_id}/improve")
    async def improve(system_id: str, request: Request):
        body = await _read_json(request)
        try:
            target = SecurityClass.parse(str(body.get("target", "")))
        except ValueError as exc:
            raise ApiError(
                400,
                "validation failed",
                [{"path": "target", "rule": "enum", "message": str(exc)}],
            ) from None
        record = store.load_system(workspace, system_id)
        if not record.components:
            raise EmptySystemError(system_id)
        only = body.get("component_id")
        components = record.components
        if only is not None:
            component = record.component(str(only))
            if component is None:
                raise NotFoundError("component", str(only))
            components = (component,)
        tables = store.active_tables(workspace)
        catalog = store.active_catalog(workspace)
        outcomes = []
        for component in components:
            outcome = improvement_search(tables, catalog, component, target)
            doc = outcome.to_doc()
            doc["component_id"] = component.id
            doc["name"] = component.name
            outcomes.append(doc)
        return _json({"system_id": system_id, "target": target.value, "components": outcomes})

    # -- configuration ------------------------------------------------------------------

    @app.get("/config/tables")
    async def get_tables():
        return _json(store.active_tables(workspace).to_doc())

    @app.put("/config/tables")
    async def put_tables(request: Request, strictness: str = WARN):
        body = await _read_json(request)
        body.setdefault("schema_version", TABLES_SCHEMA_VERSION)
        body["origin"] = "custom"
        report = validate_tables(body, strictness)
        tables = tables_from_doc(body, strictness)  # raises 400 via handler on errors
        store.save_tables_override(workspace, tables)
        doc = tables.to_doc()
        doc["validation"] = report.to_doc()
        return _json(doc)

    @app.delete("/config/tables")
    async def reset_tables_endpoint():
        store.delete_tables_override(workspace)
        return _json(default_tables().to_doc())

    @app.get("/config/catalog")
    async def get_catalog():
        return _json(store.active_catalog(workspace).to_doc())

    @app.put("/config/catalog")
    async def put_catalog(request: Request):
        body = await _read_json(request)
        catalog = catalog_from_doc(body)
        store.save_catalog_override(workspace, catalog)
        return _json(catalog.to_doc())

    return app


def default_answers_doc(catalog, component_type: str) -> list[dict]:
    """Answer stubs for every applicable criterion: unsatisfied, except
    the component type's default-N/A criteria which start as N/A."""
    ctype = catalog.component_type(component_type)
    default_na = set(ctype.default_na_criteria) if ctype else set()
    return [
        {
            "criterion_id": c.id,
            "status": "not_applicable" if c.id in default_na else "unsatisfied",
            "belief": 1.0,
            "weight": 1.0,
        }
        for c in catalog.applicable_criteria(component_type)
    ]


def app_from_env() -> FastAPI:
    """App factory driven by environment variables (uvicorn --factory)."""
    store_path = os.environ.get("SECCLASS_STORE", "./secclass-store")
    expires_raw = os.environ.get("SECCLASS_TOKEN_EXPIRES")  # ISO 8601
    expires = datetime.fromisoformat(expires_raw) if expires_raw else None
    if expires is not None and expires.tzinfo is None:
        expires = expires.replace(tzinfo=timezone.utc)
    return create_app(
        ServiceConfig(
            store=FileStore(store_path),
            workspace=os.environ.get("SECCLASS_WORKSPACE", DEFAULT_WORKSPACE),
            token=os.environ.get("SECCLASS_TOKEN") or None,
            token_expires_at=expires,
        )
    )
