"""Durable, versioned storage of systems and configuration overrides.

Two backends share one interface: a file-based store (default; one YAML
document per system plus a workspace index) and an embedded relational
store on sqlite3.  Each workspace is a private space: systems, an
optional lookup-table override and an optional catalog override.

Writes use optimistic versioning: a save must present the version it
read, and a mismatch raises VersionConflictError instead of silently
overwriting.  Cached classification results are derived data and are
written without bumping the record version.
"""
from __future__ import annotations

import os
import sqlite3
import tempfile
import threading
from abc import ABC, abstractmethod
from dataclasses import replace
from pathlib import Path

import yaml

from .catalog import CriteriaCatalog, catalog_from_doc, default_catalog
from .engine import compute_input_hash
from .errors import (
    ModelValidationError,
    NotFoundError,
    ValidationIssue,
    VersionConflictError,
)
from .model import SystemRecord, migrate_system_doc, system_from_doc
from .tables import (
    LookupTables,
    STRICT,
    WARN,
    default_tables,
    tables_from_doc,
)

FRESH = "fresh"
STALE = "stale"

INDEX_SCHEMA_VERSION = 1


class Store(ABC):
    """Workspace-scoped persistence. Workspaces auto-create on first write."""

    # -- systems ----------------------------------------------------------

    @abstractmethod
    def list_systems(self, workspace: str) -> list[SystemRecord]: ...

    @abstractmethod
    def load_system(self, workspace: str, system_id: str) -> SystemRecord: ...

    @abstractmethod
    def save_system(self, workspace: str, record: SystemRecord) -> SystemRecord:
        """Persist ``record``; its ``version`` must match the stored one
        (0 for new records).  Returns the record with the bumped version."""

    @abstractmethod
    def delete_system(self, workspace: str, system_id: str) -> None: ...

    @abstractmethod
    def save_results(self, workspace: str, system_id: str, results: dict) -> SystemRecord:
        """Attach cached results without bumping the record version."""

    # -- configuration overrides -----------------------------------------

    @abstractmethod
    def load_tables_override(self, workspace: str) -> LookupTables | None: ...

    @abstractmethod
    def save_tables_override(self, workspace: str, tables: LookupTables) -> None: ...

    @abstractmethod
    def delete_tables_override(self, workspace: str) -> None: ...

    @abstractmethod
    def load_catalog_override(self, workspace: str) -> CriteriaCatalog | None: ...

    @abstractmethod
    def save_catalog_override(self, workspace: str, catalog: CriteriaCatalog) -> None: ...

    # -- derived helpers ---------------------------------------------------

    def active_tables(self, workspace: str) -> LookupTables:
        return self.load_tables_override(workspace) or default_tables()

    def active_catalog(self, workspace: str) -> CriteriaCatalog:
        return self.load_catalog_override(workspace) or default_catalog()

    def result_freshness(self, workspace: str, record: SystemRecord) -> str | None:
        """``fresh``/``stale`` for the cached results, None if no cache."""
        if not record.last_results:
            return None
        current = compute_input_hash(
            self.active_tables(workspace),
            self.active_catalog(workspace),
            record.components,
        )
        return FRESH if record.last_results.get("input_hash") == current else STALE


def _check_version(stored: int | None, submitted: int, system_id: str) -> None:
    expected = stored if stored is not None else 0
    if submitted != expected:
        raise VersionConflictError(system_id, expected, submitted)


class FileStore(Store):
    """One directory per workspace; one YAML document per system.

    Writes are atomic (write-temp + rename) and serialized per
    workspace within this process.
    """

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # -- layout ------------------------------------------------------------

    def _ws(self, workspace: str) -> Path:
        return self.root / workspace

    def _index_path(self, workspace: str) -> Path:
        return self._ws(workspace) / "index.yaml"

    def _system_path(self, workspace: str, system_id: str) -> Path:
        return self._ws(workspace) / "systems" / f"{system_id}.yaml"

    def _lock(self, workspace: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(workspace, threading.Lock())

    @staticmethod
    def _write_atomic(path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _read_index(self, workspace: str) -> dict:
        path = self._index_path(workspace)
        if not path.exists():
            return {"schema_version": INDEX_SCHEMA_VERSION, "systems": {}}
        return yaml.safe_load(path.read_text("utf-8"))

    def _write_index(self, workspace: str, index: dict) -> None:
        self._write_atomic(
            self._index_path(workspace), yaml.safe_dump(index, sort_keys=True)
        )

    # -- systems ------------------------------------------------------------

    def list_systems(self, workspace: str) -> list[SystemRecord]:
        index = self._read_index(workspace)
        return [
            self.load_system(workspace, system_id)
            for system_id in sorted(index.get("systems", {}))
        ]

    def load_system(self, workspace: str, system_id: str) -> SystemRecord:
        path = self._system_path(workspace, system_id)
        if not path.exists():
            raise NotFoundError("system", system_id)
        doc = yaml.safe_load(path.read_text("utf-8"))
        return system_from_doc(doc)

    def save_system(self, workspace: str, record: SystemRecord) -> SystemRecord:
        with self._lock(workspace):
            index = self._read_index(workspace)
            systems = index.setdefault("systems", {})
            stored = systems.get(record.id)
            _check_version(stored["version"] if stored else None, record.version, record.id)
            taken = {
                meta.get("name")
                for other_id, meta in systems.items()
                if other_id != record.id
            }
            if record.name in taken:
                raise ModelValidationError(
                    [ValidationIssue("name", "unique", f"system name {record.name!r} already exists")]
                )
            saved = replace(record, version=record.version + 1)
            self._write_atomic(
                self._system_path(workspace, record.id),
                yaml.safe_dump(saved.to_doc(), sort_keys=True),
            )
            systems[record.id] = {"name": saved.name, "version": saved.version}
            self._write_index(workspace, index)
            return saved

    def delete_system(self, workspace: str, system_id: str) -> None:
        with self._lock(workspace):
            index = self._read_index(workspace)
            if system_id not in index.get("systems", {}):
                raise NotFoundError("system", system_id)
            del index["systems"][system_id]
            path = self._system_path(workspace, system_id)
            if path.exists():
                path.unlink()
            self._write_index(workspace, index)

    def save_results(self, workspace: str, system_id: str, results: dict) -> SystemRecord:
        with self._lock(workspace):
            record = self.load_system(workspace, system_id)
            updated = replace(record, last_results=results)
            self._write_atomic(
                self._system_path(workspace, system_id),
                yaml.safe_dump(updated.to_doc(), sort_keys=True),
            )
            return updated

    # -- configuration --------------------------------------------------------

    def _tables_path(self, workspace: str) -> Path:
        return self._ws(workspace) / "tables.yaml"

    def _catalog_path(self, workspace: str) -> Path:
        return self._ws(workspace) / "catalog.yaml"

    def load_tables_override(self, workspace: str) -> LookupTables | None:
        path = self._tables_path(workspace)
        if not path.exists():
            return None
        return tables_from_doc(yaml.safe_load(path.read_text("utf-8")))

    def save_tables_override(self, workspace: str, tables: LookupTables) -> None:
        tables_from_doc(tables.to_doc())  # overrides are validated on write
        with self._lock(workspace):
            self._write_atomic(
                self._tables_path(workspace), yaml.safe_dump(tables.to_doc(), sort_keys=True)
            )

    def delete_tables_override(self, workspace: str) -> None:
        path = self._tables_path(workspace)
        if path.exists():
            path.unlink()

    def load_catalog_override(self, workspace: str) -> CriteriaCatalog | None:
        path = self._catalog_path(workspace)
        if not path.exists():
            return None
        return catalog_from_doc(yaml.safe_load(path.read_text("utf-8")))

    def save_catalog_override(self, workspace: str, catalog: CriteriaCatalog) -> None:
        catalog_from_doc(catalog.to_doc())
        with self._lock(workspace):
            self._write_atomic(
                self._catalog_path(workspace),
                yaml.safe_dump(catalog.to_doc(), sort_keys=True),
            )


class SqliteStore(Store):
    """Embedded relational backend; same contract as FileStore."""

    def __init__(self, path: str | os.PathLike):
        self.path = str(path)
        self._guard = threading.Lock()
        with self._connect() as conn:
            conn.executescript(
                """
                CREATE TABLE IF NOT EXISTS systems (
                    workspace TEXT NOT NULL,
                    id TEXT NOT NULL,
                    name TEXT NOT NULL,
                    version INTEGER NOT NULL,
                    doc TEXT NOT NULL,
                    PRIMARY KEY (workspace, id)
                );
                CREATE TABLE IF NOT EXISTS config (
                    workspace TEXT NOT NULL,
                    key TEXT NOT NULL,
                    doc TEXT NOT NULL,
                    PRIMARY KEY (workspace, key)
                );
                """
            )

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.path)
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    def list_systems(self, workspace: str) -> list[SystemRecord]:
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT doc FROM systems WHERE workspace = ? ORDER BY id", (workspace,)
            ).fetchall()
        return [system_from_doc(yaml.safe_load(row[0])) for row in rows]

    def load_system(self, workspace: str, system_id: str) -> SystemRecord:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT doc FROM systems WHERE workspace = ? AND id = ?",
                (workspace, system_id),
            ).fetchone()
        if row is None:
            raise NotFoundError("system", system_id)
        return system_from_doc(yaml.safe_load(row[0]))

    def save_system(self, workspace: str, record: SystemRecord) -> SystemRecord:
        with self._guard, self._connect() as conn:
            row = conn.execute(
                "SELECT version FROM systems WHERE workspace = ? AND id = ?",
                (workspace, record.id),
            ).fetchone()
            _check_version(row[0] if row else None, record.version, record.id)
            clash = conn.execute(
                "SELECT 1 FROM systems WHERE workspace = ? AND name = ? AND id != ?",
                (workspace, record.name, record.id),
            ).fetchone()
            if clash:
                raise ModelValidationError(
                    [ValidationIssue("name", "unique", f"system name {record.name!r} already exists")]
                )
            saved = replace(record, version=record.version + 1)
            conn.execute(
                "INSERT OR REPLACE INTO systems (workspace, id, name, version, doc) "
                "VALUES (?, ?, ?, ?, ?)",
                (
                    workspace,
                    saved.id,
                    saved.name,
                    saved.version,
                    yaml.safe_dump(saved.to_doc(), sort_keys=True),
                ),
            )
            return saved

    def delete_system(self, workspace: str, system_id: str) -> None:
        with self._guard, self._connect() as conn:
            deleted = conn.execute(
                "DELETE FROM systems WHERE workspace = ? AND id = ?",
                (workspace, system_id),
            ).rowcount
        if not deleted:
            raise NotFoundError("system", system_id)

    def save_results(self, workspace: str, system_id: str, results: dict) -> SystemRecord:
        with self._guard:
            record = self.load_system(workspace, system_id)
            updated = replace(record, last_results=results)
            with self._connect() as conn:
                conn.execute(
                    "UPDATE systems SET doc = ? WHERE workspace = ? AND id = ?",
                    (yaml.safe_dump(updated.to_doc(), sort_keys=True), workspace, system_id),
                )
            return updated

    def _load_config(self, workspace: str, key: str) -> dict | None:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT doc FROM config WHERE workspace = ? AND key = ?",
                (workspace, key),
            ).fetchone()
        return yaml.safe_load(row[0]) if row else None

    def _save_config(self, workspace: str, key: str, doc: dict) -> None:
        with self._guard, self._connect() as conn:
            conn.execute(
                "INSERT OR REPLACE INTO config (workspace, key, doc) VALUES (?, ?, ?)",
                (workspace, key, yaml.safe_dump(doc, sort_keys=True)),
            )

    def load_tables_override(self, workspace: str) -> LookupTables | None:
        doc = self._load_config(workspace, "tables")
        return tables_from_doc(doc) if doc else None

    def save_tables_override(self, workspace: str, tables: LookupTables) -> None:
        tables_from_doc(tables.to_doc())
        self._save_config(workspace, "tables", tables.to_doc())

    def delete_tables_override(self, workspace: str) -> None:
        with self._guard, self._connect() as conn:
            conn.execute(
                "DELETE FROM config WHERE workspace = ? AND key = ?", (workspace, "tables")
            )

    def load_catalog_override(self, workspace: str) -> CriteriaCatalog | None:
        doc = self._load_config(workspace, "catalog")
        return catalog_from_doc(doc) if doc else None

    def save_catalog_override(self, workspace: str, catalog: CriteriaCatalog) -> None:
        catalog_from_doc(catalog.to_doc())
        self._save_config(workspace, "catalog", catalog.to_doc())


def load_system_file(path: str | os.PathLike) -> SystemRecord:
    """Read one system document from an arbitrary path (CLI entry point)."""
    raw = Path(path).read_text("utf-8")
    doc = yaml.safe_load(raw)
    return system_from_doc(doc)


def dump_system_file(record: SystemRecord, path: str | os.PathLike) -> None:
    Path(path).write_text(yaml.safe_dump(record.to_doc(), sort_keys=True), "utf-8")


__all__ = [
    "Store",
    "FileStore",
    "SqliteStore",
    "load_system_file",
    "dump_system_file",
    "FRESH",
    "STALE",
    "STRICT",
    "WARN",
    "migrate_system_doc",
]
