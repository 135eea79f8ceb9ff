"""Atlas gateway: HTTP service over the subject ontology files.

Serves read/validate/edit/save and coverage endpoints to the browser
workspace, writing the same YAML files the simulation consumes. Writes
are optimistic (version-checked), serialized per subject, and atomic
(temp file then rename), so a failed request never leaves a torn file.

Routes (JSON bodies unless noted):

    GET  /subjects                          -> {subjects: [...]}
    GET  /subjects/{id}/ontology            -> {ok, version, document}
    GET  /subjects/{id}/coverage            -> {ok, coverage}
    GET  /subjects/{id}/search?q=...        -> {ok, results}
    POST /subjects/{id}/edits               -> {ok, version} | {ok: false, ...}
    GET  /subjects/{id}/export              -> text/yaml
    POST /subjects/{id}/validate            -> {ok, violations, coverage}
    POST /subjects/{id}/document            -> replace whole document (versioned)

The content root comes from the ATLAS_CONTENT_ROOT env var or the
constructor argument.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .ontology import (
    Ontology,
    OntologyEdit,
    OntologySchemaError,
    OntologySyntaxError,
    apply_edit,
    coverage_summary,
    parse_ontology,
    serialize_ontology,
    validate_ontology,
)

CONTENT_ROOT_ENV = "ATLAS_CONTENT_ROOT"

# Search ranking: id matches first, then label, statement, description.
_FIELD_PRIORITY = {"id": 0, "label": 1, "statement": 2, "description": 3}


class SubjectStore:
    """File-backed subject ontologies with per-subject write serialization."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, subject_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(subject_id, threading.Lock())

    def path(self, subject_id: str) -> Path:
        return self.root / f"{subject_id}.yaml"

    def subjects(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.yaml"))

    def exists(self, subject_id: str) -> bool:
        return self.path(subject_id).is_file()

    def load(self, subject_id: str) -> Ontology:
        return parse_ontology(self.path(subject_id).read_text(encoding="utf-8"))

    def save(self, subject_id: str, ontology: Ontology) -> None:
        # Temp file in the same directory then rename: readers never see a
        # partial write.
        target = self.path(subject_id)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=f".{subject_id}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(serialize_ontology(ontology))
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def apply_versioned(self, subject_id: str, base_version: int, fn):
        """Run fn(current) -> Ontology under the subject lock, enforcing the
        optimistic version check. Returns (ok, payload)."""
        with self._lock(subject_id):
            current = self.load(subject_id)
            if current.version != base_version:
                return False, {
                    "ok": False,
                    "conflict": True,
                    "current_version": current.version,
                    "detail": f"base_version {base_version} is stale; current is {current.version}",
                }
            result = fn(current)
            if isinstance(result, dict):
                return False, result
            self.save(subject_id, result)
            return True, {"ok": True, "version": result.version}


class EditRequest(BaseModel):
    base_version: int
    kind: str
    payload: dict = {}


class DocumentRequest(BaseModel):
    base_version: int
    document: str


class ValidateRequest(BaseModel):
    document: str


def search_entities(ontology: Ontology, query: str) -> list[dict]:
    """Case-insensitive substring search over ids, labels, statements, and
    descriptions, ranked by field priority (id > label > statement >
    description). Empty queries return nothing."""
    q = query.strip().lower()
    if not q:
        return []
    hits: list[tuple[int, int, dict]] = []
    order = 0

    def consider(entity_type: str, entity_id: str, display: str, fields: dict[str, str]):
        nonlocal order
        best: int | None = None
        matched_field = None
        for name, value in fields.items():
            if value and q in value.lower():
                rank = _FIELD_PRIORITY[name]
                if best is None or rank < best:
                    best = rank
                    matched_field = name
        if best is not None:
            hits.append(
                (best, order, {
                    "entity_type": entity_type,
                    "id": entity_id,
                    "display": display,
                    "matched_field": matched_field,
                })
            )
            order += 1

    for chapter in ontology.chapters:
        consider("chapter", chapter.id, chapter.title, {"id": chapter.id, "label": chapter.title})
        for lo in chapter.learning_objectives:
            consider("lo", lo.id, lo.statement, {"id": lo.id, "statement": lo.statement})
    for kc in ontology.knowledge_components:
        consider(
            "kc", kc.id, kc.label,
            {"id": kc.id, "label": kc.label, "description": kc.description},
        )

    hits.sort(key=lambda h: (h[0], h[1]))
    return [h[2] for h in hits]


def _coverage_dict(ontology: Ontology) -> dict:
    cov = coverage_summary(ontology)
    return {
        "chapter_count": cov.chapter_count,
        "lo_count": cov.lo_count,
        "kc_count": cov.kc_count,
        "per_chapter": [
            {
                "chapter_id": ch.chapter_id,
                "title": ch.title,
                "lo_count": ch.lo_count,
                "kc_count": ch.kc_count,
            }
            for ch in cov.per_chapter
        ],
    }


def _ontology_document(ontology: Ontology) -> dict:
    return {
        "subject_id": ontology.subject_id,
        "version": ontology.version,
        "chapters": [
            {
                "id": ch.id,
                "title": ch.title,
                "learning_objectives": [
                    {"id": lo.id, "statement": lo.statement, "kc_ids": list(lo.kc_ids)}
                    for lo in ch.learning_objectives
                ],
            }
            for ch in ontology.chapters
        ],
        "knowledge_components": {
            kc.id: {
                "label": kc.label,
                "description": kc.description,
                "misconceptions": [
                    {"id": m.id, "description": m.description} for m in kc.misconceptions
                ],
            }
            for kc in ontology.knowledge_components
        },
    }


def create_app(content_root: str | os.PathLike | None = None, ui_dist: str | os.PathLike | None = None) -> FastAPI:
    root = content_root or os.environ.get(CONTENT_ROOT_ENV)
    if not root:
        raise ValueError(f"content root required (argument or {CONTENT_ROOT_ENV})")
    store = SubjectStore(root)
    app = FastAPI(title="ontology atlas gateway")
    app.state.store = store

    def not_found(subject_id: str) -> JSONResponse:
        return JSONResponse({"ok": False, "detail": f"unknown subject: {subject_id}"}, status_code=404)

    @app.get("/subjects")
    def list_subjects():
        return {"ok": True, "subjects": store.subjects()}

    @app.get("/subjects/{subject_id}/ontology")
    def get_ontology(subject_id: str):
        if not store.exists(subject_id):
            return not_found(subject_id)
        ontology = store.load(subject_id)
        return {"ok": True, "version": ontology.version, "document": _ontology_document(ontology)}

    @app.get("/subjects/{subject_id}/coverage")
    def get_coverage(subject_id: str):
        if not store.exists(subject_id):
            return not_found(subject_id)
        return {"ok": True, "coverage": _coverage_dict(store.load(subject_id))}

    @app.get("/subjects/{subject_id}/search")
    def search(subject_id: str, q: str = ""):
        if not store.exists(subject_id):
            return not_found(subject_id)
        return {"ok": True, "results": search_entities(store.load(subject_id), q)}

    @app.post("/subjects/{subject_id}/edits")
    def post_edit(subject_id: str, request: EditRequest):
        if not store.exists(subject_id):
            return not_found(subject_id)

        def run(current: Ontology):
            result = apply_edit(current, OntologyEdit(kind=request.kind, payload=request.payload))
            if not result.applied:
                return {
                    "ok": False,
                    "conflict": False,
                    "violations": [
                        {"entity_id": v.entity_id, "rule": v.rule, "detail": v.detail}
                        for v in result.violations
                    ],
                }
            return result.ontology

        ok, payload = store.apply_versioned(subject_id, request.base_version, run)
        status = 200 if ok else (409 if payload.get("conflict") else 422)
        return JSONResponse(payload, status_code=status)

    @app.get("/subjects/{subject_id}/export")
    def export_document(subject_id: str):
        if not store.exists(subject_id):
            return not_found(subject_id)
        return PlainTextResponse(
            store.path(subject_id).read_text(encoding="utf-8"), media_type="text/yaml"
        )

    @app.post("/subjects/{subject_id}/validate")
    def validate_document(subject_id: str, request: ValidateRequest):
        try:
            ontology = parse_ontology(request.document, validate=False)
        except (OntologySyntaxError, OntologySchemaError) as exc:
            return {"ok": False, "violations": [{"entity_id": "$", "rule": "parse", "detail": str(exc)}]}
        violations = validate_ontology(ontology)
        return {
            "ok": not violations,
            "violations": [
                {"entity_id": v.entity_id, "rule": v.rule, "detail": v.detail} for v in violations
            ],
            "coverage": _coverage_dict(ontology),
        }

    @app.post("/subjects/{subject_id}/document")
    def replace_document(subject_id: str, request: DocumentRequest):
        if not store.exists(subject_id):
            return not_found(subject_id)
        try:
            incoming = parse_ontology(request.document)
        except (OntologySyntaxError, OntologySchemaError) as exc:
            return JSONResponse(
                {"ok": False, "violations": [{"entity_id": "$", "rule": "parse", "detail": str(exc)}]},
                status_code=422,
            )

        def run(current: Ontology):
            from dataclasses import replace as dc_replace

            return dc_replace(incoming, subject_id=current.subject_id, version=current.version + 1)

        ok, payload = store.apply_versioned(subject_id, request.base_version, run)
        return JSONResponse(payload, status_code=200 if ok else 409)

    if ui_dist:
        app.mount("/", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app
