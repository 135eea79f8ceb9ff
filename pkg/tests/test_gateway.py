from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from readloop.assets import bundled_ontology_text
from readloop.gateway import create_app, search_entities
from readloop.ontology import OntologyEdit, apply_edit, parse_ontology
from tests.conftest import MINIMAL_DOC


@pytest.fixture
def content_root(tmp_path):
    (tmp_path / "computer_science.yaml").write_text(
        bundled_ontology_text("computer_science"), encoding="utf-8"
    )
    (tmp_path / "demo.yaml").write_text(MINIMAL_DOC, encoding="utf-8")
    return tmp_path


@pytest.fixture
def client(content_root):
    return TestClient(create_app(content_root=content_root))


class TestReads:
    def test_list_subjects(self, client):
        body = client.get("/subjects").json()
        assert body["subjects"] == ["computer_science", "demo"]

    def test_get_known_subject(self, client):
        body = client.get("/subjects/demo/ontology").json()
        assert body["ok"] and body["version"] == 1
        assert body["document"]["subject_id"] == "demo"
        assert body["document"]["chapters"][0]["id"] == "ch_one"

    def test_get_unknown_subject(self, client):
        response = client.get("/subjects/ghost/ontology")
        assert response.status_code == 404
        assert response.json()["ok"] is False

    def test_coverage_matches_fixture(self, client):
        cov = client.get("/subjects/computer_science/coverage").json()["coverage"]
        assert (cov["chapter_count"], cov["lo_count"], cov["kc_count"]) == (16, 53, 131)

    def test_export_parses_back(self, client):
        text = client.get("/subjects/demo/export").text
        assert parse_ontology(text).subject_id == "demo"


class TestEdits:
    def test_rename_at_current_version(self, client):
        response = client.post(
            "/subjects/demo/edits",
            json={"base_version": 1, "kind": "rename",
                  "payload": {"entity": "kc", "target_id": "kc_one", "label": "renamed"}},
        )
        assert response.status_code == 200
        assert response.json() == {"ok": True, "version": 2}
        body = client.get("/subjects/demo/ontology").json()
        assert body["version"] == 2
        assert body["document"]["knowledge_components"]["kc_one"]["label"] == "renamed"

    def test_stale_version_conflict_leaves_disk(self, client, content_root):
        before = (content_root / "demo.yaml").read_text()
        response = client.post(
            "/subjects/demo/edits",
            json={"base_version": 99, "kind": "rename",
                  "payload": {"entity": "kc", "target_id": "kc_one", "label": "x"}},
        )
        assert response.status_code == 409
        body = response.json()
        assert body["conflict"] is True and body["current_version"] == 1
        assert (content_root / "demo.yaml").read_text() == before

    def test_invalid_edit_mirrors_apply_edit(self, client, content_root):
        payload = {"entity": "kc", "target_id": "kc_one"}  # delete still-referenced KC
        response = client.post(
            "/subjects/demo/edits",
            json={"base_version": 1, "kind": "delete", "payload": payload},
        )
        assert response.status_code == 422
        via_gateway = response.json()["violations"]
        direct = apply_edit(
            parse_ontology(MINIMAL_DOC), OntologyEdit("delete", payload)
        ).violations
        assert [(v["entity_id"], v["rule"]) for v in via_gateway] == [
            (v.entity_id, v.rule) for v in direct
        ]
        assert (content_root / "demo.yaml").read_text() == MINIMAL_DOC

    def test_get_after_save_increments_version(self, client):
        v0 = client.get("/subjects/demo/ontology").json()["version"]
        client.post(
            "/subjects/demo/edits",
            json={"base_version": v0, "kind": "rename",
                  "payload": {"entity": "chapter", "target_id": "ch_one", "title": "First"}},
        )
        assert client.get("/subjects/demo/ontology").json()["version"] == v0 + 1

    def test_merge_decrements_coverage(self, client):
        doc = client.get("/subjects/computer_science/ontology").json()
        kc_before = client.get("/subjects/computer_science/coverage").json()["coverage"]["kc_count"]
        lo = doc["document"]["chapters"][0]["learning_objectives"][0]
        survivor, merged = lo["kc_ids"][0], lo["kc_ids"][1]
        response = client.post(
            "/subjects/computer_science/edits",
            json={"base_version": doc["version"], "kind": "merge_kcs",
                  "payload": {"source_ids": [merged], "survivor_id": survivor}},
        )
        assert response.json()["ok"]
        kc_after = client.get("/subjects/computer_science/coverage").json()["coverage"]["kc_count"]
        assert kc_after == kc_before - 1


class TestSearch:
    def test_kc_id_query_ranks_first(self, client):
        results = client.get("/subjects/demo/search", params={"q": "kc_one"}).json()["results"]
        assert results and results[0]["id"] == "kc_one"
        assert results[0]["matched_field"] == "id"

    def test_empty_query_empty_result(self, client):
        assert client.get("/subjects/demo/search", params={"q": ""}).json()["results"] == []

    def test_description_matches_ranked_after_ids(self, minimal_ontology):
        results = search_entities(minimal_ontology, "process")
        assert results  # description-only hit
        assert all(r["matched_field"] == "description" for r in results)

    def test_priority_order_against_brute_force(self, cs_ontology):
        query = "binary"
        results = search_entities(cs_ontology, query)
        # brute force: collect expected hits by field priority
        expected_ids = set()
        for kc in cs_ontology.knowledge_components:
            if query in kc.id.lower() or query in kc.label.lower() or query in kc.description.lower():
                expected_ids.add(kc.id)
        for lo in cs_ontology.learning_objectives():
            if query in lo.id.lower() or query in lo.statement.lower():
                expected_ids.add(lo.id)
        for ch in cs_ontology.chapters:
            if query in ch.id.lower() or query in ch.title.lower():
                expected_ids.add(ch.id)
        assert {r["id"] for r in results} == expected_ids
        priorities = [{"id": 0, "label": 1, "statement": 2, "description": 3}[r["matched_field"]]
                      for r in results]
        assert priorities == sorted(priorities)

    def test_case_insensitive(self, client):
        upper = client.get("/subjects/demo/search", params={"q": "SINGLE"}).json()["results"]
        lower = client.get("/subjects/demo/search", params={"q": "single"}).json()["results"]
        assert upper == lower and upper


class TestValidateAndImport:
    def test_validate_good_document(self, client):
        body = client.post("/subjects/demo/validate", json={"document": MINIMAL_DOC}).json()
        assert body["ok"] is True
        assert body["coverage"]["kc_count"] == 1

    def test_validate_reports_violations(self, client):
        orphan_doc = MINIMAL_DOC + "  kc_orphan:\n    label: orphan\n    description: unused\n"
        body = client.post("/subjects/demo/validate", json={"document": orphan_doc}).json()
        assert body["ok"] is False
        assert any(v["rule"] == "orphan-kc" for v in body["violations"])

    def test_validate_parse_error(self, client):
        body = client.post("/subjects/demo/validate", json={"document": "]["}).json()
        assert body["ok"] is False

    def test_replace_document_versionful(self, client):
        new_doc = MINIMAL_DOC.replace("One Chapter", "Replaced Chapter")
        response = client.post(
            "/subjects/demo/document", json={"base_version": 1, "document": new_doc}
        )
        assert response.json() == {"ok": True, "version": 2}
        body = client.get("/subjects/demo/ontology").json()
        assert body["document"]["chapters"][0]["title"] == "Replaced Chapter"

    def test_replace_document_stale_version(self, client):
        response = client.post(
            "/subjects/demo/document", json={"base_version": 7, "document": MINIMAL_DOC}
        )
        assert response.status_code == 409


class TestLinearHistory:
    def test_disk_equals_replayed_edits(self, client, content_root):
        edits = [
            {"kind": "rename", "payload": {"entity": "kc", "target_id": "kc_one", "label": "first"}},
            {"kind": "create", "payload": {"entity": "misconception", "kc_id": "kc_one",
                                           "id": "mi_two", "description": "another error"}},
            {"kind": "rename", "payload": {"entity": "lo", "target_id": "lo_one",
                                           "statement": "Explain it all."}},
        ]
        version = 1
        for e in edits:
            body = client.post(
                "/subjects/demo/edits", json={"base_version": version, **e}
            ).json()
            assert body["ok"]
            version = body["version"]

        replayed = parse_ontology(MINIMAL_DOC)
        for e in edits:
            result = apply_edit(replayed, OntologyEdit(e["kind"], e["payload"]))
            assert result.applied
            replayed = result.ontology
        on_disk = parse_ontology((content_root / "demo.yaml").read_text())
        assert on_disk == replayed

    def test_content_root_env(self, content_root, monkeypatch):
        monkeypatch.setenv("ATLAS_CONTENT_ROOT", str(content_root))
        app = create_app()
        client = TestClient(app)
        assert client.get("/subjects").json()["subjects"] == ["computer_science", "demo"]

    def test_missing_root_rejected(self, monkeypatch):
        monkeypatch.delenv("ATLAS_CONTENT_ROOT", raising=False)
        with pytest.raises(ValueError):
            create_app()
