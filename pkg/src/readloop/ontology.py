"""Chapter -> learning objective -> knowledge component ontology.

The ontology is the shared representational layer: content generation,
learner state, mastery tracking, and the Atlas workspace all resolve ids
against it. Files are YAML, one subject per file; see ``parse_ontology``
for the exact schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import yaml


class OntologySyntaxError(ValueError):
    """Malformed YAML. Carries the parser's position when available."""


class OntologySchemaError(ValueError):
    """Well-formed YAML that does not fit the ontology schema.

    ``path`` points at the offending field, e.g. ``chapters[2].learning_objectives[0].kc_ids``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class Misconception:
    id: str
    description: str


@dataclass(frozen=True)
class KnowledgeComponent:
    id: str
    label: str
    description: str
    misconceptions: tuple[Misconception, ...] = ()


@dataclass(frozen=True)
class LearningObjective:
    id: str
    statement: str
    kc_ids: tuple[str, ...]


@dataclass(frozen=True)
class Chapter:
    id: str
    title: str
    learning_objectives: tuple[LearningObjective, ...]

    @property
    def lo_ids(self) -> tuple[str, ...]:
        return tuple(lo.id for lo in self.learning_objectives)


@dataclass(frozen=True)
class Ontology:
    subject_id: str
    chapters: tuple[Chapter, ...]
    knowledge_components: tuple[KnowledgeComponent, ...]
    version: int = 1

    def learning_objectives(self) -> tuple[LearningObjective, ...]:
        return tuple(lo for ch in self.chapters for lo in ch.learning_objectives)

    def lo_index(self) -> dict[str, LearningObjective]:
        return {lo.id: lo for lo in self.learning_objectives()}

    def kc_index(self) -> dict[str, KnowledgeComponent]:
        return {kc.id: kc for kc in self.knowledge_components}

    def kc_ids_for_lo(self, lo_id: str) -> tuple[str, ...]:
        lo = self.lo_index().get(lo_id)
        if lo is None:
            raise KeyError(f"unknown learning objective: {lo_id}")
        return lo.kc_ids


@dataclass(frozen=True)
class ChapterCoverage:
    chapter_id: str
    title: str
    lo_count: int
    kc_count: int


@dataclass(frozen=True)
class CoverageSummary:
    chapter_count: int
    lo_count: int
    kc_count: int
    per_chapter: tuple[ChapterCoverage, ...]


@dataclass(frozen=True)
class Violation:
    entity_id: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.entity_id}: {self.detail}"


# Edit kinds accepted by apply_edit. Payload fields are documented on apply_edit.
EDIT_KINDS = ("create", "rename", "delete", "merge_kcs", "split_kc", "relink")


@dataclass(frozen=True)
class OntologyEdit:
    kind: str
    payload: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EditResult:
    ontology: Ontology
    violations: tuple[Violation, ...]

    @property
    def applied(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Parsing / serialization


def _require(mapping, key, path, typ, typename):
    if not isinstance(mapping, dict):
        raise OntologySchemaError(path, f"expected a mapping, got {type(mapping).__name__}")
    if key not in mapping:
        raise OntologySchemaError(f"{path}.{key}", "missing required field")
    value = mapping[key]
    if not isinstance(value, typ):
        raise OntologySchemaError(f"{path}.{key}", f"expected {typename}, got {type(value).__name__}")
    return value


def _parse_misconception(raw, path: str) -> Misconception:
    mid = _require(raw, "id", path, str, "string")
    desc = _require(raw, "description", path, str, "string")
    return Misconception(id=mid, description=desc)


def _parse_lo(raw, path: str) -> LearningObjective:
    lo_id = _require(raw, "id", path, str, "string")
    statement = _require(raw, "statement", path, str, "string")
    kc_ids = _require(raw, "kc_ids", path, list, "list")
    if not kc_ids:
        raise OntologySchemaError(f"{path}.kc_ids", "must list at least one KC id")
    for i, kc_id in enumerate(kc_ids):
        if not isinstance(kc_id, str):
            raise OntologySchemaError(f"{path}.kc_ids[{i}]", "KC ids must be strings")
    return LearningObjective(id=lo_id, statement=statement, kc_ids=tuple(kc_ids))


def _parse_chapter(raw, path: str) -> Chapter:
    ch_id = _require(raw, "id", path, str, "string")
    title = _require(raw, "title", path, str, "string")
    los = _require(raw, "learning_objectives", path, list, "list")
    if not los:
        raise OntologySchemaError(f"{path}.learning_objectives", "chapter must contain at least one LO")
    parsed = tuple(
        _parse_lo(lo, f"{path}.learning_objectives[{i}]") for i, lo in enumerate(los)
    )
    return Chapter(id=ch_id, title=title, learning_objectives=parsed)


def parse_ontology(document: str, *, validate: bool = True) -> Ontology:
    """Parse a subject ontology from its YAML document.

    Schema (field names are part of the on-disk contract)::

        subject_id: <string>
        version: <integer>
        chapters:
          - id: <string>
            title: <string>
            learning_objectives:
              - id: <string>
                statement: <string>
                kc_ids: [<kc id>, ...]
        knowledge_components:
          <kc id>:
            label: <string>
            description: <string>
            misconceptions:
              - id: <string>
                description: <string>

    Declaration order is preserved. Raises OntologySyntaxError on malformed
    YAML (with the parser position) and OntologySchemaError on schema
    violations (with the field path). The result is guaranteed to pass
    ``validate_ontology`` with no violations; pass ``validate=False`` to
    skip that check and inspect the violations yourself (the Atlas
    validate endpoint does this to report complete lists).
    """
    try:
        raw = yaml.safe_load(document)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise OntologySyntaxError(f"invalid YAML{where}: {exc}") from exc

    if not isinstance(raw, dict):
        raise OntologySchemaError("$", "document root must be a mapping")

    subject_id = _require(raw, "subject_id", "$", str, "string")
    version = raw.get("version", 1)
    if not isinstance(version, int) or isinstance(version, bool) or version < 1:
        raise OntologySchemaError("$.version", "must be a positive integer")

    chapters_raw = _require(raw, "chapters", "$", list, "list")
    chapters = tuple(
        _parse_chapter(ch, f"$.chapters[{i}]") for i, ch in enumerate(chapters_raw)
    )

    kcs_raw = _require(raw, "knowledge_components", "$", dict, "mapping")
    kcs = []
    for kc_id, body in kcs_raw.items():
        path = f"$.knowledge_components.{kc_id}"
        if not isinstance(kc_id, str):
            raise OntologySchemaError(path, "KC ids must be strings")
        label = _require(body, "label", path, str, "string")
        description = _require(body, "description", path, str, "string")
        mis_raw = body.get("misconceptions", []) or []
        if not isinstance(mis_raw, list):
            raise OntologySchemaError(f"{path}.misconceptions", "must be a list")
        mis = tuple(
            _parse_misconception(m, f"{path}.misconceptions[{i}]") for i, m in enumerate(mis_raw)
        )
        kcs.append(KnowledgeComponent(id=kc_id, label=label, description=description, misconceptions=mis))

    ontology = Ontology(
        subject_id=subject_id,
        chapters=chapters,
        knowledge_components=tuple(kcs),
        version=version,
    )
    if validate:
        violations = validate_ontology(ontology)
        if violations:
            first = violations[0]
            raise OntologySchemaError(first.entity_id, f"{first.rule}: {first.detail}")
    return ontology


def serialize_ontology(o: Ontology) -> str:
    """Render an ontology back to its YAML document.

    Round-trip contract: ``parse_ontology(serialize_ontology(o))`` is
    structurally equal to ``o``.
    """
    doc = {
        "subject_id": o.subject_id,
        "version": o.version,
        "chapters": [
            {
                "id": ch.id,
                "title": ch.title,
                "learning_objectives": [
                    {"id": lo.id, "statement": lo.statement, "kc_ids": list(lo.kc_ids)}
                    for lo in ch.learning_objectives
                ],
            }
            for ch in o.chapters
        ],
        "knowledge_components": {
            kc.id: {
                "label": kc.label,
                "description": kc.description,
                "misconceptions": [
                    {"id": m.id, "description": m.description} for m in kc.misconceptions
                ],
            }
            for kc in o.knowledge_components
        },
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=100)


# ---------------------------------------------------------------------------
# Validation


def validate_ontology(o: Ontology) -> list[Violation]:
    """Check every structural invariant; an empty list means the ontology is valid.

    Rules checked: unique chapter/LO/KC ids, LO owned by exactly one chapter,
    non-empty LO and kc_ids lists, no dangling KC references, no orphan KCs,
    unique misconception ids within each KC.
    """
    violations: list[Violation] = []

    seen_chapters: set[str] = set()
    for ch in o.chapters:
        if ch.id in seen_chapters:
            violations.append(Violation(ch.id, "duplicate-id", "chapter id declared more than once"))
        seen_chapters.add(ch.id)
        if not ch.learning_objectives:
            violations.append(Violation(ch.id, "empty-chapter", "chapter has no learning objectives"))

    seen_los: set[str] = set()
    for ch in o.chapters:
        for lo in ch.learning_objectives:
            if lo.id in seen_los:
                violations.append(
                    Violation(lo.id, "duplicate-id", "LO id referenced by more than one chapter or declared twice")
                )
            seen_los.add(lo.id)
            if not lo.kc_ids:
                violations.append(Violation(lo.id, "empty-kc-list", "LO must map to at least one KC"))
            if len(set(lo.kc_ids)) != len(lo.kc_ids):
                violations.append(Violation(lo.id, "duplicate-reference", "LO lists the same KC id twice"))

    kc_ids: set[str] = set()
    for kc in o.knowledge_components:
        if kc.id in kc_ids:
            violations.append(Violation(kc.id, "duplicate-id", "KC id declared more than once"))
        kc_ids.add(kc.id)
        mis_ids = [m.id for m in kc.misconceptions]
        if len(set(mis_ids)) != len(mis_ids):
            violations.append(Violation(kc.id, "duplicate-misconception", "misconception ids repeat within KC"))

    referenced: set[str] = set()
    for ch in o.chapters:
        for lo in ch.learning_objectives:
            for kc_id in lo.kc_ids:
                referenced.add(kc_id)
                if kc_id not in kc_ids:
                    violations.append(Violation(kc_id, "dangling-kc", f"KC referenced by {lo.id} is not defined"))

    for kc in o.knowledge_components:
        if kc.id not in referenced:
            violations.append(Violation(kc.id, "orphan-kc", "KC is referenced by no LO"))

    return violations


def coverage_summary(o: Ontology) -> CoverageSummary:
    """Counts of distinct chapters, LOs, and KCs, with a per-chapter breakdown."""
    per_chapter = []
    for ch in o.chapters:
        ch_kcs = {kc_id for lo in ch.learning_objectives for kc_id in lo.kc_ids}
        per_chapter.append(
            ChapterCoverage(
                chapter_id=ch.id,
                title=ch.title,
                lo_count=len({lo.id for lo in ch.learning_objectives}),
                kc_count=len(ch_kcs),
            )
        )
    return CoverageSummary(
        chapter_count=len({ch.id for ch in o.chapters}),
        lo_count=len({lo.id for lo in o.learning_objectives()}),
        kc_count=len({kc.id for kc in o.knowledge_components}),
        per_chapter=tuple(per_chapter),
    )


# ---------------------------------------------------------------------------
# Edits


def apply_edit(o: Ontology, e: OntologyEdit) -> EditResult:
    """Apply an edit atomically: the result is either a valid ontology with
    version+1, or the original ontology plus the violations that blocked it.

    Payloads by kind:

    - ``create``: ``entity`` in {chapter, lo, kc, misconception} plus the new
      definition. LOs need ``chapter_id``; KCs need ``link_lo_ids`` (a KC with
      no referencing LO would be an orphan); misconceptions need ``kc_id``.
    - ``rename``: ``entity``, ``target_id``, and the text fields to replace
      (``title`` / ``statement`` / ``label`` / ``description``). Ids are opaque
      and never renamed.
    - ``delete``: ``entity``, ``target_id``; KC deletion accepts an optional
      ``relink_kc_id`` that substitutes the deleted id in referencing LOs.
    - ``merge_kcs``: ``source_ids`` folded into ``survivor_id``; all LO
      references rewritten, misconception catalogs unioned by id.
    - ``split_kc``: ``target_id`` replaced by ``new_kcs`` (full definitions);
      ``assignment`` maps each referencing LO id to the new KC ids it keeps.
    - ``relink``: ``lo_id`` gets the exact ``kc_ids`` list given.
    """
    if e.kind not in EDIT_KINDS:
        return EditResult(o, (Violation(e.kind, "unknown-edit", f"kind must be one of {EDIT_KINDS}"),))
    try:
        candidate = _EDIT_HANDLERS[e.kind](o, e.payload)
    except _EditError as err:
        return EditResult(o, (Violation(err.entity_id, err.rule, err.detail),))
    violations = validate_ontology(candidate)
    if violations:
        return EditResult(o, tuple(violations))
    return EditResult(replace(candidate, version=o.version + 1), ())


class _EditError(Exception):
    def __init__(self, entity_id: str, rule: str, detail: str):
        self.entity_id = entity_id
        self.rule = rule
        self.detail = detail
        super().__init__(detail)


def _need(payload: dict, key: str, kind: str):
    if key not in payload:
        raise _EditError(kind, "missing-payload", f"{kind} edit requires '{key}'")
    return payload[key]


def _edit_create(o: Ontology, payload: dict) -> Ontology:
    entity = _need(payload, "entity", "create")
    if entity == "chapter":
        los = tuple(
            LearningObjective(lo["id"], lo["statement"], tuple(lo["kc_ids"]))
            for lo in payload.get("learning_objectives", [])
        )
        ch = Chapter(_need(payload, "id", "create"), payload.get("title", ""), los)
        return replace(o, chapters=o.chapters + (ch,))
    if entity == "lo":
        chapter_id = _need(payload, "chapter_id", "create")
        lo = LearningObjective(
            _need(payload, "id", "create"),
            payload.get("statement", ""),
            tuple(_need(payload, "kc_ids", "create")),
        )
        chapters = []
        found = False
        for ch in o.chapters:
            if ch.id == chapter_id:
                found = True
                ch = replace(ch, learning_objectives=ch.learning_objectives + (lo,))
            chapters.append(ch)
        if not found:
            raise _EditError(chapter_id, "unknown-id", "chapter not found")
        return replace(o, chapters=tuple(chapters))
    if entity == "kc":
        kc = KnowledgeComponent(
            _need(payload, "id", "create"),
            payload.get("label", ""),
            payload.get("description", ""),
            tuple(Misconception(m["id"], m["description"]) for m in payload.get("misconceptions", [])),
        )
        link_lo_ids = _need(payload, "link_lo_ids", "create")
        if not link_lo_ids:
            raise _EditError(kc.id, "orphan-kc", "a new KC must be linked to at least one LO")
        chapters = _rewrite_los(
            o,
            lambda lo: replace(lo, kc_ids=lo.kc_ids + (kc.id,)) if lo.id in set(link_lo_ids) else lo,
        )
        return replace(o, chapters=chapters, knowledge_components=o.knowledge_components + (kc,))
    if entity == "misconception":
        kc_id = _need(payload, "kc_id", "create")
        mis = Misconception(_need(payload, "id", "create"), payload.get("description", ""))
        kcs = []
        found = False
        for kc in o.knowledge_components:
            if kc.id == kc_id:
                found = True
                kc = replace(kc, misconceptions=kc.misconceptions + (mis,))
            kcs.append(kc)
        if not found:
            raise _EditError(kc_id, "unknown-id", "KC not found")
        return replace(o, knowledge_components=tuple(kcs))
    raise _EditError(entity, "unknown-entity", "entity must be chapter, lo, kc, or misconception")


def _edit_rename(o: Ontology, payload: dict) -> Ontology:
    entity = _need(payload, "entity", "rename")
    target = _need(payload, "target_id", "rename")
    if entity == "chapter":
        chapters = tuple(
            replace(ch, title=payload.get("title", ch.title)) if ch.id == target else ch
            for ch in o.chapters
        )
        if chapters == o.chapters:
            raise _EditError(target, "unknown-id", "chapter not found")
        return replace(o, chapters=chapters)
    if entity == "lo":
        hit = [False]

        def rewrite(lo: LearningObjective) -> LearningObjective:
            if lo.id == target:
                hit[0] = True
                return replace(lo, statement=payload.get("statement", lo.statement))
            return lo

        chapters = _rewrite_los(o, rewrite)
        if not hit[0]:
            raise _EditError(target, "unknown-id", "LO not found")
        return replace(o, chapters=chapters)
    if entity == "kc":
        found = False
        kcs = []
        for kc in o.knowledge_components:
            if kc.id == target:
                found = True
                kc = replace(
                    kc,
                    label=payload.get("label", kc.label),
                    description=payload.get("description", kc.description),
                )
            kcs.append(kc)
        if not found:
            raise _EditError(target, "unknown-id", "KC not found")
        return replace(o, knowledge_components=tuple(kcs))
    raise _EditError(entity, "unknown-entity", "entity must be chapter, lo, or kc")


def _edit_delete(o: Ontology, payload: dict) -> Ontology:
    entity = _need(payload, "entity", "delete")
    target = _need(payload, "target_id", "delete")
    if entity == "chapter":
        chapters = tuple(ch for ch in o.chapters if ch.id != target)
        if len(chapters) == len(o.chapters):
            raise _EditError(target, "unknown-id", "chapter not found")
        survivors = {kc_id for ch in chapters for lo in ch.learning_objectives for kc_id in lo.kc_ids}
        kcs = tuple(kc for kc in o.knowledge_components if kc.id in survivors)
        return replace(o, chapters=chapters, knowledge_components=kcs)
    if entity == "lo":
        hit = [False]
        chapters = []
        for ch in o.chapters:
            kept = tuple(lo for lo in ch.learning_objectives if lo.id != target)
            if len(kept) != len(ch.learning_objectives):
                hit[0] = True
                ch = replace(ch, learning_objectives=kept)
            chapters.append(ch)
        if not hit[0]:
            raise _EditError(target, "unknown-id", "LO not found")
        return replace(o, chapters=tuple(chapters))
    if entity == "kc":
        if target not in {kc.id for kc in o.knowledge_components}:
            raise _EditError(target, "unknown-id", "KC not found")
        relink = payload.get("relink_kc_id")

        def rewrite(lo: LearningObjective) -> LearningObjective:
            if target not in lo.kc_ids:
                return lo
            new_ids = []
            for kc_id in lo.kc_ids:
                if kc_id != target:
                    new_ids.append(kc_id)
                elif relink is not None and relink not in new_ids:
                    new_ids.append(relink)
            return replace(lo, kc_ids=tuple(new_ids))

        chapters = _rewrite_los(o, rewrite)
        kcs = tuple(kc for kc in o.knowledge_components if kc.id != target)
        return replace(o, chapters=chapters, knowledge_components=kcs)
    raise _EditError(entity, "unknown-entity", "entity must be chapter, lo, or kc")


def _edit_merge_kcs(o: Ontology, payload: dict) -> Ontology:
    source_ids = set(_need(payload, "source_ids", "merge_kcs"))
    survivor_id = _need(payload, "survivor_id", "merge_kcs")
    by_id = {kc.id: kc for kc in o.knowledge_components}
    if survivor_id not in by_id:
        raise _EditError(survivor_id, "unknown-id", "survivor KC not found")
    missing = source_ids - set(by_id)
    if missing:
        raise _EditError(sorted(missing)[0], "unknown-id", "merge source KC not found")
    merged = source_ids - {survivor_id}

    def rewrite(lo: LearningObjective) -> LearningObjective:
        new_ids: list[str] = []
        for kc_id in lo.kc_ids:
            kc_id = survivor_id if kc_id in merged else kc_id
            if kc_id not in new_ids:
                new_ids.append(kc_id)
        return replace(lo, kc_ids=tuple(new_ids))

    chapters = _rewrite_los(o, rewrite)
    survivor = by_id[survivor_id]
    catalog = {m.id: m for m in survivor.misconceptions}
    for src in sorted(merged):
        for m in by_id[src].misconceptions:
            catalog.setdefault(m.id, m)
    kcs = tuple(
        replace(kc, misconceptions=tuple(catalog.values())) if kc.id == survivor_id else kc
        for kc in o.knowledge_components
        if kc.id not in merged
    )
    return replace(o, chapters=chapters, knowledge_components=kcs)


def _edit_split_kc(o: Ontology, payload: dict) -> Ontology:
    target = _need(payload, "target_id", "split_kc")
    new_defs = _need(payload, "new_kcs", "split_kc")
    assignment = _need(payload, "assignment", "split_kc")
    if target not in {kc.id for kc in o.knowledge_components}:
        raise _EditError(target, "unknown-id", "KC not found")
    new_kcs = tuple(
        KnowledgeComponent(
            d["id"],
            d.get("label", ""),
            d.get("description", ""),
            tuple(Misconception(m["id"], m["description"]) for m in d.get("misconceptions", [])),
        )
        for d in new_defs
    )

    def rewrite(lo: LearningObjective) -> LearningObjective:
        if target not in lo.kc_ids:
            return lo
        granted = assignment.get(lo.id)
        if not granted:
            raise _EditError(lo.id, "uncovered-lo", "split must assign replacement KCs to every referencing LO")
        new_ids = []
        for kc_id in lo.kc_ids:
            if kc_id == target:
                new_ids.extend(g for g in granted if g not in new_ids)
            elif kc_id not in new_ids:
                new_ids.append(kc_id)
        return replace(lo, kc_ids=tuple(new_ids))

    chapters = _rewrite_los(o, rewrite)
    kcs = tuple(kc for kc in o.knowledge_components if kc.id != target) + new_kcs
    return replace(o, chapters=chapters, knowledge_components=kcs)


def _edit_relink(o: Ontology, payload: dict) -> Ontology:
    lo_id = _need(payload, "lo_id", "relink")
    kc_ids = tuple(_need(payload, "kc_ids", "relink"))
    hit = [False]

    def rewrite(lo: LearningObjective) -> LearningObjective:
        if lo.id == lo_id:
            hit[0] = True
            return replace(lo, kc_ids=kc_ids)
        return lo

    chapters = _rewrite_los(o, rewrite)
    if not hit[0]:
        raise _EditError(lo_id, "unknown-id", "LO not found")
    return replace(o, chapters=chapters)


def _rewrite_los(o: Ontology, fn) -> tuple[Chapter, ...]:
    return tuple(
        replace(ch, learning_objectives=tuple(fn(lo) for lo in ch.learning_objectives))
        for ch in o.chapters
    )


_EDIT_HANDLERS = {
    "create": _edit_create,
    "rename": _edit_rename,
    "delete": _edit_delete,
    "merge_kcs": _edit_merge_kcs,
    "split_kc": _edit_split_kc,
    "relink": _edit_relink,
}
