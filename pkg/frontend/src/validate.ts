// Client-side validation duplicating the gateway's structural rules for
// instant feedback. The gateway remains authoritative: these checks gate
// the save button, never replace the server response.

import type { OntologyDoc, Violation } from "./types.js";

export function validateDocument(doc: OntologyDoc): Violation[] {
  const violations: Violation[] = [];

  const chapterIds = new Set<string>();
  for (const chapter of doc.chapters) {
    if (chapterIds.has(chapter.id)) {
      violations.push({
        entity_id: chapter.id,
        rule: "duplicate-id",
        detail: "chapter id declared more than once",
      });
    }
    chapterIds.add(chapter.id);
    if (chapter.learning_objectives.length === 0) {
      violations.push({
        entity_id: chapter.id,
        rule: "empty-chapter",
        detail: "chapter has no learning objectives",
      });
    }
  }

  const loIds = new Set<string>();
  for (const chapter of doc.chapters) {
    for (const lo of chapter.learning_objectives) {
      if (loIds.has(lo.id)) {
        violations.push({
          entity_id: lo.id,
          rule: "duplicate-id",
          detail: "LO id referenced by more than one chapter or declared twice",
        });
      }
      loIds.add(lo.id);
      if (lo.kc_ids.length === 0) {
        violations.push({
          entity_id: lo.id,
          rule: "empty-kc-list",
          detail: "LO must map to at least one KC",
        });
      }
      if (new Set(lo.kc_ids).size !== lo.kc_ids.length) {
        violations.push({
          entity_id: lo.id,
          rule: "duplicate-reference",
          detail: "LO lists the same KC id twice",
        });
      }
    }
  }

  const kcIds = new Set(Object.keys(doc.knowledge_components));
  for (const [kcId, kc] of Object.entries(doc.knowledge_components)) {
    const misIds = kc.misconceptions.map((m) => m.id);
    if (new Set(misIds).size !== misIds.length) {
      violations.push({
        entity_id: kcId,
        rule: "duplicate-misconception",
        detail: "misconception ids repeat within KC",
      });
    }
  }

  const referenced = new Set<string>();
  for (const chapter of doc.chapters) {
    for (const lo of chapter.learning_objectives) {
      for (const kcId of lo.kc_ids) {
        referenced.add(kcId);
        if (!kcIds.has(kcId)) {
          violations.push({
            entity_id: kcId,
            rule: "dangling-kc",
            detail: `KC referenced by ${lo.id} is not defined`,
          });
        }
      }
    }
  }
  for (const kcId of kcIds) {
    if (!referenced.has(kcId)) {
      violations.push({
        entity_id: kcId,
        rule: "orphan-kc",
        detail: "KC is referenced by no LO",
      });
    }
  }

  return violations;
}

export interface FieldEdits {
  title?: string;
  statement?: string;
  label?: string;
  description?: string;
}

// Per-field checks for the details-panel draft. Keys of the returned map
// are field names so the panel can render errors inline.
export function validateFieldEdits(entityType: string, fields: FieldEdits): Record<string, string> {
  const errors: Record<string, string> = {};
  const required: Record<string, (keyof FieldEdits)[]> = {
    chapter: ["title"],
    lo: ["statement"],
    kc: ["label"],
  };
  for (const name of required[entityType] ?? []) {
    const value = fields[name];
    if (value !== undefined && value.trim() === "") {
      errors[name] = `${name} must not be empty`;
    }
  }
  return errors;
}
