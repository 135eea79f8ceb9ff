// Wire types mirroring the gateway's JSON bodies.

export interface MisconceptionDoc {
  id: string;
  description: string;
}

export interface KnowledgeComponentDoc {
  label: string;
  description: string;
  misconceptions: MisconceptionDoc[];
}

export interface LearningObjectiveDoc {
  id: string;
  statement: string;
  kc_ids: string[];
}

export interface ChapterDoc {
  id: string;
  title: string;
  learning_objectives: LearningObjectiveDoc[];
}

export interface OntologyDoc {
  subject_id: string;
  version: number;
  chapters: ChapterDoc[];
  knowledge_components: Record<string, KnowledgeComponentDoc>;
}

export interface ChapterCoverage {
  chapter_id: string;
  title: string;
  lo_count: number;
  kc_count: number;
}

export interface Coverage {
  chapter_count: number;
  lo_count: number;
  kc_count: number;
  per_chapter: ChapterCoverage[];
}

export interface Violation {
  entity_id: string;
  rule: string;
  detail: string;
}

export interface SearchResult {
  entity_type: "chapter" | "lo" | "kc";
  id: string;
  display: string;
  matched_field: "id" | "label" | "statement" | "description";
}

export type EntityType = "chapter" | "lo" | "kc";

export interface EditPayload {
  [key: string]: unknown;
}

export type EditOutcome =
  | { ok: true; version: number }
  | { ok: false; conflict: true; current_version: number; detail: string }
  | { ok: false; conflict?: false; violations: Violation[] };

export interface ValidateOutcome {
  ok: boolean;
  violations: Violation[];
  coverage?: Coverage;
}
