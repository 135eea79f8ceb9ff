// Workspace state machine. Pure of DOM concerns so the whole save /
// conflict / import flow is unit- and e2e-testable headlessly.

import type { GatewayClient } from "./api.js";
import type {
  Coverage,
  EntityType,
  OntologyDoc,
  SearchResult,
  Violation,
} from "./types.js";
import { validateDocument, validateFieldEdits, type FieldEdits } from "./validate.js";

export interface Selection {
  entityType: EntityType;
  id: string;
}

export interface EditDraft {
  entityType: EntityType;
  targetId: string;
  fields: FieldEdits;
  original: FieldEdits;
}

export interface ImportPreview {
  text: string;
  coverage: Coverage | null;
  violations: Violation[];
}

export interface ConflictInfo {
  currentVersion: number;
  detail: string;
}

type Listener = () => void;

export class WorkspaceStore {
  subjectId: string | null = null;
  snapshot: OntologyDoc | null = null;
  version = 0;
  coverage: Coverage | null = null;
  selection: Selection | null = null;
  draft: EditDraft | null = null;
  fieldErrors: Record<string, string> = {};
  serverViolations: Violation[] = [];
  conflict: ConflictInfo | null = null;
  importPreview: ImportPreview | null = null;
  searchResults: SearchResult[] = [];
  lastError: string | null = null;

  private listeners: Listener[] = [];

  constructor(private readonly client: GatewayClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  // ---- loading -----------------------------------------------------------

  async load(subjectId: string): Promise<void> {
    const { version, document } = await this.client.getOntology(subjectId);
    this.subjectId = subjectId;
    this.snapshot = document;
    this.version = version;
    this.coverage = await this.client.getCoverage(subjectId);
    this.selection = null;
    this.draft = null;
    this.fieldErrors = {};
    this.serverViolations = [];
    this.conflict = null;
    this.importPreview = null;
    this.lastError = null;
    this.notify();
  }

  async refresh(): Promise<void> {
    if (!this.subjectId) return;
    const { version, document } = await this.client.getOntology(this.subjectId);
    this.snapshot = document;
    this.version = version;
    this.coverage = await this.client.getCoverage(this.subjectId);
    this.notify();
  }

  // ---- selection & drafts --------------------------------------------------

  select(entityType: EntityType, id: string): void {
    this.selection = { entityType, id };
    this.draft = null;
    this.fieldErrors = {};
    this.serverViolations = [];
    this.notify();
  }

  currentFields(entityType: EntityType, id: string): FieldEdits {
    const doc = this.snapshot;
    if (!doc) return {};
    if (entityType === "chapter") {
      const chapter = doc.chapters.find((c) => c.id === id);
      return chapter ? { title: chapter.title } : {};
    }
    if (entityType === "lo") {
      for (const chapter of doc.chapters) {
        const lo = chapter.learning_objectives.find((l) => l.id === id);
        if (lo) return { statement: lo.statement };
      }
      return {};
    }
    const kc = doc.knowledge_components[id];
    return kc ? { label: kc.label, description: kc.description } : {};
  }

  beginEdit(): void {
    if (!this.selection) return;
    const original = this.currentFields(this.selection.entityType, this.selection.id);
    this.draft = {
      entityType: this.selection.entityType,
      targetId: this.selection.id,
      fields: { ...original },
      original,
    };
    this.fieldErrors = {};
    this.serverViolations = [];
    this.notify();
  }

  updateDraftField(name: keyof FieldEdits, value: string): void {
    if (!this.draft) return;
    this.draft.fields[name] = value;
    this.fieldErrors = validateFieldEdits(this.draft.entityType, this.draft.fields);
    this.notify();
  }

  discardDraft(): void {
    this.draft = null;
    this.fieldErrors = {};
    this.serverViolations = [];
    this.conflict = null;
    this.notify();
  }

  get dirty(): boolean {
    if (!this.draft) return false;
    return (Object.keys(this.draft.fields) as (keyof FieldEdits)[]).some(
      (key) => this.draft!.fields[key] !== this.draft!.original[key],
    );
  }

  get canSave(): boolean {
    return this.dirty && Object.keys(this.fieldErrors).length === 0;
  }

  // ---- persistence ----------------------------------------------------------

  async saveDraft(): Promise<boolean> {
    if (!this.draft || !this.subjectId) return false;
    if (!this.canSave) {
      // violations present or nothing changed: no request is sent
      this.notify();
      return false;
    }
    const changed: FieldEdits = {};
    for (const key of Object.keys(this.draft.fields) as (keyof FieldEdits)[]) {
      if (this.draft.fields[key] !== this.draft.original[key]) {
        changed[key] = this.draft.fields[key];
      }
    }
    const outcome = await this.client.postEdit(this.subjectId, this.version, "rename", {
      entity: this.draft.entityType,
      target_id: this.draft.targetId,
      ...changed,
    });
    return this.handleOutcome(outcome, async () => {
      this.draft = null;
      this.fieldErrors = {};
    });
  }

  async applyEdit(kind: string, payload: Record<string, unknown>): Promise<boolean> {
    if (!this.subjectId) return false;
    const outcome = await this.client.postEdit(this.subjectId, this.version, kind, payload);
    return this.handleOutcome(outcome, async () => {});
  }

  private async handleOutcome(
    outcome: { ok: boolean; [key: string]: unknown },
    onSuccess: () => Promise<void>,
  ): Promise<boolean> {
    if (outcome.ok) {
      this.conflict = null;
      this.serverViolations = [];
      await onSuccess();
      await this.refresh();
      return true;
    }
    if (outcome.conflict) {
      this.conflict = {
        currentVersion: outcome.current_version as number,
        detail: (outcome.detail as string) ?? "version conflict",
      };
    } else {
      this.serverViolations = (outcome.violations as Violation[]) ?? [];
    }
    this.notify();
    return false;
  }

  // Conflict flow: pull the latest snapshot/version, keep the draft so the
  // curator can reapply it on top.
  async reloadAndReapply(): Promise<void> {
    const draft = this.draft;
    await this.refresh();
    this.conflict = null;
    if (draft) {
      this.draft = {
        ...draft,
        original: this.currentFields(draft.entityType, draft.targetId),
      };
      this.fieldErrors = validateFieldEdits(draft.entityType, draft.fields);
    }
    this.notify();
  }

  // ---- search -----------------------------------------------------------------

  async runSearch(query: string): Promise<void> {
    if (!this.subjectId) return;
    // results are displayed verbatim; no client-side re-ranking
    this.searchResults = await this.client.search(this.subjectId, query);
    this.notify();
  }

  // ---- import / export ----------------------------------------------------------

  async exportDocument(): Promise<string> {
    if (!this.subjectId) throw new Error("no subject loaded");
    return this.client.exportDocument(this.subjectId);
  }

  async importDocument(text: string): Promise<ImportPreview> {
    if (!this.subjectId) throw new Error("no subject loaded");
    const outcome = await this.client.validateDocument(this.subjectId, text);
    this.importPreview = {
      text,
      coverage: outcome.coverage ?? null,
      violations: outcome.violations,
    };
    this.notify();
    return this.importPreview;
  }

  get canCommitImport(): boolean {
    return this.importPreview !== null && this.importPreview.violations.length === 0;
  }

  async commitImport(): Promise<boolean> {
    if (!this.subjectId || !this.importPreview || !this.canCommitImport) return false;
    const outcome = await this.client.replaceDocument(
      this.subjectId,
      this.version,
      this.importPreview.text,
    );
    return this.handleOutcome(outcome, async () => {
      this.importPreview = null;
    });
  }

  clientViolations(): Violation[] {
    return this.snapshot ? validateDocument(this.snapshot) : [];
  }
}
