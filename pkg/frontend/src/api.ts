// Thin typed client for the atlas gateway. All persistence flows through
// these endpoints; the workspace never touches disk.

import type {
  Coverage,
  EditOutcome,
  EditPayload,
  OntologyDoc,
  SearchResult,
  ValidateOutcome,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GatewayError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async getJson(path: string): Promise<any> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path);
    } catch (err) {
      throw new GatewayError(`gateway unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok || body === null) {
      const detail = body?.detail ?? response.statusText;
      throw new GatewayError(`${path}: ${detail}`, response.status);
    }
    return body;
  }

  private async postJson(path: string, payload: unknown): Promise<{ status: number; body: any }> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      });
    } catch (err) {
      throw new GatewayError(`gateway unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => null);
    if (body === null) {
      throw new GatewayError(`${path}: empty response`, response.status);
    }
    return { status: response.status, body };
  }

  async listSubjects(): Promise<string[]> {
    const body = await this.getJson("/subjects");
    return body.subjects as string[];
  }

  async getOntology(subjectId: string): Promise<{ version: number; document: OntologyDoc }> {
    const body = await this.getJson(`/subjects/${encodeURIComponent(subjectId)}/ontology`);
    return { version: body.version as number, document: body.document as OntologyDoc };
  }

  async getCoverage(subjectId: string): Promise<Coverage> {
    const body = await this.getJson(`/subjects/${encodeURIComponent(subjectId)}/coverage`);
    return body.coverage as Coverage;
  }

  async search(subjectId: string, query: string): Promise<SearchResult[]> {
    const q = encodeURIComponent(query);
    const body = await this.getJson(`/subjects/${encodeURIComponent(subjectId)}/search?q=${q}`);
    return body.results as SearchResult[];
  }

  async postEdit(
    subjectId: string,
    baseVersion: number,
    kind: string,
    payload: EditPayload,
  ): Promise<EditOutcome> {
    const { body } = await this.postJson(`/subjects/${encodeURIComponent(subjectId)}/edits`, {
      base_version: baseVersion,
      kind,
      payload,
    });
    return body as EditOutcome;
  }

  async exportDocument(subjectId: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/subjects/${encodeURIComponent(subjectId)}/export`,
    );
    if (!response.ok) {
      throw new GatewayError(`export failed`, response.status);
    }
    return response.text();
  }

  async validateDocument(subjectId: string, document: string): Promise<ValidateOutcome> {
    const { body } = await this.postJson(
      `/subjects/${encodeURIComponent(subjectId)}/validate`,
      { document },
    );
    return body as ValidateOutcome;
  }

  async replaceDocument(
    subjectId: string,
    baseVersion: number,
    document: string,
  ): Promise<EditOutcome> {
    const { body } = await this.postJson(`/subjects/${encodeURIComponent(subjectId)}/document`, {
      base_version: baseVersion,
      document,
    });
    return body as EditOutcome;
  }
}
