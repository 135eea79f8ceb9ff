import { describe, expect, it } from "vitest";

import { GatewayClient, GatewayError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("GatewayClient", () => {
  it("gets an ontology with its version", async () => {
    const calls: string[] = [];
    const client = new GatewayClient("http://gw", async (url) => {
      calls.push(url);
      return jsonResponse({ ok: true, version: 3, document: { subject_id: "demo" } });
    });
    const result = await client.getOntology("demo");
    expect(calls).toEqual(["http://gw/subjects/demo/ontology"]);
    expect(result.version).toBe(3);
    expect(result.document.subject_id).toBe("demo");
  });

  it("encodes search queries", async () => {
    let url = "";
    const client = new GatewayClient("", async (u) => {
      url = u;
      return jsonResponse({ ok: true, results: [] });
    });
    await client.search("demo", "two words & more");
    expect(url).toBe("/subjects/demo/search?q=two%20words%20%26%20more");
  });

  it("posts edits with the optimistic version", async () => {
    let body: any = null;
    const client = new GatewayClient("", async (_u, init) => {
      body = JSON.parse(String(init?.body));
      return jsonResponse({ ok: true, version: 5 });
    });
    const outcome = await client.postEdit("demo", 4, "rename", { entity: "kc", target_id: "k" });
    expect(body).toEqual({
      base_version: 4,
      kind: "rename",
      payload: { entity: "kc", target_id: "k" },
    });
    expect(outcome).toEqual({ ok: true, version: 5 });
  });

  it("passes conflict bodies through, regardless of status code", async () => {
    const client = new GatewayClient("", async () =>
      jsonResponse({ ok: false, conflict: true, current_version: 9, detail: "stale" }, 409),
    );
    const outcome = await client.postEdit("demo", 1, "rename", {});
    expect(outcome.ok).toBe(false);
    if (!outcome.ok && outcome.conflict) {
      expect(outcome.current_version).toBe(9);
    } else {
      throw new Error("expected a conflict outcome");
    }
  });

  it("wraps unreachable gateways in GatewayError", async () => {
    const client = new GatewayClient("", async () => {
      throw new Error("ECONNREFUSED");
    });
    await expect(client.listSubjects()).rejects.toBeInstanceOf(GatewayError);
  });

  it("raises on 404 subjects", async () => {
    const client = new GatewayClient("", async () =>
      jsonResponse({ ok: false, detail: "unknown subject: nope" }, 404),
    );
    await expect(client.getOntology("nope")).rejects.toThrow(/unknown subject/);
  });
});
