// DOM rendering. Everything here reads WorkspaceStore state and wires
// events back into it; no business logic lives in this file.

import type { WorkspaceStore } from "./state.js";
import type { EntityType, Violation } from "./types.js";
import { buildGraphData, highlightSet, layoutGraph, shouldCollapse } from "./graph.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderCoverage(store: WorkspaceStore, root: HTMLElement): void {
  root.replaceChildren();
  const coverage = store.coverage;
  if (!coverage) {
    root.append(el("p", { class: "hint" }, "Load a subject to see its coverage inventory."));
    return;
  }
  const totals = el("div", { class: "coverage-totals" });
  const cells: [string, number][] = [
    ["chapters", coverage.chapter_count],
    ["LOs", coverage.lo_count],
    ["KCs", coverage.kc_count],
  ];
  for (const [label, count] of cells) {
    const cell = el("div", { class: "coverage-cell" });
    cell.append(el("div", { class: "coverage-count" }, String(count)));
    cell.append(el("div", { class: "coverage-label" }, label));
    totals.append(cell);
  }
  root.append(totals);
  if (coverage.chapter_count === 0) {
    root.append(el("p", { class: "hint" }, "Empty ontology: import a document or add a chapter."));
    return;
  }
  const table = el("table", { class: "coverage-table" });
  const head = el("tr");
  for (const h of ["chapter", "LOs", "KCs"]) head.append(el("th", {}, h));
  table.append(head);
  for (const row of coverage.per_chapter) {
    const tr = el("tr");
    tr.append(el("td", {}, row.title));
    tr.append(el("td", {}, String(row.lo_count)));
    tr.append(el("td", {}, String(row.kc_count)));
    tr.addEventListener("click", () => store.select("chapter", row.chapter_id));
    table.append(tr);
  }
  root.append(table);
}

export function renderSearch(store: WorkspaceStore, root: HTMLElement): void {
  root.replaceChildren();
  for (const result of store.searchResults) {
    const item = el("div", { class: "search-hit" });
    item.append(el("span", { class: `tag tag-${result.entity_type}` }, result.entity_type));
    item.append(el("span", { class: "hit-id" }, result.id));
    item.append(el("span", { class: "hit-display" }, result.display));
    item.addEventListener("click", () => store.select(result.entity_type, result.id));
    root.append(item);
  }
}

function violationList(violations: Violation[]): HTMLElement {
  const list = el("ul", { class: "violations" });
  for (const v of violations) {
    list.append(el("li", {}, `[${v.rule}] ${v.entity_id}: ${v.detail}`));
  }
  return list;
}

export function renderDetails(store: WorkspaceStore, root: HTMLElement): void {
  root.replaceChildren();
  if (store.conflict) {
    const banner = el("div", { class: "banner banner-conflict" });
    banner.append(
      el(
        "p",
        {},
        `Save conflict: the subject moved to version ${store.conflict.currentVersion} while you were editing.`,
      ),
    );
    const reload = el("button", {}, "Reload and reapply my edit");
    reload.addEventListener("click", () => void store.reloadAndReapply());
    banner.append(reload);
    root.append(banner);
  }
  const selection = store.selection;
  if (!selection || !store.snapshot) {
    root.append(el("p", { class: "hint" }, "Select an entity to inspect or edit it."));
    return;
  }
  root.append(el("h3", {}, `${selection.entityType}: ${selection.id}`));

  if (!store.draft) {
    const fields = store.currentFields(selection.entityType, selection.id);
    for (const [name, value] of Object.entries(fields)) {
      const row = el("div", { class: "field-row" });
      row.append(el("label", {}, name));
      row.append(el("div", { class: "field-value" }, value ?? ""));
      root.append(row);
    }
    const edit = el("button", {}, "Edit");
    edit.addEventListener("click", () => store.beginEdit());
    root.append(edit);
    return;
  }

  const draft = store.draft;
  for (const name of Object.keys(draft.fields) as (keyof typeof draft.fields)[]) {
    const row = el("div", { class: "field-row" });
    row.append(el("label", {}, name));
    const input = el("input", { value: draft.fields[name] ?? "" });
    input.addEventListener("input", () => store.updateDraftField(name, input.value));
    row.append(input);
    const error = store.fieldErrors[name];
    if (error) row.append(el("div", { class: "field-error" }, error));
    root.append(row);
  }
  if (store.serverViolations.length > 0) {
    root.append(violationList(store.serverViolations));
  }
  const save = el("button", {}, "Save");
  save.toggleAttribute("disabled", !store.canSave);
  save.addEventListener("click", () => void store.saveDraft());
  const discard = el("button", { class: "secondary" }, "Discard");
  discard.addEventListener("click", () => store.discardDraft());
  const bar = el("div", { class: "button-bar" });
  bar.append(save, discard);
  root.append(bar);
}

export function renderGraph(
  store: WorkspaceStore,
  svg: SVGSVGElement,
  expandedChapters: Set<string>,
): void {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const doc = store.snapshot;
  if (!doc) return;
  const width = svg.clientWidth || 900;
  const height = Math.max(svg.clientHeight || 600, 30 * doc.chapters.length);
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  const data = buildGraphData(doc, expandedChapters);
  const nodes = layoutGraph(data, { width, height });
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const highlighted = store.selection ? highlightSet(doc, store.selection.id) : null;

  for (const link of data.links) {
    const a = byId.get(link.source);
    const b = byId.get(link.target);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    const dim = highlighted && !(highlighted.has(a.id) && highlighted.has(b.id));
    line.setAttribute("class", dim ? "edge dim" : "edge");
    svg.append(line);
  }

  for (const node of nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    const dim = highlighted && !highlighted.has(node.id);
    group.setAttribute("class", `node node-${node.entityType}${dim ? " dim" : ""}`);
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", node.entityType === "chapter" ? "9" : "6");
    group.append(circle);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x + (node.tier === 2 ? 10 : -10)));
    text.setAttribute("y", String(node.y + 4));
    text.setAttribute("text-anchor", node.tier === 2 ? "start" : "end");
    const suffix = node.collapsedCount !== undefined ? ` (+${node.collapsedCount} KCs)` : "";
    text.textContent = truncate(node.label, 46) + suffix;
    group.append(text);
    group.addEventListener("click", () => {
      if (node.entityType === "chapter" && data.collapsed) {
        if (expandedChapters.has(node.id)) expandedChapters.delete(node.id);
        else expandedChapters.add(node.id);
      }
      store.select(node.entityType, node.id);
    });
    svg.append(group);
  }
}

function truncate(text: string, max: number): string {
  return text.length <= max ? text : text.slice(0, max - 1) + "…";
}

export function defaultExpansion(store: WorkspaceStore): Set<string> {
  const doc = store.snapshot;
  if (!doc) return new Set();
  // small ontologies render fully expanded; large ones start collapsed
  return shouldCollapse(doc) ? new Set() : new Set(doc.chapters.map((c) => c.id));
}
