// Workspace bootstrap: wires the store to the panels and the gateway.

import { GatewayClient } from "./api.js";
import { WorkspaceStore } from "./state.js";
import {
  defaultExpansion,
  renderCoverage,
  renderDetails,
  renderGraph,
  renderSearch,
} from "./views.js";

const client = new GatewayClient("");
const store = new WorkspaceStore(client);

const subjectSelect = document.getElementById("subject-select") as HTMLSelectElement;
const searchInput = document.getElementById("search-input") as HTMLInputElement;
const coveragePanel = document.getElementById("coverage-panel") as HTMLElement;
const searchPanel = document.getElementById("search-panel") as HTMLElement;
const detailsPanel = document.getElementById("details-panel") as HTMLElement;
const graphSvg = document.getElementById("graph") as unknown as SVGSVGElement;
const errorBanner = document.getElementById("error-banner") as HTMLElement;
const exportButton = document.getElementById("export-button") as HTMLButtonElement;
const importInput = document.getElementById("import-input") as HTMLInputElement;
const importPanel = document.getElementById("import-panel") as HTMLElement;

let expandedChapters = new Set<string>();

function renderAll(): void {
  renderCoverage(store, coveragePanel);
  renderSearch(store, searchPanel);
  renderDetails(store, detailsPanel);
  renderGraph(store, graphSvg, expandedChapters);
  renderImport();
  errorBanner.textContent = store.lastError ?? "";
  errorBanner.style.display = store.lastError ? "block" : "none";
}

function renderImport(): void {
  importPanel.replaceChildren();
  const preview = store.importPreview;
  if (!preview) return;
  const headline = document.createElement("p");
  if (preview.coverage) {
    headline.textContent =
      `Import preview: ${preview.coverage.chapter_count} chapters / ` +
      `${preview.coverage.lo_count} LOs / ${preview.coverage.kc_count} KCs`;
  } else {
    headline.textContent = "Import preview: document does not parse.";
  }
  importPanel.append(headline);
  if (preview.violations.length > 0) {
    const list = document.createElement("ul");
    list.className = "violations";
    for (const v of preview.violations) {
      const li = document.createElement("li");
      li.textContent = `[${v.rule}] ${v.entity_id}: ${v.detail}`;
      list.append(li);
    }
    importPanel.append(list);
  }
  const commit = document.createElement("button");
  commit.textContent = "Replace draft on server";
  commit.toggleAttribute("disabled", !store.canCommitImport);
  commit.addEventListener("click", () => void store.commitImport());
  importPanel.append(commit);
}

store.subscribe(renderAll);

async function boot(): Promise<void> {
  try {
    const subjects = await client.listSubjects();
    subjectSelect.replaceChildren();
    for (const subject of subjects) {
      const option = document.createElement("option");
      option.value = subject;
      option.textContent = subject;
      subjectSelect.append(option);
    }
    if (subjects.length > 0) {
      await store.load(subjects[0]!);
      expandedChapters = defaultExpansion(store);
      renderAll();
    }
  } catch (err) {
    errorBanner.textContent = `Gateway unreachable: ${String(err)}`;
    errorBanner.style.display = "block";
  }
}

subjectSelect.addEventListener("change", async () => {
  await store.load(subjectSelect.value);
  expandedChapters = defaultExpansion(store);
  renderAll();
});

let searchTimer: ReturnType<typeof setTimeout> | undefined;
searchInput.addEventListener("input", () => {
  clearTimeout(searchTimer);
  searchTimer = setTimeout(() => void store.runSearch(searchInput.value), 150);
});

exportButton.addEventListener("click", async () => {
  const text = await store.exportDocument();
  const blob = new Blob([text], { type: "text/yaml" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = `${store.subjectId ?? "ontology"}.yaml`;
  link.click();
  URL.revokeObjectURL(link.href);
});

importInput.addEventListener("change", async () => {
  const file = importInput.files?.[0];
  if (!file) return;
  const text = await file.text();
  await store.importDocument(text);
  importInput.value = "";
});

void boot();
