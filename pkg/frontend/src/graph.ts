// Tier-pinned force layout for the chapter -> LO -> KC relationship graph.
// Chapters pin to the left column, LOs to the middle, KCs to the right;
// the simulation only relaxes vertical positions, which keeps the three
// tiers legible even at ~180 KCs.

import type { EntityType, OntologyDoc } from "./types.js";

export interface GraphNode {
  id: string;
  label: string;
  entityType: EntityType;
  tier: 0 | 1 | 2;
  x: number;
  y: number;
  collapsedCount?: number;
}

export interface GraphLink {
  source: string;
  target: string;
}

export interface GraphData {
  nodes: GraphNode[];
  links: GraphLink[];
  collapsed: boolean;
}

// Above this many KCs, chapters start collapsed and expand on demand.
export const COLLAPSE_KC_THRESHOLD = 100;

export function shouldCollapse(doc: OntologyDoc): boolean {
  return Object.keys(doc.knowledge_components).length > COLLAPSE_KC_THRESHOLD;
}

export function buildGraphData(
  doc: OntologyDoc,
  expandedChapters: ReadonlySet<string> = new Set(),
): GraphData {
  const collapsed = shouldCollapse(doc);
  const nodes: GraphNode[] = [];
  const links: GraphLink[] = [];

  for (const chapter of doc.chapters) {
    const expand = !collapsed || expandedChapters.has(chapter.id);
    const kcCount = new Set(chapter.learning_objectives.flatMap((lo) => lo.kc_ids)).size;
    nodes.push({
      id: chapter.id,
      label: chapter.title,
      entityType: "chapter",
      tier: 0,
      x: 0,
      y: 0,
      collapsedCount: expand ? undefined : kcCount,
    });
    if (!expand) continue;
    for (const lo of chapter.learning_objectives) {
      nodes.push({ id: lo.id, label: lo.statement, entityType: "lo", tier: 1, x: 0, y: 0 });
      links.push({ source: chapter.id, target: lo.id });
      for (const kcId of lo.kc_ids) {
        if (!nodes.some((n) => n.id === kcId)) {
          const kc = doc.knowledge_components[kcId];
          nodes.push({
            id: kcId,
            label: kc ? kc.label : kcId,
            entityType: "kc",
            tier: 2,
            x: 0,
            y: 0,
          });
        }
        links.push({ source: lo.id, target: kcId });
      }
    }
  }
  return { nodes, links, collapsed };
}

// Subtree highlight: the focused entity plus everything above and below it
// in the hierarchy.
export function highlightSet(doc: OntologyDoc, focusId: string): Set<string> {
  const ids = new Set<string>();
  for (const chapter of doc.chapters) {
    for (const lo of chapter.learning_objectives) {
      const hasKc = lo.kc_ids.includes(focusId);
      if (chapter.id === focusId) {
        ids.add(chapter.id);
        ids.add(lo.id);
        for (const kc of lo.kc_ids) ids.add(kc);
      } else if (lo.id === focusId) {
        ids.add(chapter.id);
        ids.add(lo.id);
        for (const kc of lo.kc_ids) ids.add(kc);
      } else if (hasKc) {
        ids.add(chapter.id);
        ids.add(lo.id);
        ids.add(focusId);
      }
    }
  }
  if (ids.size === 0 && focusId) ids.add(focusId);
  return ids;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
}

const TIER_X = [0.12, 0.5, 0.88] as const;

// Deterministic relaxation: x is pinned per tier; y starts evenly spaced
// and relaxes under link attraction plus same-tier separation.
export function layoutGraph(data: GraphData, opts: LayoutOptions): GraphNode[] {
  const { width, height } = opts;
  const iterations = opts.iterations ?? 60;
  const nodes = data.nodes.map((n) => ({ ...n }));
  const byId = new Map(nodes.map((n) => [n.id, n]));

  const tiers: GraphNode[][] = [[], [], []];
  for (const node of nodes) tiers[node.tier]!.push(node);
  for (const tier of tiers) {
    const count = tier.length;
    tier.forEach((node, i) => {
      node.x = TIER_X[node.tier] * width;
      node.y = ((i + 1) / (count + 1)) * height;
    });
  }

  const minGap = Math.max(14, height / 40);
  for (let step = 0; step < iterations; step++) {
    // link attraction moves nodes toward their neighbors' y
    const pull = new Map<string, { sum: number; n: number }>();
    for (const link of data.links) {
      const a = byId.get(link.source);
      const b = byId.get(link.target);
      if (!a || !b) continue;
      const pa = pull.get(a.id) ?? { sum: 0, n: 0 };
      pa.sum += b.y;
      pa.n += 1;
      pull.set(a.id, pa);
      const pb = pull.get(b.id) ?? { sum: 0, n: 0 };
      pb.sum += a.y;
      pb.n += 1;
      pull.set(b.id, pb);
    }
    for (const node of nodes) {
      const p = pull.get(node.id);
      if (p && p.n > 0) {
        node.y += 0.25 * (p.sum / p.n - node.y);
      }
    }
    // same-tier separation keeps labels readable
    for (const tier of tiers) {
      tier.sort((a, b) => a.y - b.y);
      for (let i = 1; i < tier.length; i++) {
        const prev = tier[i - 1]!;
        const node = tier[i]!;
        const gap = node.y - prev.y;
        if (gap < minGap) {
          const shift = (minGap - gap) / 2;
          prev.y -= shift;
          node.y += shift;
        }
      }
    }
    for (const node of nodes) {
      node.y = Math.min(Math.max(node.y, 16), height - 16);
    }
  }
  return nodes;
}
