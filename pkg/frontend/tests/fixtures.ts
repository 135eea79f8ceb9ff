import type { Coverage, OntologyDoc } from "../src/types.js";

export function smallDoc(): OntologyDoc {
  return {
    subject_id: "demo",
    version: 1,
    chapters: [
      {
        id: "ch_one",
        title: "Chapter One",
        learning_objectives: [
          { id: "lo_a", statement: "Explain alpha.", kc_ids: ["kc_alpha", "kc_beta"] },
          { id: "lo_b", statement: "Explain gamma.", kc_ids: ["kc_gamma"] },
        ],
      },
      {
        id: "ch_two",
        title: "Chapter Two",
        learning_objectives: [
          { id: "lo_c", statement: "Explain delta.", kc_ids: ["kc_delta"] },
        ],
      },
    ],
    knowledge_components: {
      kc_alpha: { label: "alpha idea", description: "About alpha.", misconceptions: [] },
      kc_beta: { label: "beta idea", description: "About beta.", misconceptions: [] },
      kc_gamma: {
        label: "gamma idea",
        description: "About gamma.",
        misconceptions: [{ id: "mi_g", description: "a gamma error" }],
      },
      kc_delta: { label: "delta idea", description: "About delta.", misconceptions: [] },
    },
  };
}

export function coverageOf(doc: OntologyDoc): Coverage {
  return {
    chapter_count: doc.chapters.length,
    lo_count: doc.chapters.reduce((n, c) => n + c.learning_objectives.length, 0),
    kc_count: Object.keys(doc.knowledge_components).length,
    per_chapter: doc.chapters.map((c) => ({
      chapter_id: c.id,
      title: c.title,
      lo_count: c.learning_objectives.length,
      kc_count: new Set(c.learning_objectives.flatMap((lo) => lo.kc_ids)).size,
    })),
  };
}
