#!/usr/bin/env python3
"""Build the three bundled subject ontology fixtures.

Deterministic: no RNG, pure round-robin assembly from per-chapter term
banks. Target scale per subject (chapters / LOs / KCs):
computer_science 16/53/131, general_biology 20/60/172,
inorganic_chemistry 12/57/177.

Run from the repo root:  python3 tools/generate_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from readloop.ontology import (
    Chapter,
    KnowledgeComponent,
    LearningObjective,
    Misconception,
    Ontology,
    coverage_summary,
    serialize_ontology,
    validate_ontology,
)

# Per-subject chapter banks: (chapter title, [concept terms...]).
# Terms become KC labels; overflow labels append a facet word.

CS_CHAPTERS = [
    ("Introduction to Computation", ["algorithmic thinking", "abstraction layers", "state machines", "symbol manipulation", "computational problems", "input encoding", "program execution", "formal languages", "decidability", "model of computation"]),
    ("Data Representation", ["binary numbers", "two's complement", "floating point", "character encoding", "bitwise operations", "overflow behavior", "hexadecimal notation", "fixed width integers", "endianness", "parity bits"]),
    ("Boolean Logic", ["truth tables", "logic gates", "boolean algebra", "de morgan laws", "karnaugh maps", "circuit minimization", "multiplexers", "adders", "logical equivalence", "canonical forms"]),
    ("Computer Architecture", ["fetch execute cycle", "instruction sets", "registers", "cache locality", "memory hierarchy", "pipelining", "branch prediction", "interrupts", "buses", "clock frequency"]),
    ("Algorithms", ["algorithm correctness", "loop invariants", "greedy strategies", "divide and conquer", "dynamic programming", "brute force search", "pseudocode conventions", "termination arguments", "problem reduction", "heuristics"]),
    ("Data Structures", ["arrays", "linked lists", "stacks", "queues", "hash tables", "binary trees", "heaps", "graphs", "adjacency lists", "balanced trees"]),
    ("Programming Fundamentals", ["variables and scope", "control flow", "iteration", "type systems", "expressions", "mutability", "error handling", "input validation", "naming conventions", "modular design"]),
    ("Functions and Abstraction", ["function composition", "parameters and arguments", "return values", "side effects", "pure functions", "higher order functions", "interfaces", "encapsulation", "information hiding", "contracts"]),
    ("Recursion", ["base cases", "recursive cases", "call stacks", "stack overflow", "tail recursion", "structural recursion", "recursion trees", "memoization", "mutual recursion", "recursive data definitions"]),
    ("Sorting and Searching", ["linear search", "binary search", "insertion sort", "merge sort", "quicksort", "partitioning", "stability of sorts", "comparison counting", "search preconditions", "selection sort"]),
    ("Complexity and Efficiency", ["big o notation", "growth rates", "worst case analysis", "average case analysis", "space complexity", "constant factors", "asymptotic comparison", "polynomial time", "exponential blowup", "amortized analysis"]),
    ("Operating Systems", ["processes", "threads", "scheduling", "virtual memory", "paging", "file systems", "system calls", "deadlock", "mutual exclusion", "context switching"]),
    ("Networks and Protocols", ["packet switching", "layered protocols", "ip addressing", "routing", "tcp reliability", "dns resolution", "latency and bandwidth", "congestion control", "sockets", "checksums"]),
    ("Databases", ["relational tables", "primary keys", "foreign keys", "normalization", "sql queries", "joins", "transactions", "indexes", "acid properties", "query planning"]),
    ("Software Engineering", ["version control", "unit testing", "code review", "refactoring", "requirements analysis", "technical debt", "continuous integration", "debugging strategies", "documentation practice", "release management"]),
    ("Limits of Computation", ["halting problem", "undecidability", "turing machines", "church turing thesis", "np completeness", "reductions between problems", "tractability", "diagonalization", "oracle arguments", "complexity classes"]),
]

BIO_CHAPTERS = [
    ("The Chemistry of Life", ["covalent bonds in biomolecules", "hydrogen bonding in water", "ph and buffers", "carbon skeletons", "functional groups", "monomers and polymers", "dehydration synthesis", "hydrolysis reactions", "protein folding", "nucleic acid structure"]),
    ("Cell Structure", ["prokaryotic cells", "eukaryotic organelles", "nucleus function", "ribosomes", "endoplasmic reticulum", "golgi apparatus", "mitochondria", "chloroplast structure", "cytoskeleton", "cell walls"]),
    ("Membranes and Transport", ["phospholipid bilayers", "membrane fluidity", "diffusion", "osmosis", "facilitated transport", "active transport pumps", "endocytosis", "exocytosis", "membrane receptors", "concentration gradients"]),
    ("Energy and Metabolism", ["metabolic pathways", "activation energy", "enzyme specificity", "enzyme inhibition", "atp coupling", "free energy changes", "cofactors", "feedback regulation", "anabolic reactions", "catabolic reactions"]),
    ("Photosynthesis", ["light dependent reactions", "light independent reactions", "chlorophyll absorption", "electron transport in thylakoids", "calvin cycle", "carbon fixation", "photorespiration", "stomatal regulation", "photosynthetic pigments", "food source in plants"]),
    ("Cellular Respiration", ["glycolysis", "pyruvate oxidation", "citric acid cycle", "oxidative phosphorylation", "electron carriers", "chemiosmosis", "fermentation", "aerobic versus anaerobic yield", "respiratory substrates", "metabolic rate"]),
    ("Cell Division", ["cell cycle phases", "mitosis stages", "cytokinesis", "chromosome condensation", "spindle fibers", "checkpoints", "apoptosis", "cancer and division control", "binary fission", "stem cells"]),
    ("Genetics and Inheritance", ["mendelian ratios", "alleles", "dominance relationships", "punnett squares", "independent assortment", "linked genes", "sex linked traits", "pedigree analysis", "polygenic traits", "genotype and phenotype"]),
    ("DNA Structure and Replication", ["double helix structure", "base pairing rules", "antiparallel strands", "semiconservative replication", "dna polymerase", "replication forks", "okazaki fragments", "proofreading", "telomeres", "mutations in replication"]),
    ("Gene Expression", ["transcription", "rna processing", "translation", "codons", "ribosome function in translation", "promoters", "transcription factors", "gene regulation", "operons", "post translational modification"]),
    ("Biotechnology", ["restriction enzymes", "gel electrophoresis", "polymerase chain reaction", "dna cloning", "plasmid vectors", "genetic engineering", "crispr editing", "dna sequencing", "genetically modified organisms", "bioethics of editing"]),
    ("Evolution", ["natural selection", "variation and heritability", "adaptation", "fitness", "genetic drift", "gene flow", "speciation", "common descent", "fossil evidence", "antibiotic resistance evolution"]),
    ("Classification and Diversity", ["taxonomic hierarchy", "binomial nomenclature", "phylogenetic trees", "domains of life", "homologous structures", "analogous structures", "cladistics", "molecular systematics", "species concepts", "biodiversity measures"]),
    ("Microorganisms", ["bacterial structure", "archaea", "viral replication", "bacteriophages", "microbial growth curves", "pathogenicity", "antibiotics", "microbiomes", "protists", "fungi as decomposers"]),
    ("Plant Form and Function", ["root systems", "shoot systems", "vascular tissue", "xylem transport", "phloem translocation", "transpiration", "plant hormones", "tropisms", "seed structure", "alternation of generations"]),
    ("Animal Form and Function", ["tissue types", "homeostasis", "thermoregulation", "digestive processing", "gas exchange surfaces", "osmoregulation", "excretory systems", "skeletal support", "muscle contraction", "integumentary barriers"]),
    ("Nervous and Endocrine Systems", ["neuron structure", "resting potential", "action potentials", "synaptic transmission", "neurotransmitters", "reflex arcs", "brain regions", "hormone signaling", "negative feedback in hormones", "receptor specificity"]),
    ("Circulation and Immunity", ["heart chambers", "blood vessels", "blood composition", "oxygen transport", "innate immunity", "adaptive immunity", "antibodies", "vaccination", "clotting cascade", "lymphatic system"]),
    ("Ecology", ["population growth models", "carrying capacity", "limiting factors", "predation", "competition", "symbiosis", "niche partitioning", "trophic levels", "food webs", "keystone species"]),
    ("Ecosystems and Conservation", ["energy flow in ecosystems", "nutrient cycling", "nitrogen cycle", "carbon cycle", "primary productivity", "succession", "habitat fragmentation", "invasive species", "conservation strategies", "climate effects on ecosystems"]),
]

CHEM_CHAPTERS = [
    ("Atomic Structure", ["atomic orbitals", "electron configurations", "quantum numbers", "effective nuclear charge", "isotopes", "ionization energy", "electron affinity", "atomic spectra", "aufbau principle", "shielding effects", "nuclear binding", "photoelectron spectra"]),
    ("Periodic Trends", ["atomic radius trends", "electronegativity", "metallic character", "periodic groups", "valence electrons", "diagonal relationships", "oxidation state patterns", "lanthanide contraction", "periodicity of reactivity", "ionic radius trends", "polarizability", "successive ionization energies"]),
    ("Ionic and Covalent Bonding", ["lattice energy", "born haber cycles", "ionic radius ratios", "covalent bond order", "bond enthalpy", "electronegativity differences", "polar covalent bonds", "lewis structures", "resonance structures", "formal charge", "octet exceptions", "bond polarity and solubility"]),
    ("Molecular Geometry", ["vsepr theory", "electron domains", "bond angles", "hybridization", "sigma and pi bonds", "molecular polarity", "lone pair repulsion", "molecular orbital diagrams", "bond order from mo theory", "isoelectronic species", "point group symmetry", "dipole moments"]),
    ("Acids and Bases", ["bronsted acids", "lewis acids", "conjugate pairs", "ph calculations", "acid strength trends", "oxoacid strength", "buffer systems", "amphoterism", "hard and soft acids", "leveling effect", "hydrolysis of salts", "superacids"]),
    ("Redox and Electrochemistry", ["oxidation numbers", "half reactions", "balancing redox equations", "standard electrode potentials", "galvanic cells", "electrolysis", "nernst equation", "disproportionation", "redox titrations", "corrosion", "batteries", "overpotential"]),
    ("Coordination Chemistry", ["coordination numbers", "ligand types", "chelate effect", "crystal field splitting", "spectrochemical series", "isomerism in complexes", "d orbital occupancy", "complex color origins", "magnetic properties of complexes", "ligand substitution", "stability constants", "jahn teller distortion"]),
    ("Solid State Structures", ["unit cells", "close packing", "coordination in lattices", "ionic crystal structures", "defects in solids", "band theory", "semiconductors", "alloys", "x ray diffraction", "lattice enthalpy trends", "amorphous solids", "superconductors"]),
    ("Main Group Chemistry", ["hydrogen chemistry", "alkali metals", "alkaline earth metals", "boron group", "carbon group", "nitrogen group", "oxygen group chemistry", "halogens", "noble gases", "inert pair effect", "allotropes", "interhalogen compounds"]),
    ("Transition Metals", ["variable oxidation states", "catalytic activity", "organometallic basics", "metal carbonyls", "ferromagnetism", "transition metal colors", "aqueous ion chemistry", "oxoanions of metals", "metallurgy", "bioinorganic metals", "cluster compounds", "alloy formation"]),
    ("Thermodynamics of Reactions", ["enthalpy of formation", "entropy changes", "gibbs free energy", "spontaneity criteria", "hess law", "coupled reactions", "temperature dependence of equilibria", "thermodynamic versus kinetic control", "calorimetry", "standard states", "ellingham diagrams", "phase stability"]),
    ("Descriptive Inorganic Survey", ["industrial ammonia synthesis", "sulfuric acid production", "silicate minerals", "zeolites", "ceramics", "pigments and oxides", "water treatment chemistry", "atmospheric chemistry of oxides", "fertilizer chemistry", "glass composition", "cement chemistry", "rare earth applications"]),
]

LO_VERBS = [
    "Explain", "Describe", "Compare", "Predict", "Apply", "Analyze",
    "Interpret", "Evaluate", "Illustrate", "Distinguish",
]

DESCRIPTION_PATTERNS = [
    "{Term} describes how one part of the process shapes the behavior of the larger system around it.",
    "{Term} captures the rule that governs when and why the effect appears in practice.",
    "{Term} explains the link between what can be observed and the process working underneath.",
    "{Term} defines the conditions under which the idea holds and the cases where it breaks down.",
    "{Term} accounts for the measurable effects the process produces under controlled conditions.",
    "{Term} specifies the steps by which the process moves from start to finish.",
]

MISCONCEPTION_PATTERNS = [
    "the belief that {term} works the same way in every situation regardless of context",
    "the idea that {term} is determined by a single factor acting alone",
    "the assumption that {term} happens instantly with no intermediate steps",
    "the claim that {term} only matters in textbook cases and not in real systems",
    "the notion that bigger or more always means stronger when reasoning about {term}",
    "the expectation that {term} reverses itself automatically once conditions change",
]

FACETS = ["fundamentals", "mechanisms", "boundary cases", "applications"]


def _slug(text: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in text.lower()).strip("_")[:48]


def _spread(total: int, buckets: int) -> list[int]:
    base, extra = divmod(total, buckets)
    return [base + (1 if i < extra else 0) for i in range(buckets)]


def build_subject(subject_id: str, chapter_bank, lo_total: int, kc_total: int) -> Ontology:
    lo_counts = _spread(lo_total, len(chapter_bank))
    kc_counts = _spread(kc_total, lo_total)

    chapters = []
    kcs = []
    lo_cursor = 0
    for ch_idx, (title, terms) in enumerate(chapter_bank):
        ch_id = f"ch_{ch_idx + 1:02d}_{_slug(title)}"
        term_cursor = 0
        los = []
        for _ in range(lo_counts[ch_idx]):
            n_kcs = kc_counts[lo_cursor]
            kc_ids = []
            lo_terms = []
            for _ in range(n_kcs):
                if term_cursor < len(terms):
                    term = terms[term_cursor]
                else:
                    base = terms[term_cursor % len(terms)]
                    facet = FACETS[(term_cursor // len(terms) - 1) % len(FACETS)]
                    term = f"{base} {facet}"
                term_cursor += 1
                kc_id = f"kc_{_slug(subject_id)[:4]}_{ch_idx + 1:02d}_{_slug(term)}"
                label = term
                desc_pattern = DESCRIPTION_PATTERNS[len(kcs) % len(DESCRIPTION_PATTERNS)]
                description = desc_pattern.format(Term=term.capitalize(), term=term)
                mis = []
                n_mis = 2 if len(kcs) % 3 == 0 else 1
                for m_idx in range(n_mis):
                    pattern = MISCONCEPTION_PATTERNS[(len(kcs) + m_idx) % len(MISCONCEPTION_PATTERNS)]
                    mis.append(
                        Misconception(
                            id=f"mi_{_slug(term)}_{m_idx + 1}",
                            description=pattern.format(term=term),
                        )
                    )
                kcs.append(
                    KnowledgeComponent(id=kc_id, label=label, description=description, misconceptions=tuple(mis))
                )
                kc_ids.append(kc_id)
                lo_terms.append(term)
            verb = LO_VERBS[lo_cursor % len(LO_VERBS)]
            if len(lo_terms) == 1:
                obj = lo_terms[0]
            else:
                obj = ", ".join(lo_terms[:-1]) + " and " + lo_terms[-1]
            statement = f"{verb} {obj} in the context of {title.lower()}."
            los.append(
                LearningObjective(id=f"lo_{ch_idx + 1:02d}_{lo_cursor + 1:02d}_{_slug(lo_terms[0])}", statement=statement, kc_ids=tuple(kc_ids))
            )
            lo_cursor += 1
        chapters.append(Chapter(id=ch_id, title=title, learning_objectives=tuple(los)))

    return Ontology(
        subject_id=subject_id,
        chapters=tuple(chapters),
        knowledge_components=tuple(kcs),
        version=1,
    )


SUBJECTS = {
    "computer_science": (CS_CHAPTERS, 53, 131, (16, 53, 131)),
    "general_biology": (BIO_CHAPTERS, 60, 172, (20, 60, 172)),
    "inorganic_chemistry": (CHEM_CHAPTERS, 57, 177, (12, 57, 177)),
}


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "src" / "readloop" / "assets" / "ontologies"
    out_dir.mkdir(parents=True, exist_ok=True)
    for subject_id, (bank, lo_total, kc_total, expected) in SUBJECTS.items():
        onto = build_subject(subject_id, bank, lo_total, kc_total)
        problems = validate_ontology(onto)
        if problems:
            raise SystemExit(f"{subject_id}: fixture invalid: {problems[:3]}")
        cov = coverage_summary(onto)
        got = (cov.chapter_count, cov.lo_count, cov.kc_count)
        if got != expected:
            raise SystemExit(f"{subject_id}: counts {got} != expected {expected}")
        path = out_dir / f"{subject_id}.yaml"
        path.write_text(serialize_ontology(onto), encoding="utf-8")
        print(f"wrote {path} counts={got}")


if __name__ == "__main__":
    main()
