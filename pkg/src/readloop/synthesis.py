"""Deterministic synthetic content generator.

Produces a ContentBundle from an ontology alone: for each requested LO and
cycle, one passage variant per support tier (deeper tiers add explanation,
examples, explicit misconception refutation, review coverage, and simpler
prose), plus fresh isomorphic item variants per cycle (same KC alignment,
different surface strings). Pure function of (ontology, spec, seed):
template choices rotate on a hash of the seed and position, so equal seeds
give byte-identical bundles.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .content import AssessmentItem, ContentBundle, Option, ReadingPassage
from .ontology import KnowledgeComponent, Ontology
from .policy import ReadingConfig, SUPPORT_TIERS
from .readability import dale_chall_score, default_word_list


@dataclass(frozen=True)
class SynthesisSpec:
    lo_ids: tuple[str, ...]
    cycles: int = 3
    items_per_cycle: int = 3
    tiers: tuple[float, ...] = SUPPORT_TIERS
    refutation_emphasis: float = 1.0
    options_per_item: int = 4

    def __post_init__(self):
        if not self.lo_ids:
            raise ValueError("synthesis spec needs at least one LO")
        if self.cycles < 1 or self.items_per_cycle < 1:
            raise ValueError("cycles and items_per_cycle must be >= 1")
        if not 0.0 <= self.refutation_emphasis <= 1.0:
            raise ValueError("refutation_emphasis must lie in [0,1]")
        if self.options_per_item < 2:
            raise ValueError("options_per_item must be >= 2")


def _offset(seed: int, *parts) -> int:
    key = ":".join(str(p) for p in (seed,) + parts)
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:4], "big")


# Elaboration templates. The "plain" flavor uses short, familiar phrasing;
# the "dense" flavor is longer with low-frequency vocabulary, so deeper
# support tiers read easier on the readability scale. None of these may
# contain refutation cue phrases.

PLAIN_ELABORATIONS = (
    "In plain words, {term} follows the same rule each time you watch it work.",
    "You can think of {term} as one small part that helps the whole system make sense.",
    "When you slow down and look, {term} shows up again and again in the same way.",
    "A good way to hold on to {term} is to say it back in your own words.",
    "Keep {term} in mind while you read, because later parts build on it.",
)

DENSE_ELABORATIONS = (
    "A rigorous examination demonstrates that {term} exhibits systematic regularities contingent upon prevailing structural circumstances.",
    "Contemporary scholarship characterizes {term} as a constitutive mechanism whose ramifications permeate adjacent theoretical territory.",
    "Analytically, {term} admits a precise formulation whose derivation presupposes considerable antecedent mathematical apparatus.",
    "The operative significance of {term} emerges predominantly when peripheral complications are systematically disregarded.",
    "Methodological scrutiny situates {term} within a hierarchy of interdependent abstractions of escalating sophistication.",
)

PLAIN_EXAMPLES = (
    "For example, a student who tries a small case will see {term} at work right away.",
    "For example, picture a simple setup in class, and {term} explains what happens next.",
    "For example, {term} is what you lean on when the easy guess stops working.",
)

DENSE_EXAMPLES = (
    "For example, practitioners routinely encounter {term} when confronting nontrivial configurations whose behavior defies naive extrapolation.",
    "For example, canonical laboratory demonstrations operationalize {term} under deliberately constrained experimental parameters.",
    "For example, {term} acquires particular salience wherever idealized assumptions collide with empirical irregularities.",
)

REFUTATION_LEADS = (
    "Many students incorrectly accept {mis}.",
    "Learners incorrectly carry {mis} into new problems.",
    "It is tempting, but incorrectly so, to keep {mis}.",
)

REFUTATION_CORRECTIONS = (
    "The evidence supports the correct picture, rather than that mistaken one: {fact}",
    "Careful study favors the real account rather than the error: {fact}",
    "Good examples point to the true account rather than the slip: {fact}",
)

REVIEW_SENTENCES = (
    "To review, hold on to the main point about {term} before moving on.",
    "As a quick review, say back the key idea of {term} in your own words.",
    "One more review note: {term} will return in later readings, so keep it close.",
)

STEM_TEMPLATES = (
    "Which statement about {label} is accurate?",
    "Which option best describes {label}?",
    "A classmate asks about {label}. Which reply is right?",
    "Pick the claim about {label} that holds up.",
    "Which of the following captures {label} correctly?",
)

CORRECT_OPTION_TEMPLATES = (
    "{desc}",
    "In short, {desc_lower}",
    "Put simply, {desc_lower}",
)

FILLER_DISTRACTORS = (
    "{Label} is unrelated to this chapter and never affects how the system behaves.",
    "{Label} only matters on exams and has no meaning outside the classroom.",
    "{Label} was abandoned by the field and appears here for historical interest only.",
    "{Label} is just another name for memorizing facts without any structure.",
)

FILLER_RATIONALES = (
    "Dismisses the concept instead of engaging with it.",
    "Confuses the concept's scope with its importance.",
    "Asserts an irrelevant historical claim.",
    "Reduces the concept to rote memorization.",
)


def _pick(bank: tuple[str, ...], index: int) -> str:
    return bank[index % len(bank)]


def _sentence_flavor(tier: float, slot: int, offset: int) -> bool:
    """True for plain flavor. The share of plain sentences equals the tier."""
    plain_share = tier
    phase = ((slot * 2654435761 + offset) % 1000) / 1000.0
    return phase < plain_share


def _kc_block(
    kc: KnowledgeComponent,
    tier: float,
    emphasis: float,
    cycle: int,
    offset: int,
    include_review: bool,
) -> list[str]:
    term = kc.label
    sentences = [kc.description]

    n_depth = round(tier * 3)
    for i in range(n_depth):
        plain = _sentence_flavor(tier, i, offset)
        bank = PLAIN_ELABORATIONS if plain else DENSE_ELABORATIONS
        sentences.append(_pick(bank, offset + cycle + i).format(term=term))

    n_examples = round(tier * 2)
    for i in range(n_examples):
        plain = _sentence_flavor(tier, i + 7, offset)
        bank = PLAIN_EXAMPLES if plain else DENSE_EXAMPLES
        sentences.append(_pick(bank, offset + cycle + i + 1).format(term=term))

    if emphasis > 0.0 and kc.misconceptions:
        n_refute = math.ceil(emphasis * len(kc.misconceptions))
        for i, mis in enumerate(kc.misconceptions[:n_refute]):
            lead = _pick(REFUTATION_LEADS, offset + i).format(mis=mis.description)
            fact = kc.description[0].lower() + kc.description[1:]
            correction = _pick(REFUTATION_CORRECTIONS, offset + cycle + i).format(fact=fact)
            sentences.append(lead)
            sentences.append(correction)

    if include_review:
        sentences.append(_pick(REVIEW_SENTENCES, offset + cycle).format(term=term))

    return sentences


def _target_grade(tier: float) -> float:
    # Leaner variants are written denser; deeper support reads easier.
    return 12.5 - 3.5 * tier


def synthesize_passage(
    ontology: Ontology,
    lo_id: str,
    cycle: int,
    tier: float,
    spec: SynthesisSpec,
    seed: int,
) -> ReadingPassage:
    lo = ontology.lo_index()[lo_id]
    kc_index = ontology.kc_index()
    offset = _offset(seed, lo_id, cycle, f"{tier:.2f}")
    emphasis = spec.refutation_emphasis * tier

    sentences: list[str] = []
    for kc_id in lo.kc_ids:
        kc = kc_index[kc_id]
        sentences.extend(
            _kc_block(
                kc,
                tier=tier,
                emphasis=emphasis,
                cycle=cycle,
                offset=offset + _offset(seed, kc_id),
                include_review=tier >= 0.75,
            )
        )

    text = " ".join(s if s.endswith((".", "!", "?")) else s + "." for s in sentences)
    readability = dale_chall_score(text, default_word_list())
    tier_tag = int(round(tier * 100))
    return ReadingPassage(
        passage_id=f"p_{lo_id}_c{cycle}_t{tier_tag:03d}",
        lo_id=lo_id,
        text=text,
        source_chunk_ids=(f"synth:{lo_id}:{cycle}:{tier_tag}",),
        config=ReadingConfig(
            depth=tier,
            example_density=tier,
            refutation_emphasis=emphasis,
            review_kcs=frozenset(),
            target_readability=_target_grade(tier),
        ),
        readability=readability,
        cycle=cycle,
    )


def synthesize_item(
    ontology: Ontology,
    lo_id: str,
    cycle: int,
    item_index: int,
    spec: SynthesisSpec,
    seed: int,
) -> AssessmentItem:
    lo = ontology.lo_index()[lo_id]
    kc_index = ontology.kc_index()
    kc = kc_index[lo.kc_ids[item_index % len(lo.kc_ids)]]
    offset = _offset(seed, lo_id, "item", item_index)

    stem = _pick(STEM_TEMPLATES, offset + cycle - 1).format(label=kc.label)
    desc = kc.description
    correct_text = _pick(CORRECT_OPTION_TEMPLATES, offset + cycle).format(
        desc=desc, desc_lower=desc[0].lower() + desc[1:]
    )
    item_id = f"q_{lo_id}_c{cycle}_i{item_index + 1}"

    options: list[Option] = [
        Option(
            option_id=f"{item_id}_a",
            text=correct_text,
            rationale=f"States the accepted account of {kc.label}.",
            correct=True,
        )
    ]
    letter = ord("b")
    for mis in kc.misconceptions[: spec.options_per_item - 2]:
        claim = mis.description[0].upper() + mis.description[1:]
        options.append(
            Option(
                option_id=f"{item_id}_{chr(letter)}",
                text=f"{claim} holds for {kc.label}.",
                rationale=f"Repeats a persistent error about {kc.label}.",
                correct=False,
                misconception_id=mis.id,
            )
        )
        letter += 1
    fill_idx = 0
    while len(options) < spec.options_per_item:
        options.append(
            Option(
                option_id=f"{item_id}_{chr(letter)}",
                text=_pick(FILLER_DISTRACTORS, offset + fill_idx).format(Label=kc.label.capitalize()),
                rationale=_pick(FILLER_RATIONALES, offset + fill_idx),
                correct=False,
            )
        )
        letter += 1
        fill_idx += 1

    bands = ("easy", "medium", "hard")
    return AssessmentItem(
        item_id=item_id,
        lo_id=lo_id,
        kc_ids=(kc.id,),
        stem=stem,
        options=tuple(options),
        difficulty_band=bands[item_index % len(bands)],
        delivery_context="summative",
        cycle=cycle,
    )


def synthesize_bundle(ontology: Ontology, spec: SynthesisSpec, seed: int) -> ContentBundle:
    """Generate the full fixed-content artifact for a run.

    One passage per (LO, cycle, tier) and ``items_per_cycle`` items per
    (LO, cycle). Deterministic in (ontology, spec, seed).
    """
    lo_index = ontology.lo_index()
    missing = [lo for lo in spec.lo_ids if lo not in lo_index]
    if missing:
        raise ValueError(f"synthesis spec references unknown LOs: {missing}")

    passages = []
    items = []
    for lo_id in spec.lo_ids:
        for cycle in range(1, spec.cycles + 1):
            for tier in spec.tiers:
                passages.append(synthesize_passage(ontology, lo_id, cycle, tier, spec, seed))
            for j in range(spec.items_per_cycle):
                items.append(synthesize_item(ontology, lo_id, cycle, j, spec, seed))

    return ContentBundle(
        subject_id=ontology.subject_id,
        passages=tuple(passages),
        items=tuple(items),
        generator_seed=seed,
        ontology_version=ontology.version,
    )
