"""Reading passages, teaching events, assessment items, and content bundles.

Passages are segmented into proposition-like teaching events: short
sentence groups carrying KC links, a length-based clarity score, a
cue-based refutation strength, and a refresh flag. Bundles are the fixed
content artifacts a simulation run consumes (either ingested from files
or produced by the deterministic synthesizer).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

import yaml

from .ontology import Ontology
from .policy import ReadingConfig
from .readability import ReadabilityScore
from .textutil import content_words

DIFFICULTY_BANDS = ("easy", "medium", "hard")
DELIVERY_CONTEXTS = ("summative", "formative")

# Clarity anchors: events at or under L_MIN words are maximally clear,
# clarity falls linearly to the floor at L_MAX words.
CLARITY_L_MIN = 8
CLARITY_L_MAX = 60
CLARITY_FLOOR = 0.05

# The refutation cue inventory. Matching is case-insensitive on word
# boundaries; one cue scores 0.7, two or more saturate at 1.0.
REFUTATION_CUES = ("misconception", "incorrectly", "rather than", "instead of", "do not")
_CUE_RES = [re.compile(r"\b" + re.escape(c) + r"\b") for c in REFUTATION_CUES]

# Reinforcement markers: review-coverage sentences are flagged refresh (and
# get the smaller learning gain) when their KCs are under review. Same
# lightweight-lexical-heuristic style as the refutation cues.
REFRESH_MARKERS = ("review", "recall", "revisit", "as we saw", "once more")
_REFRESH_RES = [re.compile(r"\b" + re.escape(m) + r"\b") for m in REFRESH_MARKERS]

_WORD_RE = re.compile(r"[A-Za-z0-9']+")


class ContentError(ValueError):
    pass


class UnlinkedPassage(ContentError):
    pass


@dataclass(frozen=True)
class ReadingPassage:
    passage_id: str
    lo_id: str
    text: str
    source_chunk_ids: tuple[str, ...]
    config: ReadingConfig
    readability: ReadabilityScore
    cycle: int = 1


@dataclass(frozen=True)
class TeachingEvent:
    proposition_id: str
    text: str
    kc_ids: frozenset[str]
    clarity: float
    refutation_strength: float
    is_refresh: bool


@dataclass(frozen=True)
class Option:
    option_id: str
    text: str
    rationale: str
    correct: bool
    misconception_id: str | None = None


@dataclass(frozen=True)
class AssessmentItem:
    item_id: str
    lo_id: str
    kc_ids: tuple[str, ...]
    stem: str
    options: tuple[Option, ...]
    difficulty_band: str = "medium"
    delivery_context: str = "summative"
    cycle: int = 1

    def correct_option(self) -> Option:
        return next(o for o in self.options if o.correct)

    def distractors(self) -> tuple[Option, ...]:
        return tuple(o for o in self.options if not o.correct)


@dataclass(frozen=True)
class ContentBundle:
    subject_id: str
    passages: tuple[ReadingPassage, ...]
    items: tuple[AssessmentItem, ...]
    generator_seed: int | None = None
    ontology_version: int | None = None

    def passages_for(self, lo_id: str, cycle: int) -> tuple[ReadingPassage, ...]:
        return tuple(p for p in self.passages if p.lo_id == lo_id and p.cycle == cycle)

    def items_for(self, lo_id: str, cycle: int) -> tuple[AssessmentItem, ...]:
        return tuple(i for i in self.items if i.lo_id == lo_id and i.cycle == cycle)

    def select_passage(self, lo_id: str, cycle: int, config: ReadingConfig) -> ReadingPassage:
        """The variant whose generation depth is nearest the requested depth."""
        candidates = self.passages_for(lo_id, cycle)
        if not candidates:
            raise ContentError(f"no passage for lo={lo_id} cycle={cycle}")
        return min(candidates, key=lambda p: (abs(p.config.depth - config.depth), p.passage_id))


# ---------------------------------------------------------------------------
# Teaching-event heuristics


def clarity_from_length(event_text: str) -> float:
    """Length-based clarity: shorter events are treated as easier to encode."""
    if not event_text.strip():
        raise ContentError("clarity of empty text is undefined")
    wc = len(_WORD_RE.findall(event_text))
    value = 1.0 - (wc - CLARITY_L_MIN) / (CLARITY_L_MAX - CLARITY_L_MIN)
    return min(max(value, CLARITY_FLOOR), 1.0)


def count_refutation_cues(text: str) -> int:
    lowered = text.lower()
    return sum(len(rx.findall(lowered)) for rx in _CUE_RES)


def refutation_from_cues(event_text: str) -> float:
    """Cue-count refutation strength: 0 cues -> 0.0, 1 -> 0.7, >=2 -> 1.0."""
    n = count_refutation_cues(event_text)
    if n == 0:
        return 0.0
    if n == 1:
        return 0.7
    return 1.0


def has_refresh_marker(text: str) -> bool:
    lowered = text.lower()
    return any(rx.search(lowered) for rx in _REFRESH_RES)


def split_sentences_keep_punct(text: str) -> list[str]:
    """Sentences with their terminal punctuation retained, so the segmentation
    partition can be checked by re-joining."""
    parts = re.split(r"([.!?]+)(?=\s|$)", text)
    sentences = []
    for i in range(0, len(parts) - 1, 2):
        sentence = (parts[i] + parts[i + 1]).strip()
        if _WORD_RE.search(sentence):
            sentences.append(sentence)
    tail = parts[-1].strip()
    if tail and _WORD_RE.search(tail):
        sentences.append(tail)
    return sentences


def _kc_keywords(ontology: Ontology, kc_id: str) -> frozenset[str]:
    kc = ontology.kc_index()[kc_id]
    return content_words(kc.label)


def segment_passage(passage: ReadingPassage, ontology: Ontology) -> list[TeachingEvent]:
    """Segment a passage into ordered teaching events.

    Grouping is greedy over sentences: a sentence containing a refutation
    cue is grouped with its following sentence so the cue and its
    correction stay in one event; other sentences stand alone. Events
    cover the passage text in order. KC links are the passage's LO-level
    KCs narrowed to those whose label keywords occur in the event text
    (falling back to the full LO set when nothing matches). Refresh marks
    lower-gain reinforcement coverage: an event is refresh when every
    linked KC is in the config's review set and the text carries a
    reinforcement marker (see REFRESH_MARKERS) - first-pass teaching
    content is never refresh.
    """
    lo_index = ontology.lo_index()
    if passage.lo_id not in lo_index:
        raise UnlinkedPassage(f"passage {passage.passage_id}: unlinked passage (lo {passage.lo_id} unknown)")
    passage_kcs = [k for k in lo_index[passage.lo_id].kc_ids if k in ontology.kc_index()]
    if not passage_kcs:
        raise UnlinkedPassage(f"passage {passage.passage_id}: unlinked passage (no resolvable KCs)")
    if not passage.text.strip():
        raise ContentError(f"passage {passage.passage_id}: empty text")

    keywords = {k: _kc_keywords(ontology, k) for k in passage_kcs}
    sentences = split_sentences_keep_punct(passage.text)

    groups: list[str] = []
    i = 0
    while i < len(sentences):
        if count_refutation_cues(sentences[i]) >= 1 and i + 1 < len(sentences):
            groups.append(sentences[i] + " " + sentences[i + 1])
            i += 2
        else:
            groups.append(sentences[i])
            i += 1

    events = []
    for idx, text in enumerate(groups):
        words = content_words(text)
        matched = frozenset(k for k in passage_kcs if keywords[k] & words)
        kc_ids = matched if matched else frozenset(passage_kcs)
        is_refresh = kc_ids <= passage.config.review_kcs and has_refresh_marker(text)
        events.append(
            TeachingEvent(
                proposition_id=f"{passage.passage_id}_ev{idx + 1:03d}",
                text=text,
                kc_ids=kc_ids,
                clarity=clarity_from_length(text),
                refutation_strength=refutation_from_cues(text),
                is_refresh=is_refresh,
            )
        )
    return events


# ---------------------------------------------------------------------------
# Bundle (de)serialization and validation


def _config_to_dict(c: ReadingConfig) -> dict:
    return {
        "depth": c.depth,
        "example_density": c.example_density,
        "refutation_emphasis": c.refutation_emphasis,
        "review_kcs": sorted(c.review_kcs),
        "target_readability": c.target_readability,
    }


def _config_from_dict(d: dict) -> ReadingConfig:
    return ReadingConfig(
        depth=float(d.get("depth", 0.5)),
        example_density=float(d.get("example_density", 0.5)),
        refutation_emphasis=float(d.get("refutation_emphasis", 0.5)),
        review_kcs=frozenset(d.get("review_kcs", [])),
        target_readability=float(d.get("target_readability", 9.0)),
    )


def serialize_bundle(bundle: ContentBundle) -> str:
    doc = {
        "subject_id": bundle.subject_id,
        "ontology_version": bundle.ontology_version,
        "generator_seed": bundle.generator_seed,
        "passages": [
            {
                "passage_id": p.passage_id,
                "lo_id": p.lo_id,
                "cycle": p.cycle,
                "text": p.text,
                "source_chunk_ids": list(p.source_chunk_ids),
                "config": _config_to_dict(p.config),
                "readability": {
                    "value": p.readability.value,
                    "difficult_word_fraction": p.readability.difficult_word_fraction,
                    "avg_sentence_length": p.readability.avg_sentence_length,
                },
            }
            for p in bundle.passages
        ],
        "items": [
            {
                "item_id": it.item_id,
                "lo_id": it.lo_id,
                "cycle": it.cycle,
                "kc_ids": list(it.kc_ids),
                "stem": it.stem,
                "difficulty_band": it.difficulty_band,
                "delivery_context": it.delivery_context,
                "options": [
                    {
                        "option_id": o.option_id,
                        "text": o.text,
                        "rationale": o.rationale,
                        "correct": o.correct,
                        "misconception_id": o.misconception_id,
                    }
                    for o in it.options
                ],
            }
            for it in bundle.items
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=100)


def parse_bundle(document: str) -> ContentBundle:
    raw = yaml.safe_load(document)
    if not isinstance(raw, dict):
        raise ContentError("bundle document root must be a mapping")
    passages = []
    for p in raw.get("passages", []):
        r = p.get("readability", {})
        passages.append(
            ReadingPassage(
                passage_id=str(p["passage_id"]),
                lo_id=str(p["lo_id"]),
                text=str(p["text"]),
                source_chunk_ids=tuple(p.get("source_chunk_ids", [])),
                config=_config_from_dict(p.get("config", {})),
                readability=ReadabilityScore(
                    value=float(r.get("value", 0.0)),
                    difficult_word_fraction=float(r.get("difficult_word_fraction", 0.0)),
                    avg_sentence_length=float(r.get("avg_sentence_length", 1.0)),
                ),
                cycle=int(p.get("cycle", 1)),
            )
        )
    items = []
    for it in raw.get("items", []):
        options = tuple(
            Option(
                option_id=str(o["option_id"]),
                text=str(o["text"]),
                rationale=str(o.get("rationale", "")),
                correct=bool(o["correct"]),
                misconception_id=o.get("misconception_id"),
            )
            for o in it.get("options", [])
        )
        items.append(
            AssessmentItem(
                item_id=str(it["item_id"]),
                lo_id=str(it["lo_id"]),
                kc_ids=tuple(it.get("kc_ids", [])),
                stem=str(it["stem"]),
                options=options,
                difficulty_band=str(it.get("difficulty_band", "medium")),
                delivery_context=str(it.get("delivery_context", "summative")),
                cycle=int(it.get("cycle", 1)),
            )
        )
    return ContentBundle(
        subject_id=str(raw.get("subject_id", "")),
        passages=tuple(passages),
        items=tuple(items),
        generator_seed=raw.get("generator_seed"),
        ontology_version=raw.get("ontology_version"),
    )


def validate_bundle(bundle: ContentBundle, ontology: Ontology) -> list[str]:
    """Resolve every id and check item shape; returns human-readable problems."""
    problems: list[str] = []
    lo_ids = set(ontology.lo_index())
    kc_index = ontology.kc_index()
    mis_ids = {m.id for kc in ontology.knowledge_components for m in kc.misconceptions}

    seen_passages: set[str] = set()
    for p in bundle.passages:
        if p.passage_id in seen_passages:
            problems.append(f"duplicate passage_id: {p.passage_id}")
        seen_passages.add(p.passage_id)
        if p.lo_id not in lo_ids:
            problems.append(f"passage {p.passage_id}: unknown lo_id {p.lo_id}")
        if not p.text.strip():
            problems.append(f"passage {p.passage_id}: empty text")

    seen_items: set[str] = set()
    for it in bundle.items:
        if it.item_id in seen_items:
            problems.append(f"duplicate item_id: {it.item_id}")
        seen_items.add(it.item_id)
        if it.lo_id not in lo_ids:
            problems.append(f"item {it.item_id}: unknown lo_id {it.lo_id}")
        if not it.kc_ids:
            problems.append(f"item {it.item_id}: kc_ids empty")
        for kc_id in it.kc_ids:
            if kc_id not in kc_index:
                problems.append(f"item {it.item_id}: unknown kc_id {kc_id}")
        n_correct = sum(1 for o in it.options if o.correct)
        if n_correct != 1:
            problems.append(f"item {it.item_id}: expected exactly one correct option, found {n_correct}")
        if len(it.options) < 2:
            problems.append(f"item {it.item_id}: needs at least two options")
        if it.difficulty_band not in DIFFICULTY_BANDS:
            problems.append(f"item {it.item_id}: unknown difficulty_band {it.difficulty_band}")
        if it.delivery_context not in DELIVERY_CONTEXTS:
            problems.append(f"item {it.item_id}: unknown delivery_context {it.delivery_context}")
        for o in it.options:
            if o.misconception_id is not None and o.misconception_id not in mis_ids:
                problems.append(f"item {it.item_id}: option {o.option_id} cites unknown misconception {o.misconception_id}")
    return problems


def ingest_bundle(documents, ontology: Ontology) -> ContentBundle:
    """Parse one or more bundle documents and validate against the ontology.

    ``documents`` is a string or an iterable of strings; multiple documents
    for the same subject are concatenated.
    """
    if isinstance(documents, str):
        documents = [documents]
    parsed = [parse_bundle(doc) for doc in documents]
    if not parsed:
        raise ContentError("no bundle documents given")
    subject_ids = {b.subject_id for b in parsed}
    if len(subject_ids) > 1:
        raise ContentError(f"bundle documents disagree on subject_id: {sorted(subject_ids)}")
    merged = ContentBundle(
        subject_id=parsed[0].subject_id,
        passages=tuple(p for b in parsed for p in b.passages),
        items=tuple(i for b in parsed for i in b.items),
        generator_seed=parsed[0].generator_seed,
        ontology_version=parsed[0].ontology_version,
    )
    problems = validate_bundle(merged, ontology)
    if problems:
        raise ContentError("invalid bundle: " + "; ".join(problems[:8]))
    return merged


def with_config(passage: ReadingPassage, config: ReadingConfig) -> ReadingPassage:
    """Copy of the passage carrying a learner-specific runtime config
    (review flags differ per learner; the text does not)."""
    return replace(passage, config=config)
