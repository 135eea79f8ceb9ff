"""Two-stage reading update: event encoding, then knowledge integration.

Stage one gates each teaching event through a logistic encoding
probability combining event clarity, learner-text fit, reader profile,
novelty, and attention. Stage two integrates encoded events: correct
knowledge rises with a saturating gain, misconception weights shrink in
proportion to the event's refutation strength, and an episodic trace is
stored for later retrieval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .content import ReadingPassage, TeachingEvent
from .learner import EpisodicTrace, HiddenLearnerState
from .readability import match_score

# Fixed encoding coefficients (clarity, match, novelty, attention). These are
# part of the model definition, not tuning knobs.
CLARITY_COEFF = 1.1
MATCH_COEFF = 0.55
NOVELTY_COEFF = 0.3
ATTENTION_COEFF = 0.35


@dataclass(frozen=True)
class ComprehensionParams:
    """Encoding intercept/reader weights plus integration-rate constants.

    ``beta`` weights (vocabulary, inferencing, strategy_use,
    background_knowledge) in that order. The four event-side coefficients
    are fixed module constants.
    """

    alpha: float = -1.2
    beta: tuple[float, float, float, float] = (0.5, 0.45, 0.35, 0.5)
    gain_base: float = 0.35
    refresh_multiplier: float = 0.4
    distortion_rate: float = 0.05

    clarity_coeff: float = field(default=CLARITY_COEFF, init=False)
    match_coeff: float = field(default=MATCH_COEFF, init=False)
    novelty_coeff: float = field(default=NOVELTY_COEFF, init=False)
    attention_coeff: float = field(default=ATTENTION_COEFF, init=False)

    def __post_init__(self):
        if not 0.0 < self.refresh_multiplier < 1.0:
            raise ValueError("refresh_multiplier must lie in (0,1)")
        if self.distortion_rate < 0.0:
            raise ValueError("distortion_rate must be >= 0")

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": list(self.beta),
            "clarity_coeff": self.clarity_coeff,
            "match_coeff": self.match_coeff,
            "novelty_coeff": self.novelty_coeff,
            "attention_coeff": self.attention_coeff,
            "gain_base": self.gain_base,
            "refresh_multiplier": self.refresh_multiplier,
            "distortion_rate": self.distortion_rate,
        }


@dataclass(frozen=True)
class ReadingOutcome:
    events_encoded: int
    traces_created: tuple[str, ...]
    mastery_deltas: dict[str, float]
    misconception_deltas: dict[tuple[str, str], float]


def sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def encoding_probability(
    learner: HiddenLearnerState,
    event: TeachingEvent,
    match: float,
    params: ComprehensionParams,
) -> float:
    """Probability that the learner encodes this event into episodic memory.

    sigma(alpha + 1.1 clarity + 0.55 match + beta . r
          + 0.3 (1 - mean prior mastery over event KCs) + 0.35 attention)
    """
    if not event.kc_ids:
        raise ValueError(f"event {event.proposition_id} has no KC links")
    r = learner.reader
    beta_term = (
        params.beta[0] * r.vocabulary
        + params.beta[1] * r.inferencing
        + params.beta[2] * r.strategy_use
        + params.beta[3] * r.background_knowledge
    )
    mean_mastery = learner.mean_mastery(event.kc_ids)
    x = (
        params.alpha
        + params.clarity_coeff * event.clarity
        + params.match_coeff * match
        + beta_term
        + params.novelty_coeff * (1.0 - mean_mastery)
        + params.attention_coeff * learner.response.attention
    )
    return sigmoid(x)


def integration_gain(event: TeachingEvent, match: float, learner: HiddenLearnerState, params: ComprehensionParams) -> float:
    """Correct-knowledge gain rate for one encoded event.

    Stronger for clearer events, better learner-text matches, and learners
    with higher revision willingness and detail preference; refresh events
    receive the smaller refresh multiplier.
    """
    s = learner.response
    gain = (
        params.gain_base
        * event.clarity
        * (0.5 + 0.5 * max(match, 0.0))
        * (0.5 + 0.25 * s.revision_willingness + 0.25 * s.detail_preference)
    )
    if event.is_refresh:
        gain *= params.refresh_multiplier
    return gain


def read_passage(
    learner: HiddenLearnerState,
    passage: ReadingPassage,
    events: list[TeachingEvent],
    params: ComprehensionParams,
    cycle: int,
    rng=None,
) -> ReadingOutcome:
    """Read one passage: encode events, integrate the encoded ones.

    Per encoded event: an episodic trace is created (distortion drawn
    |Normal(0, distortion_rate)|), correct knowledge moves by
    gain * (1 - m*) for each linked KC, and each misconception weight on
    those KCs shrinks by refutation_strength * gain * (1 - skepticism/2).
    Unencoded events are strict no-ops. The tutor-visible estimate is
    never touched here.

    Draws come from ``rng`` when given (the runner passes a per-learner,
    per-passage derived stream so matched conditions see identical
    uniforms), else from the learner's own persistent stream.
    """
    if cycle < 0:
        raise ValueError("cycle must be >= 0")
    match = match_score(learner.reader.readability_ability, passage.readability.value)
    if rng is None:
        rng = learner.rng

    encoded_count = 0
    trace_ids: list[str] = []
    mastery_deltas: dict[str, float] = {}
    mis_deltas: dict[tuple[str, str], float] = {}

    for event in events:
        p_enc = encoding_probability(learner, event, match, params)
        if rng.uniform() >= p_enc:
            continue
        encoded_count += 1

        distortion = abs(rng.normal(0.0, params.distortion_rate)) if params.distortion_rate > 0 else 0.0
        trace = EpisodicTrace(
            trace_id=f"{learner.learner_id}_c{cycle}_{event.proposition_id}",
            event_text=event.text,
            kc_ids=event.kc_ids,
            clarity=event.clarity,
            refutation_strength=event.refutation_strength,
            readability=passage.readability.value,
            created_cycle=cycle,
            distortion=float(distortion),
        )
        learner.traces.append(trace)
        trace_ids.append(trace.trace_id)

        gain = integration_gain(event, match, learner, params)
        for kc_id in event.kc_ids:
            before = learner.correct_knowledge.get(kc_id, 0.0)
            after = before + gain * (1.0 - before)
            learner.correct_knowledge[kc_id] = after
            mastery_deltas[kc_id] = mastery_deltas.get(kc_id, 0.0) + (after - before)

        if event.refutation_strength > 0.0:
            reduction = event.refutation_strength * gain * (1.0 - learner.response.skepticism / 2.0)
            for key, weight in list(learner.misconceptions.items()):
                if key[0] in event.kc_ids:
                    new_weight = weight * (1.0 - reduction)
                    learner.misconceptions[key] = new_weight
                    mis_deltas[key] = mis_deltas.get(key, 0.0) + (new_weight - weight)

    return ReadingOutcome(
        events_encoded=encoded_count,
        traces_created=tuple(trace_ids),
        mastery_deltas=mastery_deltas,
        misconception_deltas=mis_deltas,
    )
