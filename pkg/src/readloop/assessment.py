"""Answering items from learner memory alone.

The learner never sees the source passage at assessment time. Relevant
episodic traces are retrieved by KC overlap (activation mixes recency,
rehearsal, lexical overlap with the stem, and distortion), a scalar
utility is computed from mastery / trace support / misconception weight /
response style / item difficulty, and correctness is drawn from the
clipped logistic of that utility. Wrong answers pick the distractor that
best matches remembered text and held misconceptions. Every response
carries an epistemic summary of exactly what supported it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .comprehension import sigmoid
from .content import AssessmentItem
from .learner import HiddenLearnerState
from .textutil import overlap

# Utility coefficients (mastery, trace support, misconception, attention, guess).
MASTERY_COEFF = 2.2
TRACE_COEFF = 0.38
MISCONCEPTION_COEFF = 1.25
ATTENTION_COEFF = 0.35
GUESS_COEFF = 0.25

# Retrieval activation mix and decay.
RECENCY_WEIGHT = 0.35
REHEARSAL_WEIGHT = 0.25
OVERLAP_WEIGHT = 0.4
RECENCY_DECAY = 0.7
REHEARSAL_CAP = 3
ACTIVATION_FLOOR = 0.05

# Bonus pulling misconception-tagged distractors when the learner holds them.
MISCONCEPTION_BONUS = 0.5
GUESS_NOISE_SCALE = 0.2


@dataclass(frozen=True)
class DifficultyOffsets:
    easy: float = -0.4
    medium: float = 0.0
    hard: float = 0.6

    def __post_init__(self):
        if not self.easy <= self.medium <= self.hard:
            raise ValueError("difficulty offsets must be ordered easy <= medium <= hard")

    def for_band(self, band: str) -> float:
        return {"easy": self.easy, "medium": self.medium, "hard": self.hard}[band]


@dataclass(frozen=True)
class AssessmentParams:
    offsets: DifficultyOffsets = DifficultyOffsets()
    interior: tuple[float, float] = (0.02, 0.98)

    def __post_init__(self):
        lo, hi = self.interior
        if not (0.0 < lo < hi < 1.0):
            raise ValueError(f"interior interval must satisfy 0 < lo < hi < 1, got {self.interior}")


@dataclass(frozen=True)
class RetrievalResult:
    traces: tuple[tuple[str, float], ...]  # (trace_id, activation)
    mean_activation: float

    @property
    def trace_ids(self) -> tuple[str, ...]:
        return tuple(t for t, _a in self.traces)


@dataclass(frozen=True)
class EpistemicSummary:
    target_kc_ids: tuple[str, ...]
    correct_support: float
    misconception_support: float
    retrieved_trace_ids: tuple[str, ...]


@dataclass(frozen=True)
class ResponseRecord:
    learner_id: str
    item_id: str
    chosen_option_id: str
    correct: bool
    p_correct: float
    utility: float
    epistemic: EpistemicSummary


def trace_activation(trace, stem: str, current_cycle: int) -> float:
    """Activation of one candidate trace against an item stem.

    clip(0.35 recency + 0.25 min(rehearsals,3)/3 + 0.4 overlap - distortion, 0, 1)
    with recency = 0.7^(cycles since encoding).
    """
    recency = RECENCY_DECAY ** max(current_cycle - trace.created_cycle, 0)
    rehearsal = min(trace.rehearsal_count, REHEARSAL_CAP) / REHEARSAL_CAP
    lexical = overlap(trace.event_text, stem)
    raw = (
        RECENCY_WEIGHT * recency
        + REHEARSAL_WEIGHT * rehearsal
        + OVERLAP_WEIGHT * lexical
        - trace.distortion
    )
    return min(max(raw, 0.0), 1.0)


def retrieve_traces(learner: HiddenLearnerState, item: AssessmentItem, current_cycle: int) -> RetrievalResult:
    """Retrieve the traces sharing a KC with the item.

    Traces below the activation floor are dropped. Retrieval rehearses:
    every retained trace's rehearsal count is incremented. Empty memory
    yields an empty result with zero mean activation.
    """
    if not item.kc_ids:
        raise ValueError(f"item {item.item_id} has no KC links")
    kc_set = set(item.kc_ids)
    retained: list[tuple[str, float]] = []
    activations: list[float] = []
    for trace in learner.traces:
        if not (trace.kc_ids & kc_set):
            continue
        act = trace_activation(trace, item.stem, current_cycle)
        if act < ACTIVATION_FLOOR:
            continue
        trace.rehearsal_count += 1
        retained.append((trace.trace_id, act))
        activations.append(act)
    mean_act = float(np.mean(activations)) if activations else 0.0
    return RetrievalResult(traces=tuple(retained), mean_activation=mean_act)


def answer_utility(
    mean_mastery: float,
    trace_support: float,
    mean_misconception: float,
    attention: float,
    guess_bias: float,
    difficulty_offset: float,
) -> float:
    """-b + 2.2 m + 0.38 tau - 1.25 w + 0.35 attention - 0.25 guess, exactly."""
    return (
        -difficulty_offset
        + MASTERY_COEFF * mean_mastery
        + TRACE_COEFF * trace_support
        - MISCONCEPTION_COEFF * mean_misconception
        + ATTENTION_COEFF * attention
        - GUESS_COEFF * guess_bias
    )


def answer_probability(utility: float, interior: tuple[float, float] = (0.02, 0.98)) -> float:
    """Logistic of the utility, clipped to the interior interval."""
    lo, hi = interior
    if not (0.0 < lo < hi < 1.0):
        raise ValueError(f"invalid interior interval {interior}")
    return min(max(sigmoid(utility), lo), hi)


def _distractor_scores(
    learner: HiddenLearnerState,
    item: AssessmentItem,
    retrieved_text: str,
    rng: np.random.Generator,
) -> list[tuple[float, str]]:
    scores = []
    kc_set = set(item.kc_ids)
    for option in item.distractors():
        score = overlap(retrieved_text, option.text + " " + option.rationale)
        if option.misconception_id is not None:
            held = [
                w for (kc, mis), w in learner.misconceptions.items()
                if mis == option.misconception_id and kc in kc_set
            ]
            if held:
                score += MISCONCEPTION_BONUS * max(held)
        score += learner.response.guess_bias * rng.uniform(0.0, GUESS_NOISE_SCALE)
        scores.append((score, option.option_id))
    return scores


def select_response(
    learner: HiddenLearnerState,
    item: AssessmentItem,
    retrieval: RetrievalResult,
    params: AssessmentParams,
    rng: np.random.Generator,
) -> ResponseRecord:
    """Draw correctness, pick the option, and record the epistemic summary.

    Correctness is a Bernoulli draw on the clipped logistic utility. On an
    incorrect draw, distractors are scored by lexical overlap between
    retrieved trace text and the distractor text+rationale, a bonus for
    misconceptions the learner actually holds on the target KCs, and
    guess-bias noise; the argmax is chosen. Summative items leave hidden
    semantic state untouched (rehearsal counters were already advanced at
    retrieval time).
    """
    mean_m = learner.mean_mastery(item.kc_ids)
    mean_w = learner.mean_misconception(item.kc_ids)
    u = answer_utility(
        mean_mastery=mean_m,
        trace_support=retrieval.mean_activation,
        mean_misconception=mean_w,
        attention=learner.response.attention,
        guess_bias=learner.response.guess_bias,
        difficulty_offset=params.offsets.for_band(item.difficulty_band),
    )
    p = answer_probability(u, params.interior)
    correct = bool(rng.uniform() < p)

    if correct:
        chosen = item.correct_option().option_id
    else:
        if not item.distractors():
            raise ValueError(f"item {item.item_id} has no distractors")
        retrieved_ids = set(retrieval.trace_ids)
        retrieved_text = " ".join(t.event_text for t in learner.traces if t.trace_id in retrieved_ids)
        scores = _distractor_scores(learner, item, retrieved_text, rng)
        chosen = max(scores, key=lambda s: s[0])[1]

    return ResponseRecord(
        learner_id=learner.learner_id,
        item_id=item.item_id,
        chosen_option_id=chosen,
        correct=correct,
        p_correct=p,
        utility=u,
        epistemic=EpistemicSummary(
            target_kc_ids=tuple(item.kc_ids),
            correct_support=mean_m,
            misconception_support=mean_w,
            retrieved_trace_ids=retrieval.trace_ids,
        ),
    )
