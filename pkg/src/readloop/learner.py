"""Hidden learner state and matched-cohort sampling.

Each simulated learner keeps a hidden true-knowledge state: per-KC
correct-knowledge strengths, per-misconception weights, a reader profile,
a response profile, and episodic traces of encoded reading events. The
tutor never reads any of this; it only sees answers.

Sampling is reproducible per learner: every learner draws from an RNG
stream derived from (cohort seed, learner index), so reordering or
subsetting a cohort cannot change any individual learner.
"""

from __future__ import annotations

import copy
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .ontology import Ontology


@dataclass(frozen=True)
class ReaderProfile:
    background_knowledge: float
    vocabulary: float
    inferencing: float
    strategy_use: float
    readability_ability: float  # grade-level units, [1, 16]

    def __post_init__(self):
        for name in ("background_knowledge", "vocabulary", "inferencing", "strategy_use"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {v}")
        if not 1.0 <= self.readability_ability <= 16.0:
            raise ValueError(f"readability_ability must lie in [1,16], got {self.readability_ability}")


@dataclass(frozen=True)
class ResponseProfile:
    skepticism: float
    revision_willingness: float
    detail_preference: float
    attention: float
    guess_bias: float
    noise_scale: float = 0.0

    def __post_init__(self):
        for name in ("skepticism", "revision_willingness", "detail_preference", "attention", "guess_bias"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {v}")
        if self.noise_scale < 0.0:
            raise ValueError("noise_scale must be >= 0")


@dataclass
class EpisodicTrace:
    trace_id: str
    event_text: str
    kc_ids: frozenset[str]
    clarity: float
    refutation_strength: float
    readability: float
    created_cycle: int
    rehearsal_count: int = 0
    distortion: float = 0.0


@dataclass
class HiddenLearnerState:
    learner_id: str
    correct_knowledge: dict[str, float]          # KC id -> strength in [0,1]
    misconceptions: dict[tuple[str, str], float]  # (KC id, misconception id) -> weight
    reader: ReaderProfile
    response: ResponseProfile
    traces: list[EpisodicTrace] = field(default_factory=list)
    rng_seed: int = 0
    condition_label: str = ""
    _rng: np.random.Generator | None = field(default=None, repr=False, compare=False)

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = np.random.default_rng(self.rng_seed)
        return self._rng

    def mean_mastery(self, kc_ids) -> float:
        values = [self.correct_knowledge.get(k, 0.0) for k in kc_ids]
        return float(np.mean(values)) if values else 0.0

    def mean_misconception(self, kc_ids) -> float:
        kc_set = set(kc_ids)
        weights = [w for (kc, _m), w in self.misconceptions.items() if kc in kc_set]
        return float(np.mean(weights)) if weights else 0.0


@dataclass(frozen=True)
class FieldSpec:
    """Truncated-normal parameters for one profile field."""

    mean: float
    sd: float
    low: float = 0.0
    high: float = 1.0


@dataclass(frozen=True)
class CohortSpec:
    size: int = 50
    seed: int = 0
    background_knowledge: FieldSpec = FieldSpec(0.55, 0.15)
    vocabulary: FieldSpec = FieldSpec(0.55, 0.15)
    inferencing: FieldSpec = FieldSpec(0.55, 0.15)
    strategy_use: FieldSpec = FieldSpec(0.55, 0.15)
    readability_ability: FieldSpec = FieldSpec(9.0, 1.5, 1.0, 16.0)
    skepticism: FieldSpec = FieldSpec(0.55, 0.15)
    revision_willingness: FieldSpec = FieldSpec(0.55, 0.15)
    detail_preference: FieldSpec = FieldSpec(0.55, 0.15)
    attention: FieldSpec = FieldSpec(0.55, 0.15)
    guess_bias: FieldSpec = FieldSpec(0.5, 0.15)
    misconception_prevalence: float = 0.5
    initial_mastery_low: float = 0.05
    initial_mastery_high: float = 0.3
    misconception_weight_low: float = 0.4
    misconception_weight_high: float = 0.8

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError("cohort size must be positive")
        if not 0.0 <= self.misconception_prevalence <= 1.0:
            raise ValueError("misconception_prevalence must lie in [0,1]")


def derive_learner_seed(cohort_seed: int, learner_index: int) -> int:
    """Stable per-learner seed; independent of Python hash randomization."""
    digest = hashlib.sha256(f"{cohort_seed}:{learner_index}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _draw_truncated(rng: np.random.Generator, spec: FieldSpec) -> float:
    if spec.sd <= 0.0:
        return float(min(max(spec.mean, spec.low), spec.high))
    # Rejection sampling; the bounds are wide relative to sd in practice.
    for _ in range(1000):
        v = rng.normal(spec.mean, spec.sd)
        if spec.low <= v <= spec.high:
            return float(v)
    return float(min(max(spec.mean, spec.low), spec.high))


def sample_learner(spec: CohortSpec, ontology: Ontology, index: int) -> HiddenLearnerState:
    seed = derive_learner_seed(spec.seed, index)
    rng = np.random.default_rng(seed)

    reader = ReaderProfile(
        background_knowledge=_draw_truncated(rng, spec.background_knowledge),
        vocabulary=_draw_truncated(rng, spec.vocabulary),
        inferencing=_draw_truncated(rng, spec.inferencing),
        strategy_use=_draw_truncated(rng, spec.strategy_use),
        readability_ability=_draw_truncated(rng, spec.readability_ability),
    )
    response = ResponseProfile(
        skepticism=_draw_truncated(rng, spec.skepticism),
        revision_willingness=_draw_truncated(rng, spec.revision_willingness),
        detail_preference=_draw_truncated(rng, spec.detail_preference),
        attention=_draw_truncated(rng, spec.attention),
        guess_bias=_draw_truncated(rng, spec.guess_bias),
    )

    correct_knowledge: dict[str, float] = {}
    misconceptions: dict[tuple[str, str], float] = {}
    for kc in ontology.knowledge_components:
        correct_knowledge[kc.id] = float(
            rng.uniform(spec.initial_mastery_low, spec.initial_mastery_high)
        )
        if kc.misconceptions and rng.uniform() < spec.misconception_prevalence:
            picked = kc.misconceptions[int(rng.integers(len(kc.misconceptions)))]
            misconceptions[(kc.id, picked.id)] = float(
                rng.uniform(spec.misconception_weight_low, spec.misconception_weight_high)
            )

    return HiddenLearnerState(
        learner_id=f"learner_{index:03d}",
        correct_knowledge=correct_knowledge,
        misconceptions=misconceptions,
        reader=reader,
        response=response,
        traces=[],
        rng_seed=seed,
    )


def sample_cohort(spec: CohortSpec, ontology: Ontology) -> list[HiddenLearnerState]:
    """Deterministic cohort: learner i depends only on (spec, ontology, i)."""
    return [sample_learner(spec, ontology, i) for i in range(spec.size)]


def clone_for_condition(cohort: list[HiddenLearnerState], condition_label: str) -> list[HiddenLearnerState]:
    """Deep copy with identical initial states and seeds; only the condition
    label differs. The clone's RNG stream restarts from the same seed, so
    paired conditions see identical draws until their inputs diverge."""
    clones = []
    for learner in cohort:
        clone = copy.deepcopy(learner)
        clone.condition_label = condition_label
        clone._rng = None
        clones.append(clone)
    return clones
