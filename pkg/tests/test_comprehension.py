from __future__ import annotations

import copy
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from readloop.comprehension import (
    ComprehensionParams,
    encoding_probability,
    read_passage,
    sigmoid,
)
from readloop.content import ReadingPassage, TeachingEvent
from readloop.learner import (
    EpisodicTrace,
    HiddenLearnerState,
    ReaderProfile,
    ResponseProfile,
)
from readloop.policy import ReadingConfig
from readloop.readability import ReadabilityScore


def make_learner(
    mastery: dict[str, float] | None = None,
    misconceptions: dict | None = None,
    profile_value: float = 0.55,
    attention: float = 0.6,
    skepticism: float = 0.5,
    seed: int = 1,
) -> HiddenLearnerState:
    return HiddenLearnerState(
        learner_id="l0",
        correct_knowledge=dict(mastery or {"kc_a": 0.2}),
        misconceptions=dict(misconceptions or {}),
        reader=ReaderProfile(profile_value, profile_value, profile_value, profile_value, 9.0),
        response=ResponseProfile(
            skepticism=skepticism,
            revision_willingness=0.6,
            detail_preference=0.5,
            attention=attention,
            guess_bias=0.4,
        ),
        rng_seed=seed,
    )


def make_event(
    text: str = "A short teaching event about the idea.",
    kc_ids=("kc_a",),
    clarity: float = 0.9,
    refutation: float = 0.0,
    is_refresh: bool = False,
) -> TeachingEvent:
    return TeachingEvent(
        proposition_id="ev1",
        text=text,
        kc_ids=frozenset(kc_ids),
        clarity=clarity,
        refutation_strength=refutation,
        is_refresh=is_refresh,
    )


def make_passage(d_value: float = 9.0) -> ReadingPassage:
    return ReadingPassage(
        passage_id="p1",
        lo_id="lo_a",
        text="A short teaching event about the idea.",
        source_chunk_ids=(),
        config=ReadingConfig(),
        readability=ReadabilityScore(d_value, 0.2, 12.0),
    )


def independent_encoding(params, clarity, match, r, mean_mastery, attention) -> float:
    """Scalar recomputation written straight from the model definition."""
    x = (
        params.alpha
        + 1.1 * clarity
        + 0.55 * match
        + params.beta[0] * r.vocabulary
        + params.beta[1] * r.inferencing
        + params.beta[2] * r.strategy_use
        + params.beta[3] * r.background_knowledge
        + 0.3 * (1.0 - mean_mastery)
        + 0.35 * attention
    )
    return 1.0 / (1.0 + math.exp(-x))


class TestEncodingProbability:
    def test_zero_argument_gives_half(self):
        params = ComprehensionParams(alpha=0.0, beta=(0.0, 0.0, 0.0, 0.0))
        learner = make_learner(mastery={"kc_a": 1.0}, attention=0.0)
        event = make_event(clarity=0.0)
        assert encoding_probability(learner, event, 0.0, params) == pytest.approx(0.5, abs=1e-15)

    def test_monotone_in_clarity(self):
        params = ComprehensionParams()
        learner = make_learner()
        low = encoding_probability(learner, make_event(clarity=0.2), 0.5, params)
        high = encoding_probability(learner, make_event(clarity=0.9), 0.5, params)
        assert high > low

    def test_frozen_spot_value(self):
        # alpha -1.2, beta (.5,.45,.35,.5), clarity .92, match 1, r all .55,
        # mean mastery .2, attention .6 -> x = 1.802
        params = ComprehensionParams()
        learner = make_learner(mastery={"kc_a": 0.2}, profile_value=0.55, attention=0.6)
        event = make_event(clarity=0.92)
        value = encoding_probability(learner, event, 1.0, params)
        assert value == pytest.approx(0.8583922194349404, abs=1e-12)

    def test_empty_kc_ids_rejected(self):
        event = TeachingEvent("ev", "text", frozenset(), 0.5, 0.0, False)
        with pytest.raises(ValueError):
            encoding_probability(make_learner(), event, 0.0, ComprehensionParams())

    @given(
        st.floats(0.0, 1.0), st.floats(-1.0, 1.0), st.floats(0.0, 1.0),
        st.floats(0.0, 1.0), st.floats(0.0, 1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_sigma_form_against_recomputation(self, clarity, match, profile, mastery, attention):
        params = ComprehensionParams()
        learner = make_learner(mastery={"kc_a": mastery}, profile_value=profile, attention=attention)
        event = make_event(clarity=clarity)
        got = encoding_probability(learner, event, match, params)
        want = independent_encoding(params, clarity, match, learner.reader, mastery, attention)
        assert got == pytest.approx(want, abs=1e-12)
        assert 0.0 < got < 1.0

    def test_monotone_in_every_positive_input(self):
        params = ComprehensionParams()
        base = dict(clarity=0.5, match=0.0, profile=0.5, mastery=0.5, attention=0.5)

        def value(**kw):
            merged = {**base, **kw}
            learner = make_learner(
                mastery={"kc_a": merged["mastery"]},
                profile_value=merged["profile"],
                attention=merged["attention"],
            )
            return encoding_probability(
                learner, make_event(clarity=merged["clarity"]), merged["match"], params
            )

        baseline = value()
        assert value(clarity=0.8) > baseline
        assert value(match=0.5) > baseline
        assert value(profile=0.8) > baseline
        assert value(attention=0.9) > baseline
        assert value(mastery=0.2) > baseline  # novelty rises as mastery falls


class TestSigmoid:
    @given(st.floats(-700, 700))
    @settings(max_examples=200, deadline=None)
    def test_matches_reference(self, x):
        want = 1.0 / (1.0 + math.exp(-x)) if x >= 0 else math.exp(x) / (1.0 + math.exp(x))
        assert sigmoid(x) == pytest.approx(want, abs=1e-12)

    def test_extreme_stability(self):
        assert sigmoid(-1e6) == 0.0
        assert sigmoid(1e6) == 1.0


class TestReadPassage:
    def test_zero_refutation_leaves_misconceptions_exactly(self):
        learner = make_learner(misconceptions={("kc_a", "m1"): 0.7})
        before = dict(learner.misconceptions)
        events = [make_event(refutation=0.0) for _ in range(6)]
        outcome = read_passage(learner, make_passage(), events, ComprehensionParams(), cycle=1)
        assert learner.misconceptions == before
        assert outcome.misconception_deltas == {}

    def test_refutation_reduces_weights(self):
        learner = make_learner(misconceptions={("kc_a", "m1"): 0.7})
        events = [make_event(refutation=1.0)]
        # force encoding with an easy event and high-probability params
        params = ComprehensionParams(alpha=30.0)
        read_passage(learner, make_passage(), events, params, cycle=1)
        assert learner.misconceptions[("kc_a", "m1")] < 0.7
        assert learner.misconceptions[("kc_a", "m1")] > 0.0

    def test_refresh_gain_strictly_smaller(self):
        params = ComprehensionParams(alpha=30.0)  # always encode
        base = make_learner(mastery={"kc_a": 0.2})
        refresh_learner = copy.deepcopy(base)
        read_passage(base, make_passage(), [make_event(is_refresh=False)], params, cycle=1)
        read_passage(refresh_learner, make_passage(), [make_event(is_refresh=True)], params, cycle=1)
        gain_full = base.correct_knowledge["kc_a"] - 0.2
        gain_refresh = refresh_learner.correct_knowledge["kc_a"] - 0.2
        assert 0.0 < gain_refresh < gain_full
        assert gain_refresh == pytest.approx(gain_full * params.refresh_multiplier, rel=1e-9)

    def test_reproducible_with_fixed_rng(self, cs_ontology, cs_lo_ids):
        from readloop.content import segment_passage
        from readloop.synthesis import SynthesisSpec, synthesize_bundle

        bundle = synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=1), seed=8)
        passage = bundle.passages[0]
        events = segment_passage(passage, cs_ontology)

        outcomes = []
        states = []
        for _ in range(2):
            learner = make_learner(
                mastery={k: 0.2 for e in events for k in e.kc_ids}, seed=99
            )
            rng = np.random.default_rng(1234)
            outcomes.append(read_passage(learner, passage, events, ComprehensionParams(), 1, rng=rng))
            states.append((dict(learner.correct_knowledge), [t.trace_id for t in learner.traces]))
        assert outcomes[0] == outcomes[1]
        assert states[0] == states[1]
        for v in states[0][0].values():
            assert 0.0 <= v <= 1.0

    def test_trace_fields(self):
        params = ComprehensionParams(alpha=30.0, distortion_rate=0.05)
        learner = make_learner()
        event = make_event(refutation=0.7)
        read_passage(learner, make_passage(d_value=10.5), [event], params, cycle=3)
        trace = learner.traces[0]
        assert trace.event_text == event.text
        assert trace.kc_ids == event.kc_ids
        assert trace.clarity == event.clarity
        assert trace.refutation_strength == 0.7
        assert trace.readability == 10.5
        assert trace.created_cycle == 3
        assert trace.rehearsal_count == 0
        assert trace.distortion >= 0.0

    def test_unencoded_events_are_noops(self):
        params = ComprehensionParams(alpha=-30.0)  # never encode
        learner = make_learner(misconceptions={("kc_a", "m1"): 0.5})
        before_m = dict(learner.correct_knowledge)
        outcome = read_passage(learner, make_passage(), [make_event()] * 5, params, cycle=1)
        assert outcome.events_encoded == 0
        assert learner.traces == []
        assert learner.correct_knowledge == before_m

    def test_negative_cycle_rejected(self):
        with pytest.raises(ValueError):
            read_passage(make_learner(), make_passage(), [make_event()], ComprehensionParams(), -1)

    def test_mastery_never_decreases_weights_never_increase(self):
        learner = make_learner(
            mastery={"kc_a": 0.4, "kc_b": 0.1},
            misconceptions={("kc_a", "m1"): 0.8, ("kc_b", "m2"): 0.3},
        )
        events = [
            make_event(kc_ids=("kc_a",), refutation=0.7),
            make_event(kc_ids=("kc_b",), refutation=1.0),
            make_event(kc_ids=("kc_a", "kc_b")),
        ] * 4
        before_m = dict(learner.correct_knowledge)
        before_w = dict(learner.misconceptions)
        outcome = read_passage(learner, make_passage(), events, ComprehensionParams(), cycle=1)
        for k, v in learner.correct_knowledge.items():
            assert before_m[k] <= v <= 1.0
        for key, w in learner.misconceptions.items():
            assert 0.0 <= w <= before_w[key]
        assert all(d >= 0 for d in outcome.mastery_deltas.values())
        assert all(d <= 0 for d in outcome.misconception_deltas.values())

    def test_outcome_deltas_match_state_change(self):
        learner = make_learner(mastery={"kc_a": 0.3}, misconceptions={("kc_a", "m1"): 0.6})
        before_m = learner.correct_knowledge["kc_a"]
        before_w = learner.misconceptions[("kc_a", "m1")]
        params = ComprehensionParams(alpha=30.0)
        outcome = read_passage(
            learner, make_passage(), [make_event(refutation=1.0)], params, cycle=1
        )
        assert outcome.mastery_deltas["kc_a"] == pytest.approx(
            learner.correct_knowledge["kc_a"] - before_m
        )
        assert outcome.misconception_deltas[("kc_a", "m1")] == pytest.approx(
            learner.misconceptions[("kc_a", "m1")] - before_w
        )


def test_params_validation():
    with pytest.raises(ValueError):
        ComprehensionParams(refresh_multiplier=1.5)
    with pytest.raises(ValueError):
        ComprehensionParams(distortion_rate=-0.1)
    assert set(ComprehensionParams().as_dict()) >= {
        "alpha", "beta", "gain_base", "refresh_multiplier", "distortion_rate",
        "clarity_coeff", "match_coeff", "novelty_coeff", "attention_coeff",
    }


def test_fixed_coefficients_are_published_values():
    p = ComprehensionParams()
    assert (p.clarity_coeff, p.match_coeff, p.novelty_coeff, p.attention_coeff) == (1.1, 0.55, 0.3, 0.35)
