from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from readloop.content import (
    ContentError,
    Option,
    ReadingPassage,
    UnlinkedPassage,
    clarity_from_length,
    ingest_bundle,
    parse_bundle,
    refutation_from_cues,
    segment_passage,
    serialize_bundle,
    validate_bundle,
    with_config,
)
from readloop.policy import ReadingConfig
from readloop.readability import ReadabilityScore
from readloop.synthesis import SynthesisSpec, synthesize_bundle
from readloop.textutil import normalize_ws

SCORE = ReadabilityScore(value=8.0, difficult_word_fraction=0.2, avg_sentence_length=12.0)


def make_passage(text: str, lo_id: str = "lo_one", config: ReadingConfig | None = None) -> ReadingPassage:
    return ReadingPassage(
        passage_id="p_test",
        lo_id=lo_id,
        text=text,
        source_chunk_ids=("chunk_1",),
        config=config or ReadingConfig(),
        readability=SCORE,
    )


class TestClarity:
    def test_eight_words_is_max(self):
        assert clarity_from_length("one two three four five six seven eight") == 1.0

    def test_sixty_words_hits_floor(self):
        assert clarity_from_length(" ".join(["word"] * 60)) == 0.05

    def test_thirtyfour_words_is_half(self):
        assert clarity_from_length(" ".join(["word"] * 34)) == pytest.approx(0.5)

    def test_short_text_clipped_to_one(self):
        assert clarity_from_length("tiny event") == 1.0

    @given(st.integers(1, 80), st.integers(0, 20))
    @settings(max_examples=100, deadline=None)
    def test_nonincreasing_in_word_count(self, n, extra):
        shorter = clarity_from_length(" ".join(["word"] * n))
        longer = clarity_from_length(" ".join(["word"] * (n + extra)))
        assert longer <= shorter
        assert 0.05 <= shorter <= 1.0


class TestRefutation:
    def test_no_cues(self):
        assert refutation_from_cues("Plants make food through photosynthesis.") == 0.0

    def test_single_cue(self):
        assert refutation_from_cues("Plants do not get food from soil.") == 0.7

    def test_paper_style_two_sentence_record(self):
        # The verbatim sentence pair carries one cue; a second cue saturates it.
        verbatim = "Plants do not get food from soil. They make food through photosynthesis."
        assert refutation_from_cues(verbatim) >= 0.7
        with_second_cue = (
            "It is a misconception that plants get food from soil; they do not. "
            "They make food through photosynthesis."
        )
        assert refutation_from_cues(with_second_cue) == 1.0

    def test_two_distinct_cues(self):
        assert refutation_from_cues("X rather than Y, do not assume Z") == 1.0

    def test_word_boundary_matching(self):
        # 'incorrectly' inside a longer token must not fire
        assert refutation_from_cues("the misincorrectlyish word") == 0.0

    @given(st.sampled_from(["Plants do not get food from soil.", "No cues here at all.",
                            "A misconception, rather than a fact."]),
           st.sampled_from(["green", "quietly", "yesterday"]))
    @settings(max_examples=60, deadline=None)
    def test_non_cue_insertion_invariant(self, text, filler):
        padded = text.replace(" ", f" {filler} ", 1)
        assert refutation_from_cues(padded) == refutation_from_cues(text)


class TestSegmentation:
    def test_cue_sentence_groups_with_correction(self, minimal_ontology):
        text = ("It is a misconception that the single idea gets food from soil, rather than light. "
                "The single idea makes food through photosynthesis.")
        passage = make_passage(text)
        events = segment_passage(passage, minimal_ontology)
        assert len(events) == 1
        assert events[0].refutation_strength == 1.0
        assert events[0].is_refresh is False

    def test_single_plain_sentence(self, minimal_ontology):
        events = segment_passage(make_passage("The single idea stands alone."), minimal_ontology)
        assert len(events) == 1
        assert events[0].refutation_strength == 0.0

    def test_three_groups_cover_passage(self, minimal_ontology):
        text = "The single idea starts here. It keeps going in the middle. It ends cleanly at the close."
        passage = make_passage(text)
        events = segment_passage(passage, minimal_ontology)
        assert len(events) == 3
        assert normalize_ws(" ".join(e.text for e in events)) == normalize_ws(text)
        assert [e.proposition_id for e in events] == sorted(e.proposition_id for e in events)

    def test_partition_property_on_synthetic(self, cs_ontology, cs_lo_ids):
        bundle = synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=1), seed=5)
        for passage in bundle.passages:
            events = segment_passage(passage, cs_ontology)
            assert normalize_ws(" ".join(e.text for e in events)) == normalize_ws(passage.text)

    def test_unlinked_passage_errors(self, minimal_ontology):
        with pytest.raises(UnlinkedPassage, match="unlinked passage"):
            segment_passage(make_passage("Text.", lo_id="lo_ghost"), minimal_ontology)

    def test_kc_links_subset_of_lo(self, cs_ontology, cs_lo_ids):
        bundle = synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=1), seed=5)
        lo_index = cs_ontology.lo_index()
        for passage in bundle.passages[:4]:
            allowed = set(lo_index[passage.lo_id].kc_ids)
            for event in segment_passage(passage, cs_ontology):
                assert event.kc_ids <= allowed
                assert event.kc_ids

    def test_refresh_marking_requires_review_and_marker(self, minimal_ontology):
        text = "The single idea starts here. To review, say the single idea back in your own words."
        no_review = segment_passage(make_passage(text), minimal_ontology)
        assert [e.is_refresh for e in no_review] == [False, False]
        cfg = ReadingConfig(review_kcs=frozenset({"kc_one"}))
        with_review = segment_passage(make_passage(text, config=cfg), minimal_ontology)
        assert [e.is_refresh for e in with_review] == [False, True]


class TestBundleIngest:
    def _minimal_bundle_doc(self) -> str:
        return """
subject_id: demo
passages:
  - passage_id: p1
    lo_id: lo_one
    cycle: 1
    text: The single idea stands alone.
    source_chunk_ids: [c1]
    config: {depth: 0.5, example_density: 0.5, refutation_emphasis: 0.5, review_kcs: [], target_readability: 9.0}
    readability: {value: 8.0, difficult_word_fraction: 0.1, avg_sentence_length: 10.0}
items:
  - item_id: q1
    lo_id: lo_one
    cycle: 1
    kc_ids: [kc_one]
    stem: Which statement about the single idea is accurate?
    difficulty_band: medium
    delivery_context: summative
    options:
      - {option_id: q1_a, text: The right answer., rationale: Correct., correct: true}
      - {option_id: q1_b, text: The wrong answer., rationale: Incorrect., correct: false}
"""

    def test_minimal_bundle(self, minimal_ontology):
        bundle = ingest_bundle(self._minimal_bundle_doc(), minimal_ontology)
        assert len(bundle.passages) == 1 and len(bundle.items) == 1

    def test_unknown_kc_named_in_error(self, minimal_ontology):
        doc = self._minimal_bundle_doc().replace("kc_ids: [kc_one]", "kc_ids: [kc_ghost]")
        with pytest.raises(ContentError, match="kc_ghost"):
            ingest_bundle(doc, minimal_ontology)

    def test_two_correct_options_rejected(self, minimal_ontology):
        doc = self._minimal_bundle_doc().replace("correct: false", "correct: true")
        with pytest.raises(ContentError, match="exactly one correct"):
            ingest_bundle(doc, minimal_ontology)

    def test_duplicate_item_id_rejected(self, minimal_ontology):
        bundle = parse_bundle(self._minimal_bundle_doc())
        doubled = replace(bundle, items=bundle.items + bundle.items)
        problems = validate_bundle(doubled, minimal_ontology)
        assert any("duplicate item_id" in p for p in problems)

    def test_protocol_sized_bundle_accepted(self, cs_ontology, cs_lo_ids):
        bundle = synthesize_bundle(
            cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=3, items_per_cycle=3), seed=9
        )
        assert len(bundle.items) == 4 * 3 * 3
        round_tripped = ingest_bundle(serialize_bundle(bundle), cs_ontology)
        assert len(round_tripped.items) == 36


class TestSynthesis:
    def test_same_seed_byte_identical(self, cs_ontology, cs_lo_ids):
        spec = SynthesisSpec(lo_ids=cs_lo_ids, cycles=2)
        a = serialize_bundle(synthesize_bundle(cs_ontology, spec, seed=123))
        b = serialize_bundle(synthesize_bundle(cs_ontology, spec, seed=123))
        assert a == b

    def test_different_seed_differs(self, cs_ontology, cs_lo_ids):
        spec = SynthesisSpec(lo_ids=cs_lo_ids, cycles=1)
        a = serialize_bundle(synthesize_bundle(cs_ontology, spec, seed=1))
        b = serialize_bundle(synthesize_bundle(cs_ontology, spec, seed=2))
        assert a != b

    def test_full_emphasis_refutes_every_misconception(self, cs_ontology, cs_lo_ids):
        spec = SynthesisSpec(lo_ids=cs_lo_ids, cycles=1, refutation_emphasis=1.0)
        bundle = synthesize_bundle(cs_ontology, spec, seed=3)
        lo_index = cs_ontology.lo_index()
        kc_index = cs_ontology.kc_index()
        # scan-all-events oracle over the maximal-support variants
        target_mis = {
            (kc_id, m.id)
            for lo_id in cs_lo_ids
            for kc_id in lo_index[lo_id].kc_ids
            for m in kc_index[kc_id].misconceptions
        }
        covered = set()
        for passage in bundle.passages:
            if passage.config.depth != 1.0:
                continue
            for event in segment_passage(passage, cs_ontology):
                if event.refutation_strength > 0:
                    for kc_id in event.kc_ids:
                        for m in kc_index[kc_id].misconceptions:
                            if m.description in event.text:
                                covered.add((kc_id, m.id))
        assert covered >= target_mis

    def test_zero_emphasis_has_no_refutation(self, cs_ontology, cs_lo_ids):
        spec = SynthesisSpec(lo_ids=cs_lo_ids, cycles=1, refutation_emphasis=0.0)
        bundle = synthesize_bundle(cs_ontology, spec, seed=3)
        for passage in bundle.passages:
            for event in segment_passage(passage, cs_ontology):
                assert event.refutation_strength == 0.0

    def test_stems_fresh_across_cycles(self, cs_ontology, cs_lo_ids):
        spec = SynthesisSpec(lo_ids=cs_lo_ids, cycles=2, items_per_cycle=3)
        bundle = synthesize_bundle(cs_ontology, spec, seed=4)
        for lo_id in cs_lo_ids:
            for j in range(3):
                c1 = bundle.items_for(lo_id, 1)[j]
                c2 = bundle.items_for(lo_id, 2)[j]
                assert set(c1.kc_ids) == set(c2.kc_ids)
                assert c1.stem != c2.stem

    def test_unknown_lo_rejected(self, cs_ontology):
        with pytest.raises(ValueError, match="unknown LOs"):
            synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=("lo_ghost",)), seed=1)

    def test_deeper_tiers_read_easier(self, cs_ontology, cs_lo_ids):
        bundle = synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=1), seed=6)
        by_tier = {}
        for passage in bundle.passages:
            by_tier.setdefault(passage.config.depth, []).append(passage.readability.value)
        means = {tier: sum(vs) / len(vs) for tier, vs in by_tier.items()}
        assert means[1.0] < means[0.5] < means[0.25]

    def test_validates_against_ontology(self, cs_ontology, cs_lo_ids):
        bundle = synthesize_bundle(cs_ontology, SynthesisSpec(lo_ids=cs_lo_ids, cycles=1), seed=7)
        assert validate_bundle(bundle, cs_ontology) == []


def test_with_config_replaces_only_config(minimal_ontology):
    passage = make_passage("The single idea stands alone.")
    cfg = ReadingConfig(depth=1.0, review_kcs=frozenset({"kc_one"}))
    updated = with_config(passage, cfg)
    assert updated.config == cfg
    assert updated.text == passage.text and updated.passage_id == passage.passage_id


def test_option_misconception_validation(minimal_ontology):
    doc_bundle = parse_bundle(serialize_bundle(
        ingest_bundle(TestBundleIngest()._minimal_bundle_doc(), minimal_ontology)
    ))
    item = doc_bundle.items[0]
    bad_option = Option("q1_c", "Bad.", "Cites ghost.", False, misconception_id="mi_ghost")
    bad_item = replace(item, options=item.options + (bad_option,))
    problems = validate_bundle(replace(doc_bundle, items=(bad_item,)), minimal_ontology)
    assert any("mi_ghost" in p for p in problems)
