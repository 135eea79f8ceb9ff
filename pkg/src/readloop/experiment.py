"""Matched adaptive-vs-control experiment runner and outcome statistics.

One run samples a cohort, clones it so both conditions start from
identical hidden states and seeds, then alternates reading and summative
assessment for a fixed number of cycles per learning objective. The
adaptive condition recomputes each learner's reading configuration from
tutor-side BKT estimates every cycle; the control condition reads the
fixed mid-tier variant throughout. Outcomes cover observed accuracy,
tutor-side BKT gain, hidden mastery gain, and misconception reduction,
with paired statistics over the learner pairing.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats as sps

from .assessment import AssessmentParams, DifficultyOffsets, retrieve_traces, select_response
from .comprehension import ComprehensionParams, read_passage
from .content import ContentBundle, ContentError, segment_passage, with_config
from .learner import CohortSpec, FieldSpec, HiddenLearnerState, clone_for_condition, sample_cohort
from .ontology import Ontology
from .policy import (
    BktParams,
    BktState,
    PolicyThresholds,
    ReadingConfig,
    adaptive_config,
    control_config,
    update_from_item,
)

CONDITIONS = ("adaptive", "control")


@dataclass(frozen=True)
class ExperimentConfig:
    subject_id: str
    lo_ids: tuple[str, ...]
    cycles: int = 3
    items_per_cycle: int = 3
    cohort: CohortSpec = field(default_factory=CohortSpec)
    thresholds: PolicyThresholds = field(default_factory=PolicyThresholds)
    comprehension: ComprehensionParams = field(default_factory=ComprehensionParams)
    bkt: BktParams = field(default_factory=BktParams)
    assessment: AssessmentParams = field(default_factory=AssessmentParams)
    control: ReadingConfig = field(default_factory=ReadingConfig)
    master_seed: int = 0
    bootstrap_resamples: int = 10_000
    retain_hidden_trajectories: bool = False

    def __post_init__(self):
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")
        if self.items_per_cycle < 1:
            raise ValueError("items_per_cycle must be >= 1")
        if not self.lo_ids:
            raise ValueError("config needs at least one LO")

    @property
    def responses_per_condition(self) -> int:
        return len(self.lo_ids) * self.cycles * self.items_per_cycle * self.cohort.size

    def to_dict(self) -> dict:
        return {
            "subject_id": self.subject_id,
            "lo_ids": list(self.lo_ids),
            "cycles": self.cycles,
            "items_per_cycle": self.items_per_cycle,
            "cohort": _cohort_to_dict(self.cohort),
            "thresholds": {"tier_cuts": list(self.thresholds.tier_cuts), "review": self.thresholds.review},
            "comprehension": self.comprehension.as_dict(),
            "bkt": {
                "p_init": self.bkt.p_init,
                "p_learn": self.bkt.p_learn,
                "p_guess": self.bkt.p_guess,
                "p_slip": self.bkt.p_slip,
            },
            "assessment": {
                "offsets": {
                    "easy": self.assessment.offsets.easy,
                    "medium": self.assessment.offsets.medium,
                    "hard": self.assessment.offsets.hard,
                },
                "interior": list(self.assessment.interior),
            },
            "control": {
                "depth": self.control.depth,
                "example_density": self.control.example_density,
                "refutation_emphasis": self.control.refutation_emphasis,
                "review_kcs": sorted(self.control.review_kcs),
                "target_readability": self.control.target_readability,
            },
            "master_seed": self.master_seed,
            "bootstrap_resamples": self.bootstrap_resamples,
            "retain_hidden_trajectories": self.retain_hidden_trajectories,
        }


def _cohort_to_dict(c: CohortSpec) -> dict:
    def fs(spec: FieldSpec) -> list[float]:
        return [spec.mean, spec.sd, spec.low, spec.high]

    return {
        "size": c.size,
        "seed": c.seed,
        "background_knowledge": fs(c.background_knowledge),
        "vocabulary": fs(c.vocabulary),
        "inferencing": fs(c.inferencing),
        "strategy_use": fs(c.strategy_use),
        "readability_ability": fs(c.readability_ability),
        "skepticism": fs(c.skepticism),
        "revision_willingness": fs(c.revision_willingness),
        "detail_preference": fs(c.detail_preference),
        "attention": fs(c.attention),
        "guess_bias": fs(c.guess_bias),
        "misconception_prevalence": c.misconception_prevalence,
        "initial_mastery": [c.initial_mastery_low, c.initial_mastery_high],
        "misconception_weight": [c.misconception_weight_low, c.misconception_weight_high],
    }


def derive_seed(master_seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{master_seed}/{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class ResponseRow:
    condition: str
    lo_id: str
    cycle: int
    learner_id: str
    item_id: str
    chosen_option_id: str
    correct: bool
    p_correct: float
    utility: float
    target_kc_ids: tuple[str, ...]
    correct_support: float
    misconception_support: float
    retrieved_trace_ids: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "lo_id": self.lo_id,
            "cycle": self.cycle,
            "learner_id": self.learner_id,
            "item_id": self.item_id,
            "chosen_option_id": self.chosen_option_id,
            "correct": self.correct,
            "p_correct": self.p_correct,
            "utility": self.utility,
            "epistemic": {
                "target_kc_ids": list(self.target_kc_ids),
                "correct_support": self.correct_support,
                "misconception_support": self.misconception_support,
                "retrieved_trace_ids": list(self.retrieved_trace_ids),
            },
        }


@dataclass
class ConditionRaw:
    """Everything a condition produced, before metric aggregation."""

    condition: str
    learner_ids: list[str]
    rows: list[ResponseRow]
    bkt_initial: list[dict[str, float]]
    bkt_by_cycle: list[list[dict[str, float]]]  # [cycle][learner] -> estimates
    hidden_initial_mastery: list[dict[str, float]]
    hidden_final_mastery: list[dict[str, float]]
    hidden_initial_misconceptions: list[dict[tuple[str, str], float]]
    hidden_final_misconceptions: list[dict[tuple[str, str], float]]
    target_kcs: tuple[str, ...]
    cycles: int
    # filled only when config.retain_hidden_trajectories: [cycle][learner]
    # mean hidden mastery over the target KCs
    hidden_mastery_by_cycle: list[list[float]] = field(default_factory=list)


@dataclass(frozen=True)
class LearnerOutcome:
    learner_id: str
    accuracy: float
    bkt_gain: float
    per_cycle_accuracy: tuple[float, ...]
    per_cycle_bkt_gain: tuple[float, ...]
    # present only when the run retained learner-level hidden trajectories
    hidden_mastery_trajectory: tuple[float, ...] | None = None


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    accuracy: float
    bkt_gain: float
    hidden_mastery_gain: float
    misconception_reduction: float
    per_cycle_accuracy: tuple[float, ...]
    per_cycle_bkt_gain: tuple[float, ...]
    per_learner: tuple[LearnerOutcome, ...]
    rows: tuple[ResponseRow, ...]

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "accuracy": self.accuracy,
            "bkt_gain": self.bkt_gain,
            "hidden_mastery_gain": self.hidden_mastery_gain,
            "misconception_reduction": self.misconception_reduction,
            "per_cycle_accuracy": list(self.per_cycle_accuracy),
            "per_cycle_bkt_gain": list(self.per_cycle_bkt_gain),
            "per_learner": [
                {
                    "learner_id": lo.learner_id,
                    "accuracy": lo.accuracy,
                    "bkt_gain": lo.bkt_gain,
                    "per_cycle_accuracy": list(lo.per_cycle_accuracy),
                    "per_cycle_bkt_gain": list(lo.per_cycle_bkt_gain),
                    **(
                        {"hidden_mastery_trajectory": list(lo.hidden_mastery_trajectory)}
                        if lo.hidden_mastery_trajectory is not None
                        else {}
                    ),
                }
                for lo in self.per_learner
            ],
        }


@dataclass(frozen=True)
class PairedComparison:
    metric: str
    adaptive_mean: float
    control_mean: float
    delta: float
    ci95: tuple[float, float]
    p_value: float
    wilcoxon_p: float | None = None

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "adaptive_mean": self.adaptive_mean,
            "control_mean": self.control_mean,
            "delta": self.delta,
            "ci95": list(self.ci95),
            "p_value": self.p_value,
            "wilcoxon_p": self.wilcoxon_p,
        }


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    adaptive: ConditionResult
    control: ConditionResult
    comparisons: tuple[PairedComparison, ...]


def check_bundle_coverage(config: ExperimentConfig, bundle: ContentBundle) -> list[str]:
    """Every (LO, cycle) must provide a passage for each policy tier, a
    passage matching the control configuration, and enough items."""
    from .policy import SUPPORT_TIERS

    gaps: list[str] = []
    needed_depths = set(SUPPORT_TIERS) | {config.control.depth}
    for lo_id in config.lo_ids:
        for cycle in range(1, config.cycles + 1):
            have = {p.config.depth for p in bundle.passages_for(lo_id, cycle)}
            for depth in sorted(needed_depths):
                if not any(abs(depth - h) < 1e-9 for h in have):
                    gaps.append(f"lo={lo_id} cycle={cycle}: no passage at depth {depth}")
            n_items = len(bundle.items_for(lo_id, cycle))
            if n_items < config.items_per_cycle:
                gaps.append(f"lo={lo_id} cycle={cycle}: {n_items} items, need {config.items_per_cycle}")
    return gaps


def _target_kcs(config: ExperimentConfig, ontology: Ontology) -> tuple[str, ...]:
    lo_index = ontology.lo_index()
    seen: list[str] = []
    for lo_id in config.lo_ids:
        if lo_id not in lo_index:
            raise ValueError(f"config references unknown LO {lo_id}")
        for kc in lo_index[lo_id].kc_ids:
            if kc not in seen:
                seen.append(kc)
    return tuple(seen)


def run_experiment(
    config: ExperimentConfig, ontology: Ontology, bundle: ContentBundle
) -> ExperimentResult:
    """Run both conditions over the matched cohort; fully deterministic."""
    gaps = check_bundle_coverage(config, bundle)
    if gaps:
        raise ContentError("bundle coverage gaps: " + "; ".join(gaps[:6]))

    target_kcs = _target_kcs(config, ontology)
    lo_index = ontology.lo_index()

    cohort_spec = replace(config.cohort, seed=derive_seed(config.master_seed, "cohort"))
    base_cohort = sample_cohort(cohort_spec, ontology)
    cohorts: dict[str, list[HiddenLearnerState]] = {
        "adaptive": clone_for_condition(base_cohort, "adaptive"),
        "control": clone_for_condition(base_cohort, "control"),
    }

    bkt: dict[str, list[BktState]] = {
        cond: [BktState({k: config.bkt.p_init for k in target_kcs}) for _ in range(cohort_spec.size)]
        for cond in CONDITIONS
    }

    raw: dict[str, ConditionRaw] = {}
    for cond in CONDITIONS:
        learners = cohorts[cond]
        raw[cond] = ConditionRaw(
            condition=cond,
            learner_ids=[l.learner_id for l in learners],
            rows=[],
            bkt_initial=[s.snapshot() for s in bkt[cond]],
            bkt_by_cycle=[],
            hidden_initial_mastery=[{k: l.correct_knowledge[k] for k in target_kcs} for l in learners],
            hidden_final_mastery=[],
            hidden_initial_misconceptions=[
                {key: w for key, w in l.misconceptions.items() if key[0] in set(target_kcs)}
                for l in learners
            ],
            hidden_final_misconceptions=[],
            target_kcs=target_kcs,
            cycles=config.cycles,
        )

    for cycle in range(1, config.cycles + 1):
        for lo_id in config.lo_ids:
            lo_kcs = lo_index[lo_id].kc_ids
            items = bundle.items_for(lo_id, cycle)[: config.items_per_cycle]
            for cond in CONDITIONS:
                learners = cohorts[cond]
                for idx, learner in enumerate(learners):
                    if cond == "adaptive":
                        cfg = adaptive_config(
                            bkt[cond][idx],
                            lo_kcs,
                            learner.reader.readability_ability,
                            config.thresholds,
                            default_p=config.bkt.p_init,
                        )
                    else:
                        cfg = control_config(config.control)
                    passage = with_config(bundle.select_passage(lo_id, cycle, cfg), cfg)
                    events = segment_passage(passage, ontology)
                    # Substreams per (learner, LO, cycle) keep the matched
                    # conditions on common random numbers: identical draws at
                    # identical positions regardless of how much the stimulus
                    # streams diverge.
                    read_rng = np.random.default_rng(
                        derive_seed(learner.rng_seed, f"read:{lo_id}:{cycle}")
                    )
                    read_passage(learner, passage, events, config.comprehension, cycle, rng=read_rng)

                    for item in items:
                        retrieval = retrieve_traces(learner, item, cycle)
                        answer_rng = np.random.default_rng(
                            derive_seed(learner.rng_seed, f"answer:{item.item_id}")
                        )
                        record = select_response(learner, item, retrieval, config.assessment, answer_rng)
                        bkt[cond][idx] = update_from_item(bkt[cond][idx], item, record.correct, config.bkt)
                        raw[cond].rows.append(
                            ResponseRow(
                                condition=cond,
                                lo_id=lo_id,
                                cycle=cycle,
                                learner_id=learner.learner_id,
                                item_id=item.item_id,
                                chosen_option_id=record.chosen_option_id,
                                correct=record.correct,
                                p_correct=record.p_correct,
                                utility=record.utility,
                                target_kc_ids=record.epistemic.target_kc_ids,
                                correct_support=record.epistemic.correct_support,
                                misconception_support=record.epistemic.misconception_support,
                                retrieved_trace_ids=record.epistemic.retrieved_trace_ids,
                            )
                        )
        for cond in CONDITIONS:
            raw[cond].bkt_by_cycle.append([s.snapshot() for s in bkt[cond]])
            if config.retain_hidden_trajectories:
                raw[cond].hidden_mastery_by_cycle.append(
                    [l.mean_mastery(target_kcs) for l in cohorts[cond]]
                )

    for cond in CONDITIONS:
        learners = cohorts[cond]
        raw[cond].hidden_final_mastery = [
            {k: l.correct_knowledge[k] for k in target_kcs} for l in learners
        ]
        raw[cond].hidden_final_misconceptions = [
            {key: l.misconceptions[key] for key in raw[cond].hidden_initial_misconceptions[i]}
            for i, l in enumerate(learners)
        ]

    adaptive_result = compute_metrics(raw["adaptive"])
    control_result = compute_metrics(raw["control"])
    comparisons = compare_conditions(
        adaptive_result, control_result, seed=derive_seed(config.master_seed, "bootstrap"),
        resamples=config.bootstrap_resamples,
    )
    return ExperimentResult(
        config=config,
        adaptive=adaptive_result,
        control=control_result,
        comparisons=comparisons,
    )


def compute_metrics(raw: ConditionRaw) -> ConditionResult:
    """Aggregate one condition's raw run data into its outcome families.

    Accuracy is the fraction of correct responses; BKT gain per learner is
    the mean over target KCs of (final - initial estimate); per-cycle BKT
    gain is the within-cycle estimate change; hidden mastery gain and
    misconception reduction are condition-level means over the hidden
    state endpoints.
    """
    n = len(raw.learner_ids)
    cycles = raw.cycles
    by_learner_cycle_hits: dict[tuple[str, int], list[bool]] = {}
    for row in raw.rows:
        by_learner_cycle_hits.setdefault((row.learner_id, row.cycle), []).append(row.correct)

    per_learner: list[LearnerOutcome] = []
    for i, learner_id in enumerate(raw.learner_ids):
        cycle_acc = []
        all_hits: list[bool] = []
        for c in range(1, cycles + 1):
            hits = by_learner_cycle_hits.get((learner_id, c), [])
            cycle_acc.append(float(np.mean(hits)) if hits else 0.0)
            all_hits.extend(hits)
        initial = raw.bkt_initial[i]
        cycle_gains = []
        prev = initial
        for c in range(cycles):
            snap = raw.bkt_by_cycle[c][i]
            cycle_gains.append(float(np.mean([snap[k] - prev[k] for k in raw.target_kcs])))
            prev = snap
        final = raw.bkt_by_cycle[-1][i]
        gain = float(np.mean([final[k] - initial[k] for k in raw.target_kcs]))
        hidden_traj = None
        if raw.hidden_mastery_by_cycle:
            hidden_traj = tuple(raw.hidden_mastery_by_cycle[c][i] for c in range(cycles))
        per_learner.append(
            LearnerOutcome(
                learner_id=learner_id,
                accuracy=float(np.mean(all_hits)) if all_hits else 0.0,
                bkt_gain=gain,
                per_cycle_accuracy=tuple(cycle_acc),
                per_cycle_bkt_gain=tuple(cycle_gains),
                hidden_mastery_trajectory=hidden_traj,
            )
        )

    per_cycle_accuracy = []
    for c in range(1, cycles + 1):
        hits = [h for (lid, cc), hs in by_learner_cycle_hits.items() if cc == c for h in hs]
        per_cycle_accuracy.append(float(np.mean(hits)) if hits else 0.0)
    per_cycle_bkt_gain = [
        float(np.mean([lo.per_cycle_bkt_gain[c] for lo in per_learner])) if per_learner else 0.0
        for c in range(cycles)
    ]

    mastery_gains = []
    for i in range(n):
        deltas = [
            raw.hidden_final_mastery[i][k] - raw.hidden_initial_mastery[i][k] for k in raw.target_kcs
        ]
        mastery_gains.append(float(np.mean(deltas)))

    initial_ws = [w for m in raw.hidden_initial_misconceptions for w in m.values()]
    final_ws = [w for m in raw.hidden_final_misconceptions for w in m.values()]
    if initial_ws:
        misconception_reduction = float(np.mean(initial_ws) - np.mean(final_ws))
    else:
        misconception_reduction = 0.0

    all_rows_hits = [row.correct for row in raw.rows]
    return ConditionResult(
        condition=raw.condition,
        accuracy=float(np.mean(all_rows_hits)) if all_rows_hits else 0.0,
        bkt_gain=float(np.mean([lo.bkt_gain for lo in per_learner])) if per_learner else 0.0,
        hidden_mastery_gain=float(np.mean(mastery_gains)) if mastery_gains else 0.0,
        misconception_reduction=misconception_reduction,
        per_cycle_accuracy=tuple(per_cycle_accuracy),
        per_cycle_bkt_gain=tuple(per_cycle_bkt_gain),
        per_learner=tuple(per_learner),
        rows=tuple(raw.rows),
    )


def paired_stats(
    adaptive_values,
    control_values,
    metric: str = "accuracy",
    seed: int = 0,
    resamples: int = 10_000,
) -> PairedComparison:
    """Paired comparison of per-learner values: mean delta, two-sided paired
    t-test, percentile bootstrap CI over learners (fixed seed), and a
    Wilcoxon signed-rank p when n >= 10."""
    a = np.asarray(adaptive_values, dtype=float)
    c = np.asarray(control_values, dtype=float)
    if a.shape != c.shape:
        raise ValueError(f"paired vectors differ in length: {a.shape} vs {c.shape}")
    n = a.size
    if n < 2:
        raise ValueError("paired comparison needs at least 2 pairs")

    diffs = a - c
    delta = float(np.mean(diffs))

    if float(np.std(diffs, ddof=1)) == 0.0:
        p_value = 1.0 if delta == 0.0 else 0.0
    else:
        p_value = float(sps.ttest_rel(a, c).pvalue)

    rng = np.random.default_rng(seed)
    idx = rng.integers(0, n, size=(resamples, n))
    boot_means = diffs[idx].mean(axis=1)
    ci = (float(np.percentile(boot_means, 2.5)), float(np.percentile(boot_means, 97.5)))

    wilcoxon_p: float | None = None
    if n >= 10:
        if np.all(diffs == 0.0):
            wilcoxon_p = 1.0
        else:
            try:
                wilcoxon_p = float(sps.wilcoxon(a, c, zero_method="wilcox").pvalue)
            except ValueError:
                wilcoxon_p = 1.0

    return PairedComparison(
        metric=metric,
        adaptive_mean=float(np.mean(a)),
        control_mean=float(np.mean(c)),
        delta=delta,
        ci95=ci,
        p_value=p_value,
        wilcoxon_p=wilcoxon_p,
    )


def config_from_dict(doc: dict) -> ExperimentConfig:
    """Build an ExperimentConfig from a parsed config file."""

    def fs(value, default: FieldSpec) -> FieldSpec:
        if value is None:
            return default
        mean, sd, low, high = (list(value) + [default.low, default.high])[:4]
        return FieldSpec(float(mean), float(sd), float(low), float(high))

    cohort_doc = doc.get("cohort", {})
    base = CohortSpec()
    cohort = CohortSpec(
        size=int(cohort_doc.get("size", base.size)),
        seed=int(cohort_doc.get("seed", base.seed)),
        background_knowledge=fs(cohort_doc.get("background_knowledge"), base.background_knowledge),
        vocabulary=fs(cohort_doc.get("vocabulary"), base.vocabulary),
        inferencing=fs(cohort_doc.get("inferencing"), base.inferencing),
        strategy_use=fs(cohort_doc.get("strategy_use"), base.strategy_use),
        readability_ability=fs(cohort_doc.get("readability_ability"), base.readability_ability),
        skepticism=fs(cohort_doc.get("skepticism"), base.skepticism),
        revision_willingness=fs(cohort_doc.get("revision_willingness"), base.revision_willingness),
        detail_preference=fs(cohort_doc.get("detail_preference"), base.detail_preference),
        attention=fs(cohort_doc.get("attention"), base.attention),
        guess_bias=fs(cohort_doc.get("guess_bias"), base.guess_bias),
        misconception_prevalence=float(
            cohort_doc.get("misconception_prevalence", base.misconception_prevalence)
        ),
    )

    thr_doc = doc.get("thresholds", {})
    thresholds = PolicyThresholds(
        tier_cuts=tuple(thr_doc.get("tier_cuts", PolicyThresholds().tier_cuts)),
        review=float(thr_doc.get("review", PolicyThresholds().review)),
    )

    comp_doc = doc.get("comprehension", {})
    comp_base = ComprehensionParams()
    comprehension = ComprehensionParams(
        alpha=float(comp_doc.get("alpha", comp_base.alpha)),
        beta=tuple(comp_doc.get("beta", comp_base.beta)),
        gain_base=float(comp_doc.get("gain_base", comp_base.gain_base)),
        refresh_multiplier=float(comp_doc.get("refresh_multiplier", comp_base.refresh_multiplier)),
        distortion_rate=float(comp_doc.get("distortion_rate", comp_base.distortion_rate)),
    )

    bkt_doc = doc.get("bkt", {})
    bkt_base = BktParams()
    bkt = BktParams(
        p_init=float(bkt_doc.get("p_init", bkt_base.p_init)),
        p_learn=float(bkt_doc.get("p_learn", bkt_base.p_learn)),
        p_guess=float(bkt_doc.get("p_guess", bkt_base.p_guess)),
        p_slip=float(bkt_doc.get("p_slip", bkt_base.p_slip)),
    )

    assess_doc = doc.get("assessment", {})
    off_doc = assess_doc.get("offsets", {})
    off_base = DifficultyOffsets()
    assessment = AssessmentParams(
        offsets=DifficultyOffsets(
            easy=float(off_doc.get("easy", off_base.easy)),
            medium=float(off_doc.get("medium", off_base.medium)),
            hard=float(off_doc.get("hard", off_base.hard)),
        ),
        interior=tuple(assess_doc.get("interior", AssessmentParams().interior)),
    )

    ctl_doc = doc.get("control", {})
    ctl_base = ReadingConfig()
    control = ReadingConfig(
        depth=float(ctl_doc.get("depth", ctl_base.depth)),
        example_density=float(ctl_doc.get("example_density", ctl_base.example_density)),
        refutation_emphasis=float(ctl_doc.get("refutation_emphasis", ctl_base.refutation_emphasis)),
        review_kcs=frozenset(ctl_doc.get("review_kcs", [])),
        target_readability=float(ctl_doc.get("target_readability", ctl_base.target_readability)),
    )

    return ExperimentConfig(
        subject_id=str(doc["subject_id"]),
        lo_ids=tuple(doc["lo_ids"]),
        cycles=int(doc.get("cycles", 3)),
        items_per_cycle=int(doc.get("items_per_cycle", 3)),
        cohort=cohort,
        thresholds=thresholds,
        comprehension=comprehension,
        bkt=bkt,
        assessment=assessment,
        control=control,
        master_seed=int(doc.get("master_seed", 0)),
        bootstrap_resamples=int(doc.get("bootstrap_resamples", 10_000)),
        retain_hidden_trajectories=bool(doc.get("retain_hidden_trajectories", False)),
    )


def compare_conditions(
    adaptive: ConditionResult, control: ConditionResult, seed: int, resamples: int = 10_000
) -> tuple[PairedComparison, ...]:
    acc = paired_stats(
        [l.accuracy for l in adaptive.per_learner],
        [l.accuracy for l in control.per_learner],
        metric="accuracy",
        seed=seed,
        resamples=resamples,
    )
    gain = paired_stats(
        [l.bkt_gain for l in adaptive.per_learner],
        [l.bkt_gain for l in control.per_learner],
        metric="bkt_gain",
        seed=seed,
        resamples=resamples,
    )
    return (acc, gain)
