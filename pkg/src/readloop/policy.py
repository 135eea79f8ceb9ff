"""Tutor-side mastery tracking (per-KC BKT) and the reading adaptation policy.

The tutor never sees hidden learner state: it folds observed answer
correctness into per-KC mastery estimates and maps low estimates to more
supportive reading configurations. The control policy returns one fixed
configuration regardless of state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

# Mastery estimates stay inside the open unit interval.
_P_EPS = 1e-6

SUPPORT_TIERS = (0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class BktParams:
    p_init: float = 0.25
    p_learn: float = 0.2
    p_guess: float = 0.2
    p_slip: float = 0.1

    def validate(self) -> None:
        for name in ("p_init", "p_learn", "p_guess", "p_slip"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0,1), got {v}")
        # Identifiability guard. Equality is tolerated: guess+slip == 1 makes
        # observations uninformative but the update formula stays well defined.
        if self.p_guess + self.p_slip > 1.0:
            raise ValueError("p_guess + p_slip must not exceed 1")


@dataclass
class BktState:
    """Per-KC tutor mastery estimates for one learner."""

    estimates: dict[str, float] = field(default_factory=dict)

    def snapshot(self) -> dict[str, float]:
        return dict(self.estimates)


@dataclass(frozen=True)
class ReadingConfig:
    depth: float = 0.5
    example_density: float = 0.5
    refutation_emphasis: float = 0.5
    review_kcs: frozenset[str] = frozenset()
    target_readability: float = 9.0

    def __post_init__(self):
        for name in ("depth", "example_density", "refutation_emphasis"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0,1], got {v}")


@dataclass(frozen=True)
class PolicyThresholds:
    """Cut points quantizing support need into the four tiers, plus the
    estimate level below which a KC is scheduled for review."""

    tier_cuts: tuple[float, float, float] = (0.25, 0.5, 0.75)
    review: float = 0.6


def bkt_update(p_hat: float, correct: bool, params: BktParams) -> float:
    """One BKT step: Bayesian posterior on the observation, then learning.

    correct:   post = p(1-slip) / (p(1-slip) + (1-p) guess)
    incorrect: post = p slip    / (p slip    + (1-p)(1-guess))
    then       p'   = post + (1-post) p_learn
    """
    params.validate()
    if not 0.0 < p_hat < 1.0:
        raise ValueError(f"p_hat must lie in (0,1), got {p_hat}")
    if correct:
        num = p_hat * (1.0 - params.p_slip)
        den = num + (1.0 - p_hat) * params.p_guess
    else:
        num = p_hat * params.p_slip
        den = num + (1.0 - p_hat) * (1.0 - params.p_guess)
    posterior = num / den
    updated = posterior + (1.0 - posterior) * params.p_learn
    return min(max(updated, _P_EPS), 1.0 - _P_EPS)


def update_from_item(state: BktState, item, correct: bool, params: BktParams) -> BktState:
    """Fold one observed response into every KC the item targets.

    ``item`` is anything with a ``kc_ids`` attribute, or a bare iterable of
    KC ids. Each target KC is updated independently with the same
    observation; untargeted KCs are untouched. Returns a new state.
    """
    kc_ids = getattr(item, "kc_ids", item)
    estimates = dict(state.estimates)
    for kc_id in kc_ids:
        prior = estimates.get(kc_id, params.p_init)
        estimates[kc_id] = bkt_update(prior, correct, params)
    return BktState(estimates=estimates)


def support_tier(p_min: float, thresholds: PolicyThresholds) -> float:
    """Quantize support need (1 - weakest estimate) onto the four tiers."""
    raw = min(max(1.0 - p_min, 0.0), 1.0)
    c1, c2, c3 = thresholds.tier_cuts
    if raw <= c1:
        return SUPPORT_TIERS[0]
    if raw <= c2:
        return SUPPORT_TIERS[1]
    if raw <= c3:
        return SUPPORT_TIERS[2]
    return SUPPORT_TIERS[3]


def adaptive_config(
    state: BktState,
    target_kcs,
    learner_a_i: float,
    thresholds: PolicyThresholds = PolicyThresholds(),
    default_p: float = 0.25,
) -> ReadingConfig:
    """Map the weakest estimated KC to a support tier; flag weak KCs for review.

    Low estimated mastery raises explanatory depth, example density, and
    refutation emphasis together (one quantized tier); estimates under the
    review threshold put their KCs into the refresh set. Reader-text
    matching is always on: target readability is the learner's ability.
    """
    target_kcs = list(target_kcs)
    if not target_kcs:
        raise ValueError("adaptive_config requires at least one target KC")
    p = {k: state.estimates.get(k, default_p) for k in target_kcs}
    tier = support_tier(min(p.values()), thresholds)
    review = frozenset(k for k, v in p.items() if v < thresholds.review)
    return ReadingConfig(
        depth=tier,
        example_density=tier,
        refutation_emphasis=tier,
        review_kcs=review,
        target_readability=learner_a_i,
    )


def control_config(fixed: ReadingConfig) -> ReadingConfig:
    """The control policy: the same fixed configuration for every learner,
    every cycle, independent of any estimate."""
    return replace(fixed)
