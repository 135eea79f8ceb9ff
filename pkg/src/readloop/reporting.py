"""Result persistence, reload, and report/plot emission.

One run writes a structured result file (config echo, per-cycle tables,
per-learner accuracy/BKT-gain trajectories, condition-level hidden-state
summaries, paired comparisons), a line-delimited response log, and two
static vector plots: condition deltas with CI whiskers and per-cycle
accuracy lines. Output is byte-deterministic for a given run.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .experiment import ExperimentResult

RESULT_FILENAME = "results.json"
LOG_FILENAME = "responses.jsonl"
DELTA_PLOT_FILENAME = "condition_deltas.svg"
CYCLE_PLOT_FILENAME = "cycle_accuracy.svg"

# Fixed hash salt keeps matplotlib SVG ids reproducible across runs.
_SVG_SALT = "readloop"


def result_to_dict(result: ExperimentResult) -> dict:
    return {
        "config": result.config.to_dict(),
        "conditions": {
            "adaptive": result.adaptive.to_dict(),
            "control": result.control.to_dict(),
        },
        "per_cycle_table": [
            {
                "cycle": c + 1,
                "adaptive_accuracy": result.adaptive.per_cycle_accuracy[c],
                "control_accuracy": result.control.per_cycle_accuracy[c],
                "accuracy_delta": result.adaptive.per_cycle_accuracy[c] - result.control.per_cycle_accuracy[c],
                "adaptive_bkt_gain": result.adaptive.per_cycle_bkt_gain[c],
                "control_bkt_gain": result.control.per_cycle_bkt_gain[c],
                "bkt_gain_delta": result.adaptive.per_cycle_bkt_gain[c] - result.control.per_cycle_bkt_gain[c],
            }
            for c in range(result.config.cycles)
        ],
        "hidden_state_summary": {
            "adaptive": {
                "hidden_mastery_gain": result.adaptive.hidden_mastery_gain,
                "misconception_reduction": result.adaptive.misconception_reduction,
            },
            "control": {
                "hidden_mastery_gain": result.control.hidden_mastery_gain,
                "misconception_reduction": result.control.misconception_reduction,
            },
        },
        "comparisons": [c.to_dict() for c in result.comparisons],
        "response_log": LOG_FILENAME,
    }


def write_results(result: ExperimentResult, out_dir) -> dict[str, Path]:
    """Persist the run. Returns the paths written."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create results directory {out}: {exc}") from exc

    paths: dict[str, Path] = {}

    result_path = out / RESULT_FILENAME
    result_path.write_text(
        json.dumps(result_to_dict(result), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    paths["results"] = result_path

    log_path = out / LOG_FILENAME
    with log_path.open("w", encoding="utf-8") as fh:
        for cond_result in (result.adaptive, result.control):
            for row in cond_result.rows:
                fh.write(json.dumps(row.to_dict(), sort_keys=True) + "\n")
    paths["log"] = log_path

    paths["delta_plot"] = _plot_deltas(result, out / DELTA_PLOT_FILENAME)
    paths["cycle_plot"] = _plot_cycles(result, out / CYCLE_PLOT_FILENAME)
    return paths


def load_results(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _savefig(fig, path: Path) -> Path:
    plt.rcParams["svg.hashsalt"] = _SVG_SALT
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def _plot_deltas(result: ExperimentResult, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    labels = [c.metric for c in result.comparisons]
    deltas = [c.delta for c in result.comparisons]
    err_low = [c.delta - c.ci95[0] for c in result.comparisons]
    err_high = [c.ci95[1] - c.delta for c in result.comparisons]
    x = range(len(labels))
    ax.bar(x, deltas, color=["#3b6ea5", "#8aa65b"], width=0.55)
    ax.errorbar(x, deltas, yerr=[err_low, err_high], fmt="none", ecolor="#333333", capsize=4)
    ax.axhline(0.0, color="#999999", linewidth=0.8)
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels)
    ax.set_ylabel("adaptive - control")
    ax.set_title(f"Condition deltas ({result.config.subject_id})")
    fig.tight_layout()
    return _savefig(fig, path)


def _plot_cycles(result: ExperimentResult, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    cycles = list(range(1, result.config.cycles + 1))
    ax.plot(cycles, result.adaptive.per_cycle_accuracy, marker="o", label="adaptive", color="#3b6ea5")
    ax.plot(cycles, result.control.per_cycle_accuracy, marker="s", label="control", color="#b0553b")
    ax.set_xticks(cycles)
    ax.set_xlabel("cycle")
    ax.set_ylabel("accuracy")
    ax.set_ylim(0.0, 1.0)
    ax.set_title(f"Per-cycle accuracy ({result.config.subject_id})")
    ax.legend()
    fig.tight_layout()
    return _savefig(fig, path)


def render_report(result_doc: dict) -> str:
    """Plain-text tables from a loaded result document."""
    lines = []
    cfg = result_doc["config"]
    lines.append(f"subject: {cfg['subject_id']}   seed: {cfg['master_seed']}")
    lines.append(
        f"protocol: {len(cfg['lo_ids'])} LOs x {cfg['cycles']} cycles x "
        f"{cfg['items_per_cycle']} items x {cfg['cohort']['size']} learners"
    )
    lines.append("")
    lines.append("condition  accuracy  bkt_gain  hidden_gain  misconception_reduction")
    for cond in ("adaptive", "control"):
        c = result_doc["conditions"][cond]
        lines.append(
            f"{cond:<9}  {c['accuracy']:.3f}     {c['bkt_gain']:.3f}     "
            f"{c['hidden_mastery_gain']:.3f}        {c['misconception_reduction']:.3f}"
        )
    lines.append("")
    lines.append("cycle  acc(adaptive)  acc(control)  delta    gain(adaptive)  gain(control)")
    for row in result_doc["per_cycle_table"]:
        lines.append(
            f"{row['cycle']:>5}  {row['adaptive_accuracy']:.3f}          {row['control_accuracy']:.3f}         "
            f"{row['accuracy_delta']:+.3f}   {row['adaptive_bkt_gain']:.3f}           {row['control_bkt_gain']:.3f}"
        )
    lines.append("")
    for comp in result_doc["comparisons"]:
        ci = comp["ci95"]
        wilcoxon = "" if comp.get("wilcoxon_p") is None else f"  wilcoxon_p={comp['wilcoxon_p']:.3f}"
        lines.append(
            f"{comp['metric']}: delta={comp['delta']:+.3f}  "
            f"95% CI [{ci[0]:+.3f}, {ci[1]:+.3f}]  p={comp['p_value']:.3f}{wilcoxon}"
        )
    return "\n".join(lines) + "\n"
