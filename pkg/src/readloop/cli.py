"""Command-line entry points: run, report, validate, synth, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .assets import BUNDLED_SUBJECTS, load_bundled_ontology
from .content import ingest_bundle, parse_bundle, serialize_bundle, validate_bundle
from .experiment import config_from_dict, derive_seed, run_experiment
from .ontology import parse_ontology, validate_ontology
from .reporting import load_results, render_report, write_results
from .synthesis import SynthesisSpec, synthesize_bundle


def _load_ontology(path_or_subject: str, validate: bool = True):
    if path_or_subject in BUNDLED_SUBJECTS:
        return load_bundled_ontology(path_or_subject)
    return parse_ontology(Path(path_or_subject).read_text(encoding="utf-8"), validate=validate)


def _synthesis_spec_from_doc(doc: dict, lo_ids) -> SynthesisSpec:
    return SynthesisSpec(
        lo_ids=tuple(lo_ids),
        cycles=int(doc.get("cycles", 3)),
        items_per_cycle=int(doc.get("items_per_cycle", 3)),
        tiers=tuple(doc.get("tiers", SynthesisSpec(lo_ids=("x",)).tiers)),
        refutation_emphasis=float(doc.get("refutation_emphasis", 1.0)),
        options_per_item=int(doc.get("options_per_item", 4)),
    )


def cmd_run(args) -> int:
    doc = yaml.safe_load(Path(args.config).read_text(encoding="utf-8"))
    doc["master_seed"] = args.master_seed
    config = config_from_dict(doc)
    ontology = _load_ontology(doc.get("ontology", config.subject_id))

    if doc.get("bundle"):
        bundle = ingest_bundle(Path(doc["bundle"]).read_text(encoding="utf-8"), ontology)
    else:
        synth_doc = doc.get("synthesis", {})
        synth_doc.setdefault("cycles", config.cycles)
        synth_doc.setdefault("items_per_cycle", config.items_per_cycle)
        spec = _synthesis_spec_from_doc(synth_doc, config.lo_ids)
        bundle = synthesize_bundle(ontology, spec, seed=derive_seed(config.master_seed, "synthesis"))

    result = run_experiment(config, ontology, bundle)
    paths = write_results(result, args.out)
    print(render_report(load_results(paths["results"])))
    print(f"results written to {paths['results'].parent}")
    return 0


def cmd_report(args) -> int:
    path = Path(args.results)
    if path.is_dir():
        path = path / "results.json"
    print(render_report(load_results(path)), end="")
    return 0


def cmd_validate(args) -> int:
    ontology = _load_ontology(args.ontology, validate=False)
    violations = validate_ontology(ontology)
    for v in violations:
        print(v)
    status = 1 if violations else 0
    if args.bundle:
        bundle = parse_bundle(Path(args.bundle).read_text(encoding="utf-8"))
        problems = validate_bundle(bundle, ontology)
        for p in problems:
            print(p)
        status = 1 if (violations or problems) else 0
    if status == 0:
        print("ok")
    return status


def cmd_synth(args) -> int:
    ontology = _load_ontology(args.ontology)
    if args.spec:
        doc = yaml.safe_load(Path(args.spec).read_text(encoding="utf-8"))
    else:
        doc = {}
    lo_ids = args.lo_ids or doc.get("lo_ids")
    if not lo_ids:
        print("error: LO ids required (--lo-ids or spec file)", file=sys.stderr)
        return 2
    spec = _synthesis_spec_from_doc(doc, lo_ids)
    bundle = synthesize_bundle(ontology, spec, seed=args.seed)
    Path(args.out).write_text(serialize_bundle(bundle), encoding="utf-8")
    print(f"wrote {args.out}: {len(bundle.passages)} passages, {len(bundle.items)} items")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .gateway import create_app

    app = create_app(content_root=args.content_root, ui_dist=args.ui_dist)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="readloop", description="Adaptive-reading simulation loop")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a matched adaptive-vs-control experiment")
    p_run.add_argument("--config", required=True, help="experiment config YAML")
    p_run.add_argument("--master-seed", type=int, required=True, help="master seed for the run")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_report = sub.add_parser("report", help="render tables from a results file")
    p_report.add_argument("--results", required=True, help="results.json or its directory")
    p_report.set_defaults(func=cmd_report)

    p_validate = sub.add_parser("validate", help="validate an ontology (and optionally a bundle)")
    p_validate.add_argument("--ontology", required=True, help="ontology YAML path or bundled subject id")
    p_validate.add_argument("--bundle", help="content bundle YAML path")
    p_validate.set_defaults(func=cmd_validate)

    p_synth = sub.add_parser("synth", help="synthesize a content bundle")
    p_synth.add_argument("--ontology", required=True, help="ontology YAML path or bundled subject id")
    p_synth.add_argument("--spec", help="synthesis spec YAML")
    p_synth.add_argument("--lo-ids", nargs="*", help="target LO ids")
    p_synth.add_argument("--seed", type=int, required=True)
    p_synth.add_argument("--out", required=True)
    p_synth.set_defaults(func=cmd_synth)

    p_serve = sub.add_parser("serve", help="serve the ontology atlas gateway")
    p_serve.add_argument("--content-root", help="directory of subject YAML files (or ATLAS_CONTENT_ROOT)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8077)
    p_serve.add_argument("--ui-dist", help="built workspace assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
