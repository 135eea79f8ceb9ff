"""Access to the subject ontology fixtures bundled with the package."""

from __future__ import annotations

from importlib import resources

from .ontology import Ontology, parse_ontology

BUNDLED_SUBJECTS = ("computer_science", "general_biology", "inorganic_chemistry")


def bundled_ontology_text(subject_id: str) -> str:
    if subject_id not in BUNDLED_SUBJECTS:
        raise KeyError(f"no bundled ontology for subject: {subject_id}")
    return (
        resources.files("readloop")
        .joinpath(f"assets/ontologies/{subject_id}.yaml")
        .read_text("utf-8")
    )


def load_bundled_ontology(subject_id: str) -> Ontology:
    return parse_ontology(bundled_ontology_text(subject_id))
