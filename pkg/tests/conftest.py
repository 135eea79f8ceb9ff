from __future__ import annotations

import pytest

from readloop.assets import load_bundled_ontology
from readloop.ontology import parse_ontology

MINIMAL_DOC = """\
subject_id: demo
version: 1
chapters:
  - id: ch_one
    title: One Chapter
    learning_objectives:
      - id: lo_one
        statement: Explain the single idea.
        kc_ids: [kc_one]
knowledge_components:
  kc_one:
    label: single idea
    description: The single idea describes how one part of the process shapes the rest.
    misconceptions:
      - id: mi_one
        description: the belief that the single idea never changes anything
"""


@pytest.fixture
def minimal_ontology():
    return parse_ontology(MINIMAL_DOC)


@pytest.fixture(scope="session")
def cs_ontology():
    return load_bundled_ontology("computer_science")


@pytest.fixture(scope="session")
def biology_ontology():
    return load_bundled_ontology("general_biology")


@pytest.fixture(scope="session")
def chemistry_ontology():
    return load_bundled_ontology("inorganic_chemistry")


@pytest.fixture(scope="session")
def cs_lo_ids(cs_ontology):
    """Four LOs across the first two chapters, protocol-style."""
    chapters = cs_ontology.chapters
    return (
        chapters[0].learning_objectives[0].id,
        chapters[0].learning_objectives[1].id,
        chapters[1].learning_objectives[0].id,
        chapters[1].learning_objectives[1].id,
    )
