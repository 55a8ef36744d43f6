"""Shared fixtures: the bundled catalogue and its coset actions, built once.

The coset actions are the expensive shared objects (a few seconds each), so
they are session-scoped; tests that need to *time* a cold build construct
their own copies instead of using these.
"""

import json
from pathlib import Path

import pytest

from saxl.actions import LabelledAction, OmegaPoint, bundled_catalogue_path, coset_action, load_catalogue


@pytest.fixture(scope="session")
def catalogue():
    return load_catalogue(bundled_catalogue_path())


@pytest.fixture(scope="session")
def table_rows():
    path = Path(bundled_catalogue_path()).parent / "table_rows.json"
    return json.loads(path.read_text())


@pytest.fixture(scope="session")
def fixture_actions(catalogue, table_rows):
    """name -> coset action for every expectation row of the catalogue."""
    out = {}
    for name in sorted(table_rows):
        entry = catalogue[name]
        out[name] = coset_action(entry.group, entry.subgroup, name)
    return out


def natural_action(group, name):
    """The defining action of a permutation group, with index labels."""
    labels = tuple(OmegaPoint("coset_index", i) for i in range(group.degree))
    return LabelledAction(group, labels, name)
