from __future__ import annotations

import pytest

from swlab.corpus import corpus, CORPUS_NAMES
from swlab.pipeline import compute_report


@pytest.fixture(scope="session")
def entries():
    """All corpus entries, validated at load."""
    return {name: corpus(name) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def reports(entries):
    """Full pipeline reports, computed once for the whole session."""
    return {name: compute_report(entry.complex())
            for name, entry in entries.items()}
