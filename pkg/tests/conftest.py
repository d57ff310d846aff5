#!/usr/bin/env python3

"""
py.test configuration settings and fixture definitions.
"""

import pytest

from .fixtures.logger import logger

assert logger


@pytest.fixture(autouse=True)
def default_caps(monkeypatch):
    """
    Run every test against the built-in brute-force caps, whatever the
    environment says.
    """
    for name in (
        "KPSPANNER_COVERAGE_CAP",
        "KPSPANNER_LEMMA_CAP",
        "KPSPANNER_STRETCH_CAP",
    ):
        monkeypatch.delenv(name, raising=False)
