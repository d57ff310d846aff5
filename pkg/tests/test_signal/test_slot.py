#!/usr/bin/env python3

"""
Tests for the exception-logging slot
"""

import logging

from kpspanner.signal import Slot


def test_slot_call():
    """
    Test the __call__ method merges constructor and call keywords, the call
    winning on conflicts.
    """
    calls = []
    slot = Slot(lambda **kwa: calls.append(kwa), stage="tree", count=1)

    slot(count=30, elapsed=0.5)

    assert calls == [dict(stage="tree", count=30, elapsed=0.5)]


def test_slot_exception(caplog):
    """
    Test the __call__ swallows and logs exceptions.
    """

    def _slot(**kwargs):
        raise RuntimeError("Whoopsie")

    slot = Slot(_slot)
    with caplog.at_level(logging.ERROR):
        slot()

    assert "Exception in slot" in caplog.text
    assert "Whoopsie" in caplog.text
