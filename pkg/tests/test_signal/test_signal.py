#!/usr/bin/env python3

"""
Tests for signalslot wrappers
"""

from kpspanner.signal import Signal, Slot


def test_connect():
    """
    Test connect links a slot function to the signal.
    """
    calls = []
    signal = Signal()
    signal.connect(lambda **kw: calls.append(kw))
    signal.emit(stage="tree")
    signal.emit(stage="wspd")

    assert [call["stage"] for call in calls] == ["tree", "wspd"]


def test_connect_fixed_kwargs():
    """
    Test keyword arguments given at connect time are merged into emissions.
    """
    calls = []
    signal = Signal()
    signal.connect(lambda **kw: calls.append(kw), source="bench")
    signal.emit(row=1)

    assert calls == [dict(source="bench", row=1)]


def test_find_slot():
    """
    Test _find_slot can locate a slot
    """
    slot_fn = lambda **kw: None
    signal = Signal()
    signal.connect(slot_fn)

    slot = signal._find_slot(slot_fn)
    assert isinstance(slot, Slot)
    assert slot.func is slot_fn


def test_disconnect():
    """
    Test disconnect detaches a slot function from the signal.
    """
    calls = []
    slot_fn = lambda **kw: calls.append(kw)
    signal = Signal()
    signal.connect(slot_fn)
    signal.emit(myarg=123)
    signal.disconnect(slot_fn)
    signal.emit(myarg=456)

    assert calls == [dict(myarg=123)]


def test_is_connected():
    """
    Test is_connected reports connected and unconnected slot functions.
    """
    slot_fn = lambda **kw: None
    signal = Signal()
    assert not signal.is_connected(slot_fn)
    signal.connect(slot_fn)
    assert signal.is_connected(slot_fn)


def test_emit_survives_broken_slot():
    """
    Test a slot raising an exception does not stop later slots.
    """
    calls = []

    def _broken(**kwargs):
        raise RuntimeError("broken")

    signal = Signal()
    signal.connect(_broken)
    signal.connect(lambda **kw: calls.append(kw))
    signal.emit(count=3)

    assert calls == [dict(count=3)]
