#!/usr/bin/env python3

"""
Convenience wrappers around `signalslot`, used to report build stages and
benchmark rows to whoever is listening.
"""

from signalslot import Signal as BaseSignal, Slot as BaseSlot
import logging


class Slot(BaseSlot):
    """
    Slot that logs, rather than propagates, exceptions raised by the slot
    function.  A broken listener must not abort a spanner build.
    """

    def __init__(self, slot_fn, **kwargs):
        super(Slot, self).__init__(slot_fn)
        self._slot_kwargs = kwargs

    def __call__(self, **kwargs):
        call_kwargs = dict(self._slot_kwargs)
        call_kwargs.update(kwargs)
        try:
            super(Slot, self).__call__(**call_kwargs)
        except Exception:
            logging.getLogger(self.__class__.__module__).exception(
                "Exception in slot %s", self.func
            )


class Signal(BaseSignal):
    """
    `signalslot.Signal` where every slot gets called, regardless of what the
    others return or raise.
    """

    def connect(self, slot, **kwargs):
        """
        Connect a slot function, with optional fixed keyword arguments that
        are merged into every emission.
        """
        super(Signal, self).connect(Slot(slot, **kwargs))

    def _find_slot(self, slot):
        for maybe_slot in self.slots:
            if isinstance(maybe_slot, Slot) and (maybe_slot.func is slot):
                return maybe_slot
            elif maybe_slot is slot:
                return maybe_slot

    def disconnect(self, slot):
        """
        Disconnect the first matching slot, if connected.
        """
        slot = self._find_slot(slot)
        if slot:
            super(Signal, self).disconnect(slot)

    def is_connected(self, slot):
        return self._find_slot(slot) is not None
