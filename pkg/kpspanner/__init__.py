#!/usr/bin/env python3

"""
Sparse spanners of complete k-partite geometric graphs.
"""

__license__ = "GPL-2.0-or-later"
__version__ = "0.1.0"
