#!/usr/bin/env python3

"""
Small hand-built point sets shared by the tests.
"""

import numpy as np

from kpspanner.geometry import ColoredPointSet
from kpspanner.instances import GeneratorSpec, gen_random


def pointset(*points):
    """
    Build a point set from ``(color, x, y, ...)`` tuples.
    """
    return ColoredPointSet(
        [p[1:] for p in points], [p[0] for p in points]
    )


def random_points(n, k, d=2, seed=0, distribution="uniform"):
    return gen_random(
        GeneratorSpec(n, k, d=d, seed=seed, distribution=distribution)
    )


# Two red points close together, one blue point far away
RED_RED_BLUE = ((1, 0.0, 0.0), (1, 0.1, 0.0), (2, 10.0, 0.0))

# The three-point tree example: x split, then a y split on the right
L_SHAPE = ((1, 0.0, 0.0), (2, 4.0, 0.0), (1, 4.0, 1.0))


def two_clusters(n, seed=0, gap=1.0):
    """
    ``n`` red points in the unit square and ``n`` blue points in the unit
    square shifted ``1 + gap`` to the right.
    """
    rng = np.random.default_rng(seed)
    red = rng.random((n, 2))
    blue = rng.random((n, 2)) + [1.0 + gap, 0.0]
    return ColoredPointSet(
        np.concatenate((red, blue)), [1] * n + [2] * n
    )
