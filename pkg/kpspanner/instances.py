#!/usr/bin/env python3

"""
Deterministic instance generators.

Random instances draw from a seeded `numpy.random.Generator`, so the same
`GeneratorSpec` always yields the same point set.  The lower-bound instance
is seedless: three small disks on the x axis, two holding a red and a blue
cluster roughly one unit apart and a third holding one point of every other
colour, placed so that removing any red-blue edge from the complete k-partite
graph forces a detour of length at least 3.
"""

import enum
import math

import numpy as np

from .check import checkepsilon, checkinteger
from .geometry import ColoredPointSet
from .spanner import SpannerInvariantError


class InstanceType(enum.Enum):
    UNIFORM = "uniform"
    CLUSTERED = "clustered"
    LOWER_BOUND = "lower-bound"


# Standard deviation of each blob in clustered instances, relative to the
# unit cube the blob centres are drawn from.
CLUSTER_SPREAD = 0.05

# Points are laid out within this fraction of a disk's radius so none sits
# on the boundary.
DISK_FILL = 0.9

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class GeneratorSpec(object):
    """
    Parameters of one generated instance.
    """

    def __init__(
        self,
        n,
        k,
        d=2,
        seed=0,
        distribution=InstanceType.UNIFORM,
        epsilon=None,
    ):
        self.n = checkinteger("n", n, minimum=1, required=True)
        self.k = checkinteger("k", k, minimum=1, required=True)
        self.d = checkinteger("d", d, minimum=1, required=True)
        self.seed = checkinteger("seed", seed, minimum=0, required=True)
        self.distribution = InstanceType(distribution)

        if self.k > self.n:
            raise ValueError("k must not exceed n")

        if self.distribution is InstanceType.LOWER_BOUND:
            if self.d < 2:
                raise ValueError("lower-bound instances need d >= 2")
            if self.k < 2:
                raise ValueError("lower-bound instances need k >= 2")
            self.epsilon = checkepsilon(epsilon)
        else:
            self.epsilon = None

    def __repr__(self):
        return (
            "GeneratorSpec(n=%r, k=%r, d=%r, seed=%r, distribution=%r, "
            "epsilon=%r)"
            % (
                self.n,
                self.k,
                self.d,
                self.seed,
                self.distribution.value,
                self.epsilon,
            )
        )


def _round_robin_colors(rng, n, k):
    return rng.permutation(np.arange(n) % k + 1)


def _distinct_rows(rng, coords, draw):
    """
    Redraw rows that duplicate an earlier row until all are distinct.
    """
    while True:
        (_, first) = np.unique(coords, axis=0, return_index=True)
        if first.size == coords.shape[0]:
            return coords
        dup = np.setdiff1d(np.arange(coords.shape[0]), first)
        coords[dup] = draw(dup.size)


def gen_random(spec):
    """
    Random coloured point set: uniform in [0, 1]^d or k Gaussian blobs.
    Colours are dealt round-robin and shuffled, so class sizes differ by at
    most one.
    """
    if spec.distribution is InstanceType.LOWER_BOUND:
        return gen_lower_bound(spec.n, spec.k, spec.epsilon, d=spec.d)

    rng = np.random.default_rng(spec.seed)
    (n, k, d) = (spec.n, spec.k, spec.d)

    if spec.distribution is InstanceType.UNIFORM:

        def draw(count):
            return rng.random((count, d))

    else:
        centres = rng.random((k, d))

        def draw(count):
            blob = rng.integers(0, k, size=count)
            return centres[blob] + rng.normal(
                scale=CLUSTER_SPREAD, size=(count, d)
            )

    coords = _distinct_rows(rng, draw(n), draw)
    colors = _round_robin_colors(rng, n, k)
    return ColoredPointSet(coords, colors)


def lower_bound_counts(n, k):
    """
    (red, blue, other) point counts of the lower-bound instance.
    """
    m = n - k + 2
    return ((m + 1) // 2, m // 2, k - 2)


def lower_bound_edge_threshold(n, k):
    """
    Number of red-blue edges in the lower-bound instance.  A subgraph with
    fewer edges lacks one of them, and so has stretch at least 3/(1+eps/3).
    """
    (red, blue, _) = lower_bound_counts(n, k)
    return red * blue


def lower_bound_centres(epsilon):
    return (
        (0.0, 0.0),
        (1.0 + epsilon / 6.0, 0.0),
        (2.0 + epsilon / 3.0, 0.0),
    )


def _sunflower(count, centre, radius):
    """
    ``count`` distinct points spread over a disk, strictly inside it.
    """
    i = np.arange(count, dtype=np.float64)
    r = DISK_FILL * radius * np.sqrt((i + 0.5) / count)
    theta = i * GOLDEN_ANGLE
    return np.column_stack(
        (centre[0] + r * np.cos(theta), centre[1] + r * np.sin(theta))
    )


def gen_lower_bound(n, k, epsilon, d=2):
    """
    The lower-bound instance: red points (colour 1) in a disk at the origin,
    blue points (colour 2) in a disk at (1+eps/6, 0), and one point of each
    colour 3..k in a disk at (2+eps/3, 0).  Disks have radius eps/12; extra
    dimensions are zero.
    """
    spec = GeneratorSpec(
        n, k, d=d, distribution=InstanceType.LOWER_BOUND, epsilon=epsilon
    )
    (red, blue, other) = lower_bound_counts(spec.n, spec.k)
    radius = spec.epsilon / 12.0
    (c_red, c_blue, c_other) = lower_bound_centres(spec.epsilon)

    planar = [
        _sunflower(red, c_red, radius),
        _sunflower(blue, c_blue, radius),
    ]
    colors = [np.full(red, 1), np.full(blue, 2)]
    if other:
        planar.append(_sunflower(other, c_other, radius))
        colors.append(np.arange(3, spec.k + 1))

    planar = np.concatenate(planar)
    coords = np.zeros((spec.n, spec.d))
    coords[:, :2] = planar
    pointset = ColoredPointSet(coords, np.concatenate(colors))

    facts = lower_bound_geometry(pointset, spec.epsilon)
    if not (
        (facts["min_red_blue"] >= 1.0)
        and (facts["max_red_blue"] <= 1.0 + spec.epsilon / 3.0)
        and (facts["min_cross_disk"] >= 1.0)
    ):
        raise SpannerInvariantError(
            "lower-bound instance violates its distance bounds: %r" % facts
        )
    return pointset


def lower_bound_geometry(pointset, epsilon):
    """
    Distance facts of a lower-bound instance: the red-blue distance range and
    the smallest distance between points in different disks.
    """
    coords = pointset.coords
    colors = pointset.colors
    centres = np.zeros((3, pointset.d))
    centres[:, :2] = lower_bound_centres(epsilon)

    disk = np.argmin(
        np.linalg.norm(coords[:, None, :] - centres[None, :, :], axis=2),
        axis=1,
    )
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))

    red_blue = dist[np.ix_(colors == 1, colors == 2)]
    cross = dist[disk[:, None] != disk[None, :]]
    return {
        "min_red_blue": float(red_blue.min()),
        "max_red_blue": float(red_blue.max()),
        "min_cross_disk": float(cross.min()) if cross.size else math.inf,
    }


def make_instance(type, **kwargs):
    """
    Create a point set of the named type.  This suits configuration loaded
    from YAML or JSON.

    :param type: ``uniform``, ``clustered`` or ``lower-bound``
    :Keyword Arguments: passed to `GeneratorSpec`: ``n``, ``k``, ``d``,
                        ``seed`` and, for ``lower-bound``, ``epsilon``.
    """
    return gen_random(GeneratorSpec(distribution=type, **kwargs))
