#!/usr/bin/env python3

"""
Well-separated pair decomposition tests
"""

import math

import numpy as np
from pytest import approx

from kpspanner.geometry import BoundingBox
from kpspanner.splittree import build_split_tree
from kpspanner.verify import check_well_separated, check_wspd_coverage
from kpspanner.wspd import (
    WspdPair,
    WspdVariant,
    compute_wspd,
    is_well_separated,
)

from ..pointsets import pointset, random_points


UNIT = BoundingBox([0, 0], [1, 1])
FAR_UNIT = BoundingBox([9, 9], [10, 10])


def test_point_boxes_always_separated():
    """
    Two point boxes have zero radius and are separated at any s.
    """
    a = BoundingBox([0, 0], [0, 0])
    b = BoundingBox([1, 0], [1, 0])
    for s in (0.5, 2, 1000):
        assert is_well_separated(a, b, s)


def test_separation_threshold():
    """
    The unit boxes 9 apart diagonally are separated at s=15 but not s=17.
    """
    assert is_well_separated(UNIT, FAR_UNIT, 15)
    assert not is_well_separated(UNIT, FAR_UNIT, 17)


def test_separation_uses_larger_radius():
    """
    Both balls take the radius of the larger box.
    """
    big = BoundingBox([0, 0], [2, 2])
    small = BoundingBox([5, 1], [5, 1])
    # centre distance 4, rho = sqrt(2): 4 - 2 sqrt(2) >= s sqrt(2) iff
    # s <= 4/sqrt(2) - 2
    limit = 4 / math.sqrt(2) - 2
    assert is_well_separated(big, small, limit * 0.999)
    assert not is_well_separated(big, small, limit * 1.001)


def test_separation_bad_s():
    try:
        is_well_separated(UNIT, FAR_UNIT, 0)
        assert False, "Should not have worked"
    except ValueError as e:
        assert str(e) == "separation constant must be positive, got 0"


def test_two_points():
    """
    n=2 gives exactly the pair of leaves.
    """
    tree = build_split_tree(pointset((1, 0, 0), (2, 1, 0)))
    wspd = compute_wspd(tree, 2)
    assert [pair.key for pair in wspd] == [(1, 2)]
    assert wspd[0].dist == 1.0
    assert wspd.variant is WspdVariant.STANDARD


def test_three_points():
    """
    {(0,0),(1,0),(8,0)} at s=2: the two close leaves, then the close pair
    against the far point.
    """
    tree = build_split_tree(pointset((1, 0, 0), (2, 1, 0), (1, 8, 0)))
    wspd = compute_wspd(tree, 2)
    assert [pair.key for pair in wspd] == [(1, 4), (2, 3)]
    assert wspd[0].dist == 7.5
    assert wspd.dump() == "1 4 2 1 7.5\n2 3 1 1 1.0\n"


def test_sorted_and_unordered():
    tree = build_split_tree(random_points(60, 2, seed=8))
    wspd = compute_wspd(tree, 4)
    keys = [pair.key for pair in wspd]
    assert keys == sorted(keys)
    assert all(u < v for (u, v) in keys)


def test_pair_normalised():
    pair = WspdPair(5, 2, 1.0)
    assert pair.key == (2, 5)
    assert pair.witness == (2, 5)
    assert pair.other(2) == 5
    assert pair.other(5) == 2
    try:
        pair.other(3)
        assert False, "Should not have worked"
    except KeyError:
        pass


def test_coverage_and_separation():
    """
    The decomposition covers every pair exactly once with well-separated
    pairs, across dimensions and separation constants.
    """
    for d in (1, 2, 3):
        for s in (2, 8, 32):
            points = random_points(80, 2, d=d, seed=d * 100 + s)
            tree = build_split_tree(points)
            wspd = compute_wspd(tree, s)
            assert check_wspd_coverage(wspd, points).passed
            assert check_well_separated(wspd).passed
            for pair in wspd:
                assert is_well_separated(
                    tree[pair.u].bbox, tree[pair.v].bbox, s
                )
                assert pair.dist == approx(
                    np.linalg.norm(
                        tree[pair.u].bbox.center - tree[pair.v].bbox.center
                    )
                )


def test_linear_pair_count():
    """
    Pairs per point stay bounded as n doubles.
    """
    ratios = []
    for n in (64, 128, 256, 512):
        tree = build_split_tree(random_points(n, 2, seed=n))
        ratios.append(len(compute_wspd(tree, 2)) / float(n))
    assert max(ratios) < 2.0 * min(ratios)


def test_incident():
    tree = build_split_tree(pointset((1, 0, 0), (2, 1, 0), (1, 8, 0)))
    wspd = compute_wspd(tree, 2)
    assert [pair.key for pair in wspd.incident(4)] == [(1, 4)]
    assert wspd.incident(0) == []
    assert wspd.nodes == {1, 2, 3, 4}


def test_logs(logger):
    tree = build_split_tree(pointset((1, 0, 0), (2, 1, 0)))
    compute_wspd(tree, 2, log=logger)
    assert logger.messages("info") == [
        "WSPD with s=2: 1 pairs over 2 points (0.500 pairs/point)"
    ]
