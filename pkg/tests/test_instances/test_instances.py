#!/usr/bin/env python3

"""
Instance generator tests
"""

import numpy as np

from kpspanner.instances import (
    GeneratorSpec,
    InstanceType,
    gen_lower_bound,
    gen_random,
    lower_bound_counts,
    lower_bound_edge_threshold,
    lower_bound_geometry,
    make_instance,
)


def test_spec_repr():
    assert repr(GeneratorSpec(10, 2, seed=3)) == (
        "GeneratorSpec(n=10, k=2, d=2, seed=3, distribution='uniform', "
        "epsilon=None)"
    )


def test_deterministic():
    for distribution in ("uniform", "clustered"):
        spec = GeneratorSpec(200, 3, d=3, seed=7, distribution=distribution)
        first = gen_random(spec)
        second = gen_random(spec)
        assert np.array_equal(first.coords, second.coords)
        assert np.array_equal(first.colors, second.colors)


def test_seed_changes_instance():
    first = gen_random(GeneratorSpec(50, 2, seed=1))
    second = gen_random(GeneratorSpec(50, 2, seed=2))
    assert not np.array_equal(first.coords, second.coords)


def test_uniform_in_unit_cube():
    points = gen_random(GeneratorSpec(500, 4, d=3, seed=1))
    assert points.d == 3
    assert np.all(points.coords >= 0.0)
    assert np.all(points.coords < 1.0)


def test_class_sizes_balanced():
    for (n, k) in ((10, 3), (101, 7), (64, 8), (5, 5)):
        points = gen_random(GeneratorSpec(n, k, seed=n))
        sizes = points.class_sizes
        assert sorted(sizes) == list(range(1, k + 1))
        assert set(sizes.values()) <= set([n // k, -(-n // k)])


def test_every_point_its_own_color():
    points = gen_random(GeneratorSpec(4, 4))
    assert sorted(points.colors.tolist()) == [1, 2, 3, 4]


def test_clustered_points_distinct():
    points = gen_random(
        GeneratorSpec(300, 2, seed=5, distribution="clustered")
    )
    assert np.unique(points.coords, axis=0).shape[0] == 300


def test_spec_errors():
    for (kwargs, message) in (
        (dict(n=2, k=3), "k must not exceed n"),
        (
            dict(n=4, k=2, d=1, distribution="lower-bound", epsilon=0.5),
            "lower-bound instances need d >= 2",
        ),
        (
            dict(n=4, k=1, distribution="lower-bound", epsilon=0.5),
            "lower-bound instances need k >= 2",
        ),
    ):
        try:
            GeneratorSpec(**kwargs)
            assert False, "Should not have worked: %r" % (kwargs,)
        except ValueError as e:
            assert str(e) == message


def test_spec_bad_distribution():
    try:
        GeneratorSpec(4, 2, distribution="gaussian")
        assert False, "Should not have worked"
    except ValueError:
        pass


def test_lower_bound_counts():
    assert lower_bound_counts(6, 2) == (3, 3, 0)
    assert lower_bound_counts(10, 4) == (4, 4, 2)
    assert lower_bound_counts(7, 2) == (4, 3, 0)
    assert lower_bound_edge_threshold(10, 4) == 16


def test_lower_bound_classes():
    points = gen_lower_bound(10, 4, 0.5)
    assert points.n == 10
    assert points.class_sizes == {1: 4, 2: 4, 3: 1, 4: 1}


def test_lower_bound_distances():
    for (n, k, eps) in ((50, 2, 0.5), (60, 6, 0.2), (21, 3, 0.9)):
        points = gen_lower_bound(n, k, eps)
        facts = lower_bound_geometry(points, eps)
        assert facts["min_red_blue"] >= 1.0
        assert facts["max_red_blue"] <= 1.0 + eps / 3.0
        assert facts["min_cross_disk"] >= 1.0


def test_lower_bound_higher_dimension():
    points = gen_lower_bound(12, 3, 0.5, d=4)
    assert points.d == 4
    assert np.all(points.coords[:, 2:] == 0.0)


def test_lower_bound_seedless():
    first = gen_lower_bound(30, 3, 0.4)
    second = make_instance("lower-bound", n=30, k=3, epsilon=0.4, seed=9)
    assert np.array_equal(first.coords, second.coords)


def test_lower_bound_needs_epsilon():
    try:
        gen_lower_bound(10, 2, 1.5)
        assert False, "Should not have worked"
    except ValueError:
        pass


def test_make_instance():
    points = make_instance("clustered", n=40, k=4, d=3, seed=2)
    assert (points.n, points.k, points.d) == (40, 4, 3)
    assert np.array_equal(
        points.coords,
        gen_random(
            GeneratorSpec(
                40, 4, d=3, seed=2, distribution=InstanceType.CLUSTERED
            )
        ).coords,
    )
