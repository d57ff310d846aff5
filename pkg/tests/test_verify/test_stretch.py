#!/usr/bin/env python3

"""
Exact stretch oracle tests
"""

import math

import numpy as np
from pytest import approx

from kpspanner.spanner import SpannerGraph, complete_kpartite, make_spanner
from kpspanner.verify import (
    StretchOracle,
    exact_stretch,
    shortest_paths,
    within,
)

from ..pointsets import pointset, random_points


def _triangle():
    """
    Red and blue points joined only through a green midpoint above them.
    """
    points = pointset((1, 0.0, 0.0), (2, 1.0, 0.0), (3, 0.5, 0.5))
    graph = SpannerGraph(points)
    graph.add_edge(0, 2, "input")
    graph.add_edge(1, 2, "input")
    return graph


def _simple_path_distance(graph, source, target):
    """
    Shortest path by enumerating every simple path.
    """
    best = math.inf
    stack = [(source, 0.0, frozenset([source]))]
    while stack:
        (here, length, seen) = stack.pop()
        if here == target:
            best = min(best, length)
            continue
        for (there, weight) in graph.adjacency[here]:
            if there not in seen:
                stack.append((there, length + weight, seen | {there}))
    return best


def _random_subgraph(points, keep, seed):
    rng = np.random.default_rng(seed)
    complete = complete_kpartite(points)
    graph = SpannerGraph(points)
    for (p, q) in complete.edges:
        if rng.random() < keep:
            graph.add_edge(p, q, "input")
    return graph


def test_within():
    assert within(1.0, 1.0)
    assert within(1.0 + 1e-12, 1.0)
    assert not within(1.001, 1.0)


def test_shortest_paths_unreachable():
    adjacency = [[(1, 2.0)], [(0, 2.0)], []]
    assert shortest_paths(adjacency, 0) == [0.0, 2.0, math.inf]


def test_shortest_paths_skip_edge():
    adjacency = [
        [(1, 1.0), (2, 1.0)],
        [(0, 1.0), (2, 5.0)],
        [(0, 1.0), (1, 5.0)],
    ]
    assert shortest_paths(adjacency, 1, skip_edge=(0, 1))[0] == 6.0
    assert shortest_paths(adjacency, 1, skip_edge=(1, 0))[0] == 6.0


def test_matches_path_enumeration():
    """
    Dijkstra agrees with exhaustive simple-path search on small graphs.
    """
    for seed in range(20):
        points = random_points(8, 3, seed=seed)
        graph = _random_subgraph(points, 0.6, seed)
        report = exact_stretch(graph)

        expected = 1.0
        for p in range(points.n):
            for q in range(p + 1, points.n):
                if points.colors[p] == points.colors[q]:
                    continue
                ratio = _simple_path_distance(graph, p, q) / (
                    points.distance(p, q)
                )
                expected = max(expected, ratio)
        assert report.max_stretch == approx(expected, rel=1e-12)


def test_triangle():
    report = exact_stretch(_triangle())
    assert report.max_stretch == approx(math.sqrt(2))
    assert report.witness == (0, 1)
    assert report.pairs == 3
    assert report.connected
    assert report.within(1.5)
    assert not report.within(1.4)


def test_disconnected():
    graph = SpannerGraph(pointset((1, 0, 0), (2, 1, 0), (1, 2, 0)))
    graph.add_edge(0, 1, "input")
    report = exact_stretch(graph)
    assert report.max_stretch == math.inf
    assert report.disconnected_pairs == [(1, 2)]
    assert not report.connected
    assert not report.within(1000.0)

    out = report.to_dict()
    assert out["max_stretch"] == "inf"
    assert out["disconnected_count"] == 1
    assert out["disconnected_pairs"] == [[1, 2]]


def test_complete_graph_stretch_one():
    points = random_points(30, 4, seed=2)
    report = exact_stretch(complete_kpartite(points))
    assert report.max_stretch == approx(1.0)
    assert report.percentiles["p50"] == approx(1.0)
    assert report.pairs == sum(
        1
        for p in range(points.n)
        for q in range(p + 1, points.n)
        if points.colors[p] != points.colors[q]
    )


def test_single_color_vacuous():
    graph = SpannerGraph(pointset((1, 0, 0), (1, 1, 0)))
    report = exact_stretch(graph)
    assert report.max_stretch == 1.0
    assert report.pairs == 0
    assert report.witness is None
    assert report.percentiles == {}


def test_threads_identical():
    points = random_points(80, 3, seed=3)
    graph = make_spanner("alg1", points, sep=8).graph
    serial = exact_stretch(graph)
    threaded = exact_stretch(graph, threads=4)
    assert serial.to_dict() == threaded.to_dict()


def test_scale_invariant():
    points = random_points(60, 2, seed=4)
    graph = make_spanner("alg2", points, sep=8).graph
    scaled = SpannerGraph(points.scaled(4.0))
    for (p, q) in graph.edges:
        scaled.add_edge(p, q, "input")
    assert exact_stretch(scaled).max_stretch == approx(
        exact_stretch(graph).max_stretch
    )


def test_vertex_mismatch():
    graph = _triangle()
    other = pointset((1, 0, 0), (2, 1, 0), (3, 0.5, 0.5), (1, 2, 2))
    try:
        StretchOracle(graph, other)
        assert False, "Should not have worked"
    except ValueError as e:
        assert str(e) == (
            "graph vertices do not match the point set "
            "(3 vertices vs 4 points)"
        )


def test_color_mismatch():
    """
    Same coordinates with other colours describe a different complete
    k-partite graph.
    """
    graph = _triangle()
    other = pointset((1, 0.0, 0.0), (3, 1.0, 0.0), (2, 0.5, 0.5))
    try:
        exact_stretch(graph, other)
        assert False, "Should not have worked"
    except ValueError as e:
        assert str(e) == (
            "graph colours do not match the point set "
            "(vertex 1 has colour 2 vs 3)"
        )


def test_same_points_other_object():
    graph = _triangle()
    again = pointset((1, 0.0, 0.0), (2, 1.0, 0.0), (3, 0.5, 0.5))
    assert exact_stretch(graph, again).max_stretch == approx(math.sqrt(2))


def test_logs_summary(logger):
    exact_stretch(_triangle(), log=logger)
    assert logger.messages("info") == [
        "Stretch over 3 cross-colour pairs: max %r at (0, 1), "
        "0 disconnected" % exact_stretch(_triangle()).max_stretch
    ]
