#!/usr/bin/env python3

"""
Stretch oracle and property checks.

`exact_stretch` runs a binary-heap Dijkstra from every vertex and reports the
largest ratio between graph distance and Euclidean distance over all pairs of
differently coloured points (in the complete k-partite graph those two
distances coincide, so this is the stretch factor).

The ``check_*`` functions turn the decomposition lemmas into assertions.  They
never raise on a failed property: they return a `CheckReport` carrying the
verdict, the tightest ratio observed and a counterexample.
"""

import heapq
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .params import SpannerAlgorithm
from .geometry import center_distance
from .wspd import is_well_separated


# Relative slack for floating-point comparisons against proven bounds
REL_TOL = 1e-9

# Brute-force caps, overridable from the environment
DEFAULT_COVERAGE_CAP = 300
DEFAULT_LEMMA_CAP = 300


def coverage_cap():
    return int(os.environ.get("KPSPANNER_COVERAGE_CAP", DEFAULT_COVERAGE_CAP))


def lemma_cap():
    return int(os.environ.get("KPSPANNER_LEMMA_CAP", DEFAULT_LEMMA_CAP))


def within(value, bound, rel_tol=REL_TOL):
    """
    ``value <= bound`` allowing a relative slack.
    """
    return value <= bound * (1.0 + rel_tol)


class CheckReport(object):
    """
    Outcome of one property check.
    """

    def __init__(
        self, name, passed, ratio=None, counterexample=None, **details
    ):
        self.name = name
        self.passed = bool(passed)
        # Largest observed lhs/rhs ratio; <= 1 means the bound held
        self.ratio = ratio
        self.counterexample = counterexample
        self.details = details

    def to_dict(self):
        out = {"check": self.name, "passed": self.passed}
        if self.ratio is not None:
            out["ratio"] = self.ratio
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out.update(sorted(self.details.items()))
        return out

    def __bool__(self):
        return self.passed

    def __repr__(self):
        return "CheckReport(%r, passed=%r, ratio=%r, counterexample=%r)" % (
            self.name,
            self.passed,
            self.ratio,
            self.counterexample,
        )


class StretchReport(object):
    """
    Result of the exact stretch computation.
    """

    def __init__(
        self, max_stretch, witness, percentiles, disconnected_pairs, pairs
    ):
        self.max_stretch = max_stretch
        self.witness = witness
        self.percentiles = percentiles
        self.disconnected_pairs = disconnected_pairs
        self.pairs = pairs

    @property
    def connected(self):
        return not self.disconnected_pairs

    def within(self, bound, rel_tol=REL_TOL):
        """
        True if every cross-colour pair is connected with stretch at most
        ``bound * (1 + rel_tol)``.
        """
        return self.connected and within(self.max_stretch, bound, rel_tol)

    def to_dict(self, limit=100):
        return {
            "max_stretch": (
                self.max_stretch
                if math.isfinite(self.max_stretch)
                else "inf"
            ),
            "witness": None if self.witness is None else list(self.witness),
            "pairs": self.pairs,
            "percentiles": self.percentiles,
            "disconnected_count": len(self.disconnected_pairs),
            "disconnected_pairs": [
                list(pair) for pair in self.disconnected_pairs[:limit]
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def __repr__(self):
        return (
            "StretchReport(max_stretch=%r, witness=%r, disconnected=%d)"
        ) % (
            self.max_stretch,
            self.witness,
            len(self.disconnected_pairs),
        )


def shortest_paths(adjacency, source, skip_edge=None):
    """
    Single-source shortest path lengths over non-negative weights, using a
    binary heap.  Unreachable vertices get ``inf``.  ``skip_edge`` names one
    edge (p, q) to treat as absent.
    """
    dist = [math.inf] * len(adjacency)
    dist[source] = 0.0
    done = [False] * len(adjacency)
    heap = [(0.0, source)]
    if skip_edge is not None:
        skip = (min(skip_edge), max(skip_edge))
    else:
        skip = None

    while heap:
        (d_here, here) = heapq.heappop(heap)
        if done[here]:
            continue
        done[here] = True
        for (there, weight) in adjacency[here]:
            if (skip is not None) and (
                (min(here, there), max(here, there)) == skip
            ):
                continue
            candidate = d_here + weight
            if candidate < dist[there]:
                dist[there] = candidate
                heapq.heappush(heap, (candidate, there))
    return dist


class StretchOracle(object):
    """
    Exact stretch computation.  Per-source runs are independent and may be
    spread over ``threads`` worker threads; results are reduced in source
    order so the report does not depend on scheduling.
    """

    PERCENTILES = (50, 90, 99)

    def __init__(self, graph, pointset=None, threads=1, log=None):
        if log is None:
            log = logging.getLogger(self.__class__.__module__)

        if (pointset is not None) and (pointset is not graph.pointset):
            if (pointset.n != graph.n) or not np.array_equal(
                pointset.coords, graph.pointset.coords
            ):
                raise ValueError(
                    "graph vertices do not match the point set "
                    "(%d vertices vs %d points)" % (graph.n, pointset.n)
                )
            recolored = np.flatnonzero(
                pointset.colors != graph.pointset.colors
            )
            if recolored.size:
                bad = int(recolored[0])
                raise ValueError(
                    "graph colours do not match the point set "
                    "(vertex %d has colour %d vs %d)"
                    % (
                        bad,
                        graph.pointset.colors[bad],
                        pointset.colors[bad],
                    )
                )

        self._graph = graph
        self._pointset = graph.pointset if pointset is None else pointset
        self._threads = max(1, int(threads))
        self._log = log

    def _from_source(self, source):
        """
        Stretch ratios from one source to every later differently-coloured
        vertex.
        """
        coords = self._pointset.coords
        colors = self._pointset.colors
        dist = np.array(
            shortest_paths(self._graph.adjacency, source), dtype=np.float64
        )
        later = np.arange(source + 1, self._pointset.n)
        later = later[colors[later] != colors[source]]
        if later.size == 0:
            return (later, np.empty(0))

        euclid = np.linalg.norm(coords[later] - coords[source], axis=1)
        return (later, dist[later] / euclid)

    def run(self):
        n = self._pointset.n
        sources = range(n - 1)
        if self._threads > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                results = list(pool.map(self._from_source, sources))
        else:
            results = [self._from_source(source) for source in sources]

        max_stretch = -math.inf
        witness = None
        disconnected = []
        finite = []
        for (source, (targets, ratios)) in zip(sources, results):
            if ratios.size == 0:
                continue
            unreachable = ~np.isfinite(ratios)
            for target in targets[unreachable]:
                disconnected.append((source, int(target)))
            reachable = ratios[~unreachable]
            finite.append(reachable)

            top = int(np.argmax(ratios))
            if ratios[top] > max_stretch:
                max_stretch = float(ratios[top])
                witness = (source, int(targets[top]))

        finite = np.concatenate(finite) if finite else np.empty(0)
        pairs = int(finite.size) + len(disconnected)
        percentiles = {}
        if finite.size:
            percentiles["mean"] = float(finite.mean())
            for pct in self.PERCENTILES:
                percentiles["p%d" % pct] = float(np.percentile(finite, pct))
            percentiles["max_connected"] = float(finite.max())

        if pairs == 0:
            # No cross-colour pair at all: the stretch is vacuously 1
            max_stretch = 1.0

        report = StretchReport(
            max_stretch, witness, percentiles, disconnected, pairs
        )
        self._log.info(
            "Stretch over %d cross-colour pairs: max %r at %r, "
            "%d disconnected",
            pairs,
            report.max_stretch,
            report.witness,
            len(disconnected),
        )
        return report


def exact_stretch(graph, pointset=None, threads=1, log=None):
    """
    Exact stretch factor of ``graph`` with respect to the complete k-partite
    graph on its points.
    """
    return StretchOracle(graph, pointset, threads=threads, log=log).run()


def check_wspd_coverage(wspd, pointset=None, cap=None):
    """
    Brute-force check that every pair of distinct points is covered by
    exactly one WSPD pair.
    """
    tree = wspd.tree
    n = tree.pointset.n
    if (pointset is not None) and (pointset.n != n):
        raise ValueError("WSPD was not computed over this point set")
    if cap is None:
        cap = coverage_cap()
    if n > cap:
        raise ValueError(
            "n=%d exceeds the brute-force cap of %d; lower n or raise "
            "KPSPANNER_COVERAGE_CAP" % (n, cap)
        )

    counts = np.zeros((n, n), dtype=np.int64)
    for pair in wspd:
        su = tree.points_of(pair.u)
        sv = tree.points_of(pair.v)
        counts[np.ix_(su, sv)] += 1
        counts[np.ix_(sv, su)] += 1

    np.fill_diagonal(counts, 1)
    bad = np.argwhere(counts != 1)
    if bad.size:
        (p, q) = (int(bad[0][0]), int(bad[0][1]))
        (p, q) = (min(p, q), max(p, q))
        return CheckReport(
            "wspd-coverage",
            False,
            counterexample={"p": p, "q": q, "count": int(counts[p, q])},
            pairs=len(wspd),
        )
    return CheckReport("wspd-coverage", True, pairs=len(wspd))


def check_well_separated(wspd):
    """
    Every pair's separation witness must be well-separated, and the pair's
    nodes must lie inside the witness nodes.
    """
    tree = wspd.tree
    for pair in wspd:
        (wu, wv) = pair.witness
        if not is_well_separated(tree[wu].bbox, tree[wv].bbox, wspd.s):
            return CheckReport(
                "well-separated",
                False,
                counterexample={"u": pair.u, "v": pair.v},
            )
        inside = (
            tree.is_ancestor(wu, pair.u) and tree.is_ancestor(wv, pair.v)
        ) or (tree.is_ancestor(wu, pair.v) and tree.is_ancestor(wv, pair.u))
        if not inside:
            return CheckReport(
                "well-separated",
                False,
                counterexample={
                    "u": pair.u,
                    "v": pair.v,
                    "witness": list(pair.witness),
                },
            )
    return CheckReport("well-separated", True, pairs=len(wspd))


def _diameter(coords):
    if coords.shape[0] < 2:
        return 0.0
    diff = coords[:, None, :] - coords[None, :, :]
    return float(np.sqrt((diff**2).sum(axis=2)).max())


def pair_bound_ratios(coords_x, coords_y, s):
    """
    For two point sets claimed well-separated at s, return the two ratios
    ``max |p'p''| / ((2/s) min |pq|)`` (within-set diameter against the
    closest cross distance) and ``max |p'q'| / ((1+4/s) min |pq|)``.
    Both are <= 1 when the sets really are well-separated.
    """
    coords_x = np.atleast_2d(np.asarray(coords_x, dtype=np.float64))
    coords_y = np.atleast_2d(np.asarray(coords_y, dtype=np.float64))
    diff = coords_x[:, None, :] - coords_y[None, :, :]
    cross = np.sqrt((diff**2).sum(axis=2))
    nearest = float(cross.min())
    farthest = float(cross.max())

    diameter = max(_diameter(coords_x), _diameter(coords_y))
    if diameter == 0:
        inner = 0.0
    else:
        inner = diameter / ((2.0 / s) * nearest)
    outer = farthest / ((1.0 + 4.0 / s) * nearest)
    return (inner, outer)


def _sample(rng, items, limit):
    if (limit is None) or (len(items) <= limit):
        return items
    picks = np.sort(rng.choice(len(items), size=limit, replace=False))
    return [items[i] for i in picks]


def check_lemma_bounds(
    tree, wspd, s=None, cap=None, sample_pairs=2000, sample_points=64, seed=0
):
    """
    Check the three decomposition lemmas:

    - pair bounds: within-set distances are at most (2/s) times, and
      cross distances at most (1+4/s) times, the closest cross distance;
    - halving: a node at least d levels below another has at most half its
      longest box side;
    - parent size: for a pair at centre distance l, the parent of each side
      has longest side at least 2l / (sqrt(d)(s+4)).

    Exhaustive up to ``cap`` points, sampled above.  Returns a dict of
    `CheckReport` keyed by check name.
    """
    if s is None:
        s = wspd.s
    if cap is None:
        cap = lemma_cap()
    coords = tree.pointset.coords
    d = tree.d
    n = tree.pointset.n
    exhaustive = n <= cap
    rng = np.random.default_rng(seed)

    # Pair bounds
    pairs = list(wspd)
    if not exhaustive:
        pairs = _sample(rng, pairs, sample_pairs)
    worst = (0.0, None)
    for pair in pairs:
        su = tree.points_of(pair.u)
        sv = tree.points_of(pair.v)
        if not exhaustive:
            su = _sample(rng, list(su), sample_points)
            sv = _sample(rng, list(sv), sample_points)
        ratio = max(pair_bound_ratios(coords[su], coords[sv], s))
        if ratio > worst[0]:
            worst = (ratio, pair.key)
    reports = {
        "pair-bounds": CheckReport(
            "pair-bounds",
            within(worst[0], 1.0),
            ratio=worst[0],
            counterexample=(
                None if within(worst[0], 1.0) else list(worst[1])
            ),
            exhaustive=exhaustive,
        )
    }

    # Halving of the longest side every d levels
    nodes = list(tree.nodes)
    if not exhaustive:
        nodes = _sample(rng, nodes, sample_pairs)
    worst = (0.0, None)
    for node in nodes:
        for ancestor in tree.ancestors(node.node_id):
            if node.depth - tree[ancestor].depth < d:
                continue
            half = 0.5 * tree[ancestor].l_max
            if half == 0:
                continue
            ratio = node.l_max / half
            if ratio > worst[0]:
                worst = (ratio, (ancestor, node.node_id))
    reports["halving"] = CheckReport(
        "halving",
        within(worst[0], 1.0),
        ratio=worst[0],
        counterexample=None if within(worst[0], 1.0) else list(worst[1]),
        exhaustive=exhaustive,
    )

    # Parent box size against pair distance, on the separation witnesses
    witnesses = sorted(set(pair.witness for pair in wspd))
    if not exhaustive:
        witnesses = _sample(rng, witnesses, sample_pairs)
    worst = (0.0, None)
    scale = 2.0 / (math.sqrt(d) * (s + 4.0))
    for (wu, wv) in witnesses:
        ell = center_distance(tree[wu].bbox, tree[wv].bbox)
        for side in (wu, wv):
            parent = tree[side].parent
            if parent is None:
                continue
            required = scale * ell
            have = tree[parent].l_max
            ratio = required / have if have > 0 else math.inf
            if ratio > worst[0]:
                worst = (ratio, (wu, wv, side))
    reports["parent-size"] = CheckReport(
        "parent-size",
        within(worst[0], 1.0),
        ratio=worst[0],
        counterexample=None if within(worst[0], 1.0) else list(worst[1]),
        exhaustive=exhaustive,
    )
    return reports


def check_rep_paths(
    builder, graph=None, bound=None, cap=None, sample_pairs=2000, seed=0
):
    """
    For every cross-colour pair (p, q) covered by an MWSPD pair {S_u, S_v}
    with u a c-node, check that the graph holds a path from p to rep(S_u) of
    length at most ``bound * |pq|``.  ``graph`` defaults to the graph the
    builder produced and ``bound`` to its construction's path bound.
    """
    if graph is None:
        graph = builder.graph
    cls = builder.classification
    tree = builder.tree
    if bound is None:
        bound = builder.params.rep_path_bound(builder.algorithm)
    if cap is None:
        cap = lemma_cap()
    pointset = graph.pointset
    coords = pointset.coords
    colors = pointset.colors
    exhaustive = pointset.n <= cap
    rng = np.random.default_rng(seed)

    pairs = list(builder.mwspd)
    if not exhaustive:
        pairs = _sample(rng, pairs, sample_pairs)

    from_rep = {}
    worst = (0.0, None)
    checked = 0
    for pair in pairs:
        for (u, v) in ((pair.u, pair.v), (pair.v, pair.u)):
            if not cls.is_cnode(u):
                continue
            rep = cls.rep(u)
            if rep not in from_rep:
                from_rep[rep] = np.array(
                    shortest_paths(graph.adjacency, rep), dtype=np.float64
                )
            su = tree.points_of(u)
            sv = tree.points_of(v)
            for p in su:
                others = sv[colors[sv] != colors[p]]
                if others.size == 0:
                    continue
                closest = float(
                    np.linalg.norm(coords[others] - coords[p], axis=1).min()
                )
                # The tightest q for p is the nearest differently coloured one
                ratio = from_rep[rep][p] / (bound * closest)
                checked += 1
                if ratio > worst[0]:
                    worst = (ratio, (int(p), rep, u))
    passed = within(worst[0], 1.0)
    return CheckReport(
        "rep-paths",
        passed,
        ratio=worst[0],
        counterexample=None if passed else list(worst[1]),
        bound=bound,
        checked=checked,
        exhaustive=exhaustive,
    )


def audit_edge_count(graph, n=None, mode=None):
    """
    Edge count normalised for trend tracking: edges/n for the linear
    constructions, edges/(n log2 n) for the singleton-WSPD one.
    """
    if n is None:
        n = graph.n
    if mode is None:
        mode = graph.algorithm or SpannerAlgorithm.ALG1
    mode = SpannerAlgorithm(mode)
    edges = graph.edge_count
    if mode is SpannerAlgorithm.ALG3:
        denominator = n * math.log2(n) if n > 1 else 1.0
    else:
        denominator = float(n)
    return {
        "mode": mode.value,
        "n": n,
        "edges": edges,
        "ratio": edges / denominator,
    }


def check_lower_bound(complete, epsilon, removals=20, seed=0, log=None):
    """
    On a lower-bound instance, delete single red-blue edges from the complete
    graph and confirm the detour between the two endpoints is at least 3
    long, so the stretch is at least 3 / (1 + epsilon/3) >= 3 - epsilon.
    """
    if log is None:
        log = logging.getLogger(__name__)

    pointset = complete.pointset
    colors = pointset.colors
    red_blue = [
        (p, q)
        for (p, q) in complete.edges
        if set((int(colors[p]), int(colors[q]))) == set((1, 2))
    ]
    if not red_blue:
        raise ValueError("graph has no red-blue edges")

    rng = np.random.default_rng(seed)
    chosen = _sample(rng, red_blue, removals)
    adjacency = complete.adjacency
    min_detour = math.inf
    min_stretch = math.inf
    worst = None
    for (r, b) in chosen:
        detour = shortest_paths(adjacency, r, skip_edge=(r, b))[b]
        stretch = detour / pointset.distance(r, b)
        log.debug(
            "Removed (%d, %d): detour %r stretch %r", r, b, detour, stretch
        )
        if stretch < min_stretch:
            worst = (r, b)
        min_detour = min(min_detour, detour)
        min_stretch = min(min_stretch, stretch)

    passed = (min_detour >= 3.0 * (1.0 - REL_TOL)) and (
        min_stretch >= (3.0 - epsilon) * (1.0 - REL_TOL)
    )
    return CheckReport(
        "lower-bound",
        passed,
        counterexample=None if passed else list(worst),
        removals=len(chosen),
        min_detour=min_detour,
        min_stretch=min_stretch,
        required_stretch=3.0 - epsilon,
    )
