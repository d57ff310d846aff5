#!/usr/bin/env python3

"""
Spanners of complete k-partite geometric graphs.

The constructions share one pipeline:

    1. build the split-tree and a WSPD over it;
    2. drop the pairs whose union is monochromatic (the MWSPD);
    3. classify nodes: a monochromatic node of colour c that takes part in an
       MWSPD pair is a c-node, a node with two or more colours taking part in
       a pair is multichromatic;
    4. for every c-node u pick cl(u): the partner of the closest MWSPD pair
       anchored at a c-node on the path from u to the root;
    5. emit edges.

Edges carry provenance tags naming the family that added them:

    ``star``       every point of a c-leaf to a non-c representative of cl
    ``cl``         each c-node's representative to a non-c rep of its cl
    ``pair``       each c-node's representative across its MWSPD pairs
    ``child``      each c-child's representative to its c-parent's cl
    ``zeta-down``  each zeta-level c-child's representative to the ancestor's
                   cl (replaces ``child`` in the improved constructions)
    ``zeta-up``    each zeta-level c-child's cl to the ancestor's
                   representative
    ``multi``      one edge per pair of two multichromatic nodes
    ``complete``   the complete k-partite graph
"""

import enum
import json
import logging
import time

import numpy as np

from .params import (
    SpannerAlgorithm,
    SpannerParams,
    DEFAULT_DELTA,
    derive_params,
)
from .signal import Signal
from .splittree import build_split_tree
from .wspd import compute_wspd, singleton_wspd


class SpannerInvariantError(AssertionError):
    """
    A property the construction guarantees did not hold.
    """

    def __init__(self, message, node_id=None):
        super(SpannerInvariantError, self).__init__(message)
        self.node_id = node_id


class ColorStatus(enum.IntEnum):
    """
    Colour status of a split-tree node that holds more than one colour.
    Single-colour nodes carry their (positive) colour id instead.
    """

    MULTICHROMATIC = 0


def node_colors(tree):
    """
    Per-node colour: the colour id if every point below the node shares it,
    else `ColorStatus.MULTICHROMATIC`.
    """
    colors = tree.pointset.colors
    out = np.zeros(len(tree), dtype=np.int64)
    # Children always have larger ids than their parent
    for node in reversed(tree.nodes):
        if node.is_leaf:
            out[node.node_id] = colors[tree.point_order[node.begin]]
        else:
            left = out[node.left]
            if left == out[node.right]:
                out[node.node_id] = left
            else:
                out[node.node_id] = ColorStatus.MULTICHROMATIC
    return out


def compute_mwspd(wspd, pointset=None, log=None):
    """
    Remove the pairs whose union holds a single colour.
    """
    if log is None:
        log = logging.getLogger(__name__)

    tree = wspd.tree
    if (pointset is not None) and (pointset is not tree.pointset):
        raise ValueError("WSPD was not computed over this point set")

    colors = node_colors(tree)

    def _bichromatic(pair):
        cu = colors[pair.u]
        return (cu == ColorStatus.MULTICHROMATIC) or (cu != colors[pair.v])

    mwspd = wspd.filtered(_bichromatic)
    log.info(
        "MWSPD: %d of %d pairs are bichromatic", len(mwspd), len(wspd)
    )
    return mwspd


class NodeClassification(object):
    """
    Per-node c-node / multichromatic flags and representatives.
    """

    NONE = -1

    def __init__(self, tree, mwspd):
        self._tree = tree
        n_nodes = len(tree)
        colors = tree.pointset.colors
        order = tree.point_order

        self._color = node_colors(tree)
        in_pair = np.zeros(n_nodes, dtype=bool)
        for node_id in mwspd.nodes:
            in_pair[node_id] = True
        mono = self._color != ColorStatus.MULTICHROMATIC

        self._in_pair = in_pair
        self._is_cnode = in_pair & mono
        self._is_multi = in_pair & ~mono

        # Representatives: the leftmost point, and for multichromatic nodes
        # the first point in leaf order with a different colour.
        rep = np.empty(n_nodes, dtype=np.int64)
        rep_prime = np.full(n_nodes, self.NONE, dtype=np.int64)
        for node in tree.nodes:
            rep[node.node_id] = order[node.begin]
            if self._is_multi[node.node_id]:
                members = order[node.begin : node.end]
                differs = colors[members] != colors[members[0]]
                rep_prime[node.node_id] = members[int(np.argmax(differs))]
        self._rep = rep
        self._rep_prime = rep_prime

        # Nearest c-node strictly above each node (pre-order walk)
        above = np.full(n_nodes, self.NONE, dtype=np.int64)
        # c-node depth counted in c-nodes along the path
        cdepth = np.zeros(n_nodes, dtype=np.int64)
        for node in tree.nodes:
            for child in node.children:
                if self._is_cnode[node.node_id]:
                    above[child] = node.node_id
                else:
                    above[child] = above[node.node_id]
            if self._is_cnode[node.node_id]:
                parent = above[node.node_id]
                cdepth[node.node_id] = (
                    0 if parent == self.NONE else cdepth[parent] + 1
                )
        self._c_parent = np.where(self._is_cnode, above, self.NONE)
        self._c_depth = cdepth

        # c-leaf: no c-node strictly below (post-order walk)
        below = np.zeros(n_nodes, dtype=bool)
        for node in reversed(tree.nodes):
            for child in node.children:
                if self._is_cnode[child] or below[child]:
                    below[node.node_id] = True
        self._is_croot = self._is_cnode & (self._c_parent == self.NONE)
        self._is_cleaf = self._is_cnode & ~below

    @property
    def tree(self):
        return self._tree

    def color(self, node_id):
        """
        Colour of the node, or `ColorStatus.MULTICHROMATIC`.
        """
        return int(self._color[node_id])

    def is_cnode(self, node_id):
        return bool(self._is_cnode[node_id])

    def is_multichromatic(self, node_id):
        return bool(self._is_multi[node_id])

    def is_croot(self, node_id):
        return bool(self._is_croot[node_id])

    def is_cleaf(self, node_id):
        return bool(self._is_cleaf[node_id])

    def rep(self, node_id):
        return int(self._rep[node_id])

    def rep_prime(self, node_id):
        """
        Second representative of a multichromatic node, or None.
        """
        rep_prime = int(self._rep_prime[node_id])
        return None if rep_prime == self.NONE else rep_prime

    def c_parent(self, node_id):
        """
        The nearest proper c-node ancestor of a c-node, or None for c-roots.
        """
        parent = int(self._c_parent[node_id])
        return None if parent == self.NONE else parent

    def c_depth(self, node_id):
        """
        Number of c-nodes strictly above a c-node.
        """
        return int(self._c_depth[node_id])

    @property
    def cnodes(self):
        """
        c-node ids in pre-order.
        """
        return [int(u) for u in np.flatnonzero(self._is_cnode)]

    @property
    def multichromatic_nodes(self):
        return [int(u) for u in np.flatnonzero(self._is_multi)]

    def c_ancestors(self, node_id, limit=None):
        """
        Yield (levels, ancestor) for the c-nodes above a c-node, nearest
        first, at most ``limit`` of them.
        """
        level = 0
        parent = self.c_parent(node_id)
        while (parent is not None) and ((limit is None) or (level < limit)):
            level += 1
            yield (level, parent)
            parent = self.c_parent(parent)

    def other_color_rep(self, node_id, color):
        """
        A representative of the node whose colour is not ``color``.
        """
        colors = self._tree.pointset.colors
        rep = self.rep(node_id)
        if colors[rep] != color:
            return rep
        rep_prime = self.rep_prime(node_id)
        if (rep_prime is not None) and (colors[rep_prime] != color):
            return rep_prime
        raise SpannerInvariantError(
            "node %d has no representative avoiding color %d"
            % (node_id, color),
            node_id=node_id,
        )


def classify_nodes(tree, mwspd, pointset=None, log=None):
    """
    Compute c-node / multichromatic flags and representatives.
    """
    if log is None:
        log = logging.getLogger(__name__)
    if (pointset is not None) and (pointset is not tree.pointset):
        raise ValueError("split-tree was not built over this point set")

    cls = NodeClassification(tree, mwspd)
    log.info(
        "Classified nodes: %d c-nodes (%d c-roots, %d c-leaves), "
        "%d multichromatic",
        len(cls.cnodes),
        sum(1 for u in cls.cnodes if cls.is_croot(u)),
        sum(1 for u in cls.cnodes if cls.is_cleaf(u)),
        len(cls.multichromatic_nodes),
    )
    return cls


class ClosestPairAssignment(object):
    """
    cl(S_u) for every c-node u: the partner node of the closest MWSPD pair
    anchored on u's c-node path to the root.
    """

    def __init__(self, targets):
        # node -> (dist, anchor, target)
        self._targets = targets

    def __contains__(self, node_id):
        return node_id in self._targets

    def __len__(self):
        return len(self._targets)

    def target(self, node_id):
        return self._targets[node_id][2]

    def dist(self, node_id):
        return self._targets[node_id][0]

    def anchor(self, node_id):
        """
        The c-node on the root path whose pair was chosen.
        """
        return self._targets[node_id][1]


def compute_cl(tree, mwspd, cls, log=None):
    """
    Assign cl(S_u) to every c-node with one pre-order pass, carrying the best
    pair found so far down each c-node chain.
    """
    if log is None:
        log = logging.getLogger(__name__)

    # Ranking: distance, then deeper anchor, then smaller partner id
    best = {}
    for u in cls.cnodes:
        parent = cls.c_parent(u)
        candidate = best.get(parent) if parent is not None else None
        depth = tree[u].depth

        pairs = mwspd.incident(u)
        if not pairs:
            raise SpannerInvariantError(
                "c-node %d takes part in no MWSPD pair" % u, node_id=u
            )
        for pair in pairs:
            partner = pair.other(u)
            key = (pair.dist, -depth, partner)
            if (candidate is None) or (key < candidate[0]):
                candidate = (key, u, partner)
        best[u] = candidate

    assignment = ClosestPairAssignment(
        dict(
            (u, (key[0], anchor, partner))
            for (u, (key, anchor, partner)) in best.items()
        )
    )
    log.debug("Assigned cl for %d c-nodes", len(assignment))
    return assignment


class SpannerGraph(object):
    """
    Undirected geometric graph on the points of a `ColoredPointSet`, whose
    every edge joins two different colours.
    """

    @classmethod
    def decode(cls, text, pointset):
        """
        Read an edge list (``i j weight provenance`` per line).  Weights are
        recomputed from the point set.
        """
        graph = cls(pointset)
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if (not line) or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) < 2:
                raise ValueError(
                    "line %d: expected 'i j [weight [provenance]]'" % lineno
                )
            (i, j) = (int(fields[0]), int(fields[1]))
            for idx in (i, j):
                if not (0 <= idx < pointset.n):
                    raise ValueError(
                        "line %d: vertex %d not in point set of %d points"
                        % (lineno, idx, pointset.n)
                    )
            tags = fields[3].split("+") if len(fields) > 3 else ["input"]
            for tag in tags:
                graph.add_edge(i, j, tag)
        return graph

    def __init__(self, pointset, algorithm=None, params=None):
        self._pointset = pointset
        self._edges = {}
        self._adjacency = None
        self.algorithm = (
            None if algorithm is None else SpannerAlgorithm(algorithm)
        )
        self.params = params

    @property
    def pointset(self):
        return self._pointset

    @property
    def n(self):
        return self._pointset.n

    def add_edge(self, p, q, tag):
        """
        Add the edge (p, q), merging provenance with any existing copy.
        """
        p = int(p)
        q = int(q)
        if p == q:
            raise SpannerInvariantError("self-loop at point %d" % p)
        if self._pointset.color_of(p) == self._pointset.color_of(q):
            raise SpannerInvariantError(
                "edge (%d, %d) joins two points of color %d"
                % (p, q, self._pointset.color_of(p))
            )
        key = (p, q) if p < q else (q, p)
        self._edges.setdefault(key, set()).add(tag)
        self._adjacency = None

    def remove_edge(self, p, q):
        key = (p, q) if p < q else (q, p)
        del self._edges[key]
        self._adjacency = None

    def has_edge(self, p, q):
        key = (p, q) if p < q else (q, p)
        return key in self._edges

    def copy(self):
        clone = SpannerGraph(self._pointset, self.algorithm, self.params)
        clone._edges = dict((k, set(v)) for (k, v) in self._edges.items())
        return clone

    @property
    def edges(self):
        """
        Sorted list of (i, j) with i < j.
        """
        return sorted(self._edges.keys())

    @property
    def edge_count(self):
        return len(self._edges)

    def __len__(self):
        return len(self._edges)

    def provenance(self, p, q):
        key = (p, q) if p < q else (q, p)
        return frozenset(self._edges[key])

    def weight(self, p, q):
        return self._pointset.distance(p, q)

    @property
    def family_counts(self):
        """
        Number of distinct edges carrying each provenance tag.
        """
        counts = {}
        for tags in self._edges.values():
            for tag in tags:
                counts[tag] = counts.get(tag, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def adjacency(self):
        """
        Per-vertex list of (neighbour, weight).
        """
        if self._adjacency is None:
            adjacency = [[] for _ in range(self.n)]
            coords = self._pointset.coords
            for (p, q) in self.edges:
                w = float(np.linalg.norm(coords[p] - coords[q]))
                adjacency[p].append((q, w))
                adjacency[q].append((p, w))
            self._adjacency = adjacency
        return self._adjacency

    @property
    def bound(self):
        if self.algorithm is None:
            return None
        if self.algorithm is SpannerAlgorithm.COMPLETE:
            return 1.0
        return self.params.bound(self.algorithm)

    @property
    def certified(self):
        if self.algorithm is None:
            return False
        if self.algorithm is SpannerAlgorithm.COMPLETE:
            return True
        return self.params.certified(self.algorithm)

    def encode(self):
        """
        Edge list, one ``i j weight provenance`` line per edge.
        """
        return "".join(
            "%d %d %r %s\n"
            % (p, q, self.weight(p, q), "+".join(sorted(self._edges[(p, q)])))
            for (p, q) in self.edges
        )

    def __repr__(self):
        return "SpannerGraph(n=%d, edges=%d, algorithm=%s)" % (
            self.n,
            self.edge_count,
            None if self.algorithm is None else self.algorithm.value,
        )


class SpannerBuilder(object):
    """
    Runs one construction end to end and keeps the intermediate structures
    (tree, WSPD, MWSPD, classification, cl) for inspection and verification.

    ``stage_completed`` is emitted after each stage with keyword arguments
    ``stage``, ``elapsed`` (seconds) and ``count``.
    """

    def __init__(self, pointset, algorithm, params, log=None):
        if log is None:
            log = logging.getLogger(self.__class__.__module__)

        self._log = log
        self._pointset = pointset
        self._algorithm = SpannerAlgorithm(algorithm)
        self._params = params

        if (self._algorithm is not SpannerAlgorithm.COMPLETE) and (
            params.d != pointset.d
        ):
            raise ValueError(
                "parameters are for d=%d but points have d=%d"
                % (params.d, pointset.d)
            )
        if self._algorithm in (SpannerAlgorithm.ALG2, SpannerAlgorithm.ALG3):
            if params.delta is None:
                raise ValueError(
                    "%s needs delta; use derive_params() or pass delta"
                    % self._algorithm.value
                )

        self.tree = None
        self.wspd = None
        self.mwspd = None
        self.classification = None
        self.cl = None
        self.graph = None
        self.timings = {}

        self.stage_completed = Signal()

    @property
    def algorithm(self):
        return self._algorithm

    @property
    def params(self):
        return self._params

    def _stage(self, name, started, count):
        elapsed = time.monotonic() - started
        self.timings[name] = elapsed
        self._log.debug("Stage %s: %d items in %.6fs", name, count, elapsed)
        self.stage_completed.emit(stage=name, elapsed=elapsed, count=count)

    def build(self):
        """
        Run the construction and return the `SpannerGraph`.
        """
        graph = SpannerGraph(self._pointset, self._algorithm, self._params)
        if self._algorithm is SpannerAlgorithm.COMPLETE:
            started = time.monotonic()
            self._add_complete(graph)
            self.graph = graph
            self._stage("edges", started, graph.edge_count)
            return graph

        if not graph.certified:
            self._log.warning(
                "%s with %r: stretch bound %r is not certified",
                self._algorithm.value,
                self._params,
                graph.bound,
            )

        log = self._log
        started = time.monotonic()
        self.tree = build_split_tree(self._pointset, log=log.getChild("tree"))
        self._stage("tree", started, len(self.tree))

        started = time.monotonic()
        wspd = compute_wspd(
            self.tree, self._params.s, log=log.getChild("wspd")
        )
        if self._algorithm is SpannerAlgorithm.ALG3:
            wspd = singleton_wspd(wspd, log=log.getChild("wspd"))
        self.wspd = wspd
        self._stage("wspd", started, len(wspd))

        started = time.monotonic()
        self.mwspd = compute_mwspd(wspd, log=log.getChild("mwspd"))
        self._stage("mwspd", started, len(self.mwspd))

        started = time.monotonic()
        self.classification = classify_nodes(
            self.tree, self.mwspd, log=log.getChild("classify")
        )
        self._stage("classify", started, len(self.classification.cnodes))

        started = time.monotonic()
        self.cl = compute_cl(
            self.tree,
            self.mwspd,
            self.classification,
            log=log.getChild("cl"),
        )
        self._stage("cl", started, len(self.cl))

        started = time.monotonic()
        self._add_cnode_edges(graph)
        self._add_multichromatic_edges(graph)
        self.graph = graph
        self._stage("edges", started, graph.edge_count)

        self._log.info(
            "%s: %d edges over %d points (%.3f edges/point), families %s",
            self._algorithm.value,
            graph.edge_count,
            self._pointset.n,
            graph.edge_count / float(self._pointset.n),
            graph.family_counts,
        )
        return graph

    def _add_complete(self, graph):
        colors = self._pointset.colors
        for p in range(self._pointset.n):
            for q in np.flatnonzero(colors[p + 1 :] != colors[p]):
                graph.add_edge(p, p + 1 + int(q), "complete")

    def _add_cnode_edges(self, graph):
        tree = self.tree
        cls = self.classification
        cl = self.cl
        improved = self._algorithm in (
            SpannerAlgorithm.ALG2,
            SpannerAlgorithm.ALG3,
        )
        zeta = self._params.zeta if improved else None

        for u in cls.cnodes:
            c = cls.color(u)
            rep_u = cls.rep(u)
            target = cls.other_color_rep(cl.target(u), c)

            if cls.is_cleaf(u):
                for p in tree.points_of(u):
                    graph.add_edge(p, target, "star")

            graph.add_edge(rep_u, target, "cl")

            for pair in self.mwspd.incident(u):
                partner = pair.other(u)
                graph.add_edge(
                    rep_u, cls.other_color_rep(partner, c), "pair"
                )

            if not improved:
                # u as a c-child of its c-parent
                parent = cls.c_parent(u)
                if parent is not None:
                    graph.add_edge(
                        rep_u,
                        cls.other_color_rep(cl.target(parent), c),
                        "child",
                    )
                continue

            # u as a zeta-level c-child of each c-node up to zeta levels up
            for (_, ancestor) in cls.c_ancestors(u, limit=zeta):
                graph.add_edge(
                    rep_u,
                    cls.other_color_rep(cl.target(ancestor), c),
                    "zeta-down",
                )
                graph.add_edge(target, cls.rep(ancestor), "zeta-up")

    def _add_multichromatic_edges(self, graph):
        cls = self.classification
        colors = self._pointset.colors
        for pair in self.mwspd:
            if not (
                cls.is_multichromatic(pair.u)
                and cls.is_multichromatic(pair.v)
            ):
                continue
            rep_u = cls.rep(pair.u)
            rep_v = cls.rep(pair.v)
            if colors[rep_u] != colors[rep_v]:
                graph.add_edge(rep_u, rep_v, "multi")
            else:
                graph.add_edge(rep_u, cls.rep_prime(pair.v), "multi")

    def report(self, timings=False):
        """
        JSON-ready build summary with a stable key order.
        """
        graph = self.graph
        pointset = self._pointset
        out = {
            "n": pointset.n,
            "k": pointset.k,
            "d": pointset.d,
            "algorithm": self._algorithm.value,
        }
        if self._algorithm is not SpannerAlgorithm.COMPLETE:
            out["params"] = self._params.to_dict()
            out["wspd_pairs"] = len(self.wspd)
            out["mwspd_pairs"] = len(self.mwspd)
        out["bound"] = graph.bound
        out["certified"] = graph.certified
        if self._algorithm is SpannerAlgorithm.ALG1:
            out["certification"] = "see Case-inequality check: %r" % (
                list(self._params.case_inequalities()),
            )
        out["edge_count"] = graph.edge_count
        out["edges_per_point"] = graph.edge_count / float(pointset.n)
        out["families"] = graph.family_counts
        if timings:
            out["timings_ms"] = dict(
                (stage, 1000.0 * elapsed)
                for (stage, elapsed) in self.timings.items()
            )
        return out

    def report_json(self, timings=False):
        return json.dumps(self.report(timings=timings), indent=2) + "\n"


def build_spanner(pointset, algorithm, params, log=None):
    """
    Build a spanner with the given algorithm and parameters, returning the
    `SpannerBuilder` (the graph is its ``graph`` attribute).
    """
    builder = SpannerBuilder(pointset, algorithm, params, log=log)
    builder.build()
    return builder


def build_spanner_alg1(pointset, sep, log=None):
    """
    Constant-stretch construction with a linear number of edges.
    """
    if sep <= 4:
        (log or logging.getLogger(__name__)).warning(
            "Separation constant %r <= 4; Algorithm 1 expects s > 4", sep
        )
    params = SpannerParams(sep, pointset.d)
    return build_spanner(pointset, SpannerAlgorithm.ALG1, params, log).graph


def build_spanner_alg2(pointset, params, log=None):
    """
    (5+epsilon)-stretch construction with a linear number of edges.
    """
    return build_spanner(pointset, SpannerAlgorithm.ALG2, params, log).graph


def build_spanner_alg3(pointset, params, log=None):
    """
    (3+epsilon)-stretch construction with O(n log n) edges, run over the
    singleton WSPD.
    """
    return build_spanner(pointset, SpannerAlgorithm.ALG3, params, log).graph


def complete_kpartite(pointset, log=None):
    """
    The complete k-partite graph on the point set.
    """
    return build_spanner(
        pointset, SpannerAlgorithm.COMPLETE, None, log
    ).graph


def make_spanner(
    algorithm, pointset, sep=None, epsilon=None, delta=None, log=None
):
    """
    Build a spanner from loose parameters, the way a configuration file or
    command line provides them.

    :param algorithm: ``alg1``, ``alg2``, ``alg3`` or ``complete``
    :param sep: separation constant (heuristic mode); exclusive with epsilon
    :param epsilon: target slack; derives certified s and delta
    :param delta: shortcut depth for alg2/alg3 in heuristic mode
                  (default 7)
    """
    algorithm = SpannerAlgorithm(algorithm)
    if algorithm is SpannerAlgorithm.COMPLETE:
        return build_spanner(pointset, algorithm, None, log)

    if (sep is None) == (epsilon is None):
        raise ValueError("exactly one of sep and epsilon must be given")

    if epsilon is not None:
        params = derive_params(epsilon, pointset.d)
    elif algorithm is SpannerAlgorithm.ALG1:
        params = SpannerParams(sep, pointset.d)
    else:
        params = SpannerParams(
            sep,
            pointset.d,
            delta=DEFAULT_DELTA if delta is None else delta,
        )
    return build_spanner(pointset, algorithm, params, log)
