#!/usr/bin/env python3

"""
Well-separated pair decomposition over a split-tree.

Two boxes are well-separated with respect to ``s`` when the two balls of
common radius rho centred on the box centres (rho being half the diagonal of
the larger box) are at least ``s * rho`` apart.

The standard decomposition is found with the usual find-pairs walk: for every
internal node, pair its two children; a pair that is not well-separated is
refined by replacing the node with the larger box by its two children.  The
singleton variant replaces every standard pair {X, Y} with |X| <= |Y| by the
|X| pairs {{x}, Y}; each such pair remembers the standard pair it came from
as its separation witness.
"""

import enum
import logging

from .geometry import center_distance


class WspdVariant(enum.Enum):
    STANDARD = "standard"
    SINGLETON = "singleton"


class WspdPair(object):
    """
    An unordered pair of split-tree nodes {S_u, S_v}, stored with u < v.
    """

    def __init__(self, u, v, dist, witness=None):
        if u > v:
            (u, v) = (v, u)
        self.u = u
        self.v = v
        self.dist = dist
        # Standard pair whose boxes certify separation
        self.witness = witness or (u, v)

    @property
    def key(self):
        return (self.u, self.v)

    def other(self, node_id):
        """
        Return the partner of ``node_id`` in this pair.
        """
        if node_id == self.u:
            return self.v
        elif node_id == self.v:
            return self.u
        raise KeyError("node %d is not part of pair %r" % (node_id, self.key))

    def __eq__(self, other):
        if not isinstance(other, WspdPair):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "WspdPair(u=%d, v=%d, dist=%r)" % (self.u, self.v, self.dist)


class WspdPairList(object):
    """
    The pairs of a decomposition, canonically sorted by (u, v).
    """

    def __init__(self, tree, pairs, s, variant=WspdVariant.STANDARD):
        self._tree = tree
        self._pairs = sorted(pairs, key=lambda pair: pair.key)
        self._s = s
        self._variant = WspdVariant(variant)
        self._incident = None

    @property
    def tree(self):
        return self._tree

    @property
    def pairs(self):
        return self._pairs

    @property
    def s(self):
        return self._s

    @property
    def variant(self):
        return self._variant

    def __len__(self):
        return len(self._pairs)

    def __iter__(self):
        return iter(self._pairs)

    def __getitem__(self, idx):
        return self._pairs[idx]

    def incident(self, node_id):
        """
        The pairs in which the given node takes part.
        """
        if self._incident is None:
            incident = {}
            for pair in self._pairs:
                incident.setdefault(pair.u, []).append(pair)
                incident.setdefault(pair.v, []).append(pair)
            self._incident = incident
        return self._incident.get(node_id, [])

    @property
    def nodes(self):
        """
        Set of node ids appearing in at least one pair.
        """
        self.incident(0)
        return set(self._incident.keys())

    def filtered(self, keep):
        """
        Return a new pair list holding only the pairs for which
        ``keep(pair)`` is true.
        """
        return WspdPairList(
            self._tree,
            [pair for pair in self._pairs if keep(pair)],
            self._s,
            self._variant,
        )

    def dump(self):
        """
        One pair per line: ``u_id v_id |S_u| |S_v| dist``.
        """
        return "".join(
            "%d %d %d %d %r\n"
            % (
                pair.u,
                pair.v,
                self._tree[pair.u].size,
                self._tree[pair.v].size,
                pair.dist,
            )
            for pair in self._pairs
        )


def is_well_separated(a, b, s):
    """
    Test whether boxes a and b are well-separated with respect to s.
    """
    if s <= 0:
        raise ValueError("separation constant must be positive, got %r" % s)
    rho = max(a.radius, b.radius)
    return center_distance(a, b) - 2.0 * rho >= s * rho


def _split_first(tree, a, b):
    """
    Pick which of two non-separated nodes to refine: the larger box, then the
    larger point count, then the smaller node id.
    """
    na = tree[a]
    nb = tree[b]
    ka = (na.l_max, na.size, -a)
    kb = (nb.l_max, nb.size, -b)
    return (a, b) if ka >= kb else (b, a)


def compute_wspd(tree, s, log=None):
    """
    Compute the standard WSPD of the tree's point set with respect to s.
    """
    if log is None:
        log = logging.getLogger(__name__)

    if s <= 0:
        raise ValueError("separation constant must be positive, got %r" % s)

    pairs = []
    for node in tree.nodes:
        if node.is_leaf:
            continue

        stack = [(node.left, node.right)]
        while stack:
            (a, b) = stack.pop()
            box_a = tree[a].bbox
            box_b = tree[b].bbox
            if is_well_separated(box_a, box_b, s):
                pairs.append(WspdPair(a, b, center_distance(box_a, box_b)))
                continue

            (refine, keep) = _split_first(tree, a, b)
            for child in tree[refine].children:
                stack.append((child, keep))

    wspd = WspdPairList(tree, pairs, s, WspdVariant.STANDARD)
    log.info(
        "WSPD with s=%r: %d pairs over %d points (%.3f pairs/point)",
        s,
        len(wspd),
        tree.pointset.n,
        len(wspd) / float(tree.pointset.n),
    )
    return wspd


def singleton_wspd(standard, log=None):
    """
    Expand a standard WSPD into its singleton variant.
    """
    if log is None:
        log = logging.getLogger(__name__)

    tree = standard.tree
    pairs = []
    for pair in standard:
        (x, y) = (pair.u, pair.v)
        # u < v already, so on equal sizes the smaller id is split
        if tree[y].size < tree[x].size:
            (x, y) = (y, x)

        box_y = tree[y].bbox
        for point in tree.points_of(x):
            leaf = tree.leaf_of(point)
            pairs.append(
                WspdPair(
                    leaf,
                    y,
                    center_distance(tree[leaf].bbox, box_y),
                    witness=pair.key,
                )
            )

    wspd = WspdPairList(tree, pairs, standard.s, WspdVariant.SINGLETON)
    log.info(
        "Singleton WSPD with s=%r: %d pairs from %d standard pairs",
        standard.s,
        len(wspd),
        len(standard),
    )
    return wspd


def compute_singleton_wspd(tree, s, log=None):
    """
    Compute the singleton-variant WSPD, where every pair has a one-point
    side.
    """
    return singleton_wspd(compute_wspd(tree, s, log=log), log=log)
