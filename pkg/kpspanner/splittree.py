#!/usr/bin/env python3

"""
Fair split-tree construction.

The root stores the bounding box of the whole set; each internal node cuts the
longest side of its box into two equal halves and recurses on the points that
fall on either side.  Leaves hold exactly one point.

Nodes are numbered in pre-order (the root is node 0 and every parent has a
smaller id than its children), and ``point_order`` lists the point indices so
that every node's points form the contiguous slice ``[begin, end)``.  The
leftmost point of that slice is what the spanner code uses as the node's
representative.
"""

import json
import logging

import numpy as np

from .geometry import BoundingBox, l_max


class SplitNode(object):
    """
    One node of the split-tree.
    """

    def __init__(self, node_id, bbox, begin, end, parent, depth):
        self.node_id = node_id
        self.bbox = bbox
        self.begin = begin
        self.end = end
        self.parent = parent
        self.depth = depth
        self.left = None
        self.right = None
        # Cut made at this node (internal nodes only)
        self.split_dim = None
        self.split_value = None

    @property
    def size(self):
        return self.end - self.begin

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def children(self):
        if self.is_leaf:
            return ()
        return (self.left, self.right)

    @property
    def l_max(self):
        return l_max(self.bbox)

    def __repr__(self):
        return "SplitNode(id=%d, range=[%d,%d), depth=%d, bbox=%r)" % (
            self.node_id,
            self.begin,
            self.end,
            self.depth,
            self.bbox,
        )


class SplitTree(object):
    """
    Binary fair split-tree over a `ColoredPointSet`.
    """

    @classmethod
    def build(cls, pointset, log=None):
        """
        Build the split-tree of the given point set.
        """
        if log is None:
            log = logging.getLogger(cls.__module__)

        if pointset is None or len(pointset) == 0:
            raise ValueError("empty point set")

        coords = pointset.coords
        order = np.arange(pointset.n, dtype=np.int64)
        nodes = []
        fallback_splits = 0

        # (begin, end, parent id, depth, is-left-child)
        stack = [(0, pointset.n, None, 0, False)]
        while stack:
            (begin, end, parent, depth, is_left) = stack.pop()
            members = coords[order[begin:end]]
            bbox = BoundingBox(members.min(axis=0), members.max(axis=0))

            node = SplitNode(len(nodes), bbox, begin, end, parent, depth)
            nodes.append(node)
            if parent is not None:
                if is_left:
                    nodes[parent].left = node.node_id
                else:
                    nodes[parent].right = node.node_id

            if node.size == 1:
                continue

            # Longest side; argmax picks the smallest index on ties
            dim = int(np.argmax(bbox.sides))
            mid = (bbox.lo[dim] + bbox.hi[dim]) / 2.0
            idx = order[begin:end]
            below = idx[coords[idx, dim] < mid]
            above = idx[coords[idx, dim] >= mid]

            if (below.size == 0) or (above.size == 0):
                # The midpoint collapsed onto an endpoint in floating point;
                # cut at the median instead so both sides are non-empty.
                fallback_splits += 1
                ranked = idx[np.argsort(coords[idx, dim], kind="stable")]
                half = ranked.size // 2
                (below, above) = (ranked[:half], ranked[half:])
                mid = float(coords[above[0], dim])
                log.debug(
                    "Node %d: median cut on dim %d at %r",
                    node.node_id,
                    dim,
                    mid,
                )

            node.split_dim = dim
            node.split_value = float(mid)
            cut = begin + below.size
            order[begin:cut] = below
            order[cut:end] = above

            # Right pushed first so the left subtree is numbered first
            stack.append((cut, end, node.node_id, depth + 1, False))
            stack.append((begin, cut, node.node_id, depth + 1, True))

        tree = cls(pointset, nodes, order)
        log.info(
            "Built split-tree over %d points: %d nodes, height %d%s",
            pointset.n,
            len(nodes),
            tree.height,
            (
                (" (%d median cuts)" % fallback_splits)
                if fallback_splits
                else ""
            ),
        )
        return tree

    def __init__(self, pointset, nodes, point_order):
        point_order.setflags(write=False)
        self._pointset = pointset
        self._nodes = nodes
        self._order = point_order

        leaf_of = np.empty(pointset.n, dtype=np.int64)
        for node in nodes:
            if node.is_leaf:
                leaf_of[point_order[node.begin]] = node.node_id
        leaf_of.setflags(write=False)
        self._leaf_of = leaf_of

    @property
    def pointset(self):
        return self._pointset

    @property
    def nodes(self):
        return self._nodes

    @property
    def root(self):
        return 0

    @property
    def point_order(self):
        return self._order

    @property
    def height(self):
        return max(node.depth for node in self._nodes)

    @property
    def d(self):
        return self._pointset.d

    def __len__(self):
        return len(self._nodes)

    def __getitem__(self, node_id):
        return self._nodes[node_id]

    def points_of(self, node_id):
        """
        Indices of the points stored below the given node.
        """
        node = self._nodes[node_id]
        return self._order[node.begin : node.end]

    def leaf_of(self, point):
        """
        Node id of the leaf storing the given point index.
        """
        return int(self._leaf_of[point])

    def is_ancestor(self, ancestor, node_id):
        """
        True if ``ancestor`` is ``node_id`` or lies on its path to the root.
        """
        a = self._nodes[ancestor]
        n = self._nodes[node_id]
        return (a.begin <= n.begin) and (n.end <= a.end) and (
            a.depth <= n.depth
        )

    def ancestors(self, node_id):
        """
        Yield the proper ancestors of a node, nearest first.
        """
        parent = self._nodes[node_id].parent
        while parent is not None:
            yield parent
            parent = self._nodes[parent].parent

    def dump(self, fmt="text"):
        """
        Debug dump of node ids, boxes and ranges.
        """
        if fmt == "json":
            return json.dumps(
                [
                    {
                        "id": node.node_id,
                        "parent": node.parent,
                        "children": list(node.children),
                        "depth": node.depth,
                        "range": [node.begin, node.end],
                        "lo": node.bbox.lo.tolist(),
                        "hi": node.bbox.hi.tolist(),
                        "split_dim": node.split_dim,
                        "split_value": node.split_value,
                    }
                    for node in self._nodes
                ]
            )
        elif fmt == "text":
            lines = []
            for node in self._nodes:
                if node.is_leaf:
                    what = "point %d" % self._order[node.begin]
                else:
                    what = "cut dim %d at %r" % (
                        node.split_dim,
                        node.split_value,
                    )
                lines.append(
                    "%s#%d [%d,%d) lo=%r hi=%r %s"
                    % (
                        "  " * node.depth,
                        node.node_id,
                        node.begin,
                        node.end,
                        node.bbox.lo.tolist(),
                        node.bbox.hi.tolist(),
                        what,
                    )
                )
            return "\n".join(lines) + "\n"
        else:
            raise ValueError("Unrecognised dump format %r" % (fmt,))


def build_split_tree(pointset, log=None):
    """
    Build the fair split-tree of a `ColoredPointSet`.
    """
    return SplitTree.build(pointset, log=log)
