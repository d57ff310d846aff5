#!/usr/bin/env python3

"""
Points, colours, bounding boxes and the distance functions used throughout
the package.

A `ColoredPointSet` is the input universe: n distinct points in R^d, each
carrying one colour id from 1..k.  Everything downstream refers to points by
their ordinal index in this set, so the set is immutable once constructed.

Two text encodings are supported:

    - CSV: one point per line, ``color,x1,x2,...,xd``
    - JSON: ``{"d": d, "k": k, "points": [{"color": c, "coords": [...]}]}``

Both print coordinates with Python's shortest round-tripping float
representation, so decoding an encoded set yields identical floats.
"""

import json
import math

import numpy as np


class Point(object):
    """
    A single point of a `ColoredPointSet`.  This is a lightweight view; the
    coordinates live in the parent set's array.
    """

    def __init__(self, index, coords, color):
        self._index = index
        self._coords = tuple(float(c) for c in coords)
        self._color = color

    @property
    def index(self):
        return self._index

    @property
    def coords(self):
        return self._coords

    @property
    def color(self):
        return self._color

    @property
    def d(self):
        return len(self._coords)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return (self.index, self.coords, self.color) == (
            other.index,
            other.coords,
            other.color,
        )

    def __hash__(self):
        return hash((self.index, self.coords, self.color))

    def __repr__(self):
        return "Point(index=%r, coords=%r, color=%r)" % (
            self.index,
            self.coords,
            self.color,
        )


class ColoredPointSet(object):
    """
    n points in R^d partitioned into k colour classes C_1..C_k.
    """

    FORMAT_CSV = "csv"
    FORMAT_JSON = "json"

    @classmethod
    def decode(cls, text, fmt=FORMAT_CSV):
        """
        Decode a point set from its CSV or JSON text form.
        """
        if fmt == cls.FORMAT_CSV:
            return cls._decode_csv(text)
        elif fmt == cls.FORMAT_JSON:
            return cls._decode_json(text)
        else:
            raise ValueError("Unrecognised point set format %r" % (fmt,))

    @classmethod
    def _decode_csv(cls, text):
        colors = []
        coords = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if (not line) or line.startswith("#"):
                continue

            fields = line.split(",")
            if len(fields) < 2:
                raise ValueError(
                    "line %d: expected color,x1,...,xd but got %r"
                    % (lineno, line)
                )
            try:
                colors.append(int(fields[0]))
                coords.append([float(f) for f in fields[1:]])
            except ValueError:
                raise ValueError(
                    "line %d: malformed point %r" % (lineno, line)
                )

        return cls(coords, colors)

    @classmethod
    def _decode_json(cls, text):
        doc = json.loads(text)
        try:
            points = doc["points"]
        except (KeyError, TypeError):
            raise ValueError("JSON point set has no 'points' list")

        colors = []
        coords = []
        for (idx, p) in enumerate(points):
            try:
                colors.append(p["color"])
                coords.append([float(c) for c in p["coords"]])
            except (KeyError, TypeError):
                raise ValueError(
                    "point %d: expected 'color' and 'coords'" % idx
                )
        pointset = cls(coords, colors)

        # Declared shape must agree with the data
        if ("d" in doc) and (doc["d"] != pointset.d):
            raise ValueError(
                "JSON declares d=%r but points have d=%d"
                % (doc["d"], pointset.d)
            )
        if ("k" in doc) and (doc["k"] != pointset.k):
            raise ValueError(
                "JSON declares k=%r but points have k=%d"
                % (doc["k"], pointset.k)
            )
        return pointset

    @classmethod
    def load(cls, path):
        """
        Read a point set from a file, picking the format from the extension.
        """
        fmt = cls.FORMAT_JSON if path.endswith(".json") else cls.FORMAT_CSV
        with open(path, "r") as f:
            return cls.decode(f.read(), fmt)

    def __init__(self, coords, colors):
        try:
            coords = np.array(coords, dtype=np.float64)
        except ValueError:
            raise ValueError("all points must have the same dimension")
        if coords.size == 0:
            raise ValueError("empty point set")
        if coords.ndim != 2:
            raise ValueError("all points must have the same dimension")
        (n, d) = coords.shape
        if d < 1:
            raise ValueError("points must have at least one coordinate")
        if not np.all(np.isfinite(coords)):
            bad = int(np.argwhere(~np.isfinite(coords))[0][0])
            raise ValueError("point %d has a non-finite coordinate" % bad)

        raw = np.array(colors)
        if raw.shape != (n,):
            raise ValueError("expected %d colors, got %d" % (n, raw.size))
        if raw.dtype.kind not in "iu":
            try:
                as_float = raw.astype(np.float64)
            except (TypeError, ValueError):
                raise ValueError("color ids must be positive integers")
            bad = np.flatnonzero(
                ~np.isfinite(as_float) | (as_float != np.floor(as_float))
            )
            if bad.size:
                raise ValueError(
                    "point %d has a non-integral color %r"
                    % (bad[0], raw[bad[0]].item())
                )
            raw = as_float
        colors = raw.astype(np.int64)

        # Colours must be dense 1..k, every class non-empty
        k = int(colors.max())
        if int(colors.min()) < 1:
            raise ValueError("color ids must be positive integers")
        present = np.unique(colors)
        if present.size != k:
            missing = sorted(set(range(1, k + 1)) - set(present.tolist()))
            raise ValueError(
                "color classes must be 1..%d with none empty; missing %s"
                % (k, ", ".join(str(c) for c in missing))
            )

        # The split-tree cannot separate coincident points
        seen = {}
        for (idx, row) in enumerate(coords):
            key = tuple(row.tolist())
            if key in seen:
                raise ValueError(
                    "duplicate point at index %d (same coordinates as "
                    "index %d)" % (idx, seen[key])
                )
            seen[key] = idx

        coords.setflags(write=False)
        colors.setflags(write=False)
        self._coords = coords
        self._colors = colors
        self._k = k
        self._points = None

    @property
    def n(self):
        return self._coords.shape[0]

    @property
    def d(self):
        return self._coords.shape[1]

    @property
    def k(self):
        return self._k

    @property
    def coords(self):
        """
        (n, d) read-only coordinate array.
        """
        return self._coords

    @property
    def colors(self):
        """
        (n,) read-only array of colour ids.
        """
        return self._colors

    @property
    def points(self):
        if self._points is None:
            self._points = [
                Point(idx, row, int(color))
                for (idx, (row, color)) in enumerate(
                    zip(self._coords, self._colors)
                )
            ]
        return self._points

    def __len__(self):
        return self.n

    def __getitem__(self, index):
        return self.points[index]

    def color_of(self, index):
        return int(self._colors[index])

    @property
    def class_sizes(self):
        """
        Mapping of colour id to the size of its class.
        """
        (ids, counts) = np.unique(self._colors, return_counts=True)
        return dict(zip(ids.tolist(), counts.tolist()))

    def distance(self, p, q):
        """
        Euclidean distance between points p and q (by index).
        """
        return float(np.linalg.norm(self._coords[p] - self._coords[q]))

    def scaled(self, factor):
        """
        Return a copy with every coordinate multiplied by factor.
        """
        return ColoredPointSet(self._coords * factor, self._colors)

    def encode(self, fmt=FORMAT_CSV):
        """
        Encode the point set in CSV or JSON text form.
        """
        if fmt == self.FORMAT_CSV:
            return "".join(
                "%d,%s\n" % (color, ",".join(repr(float(c)) for c in row))
                for (row, color) in zip(self._coords, self._colors)
            )
        elif fmt == self.FORMAT_JSON:
            return json.dumps(
                {
                    "d": self.d,
                    "k": self.k,
                    "points": [
                        {
                            "color": int(color),
                            "coords": [float(c) for c in row],
                        }
                        for (row, color) in zip(self._coords, self._colors)
                    ],
                }
            )
        else:
            raise ValueError("Unrecognised point set format %r" % (fmt,))

    def __repr__(self):
        return "ColoredPointSet(n=%d, d=%d, k=%d)" % (self.n, self.d, self.k)


class BoundingBox(object):
    """
    Axes-parallel box given by per-dimension interval endpoints lo, hi.
    """

    def __init__(self, lo, hi):
        lo = np.array(lo, dtype=np.float64)
        hi = np.array(hi, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lo and hi must be vectors of the same length")
        if np.any(lo > hi):
            raise ValueError("box has lo > hi: lo=%r hi=%r" % (lo, hi))
        lo.setflags(write=False)
        hi.setflags(write=False)
        self._lo = lo
        self._hi = hi

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def d(self):
        return self._lo.shape[0]

    @property
    def sides(self):
        return self._hi - self._lo

    @property
    def center(self):
        return (self._lo + self._hi) / 2.0

    @property
    def l_max(self):
        return l_max(self)

    @property
    def radius(self):
        """
        Half the Euclidean diagonal: the smallest ball centred on the box
        centre that contains the box.
        """
        return float(np.linalg.norm(self.sides)) / 2.0

    def contains(self, coords):
        """
        Test whether a point (or every row of an array) lies in the box.
        """
        coords = np.asarray(coords, dtype=np.float64)
        return bool(np.all(coords >= self._lo) and np.all(coords <= self._hi))

    def __eq__(self, other):
        if not isinstance(other, BoundingBox):
            return NotImplemented
        return np.array_equal(self._lo, other._lo) and np.array_equal(
            self._hi, other._hi
        )

    def __repr__(self):
        return "BoundingBox(lo=%r, hi=%r)" % (
            self._lo.tolist(),
            self._hi.tolist(),
        )


def bounding_box(points):
    """
    Smallest axes-parallel box containing the given points.  Accepts a list
    of `Point` or an (m, d) coordinate array.
    """
    if isinstance(points, np.ndarray):
        coords = points
    else:
        points = list(points)
        if not points:
            raise ValueError("empty point set")
        dims = set(p.d for p in points)
        if len(dims) != 1:
            raise ValueError("all points must have the same dimension")
        coords = np.array([p.coords for p in points], dtype=np.float64)

    if coords.size == 0:
        raise ValueError("empty point set")
    return BoundingBox(coords.min(axis=0), coords.max(axis=0))


def l_max(box):
    """
    Length of a longest side of the box; 0 for a point box.
    """
    return float(np.max(box.hi - box.lo))


def center_distance(a, b):
    """
    Euclidean distance between the centres of two boxes.
    """
    if a.d != b.d:
        raise ValueError(
            "dimension mismatch: %d-dimensional box vs %d-dimensional box"
            % (a.d, b.d)
        )
    return float(np.linalg.norm(a.center - b.center))


def point_distance(p, q):
    """
    Euclidean distance between two `Point` instances (or coordinate
    sequences).
    """
    p = getattr(p, "coords", p)
    q = getattr(q, "coords", q)
    if len(p) != len(q):
        raise ValueError(
            "dimension mismatch: %d vs %d coordinates" % (len(p), len(q))
        )
    return math.dist(p, q)
