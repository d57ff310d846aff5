#!/usr/bin/env python3

"""
Edge-count and runtime sweeps.
"""

import logging
import os
import time

from .instances import GeneratorSpec, InstanceType, gen_random
from .params import SpannerAlgorithm
from .signal import Signal
from .spanner import make_spanner
from .verify import audit_edge_count, exact_stretch


DEFAULT_STRETCH_CAP = 1024


def default_stretch_cap():
    return int(os.environ.get("KPSPANNER_STRETCH_CAP", DEFAULT_STRETCH_CAP))


def doubling_sizes(n_min, n_max):
    """
    n_min, 2 n_min, 4 n_min, ... up to n_max.
    """
    if n_min < 1 or n_max < n_min:
        raise ValueError(
            "need 1 <= n_min <= n_max, got %r..%r" % (n_min, n_max)
        )
    sizes = []
    n = n_min
    while n <= n_max:
        sizes.append(n)
        n *= 2
    return sizes


class Benchmark(object):
    """
    Builds one spanner per instance size and measures it.  Each result row is
    a dict with keys ``n``, ``edges``, ``ratio``, ``build_ms`` and
    ``stretch`` (None above the stretch cap); ``row_completed`` is emitted
    with ``row=`` as each one finishes.

    ``instance_epsilon`` is the epsilon of lower-bound instances; it is
    separate from ``epsilon``, which derives the build parameters.
    """

    COLUMNS = ("n", "edges", "ratio", "build_ms", "stretch")

    def __init__(
        self,
        algorithm,
        sizes,
        k=2,
        d=2,
        sep=None,
        epsilon=None,
        delta=None,
        seed=0,
        distribution="uniform",
        instance_epsilon=None,
        stretch_cap=None,
        threads=1,
        log=None,
    ):
        if log is None:
            log = logging.getLogger(self.__class__.__module__)

        self._log = log
        self._algorithm = SpannerAlgorithm(algorithm)
        self._sizes = list(sizes)
        self._k = k
        self._d = d
        self._sep = sep
        self._epsilon = epsilon
        self._delta = delta
        self._seed = seed
        self._distribution = InstanceType(distribution)
        if (self._distribution is InstanceType.LOWER_BOUND) and (
            instance_epsilon is None
        ):
            raise ValueError("lower-bound instances need instance_epsilon")
        self._instance_epsilon = instance_epsilon
        if stretch_cap is None:
            stretch_cap = default_stretch_cap()
        self._stretch_cap = stretch_cap
        self._threads = threads

        self.row_completed = Signal()

    def measure(self, n):
        spec = GeneratorSpec(
            n,
            self._k,
            d=self._d,
            seed=self._seed,
            distribution=self._distribution,
            epsilon=self._instance_epsilon,
        )
        pointset = gen_random(spec)

        started = time.monotonic()
        builder = make_spanner(
            self._algorithm,
            pointset,
            sep=self._sep,
            epsilon=self._epsilon,
            delta=self._delta,
            log=self._log.getChild("build"),
        )
        build_ms = 1000.0 * (time.monotonic() - started)

        audit = audit_edge_count(builder.graph, n, self._algorithm)
        stretch = None
        if n <= self._stretch_cap:
            stretch = exact_stretch(
                builder.graph,
                threads=self._threads,
                log=self._log.getChild("stretch"),
            ).max_stretch

        row = {
            "n": n,
            "edges": audit["edges"],
            "ratio": audit["ratio"],
            "build_ms": build_ms,
            "stretch": stretch,
        }
        self._log.info(
            "n=%d: %d edges (ratio %.4f), %.1f ms, stretch %r",
            n,
            row["edges"],
            row["ratio"],
            build_ms,
            stretch,
        )
        self.row_completed.emit(row=row)
        return row

    def run(self):
        return [self.measure(n) for n in self._sizes]
