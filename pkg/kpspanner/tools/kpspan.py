#!/usr/bin/env python3

"""
Batch front end: generate instances, build spanners, verify them, run
benchmark sweeps and print derived parameters.

```
$ python3 -m kpspanner.tools.kpspan generate --random --n 256 --k 3 \
        --seed 7 --output pts.csv
$ python3 -m kpspanner.tools.kpspan build --alg alg2 --eps 0.5 \
        --output pts.edges pts.csv
$ python3 -m kpspanner.tools.kpspan verify --alg alg2 --eps 0.5 \
        --threads 4 pts.csv pts.edges
```

Options may also come from a YAML file given with ``--config``; its keys are
the long option names.  Options given on the command line win.

Exit status is 0 on success, 1 for invalid input or usage and 2 when a
verification fails.
"""

import argparse
import csv
import json
import logging
import sys

from yaml import safe_load

from ..bench import Benchmark, doubling_sizes
from ..geometry import ColoredPointSet
from ..instances import GeneratorSpec, gen_random
from ..params import (
    DEFAULT_DELTA,
    SpannerAlgorithm,
    SpannerParams,
    derive_params,
)
from ..spanner import (
    SpannerBuilder,
    SpannerGraph,
    SpannerInvariantError,
    make_spanner,
)
from ..splittree import build_split_tree
from ..verify import (
    check_lemma_bounds,
    check_lower_bound,
    check_rep_paths,
    check_well_separated,
    check_wspd_coverage,
    exact_stretch,
)
from ..wspd import compute_wspd, singleton_wspd


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2


class UsageError(ValueError):
    pass


class VerificationFailed(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage, which would read as a
    # verification failure.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class RunConfig(object):
    """
    Settings for one command: built-in defaults, overlaid by the YAML config
    file, overlaid by the command line.
    """

    DEFAULTS = dict(
        alg="alg1",
        sep=None,
        eps=None,
        delta=None,
        bound=None,
        n=None,
        n_min=128,
        n_max=2048,
        sizes=None,
        k=2,
        d=2,
        seed=0,
        distribution="uniform",
        instance_eps=None,
        format=None,
        output=None,
        singleton=False,
        threads=1,
        timings=False,
        check_coverage=False,
        check_lemmas=False,
        check_rep_paths=False,
        check_lower_bound=False,
        removals=20,
        input=None,
        edges=None,
    )

    @classmethod
    def from_args(cls, args):
        options = dict(cls.DEFAULTS)
        if args.config:
            with open(args.config, "r") as f:
                loaded = safe_load(f.read()) or {}
            if not isinstance(loaded, dict):
                raise ValueError(
                    "configuration file %s must hold a mapping" % args.config
                )
            for (key, value) in loaded.items():
                key = str(key).replace("-", "_")
                if key not in cls.DEFAULTS:
                    raise ValueError("unknown configuration key %r" % key)
                options[key] = value

        for key in cls.DEFAULTS:
            value = getattr(args, key, None)
            if value is not None:
                options[key] = value
        return cls(args.command, **options)

    def __init__(self, command, **options):
        self.command = command
        for (key, value) in options.items():
            setattr(self, key, value)

    @property
    def algorithm(self):
        return SpannerAlgorithm(self.alg)

    def params(self, d, required=True):
        """
        `SpannerParams` from either ``eps`` (certified) or ``sep``
        (heuristic).  Returns None when neither is set and ``required`` is
        false.
        """
        if (self.sep is not None) and (self.eps is not None):
            raise ValueError("exactly one of sep and epsilon must be given")
        if self.eps is not None:
            return derive_params(self.eps, d)
        if self.sep is not None:
            delta = self.delta
            if (delta is None) and (
                self.algorithm is not SpannerAlgorithm.ALG1
            ):
                delta = DEFAULT_DELTA
            return SpannerParams(self.sep, d, delta=delta)
        if required:
            raise ValueError("exactly one of sep and epsilon must be given")
        return None

    def load_points(self):
        if self.input is None:
            raise ValueError("input is a required parameter")
        return ColoredPointSet.load(self.input)

    def open_output(self):
        if self.output is None:
            return _Unclosed(sys.stdout)
        return open(self.output, "w", newline="")


class _Unclosed(object):
    """
    Context manager yielding a stream it does not close.
    """

    def __init__(self, stream):
        self._stream = stream

    def __enter__(self):
        return self._stream

    def __exit__(self, *exc_info):
        self._stream.flush()


def _dumps(doc):
    return json.dumps(doc, indent=2) + "\n"


def cmd_generate(config, log):
    spec = GeneratorSpec(
        config.n,
        config.k,
        d=config.d,
        seed=config.seed,
        distribution=config.distribution,
        epsilon=config.eps,
    )
    pointset = gen_random(spec)
    fmt = config.format or (
        ColoredPointSet.FORMAT_JSON
        if (config.output or "").endswith(".json")
        else ColoredPointSet.FORMAT_CSV
    )
    log.info("Generated %r from %r", pointset, spec)
    with config.open_output() as out:
        out.write(pointset.encode(fmt))


def cmd_build(config, log):
    pointset = config.load_points()
    timings = {}

    def _on_stage(stage, elapsed, count, **kwargs):
        log.info(
            "Stage %s done: %d items, %.3f ms", stage, count, 1e3 * elapsed
        )
        timings[stage] = 1e3 * elapsed

    algorithm = config.algorithm
    if algorithm is SpannerAlgorithm.COMPLETE:
        params = None
    else:
        params = config.params(pointset.d)

    builder = SpannerBuilder(pointset, algorithm, params, log=log)
    builder.stage_completed.connect(_on_stage)
    graph = builder.build()

    report = builder.report()
    if config.timings:
        report["timings_ms"] = timings
    if config.output is not None:
        with config.open_output() as out:
            out.write(graph.encode())
        sys.stdout.write(_dumps(report))
    else:
        sys.stdout.write(graph.encode())
        sys.stderr.write(_dumps(report))


def _decomposition(config, pointset, log):
    params = config.params(pointset.d)
    tree = build_split_tree(pointset, log=log.getChild("tree"))
    wspd = compute_wspd(tree, params.s, log=log.getChild("wspd"))
    if config.singleton or (config.algorithm is SpannerAlgorithm.ALG3):
        wspd = singleton_wspd(wspd, log=log.getChild("wspd"))
    return (tree, wspd)


def cmd_verify(config, log):
    pointset = config.load_points()
    if config.edges is None:
        raise ValueError("edges is a required parameter")
    with open(config.edges, "r") as f:
        graph = SpannerGraph.decode(f.read(), pointset)

    algorithm = config.algorithm
    bound = config.bound
    if (bound is None) and (algorithm is SpannerAlgorithm.COMPLETE):
        bound = 1.0
    elif bound is None:
        params = config.params(pointset.d, required=False)
        if params is not None:
            bound = params.bound(algorithm)

    stretch = exact_stretch(
        graph, pointset, threads=config.threads, log=log.getChild("stretch")
    )
    if bound is None:
        passed = stretch.connected
    else:
        passed = stretch.within(bound)

    checks = []
    if config.check_coverage or config.check_lemmas:
        (tree, wspd) = _decomposition(config, pointset, log)
        if config.check_coverage:
            checks.append(check_wspd_coverage(wspd, pointset))
            checks.append(check_well_separated(wspd))
        if config.check_lemmas:
            checks.extend(check_lemma_bounds(tree, wspd).values())

    if config.check_rep_paths:
        if algorithm is SpannerAlgorithm.COMPLETE:
            raise ValueError("--check-rep-paths needs alg1, alg2 or alg3")
        builder = make_spanner(
            algorithm,
            pointset,
            sep=config.sep,
            epsilon=config.eps,
            delta=config.delta,
            log=log.getChild("build"),
        )
        checks.append(check_rep_paths(builder, graph=graph))

    if config.check_lower_bound:
        if config.eps is None:
            raise ValueError("--check-lower-bound needs --eps")
        checks.append(
            check_lower_bound(
                graph,
                config.eps,
                removals=config.removals,
                seed=config.seed,
                log=log.getChild("lower-bound"),
            )
        )

    passed = passed and all(checks)
    report = {
        "n": pointset.n,
        "edges": graph.edge_count,
        "bound": bound,
        "passed": passed,
        "stretch": stretch.to_dict(),
        "checks": [check.to_dict() for check in checks],
    }
    sys.stdout.write(_dumps(report))
    if not passed:
        raise VerificationFailed(
            "verification failed (max stretch %r, bound %r)"
            % (stretch.max_stretch, bound)
        )


def cmd_bench(config, log):
    if config.sizes:
        if isinstance(config.sizes, str):
            sizes = [int(n) for n in config.sizes.split(",") if n.strip()]
        else:
            sizes = [int(n) for n in config.sizes]
    else:
        sizes = doubling_sizes(config.n_min, config.n_max)

    bench = Benchmark(
        config.algorithm,
        sizes,
        k=config.k,
        d=config.d,
        sep=config.sep,
        epsilon=config.eps,
        delta=config.delta,
        seed=config.seed,
        distribution=config.distribution,
        instance_epsilon=config.instance_eps,
        threads=config.threads,
        log=log,
    )
    with config.open_output() as out:
        writer = csv.DictWriter(
            out, fieldnames=Benchmark.COLUMNS, lineterminator="\n"
        )
        writer.writeheader()

        def _on_row(row, **kwargs):
            writer.writerow(
                dict(
                    (key, "" if value is None else value)
                    for (key, value) in row.items()
                )
            )
            out.flush()

        bench.row_completed.connect(_on_row)
        bench.run()


def cmd_params(config, log):
    params = config.params(config.d)
    if params.delta is None:
        params = SpannerParams(params.s, params.d, delta=DEFAULT_DELTA)
    doc = params.to_dict()
    doc["limit_stretch_alg1"] = SpannerParams.limit_stretch_alg1(config.d)
    algorithms = {}
    for algorithm in (
        SpannerAlgorithm.ALG1,
        SpannerAlgorithm.ALG2,
        SpannerAlgorithm.ALG3,
    ):
        algorithms[algorithm.value] = {
            "bound": params.bound(algorithm),
            "certified": params.certified(algorithm),
            "rep_path_bound": params.rep_path_bound(algorithm),
        }
    doc["algorithms"] = algorithms
    doc["case_inequalities"] = list(params.case_inequalities())
    sys.stdout.write(_dumps(doc))


def cmd_dump_tree(config, log):
    tree = build_split_tree(config.load_points(), log=log.getChild("tree"))
    with config.open_output() as out:
        out.write(tree.dump(config.format or "text"))


def cmd_dump_wspd(config, log):
    (_, wspd) = _decomposition(config, config.load_points(), log)
    with config.open_output() as out:
        out.write(wspd.dump())


COMMANDS = {
    "generate": cmd_generate,
    "build": cmd_build,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "params": cmd_params,
    "dump-tree": cmd_dump_tree,
    "dump-wspd": cmd_dump_wspd,
}


def _add_params_args(ap):
    ap.add_argument(
        "--alg",
        type=str,
        choices=[a.value for a in SpannerAlgorithm],
        help="Construction to use (default alg1)",
    )
    ap.add_argument("--sep", type=float, help="Separation constant s")
    ap.add_argument(
        "--eps", type=float, help="Target epsilon; derives certified s, delta"
    )
    ap.add_argument(
        "--delta",
        type=int,
        help="Shortcut depth for alg2/alg3 with --sep (default %d)"
        % DEFAULT_DELTA,
    )


def make_parser():
    ap = _ArgumentParser(prog="kpspan")
    ap.add_argument("--log-level", default="info", type=str, help="Log level")
    ap.add_argument("--config", type=str, help="YAML file of option values")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Generate a point set")
    dist = gen.add_mutually_exclusive_group()
    for (flag, value) in (
        ("--random", "uniform"),
        ("--clustered", "clustered"),
        ("--lower-bound", "lower-bound"),
    ):
        dist.add_argument(
            flag, dest="distribution", action="store_const", const=value
        )
    gen.add_argument("--n", type=int, help="Number of points")
    gen.add_argument("--k", type=int, help="Number of colours")
    gen.add_argument("--d", type=int, help="Dimension")
    gen.add_argument("--seed", type=int, help="Random seed")
    gen.add_argument("--eps", type=float, help="Lower-bound epsilon")
    gen.add_argument("--format", choices=("csv", "json"))
    gen.add_argument("--output", "-o", type=str)

    build = sub.add_parser("build", help="Build a spanner")
    _add_params_args(build)
    build.add_argument("--output", "-o", type=str, help="Edge list file")
    build.add_argument(
        "--timings",
        action="store_const",
        const=True,
        help="Include per-stage timings in the report",
    )
    build.add_argument("input", nargs="?", type=str)

    verify = sub.add_parser("verify", help="Measure and check a spanner")
    _add_params_args(verify)
    verify.add_argument("--bound", type=float, help="Stretch bound to check")
    verify.add_argument("--threads", type=int, help="Oracle threads")
    verify.add_argument("--seed", type=int, help="Sampling seed")
    verify.add_argument(
        "--singleton",
        action="store_const",
        const=True,
        help="Check the singleton WSPD",
    )
    for flag in (
        "--check-coverage",
        "--check-lemmas",
        "--check-rep-paths",
        "--check-lower-bound",
    ):
        verify.add_argument(flag, action="store_const", const=True)
    verify.add_argument(
        "--removals", type=int, help="Edges removed by --check-lower-bound"
    )
    verify.add_argument("input", nargs="?", type=str)
    verify.add_argument("edges", nargs="?", type=str)

    bench = sub.add_parser("bench", help="Edge-count and runtime sweep")
    _add_params_args(bench)
    bench.add_argument("--sizes", type=str, help="Comma-separated sizes")
    bench.add_argument("--n-min", type=int)
    bench.add_argument("--n-max", type=int)
    bench.add_argument("--k", type=int)
    bench.add_argument("--d", type=int)
    bench.add_argument("--seed", type=int)
    bench.add_argument(
        "--distribution", choices=("uniform", "clustered", "lower-bound")
    )
    bench.add_argument(
        "--instance-eps",
        type=float,
        help="Epsilon of lower-bound instances",
    )
    bench.add_argument("--threads", type=int)
    bench.add_argument("--output", "-o", type=str)

    params = sub.add_parser("params", help="Print derived parameters")
    _add_params_args(params)
    params.add_argument("--d", type=int)

    tree = sub.add_parser("dump-tree", help="Print the split-tree")
    tree.add_argument("--format", choices=("text", "json"))
    tree.add_argument("--output", "-o", type=str)
    tree.add_argument("input", nargs="?", type=str)

    wspd = sub.add_parser("dump-wspd", help="Print the WSPD pairs")
    _add_params_args(wspd)
    wspd.add_argument("--singleton", action="store_const", const=True)
    wspd.add_argument("--output", "-o", type=str)
    wspd.add_argument("input", nargs="?", type=str)
    return ap


def main(argv=None):
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        sys.stderr.write("kpspan: error: %s\n" % e)
        return EXIT_INVALID

    logging.basicConfig(
        level=args.log_level.upper(),
        format=(
            "%(asctime)s %(name)s[%(filename)s:%(lineno)4d] "
            "%(levelname)s %(message)s"
        ),
    )
    log = logging.getLogger("kpspan")

    try:
        config = RunConfig.from_args(args)
        COMMANDS[config.command](config, log.getChild(config.command))
    except VerificationFailed as e:
        log.error("%s", e)
        return EXIT_VERIFY_FAILED
    except SpannerInvariantError as e:
        log.error("Invariant violated: %s", e)
        return EXIT_VERIFY_FAILED
    except (ValueError, TypeError, OSError) as e:
        ap.print_usage(sys.stderr)
        sys.stderr.write("kpspan: error: %s\n" % e)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
