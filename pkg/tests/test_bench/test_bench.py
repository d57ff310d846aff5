#!/usr/bin/env python3

"""
Benchmark sweep tests
"""

from kpspanner.bench import Benchmark, default_stretch_cap, doubling_sizes


def test_doubling_sizes():
    assert doubling_sizes(16, 128) == [16, 32, 64, 128]
    assert doubling_sizes(10, 50) == [10, 20, 40]
    assert doubling_sizes(8, 8) == [8]


def test_doubling_sizes_invalid():
    for (n_min, n_max) in ((0, 8), (16, 8)):
        try:
            doubling_sizes(n_min, n_max)
            assert False, "Should not have worked"
        except ValueError as e:
            assert str(e) == "need 1 <= n_min <= n_max, got %r..%r" % (
                n_min,
                n_max,
            )


def test_default_stretch_cap(monkeypatch):
    monkeypatch.delenv("KPSPANNER_STRETCH_CAP", raising=False)
    assert default_stretch_cap() == 1024
    monkeypatch.setenv("KPSPANNER_STRETCH_CAP", "64")
    assert default_stretch_cap() == 64


def test_rows(logger):
    bench = Benchmark("alg1", [16, 32], k=3, sep=8, log=logger)
    rows = []
    bench.row_completed.connect(lambda row, **kw: rows.append(row))
    result = bench.run()

    assert rows == result
    assert [row["n"] for row in result] == [16, 32]
    for row in result:
        assert tuple(row.keys()) == Benchmark.COLUMNS
        assert row["ratio"] == row["edges"] / float(row["n"])
        assert row["build_ms"] >= 0.0
        assert row["stretch"] >= 1.0
    assert len(logger.messages("info")) == 2


def test_stretch_cap():
    bench = Benchmark("alg2", [16, 32], sep=8, stretch_cap=16)
    (small, large) = bench.run()
    assert small["stretch"] is not None
    assert large["stretch"] is None


def test_epsilon_mode():
    bench = Benchmark("alg3", [16], epsilon=0.5, stretch_cap=16)
    (row,) = bench.run()
    assert row["stretch"] <= 3.5 * (1 + 1e-9)


def test_deterministic_edges():
    first = Benchmark("alg2", [64], k=4, sep=8, seed=3).run()
    second = Benchmark("alg2", [64], k=4, sep=8, seed=3).run()
    assert first[0]["edges"] == second[0]["edges"]
    assert first[0]["stretch"] == second[0]["stretch"]


def test_lower_bound_instances():
    """
    Lower-bound sweeps take their own epsilon, apart from the build's.
    """
    bench = Benchmark(
        "alg1",
        [16, 32],
        sep=8,
        distribution="lower-bound",
        instance_epsilon=0.5,
    )
    rows = bench.run()
    assert [row["n"] for row in rows] == [16, 32]
    for row in rows:
        assert row["edges"] > 0
        assert row["stretch"] >= 1.0


def test_lower_bound_needs_instance_epsilon():
    try:
        Benchmark("alg2", [16], epsilon=0.5, distribution="lower-bound")
        assert False, "Should not have worked"
    except ValueError as e:
        assert str(e) == "lower-bound instances need instance_epsilon"
