"""Benchmark harness."""

from stackext import (
    BenchReport,
    BenchRow,
    bench,
    build_fixation_gadget,
    format_report,
    gen_random,
    make_instance,
)
from stackext.bench import discrepancies


def _corpus():
    return [
        (f"r{seed}", gen_random(4, 3, 2, 1, 1, seed=seed))
        for seed in range(4)
    ]


def test_inline_bench_agrees_across_algorithms():
    report = bench(_corpus(), ("auto", "oracle", "xp"))
    assert report.ok
    assert len(report.rows) == 12
    for row in report.rows:
        assert row.verdict in ("extendable", "not-extendable")
        assert row.seconds >= 0.0
        assert row.branches >= 0


def test_bench_records_capacity():
    inst = gen_random(6, 4, 3, 2, 3, seed=1)
    report = bench([("big", inst)], ("oracle",), cap=10)
    assert report.rows[0].verdict == "capacity"
    assert report.rows[0].note
    # a capped run is not a definite verdict, so no discrepancy
    assert report.ok


def test_budgeted_bench_reports_worker_errors():
    inst = make_instance(1, ["a", "b"], [], ["x", "y"], [("x", "y")])
    report = bench([("pair", inst)], ("greedy-is",), budget=30.0)
    assert report.rows[0].verdict == "error"
    assert "InputError" in report.rows[0].note


def test_budgeted_bench_times_out():
    # a three-anchor gadget on six pages gives the oracle billions of
    # candidates; a tiny budget must kill the worker and keep going
    inst = build_fixation_gadget(3, 6)
    report = bench([("slow", inst)], ("oracle",), budget=0.2, cap=10**12)
    row = report.rows[0]
    assert row.verdict == "timeout"
    assert "budget" in row.note
    assert report.ok


def test_budgeted_bench_returns_verdicts():
    report = bench(_corpus()[:2], ("xp",), budget=30.0)
    assert {r.verdict for r in report.rows} <= {
        "extendable",
        "not-extendable",
    }


def test_discrepancies_spot_conflicts():
    rows = [
        BenchRow("one", "xp", "extendable", 0.0, 1, 0),
        BenchRow("one", "oracle", "not-extendable", 0.0, 1, 0),
        BenchRow("two", "xp", "extendable", 0.0, 1, 0),
        BenchRow("two", "oracle", "extendable", 0.0, 1, 0),
        BenchRow("three", "xp", "timeout", 0.0, 0, 0),
        BenchRow("three", "oracle", "not-extendable", 0.0, 1, 0),
    ]
    got = discrepancies(rows)
    assert len(got) == 1
    assert got[0].startswith("one: ")
    assert "xp=extendable" in got[0]


def test_format_report_layout():
    rows = (
        BenchRow("a", "xp", "extendable", 0.01, 3, 0),
        BenchRow("a", "oracle", "not-extendable", 0.2, 9, 0, "odd"),
    )
    report = BenchReport(rows, discrepancies(rows))
    text = format_report(report)
    lines = text.splitlines()
    assert lines[0].split() == [
        "instance",
        "algorithm",
        "verdict",
        "seconds",
        "branches",
        "cells",
    ]
    assert "not-extendable (odd)" in text
    assert any(line.startswith("DISAGREE a:") for line in lines)
    assert lines[-1].endswith("conflicting verdicts")
    clean = BenchReport(rows[:1], ())
    assert format_report(clean).splitlines()[-1] == "all verdicts agree"
