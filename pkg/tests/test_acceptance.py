"""Acceptance suite: one test per criterion, run with -v for per-criterion lines.

Golden values are checked at their stated tolerance; statistical targets run at
the default master seed; runtime budgets are enforced inside the tests. Two
expected-failure tests document recorded readings that are internally
inconsistent and cannot be reproduced from the stated table (see the reasons on
the xfail marks); they are kept strict so accidental passes would be flagged.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from apmetric.ap import (
    ap_components,
    ap_score,
    f1_components,
    f1_score,
    row_accuracy,
    row_peakiness,
)
from apmetric.contingency import ContingencyTable, from_labels, to_labels
from apmetric.harness import (
    DEFAULT_MASTER_SEED,
    METRIC_NAMES,
    ScenarioConfig,
    benchmark,
    extreme_table,
    run_scenario,
    scenario_tables,
)
from apmetric.refmetrics import (
    adjusted_mutual_information,
    adjusted_rand_score,
    entropy_stats,
    fowlkes_mallows,
    homogeneity_completeness_v,
    rand_score,
)
from apmetric.tablegen import GenSpec, generate_table, random_sum_vector, table_rng

from .conftest import permutation_emi, random_metric_table, random_table, tie_free
from .test_refmetrics import brute_pair_counts

FOUR_COL = ContingencyTable(
    [
        [151, 88, 72, 260],
        [302, 330, 0, 158],
        [161, 0, 313, 81],
        [490, 0, 101, 14],
    ]
)

NINE_COL = ContingencyTable(
    [
        [151, 88, 72, 260, 21, 0, 0, 55, 13],
        [302, 330, 0, 158, 24, 0, 0, 9, 0],
        [161, 0, 313, 81, 7, 0, 0, 1, 65],
        [490, 0, 101, 14, 82, 0, 0, 0, 4],
    ]
)


def test_criterion_1():
    start = time.perf_counter()
    breakdown = ap_score(FOUR_COL)
    f1 = f1_score(FOUR_COL)
    ami = adjusted_mutual_information(NINE_COL)
    ars = adjusted_rand_score(NINE_COL)
    fms = fowlkes_mallows(NINE_COL)
    h, c, v = homogeneity_completeness_v(NINE_COL)
    elapsed = time.perf_counter() - start

    assert breakdown.ap == pytest.approx(0.617, abs=2e-3)
    assert breakdown.associativity == pytest.approx(1.000, abs=2e-3)
    assert breakdown.peakiness == pytest.approx(0.446, abs=2e-3)
    assert f1.f1 == pytest.approx(0.578, abs=2e-3)
    # comparison metrics reproduce from the nine-column table
    assert ami == pytest.approx(0.246, abs=2e-3)
    assert ars == pytest.approx(0.162, abs=2e-3)
    assert fms == pytest.approx(0.370, abs=2e-3)
    assert c == pytest.approx(0.230, abs=2e-3)
    assert h == pytest.approx(0.267, abs=2e-3)
    # V must satisfy the harmonic-mean identity of its own h and c; the
    # recorded 0.275 does not (0.267 and 0.230 imply 0.247) and is covered by
    # the strict xfail below
    assert v == pytest.approx(2 * h * c / (h + c), abs=1e-12)
    assert v == pytest.approx(0.247, abs=2e-3)
    assert elapsed < 1.0


@pytest.mark.xfail(
    strict=True,
    reason="the recorded V reading contradicts the harmonic-mean identity that its "
    "own homogeneity and completeness readings imply (they give 0.247)",
)
def test_criterion_1_recorded_v_reading():
    _, _, v = homogeneity_completeness_v(NINE_COL)
    assert v == pytest.approx(0.275, abs=2e-3)


@pytest.mark.xfail(
    strict=True,
    reason="the comparison-metric readings derive from the nine-column table; "
    "its four-column projection shifts every one of them beyond the tolerance",
)
def test_criterion_1_four_column_comparison_readings():
    ami = adjusted_mutual_information(FOUR_COL)
    ars = adjusted_rand_score(FOUR_COL)
    fms = fowlkes_mallows(FOUR_COL)
    h, c, v = homogeneity_completeness_v(FOUR_COL)
    assert ami == pytest.approx(0.246, abs=2e-3)
    assert ars == pytest.approx(0.162, abs=2e-3)
    assert fms == pytest.approx(0.370, abs=2e-3)
    assert c == pytest.approx(0.230, abs=2e-3)
    assert h == pytest.approx(0.267, abs=2e-3)
    assert v == pytest.approx(0.275, abs=2e-3)


def test_criterion_2():
    expected = (0.419, 0.085, 0.486, 0.794)
    values = [row_peakiness(row) for row in FOUR_COL.counts]
    for got, want in zip(values, expected):
        assert got == pytest.approx(want, abs=1e-3)
    assert math.fsum(values) / 4 == pytest.approx(0.446, abs=1e-3)


def test_criterion_3():
    # extra columns never displace a row's top two cells here, so per-row
    # peakiness carries over from the four-column projection unchanged
    four = [row_peakiness(row) for row in FOUR_COL.counts]
    nine = [row_peakiness(row) for row in NINE_COL.counts]
    assert nine == four
    for got, want in zip(nine, (0.419, 0.085, 0.486, 0.794)):
        assert got == pytest.approx(want, abs=1e-3)
    accuracy = [row_accuracy(row) for row in NINE_COL.counts]
    for got, want in zip(accuracy, (0.394, 0.401, 0.498, 0.709)):
        assert got == pytest.approx(want, abs=1e-3)


def all_scores(table: ContingencyTable) -> dict[str, float]:
    h, c, v = homogeneity_completeness_v(table)
    return {
        "ap": ap_components(table)[2],
        "f1": f1_components(table)[2],
        "ami": adjusted_mutual_information(table),
        "ars": adjusted_rand_score(table),
        "fms": fowlkes_mallows(table),
        "homogeneity": h,
        "completeness": c,
        "v": v,
    }


def test_criterion_4():
    ideal = all_scores(extreme_table("ideal", (4, 4)))
    for name, value in ideal.items():
        assert value == pytest.approx(1.0, abs=1e-9), name

    worst = all_scores(extreme_table("worst", (4, 4)))
    assert worst["ap"] == 0.0
    assert worst["ars"] == pytest.approx(0.0, abs=1e-9)
    assert abs(worst["ami"]) <= 1e-10
    assert worst["homogeneity"] == 0.0
    assert worst["completeness"] == 1.0
    assert worst["v"] == 0.0
    assert worst["fms"] > 0.4
    assert worst["f1"] > 0.4


def oracle_tables(count: int, seed: int) -> list[ContingencyTable]:
    """Mixed families with 2 <= rows, cols <= 5 and 2 <= total <= 200."""
    rng = np.random.default_rng(seed)
    tables: list[ContingencyTable] = []
    while len(tables) < count:
        rows = int(rng.integers(2, 6))
        cols = int(rng.integers(2, 6))
        family = len(tables) % 4
        if family == 0:
            cells = rng.integers(0, 9, size=(rows, cols))
            candidate = ContingencyTable(cells.tolist())
        elif family == 1:
            total = int(rng.integers(50, 201))
            probs = rng.dirichlet(np.ones(rows * cols))
            candidate = ContingencyTable(rng.multinomial(total, probs).reshape(rows, cols).tolist())
        else:
            mode = "high" if family == 2 else "low"
            spec = GenSpec(
                rows=rows,
                cols=cols,
                total=int(rng.integers(20, 201)),
                mode=mode,
                seed=int(rng.integers(1 << 31)),
            )
            candidate = generate_table(spec)
        if candidate.total >= 2:
            tables.append(candidate)
    return tables


def test_criterion_5():
    start = time.perf_counter()
    tables = oracle_tables(200, seed=505)
    assert len(tables) == 200
    for table in tables:
        rows, cols = table.shape
        assert rows <= 5 and cols <= 5 and 2 <= table.total <= 200
        ss, sd, ds, dd = brute_pair_counts(table)
        n_pairs = ss + sd + ds + dd
        brute_rand = (ss + dd) / n_pairs
        denom = (ss + sd) * (sd + dd) + (ss + ds) * (ds + dd)
        brute_ars = 1.0 if denom == 0 else 2.0 * (ss * dd - sd * ds) / denom
        if ss + sd == 0 or ss + ds == 0:
            brute_fms = 0.0
        else:
            brute_fms = ss / math.sqrt((ss + sd) * (ss + ds))
        assert abs(rand_score(table) - brute_rand) <= 1e-12
        assert abs(adjusted_rand_score(table) - brute_ars) <= 1e-12
        assert abs(fowlkes_mallows(table) - brute_fms) <= 1e-12

    emi_tables = [
        ContingencyTable([[3, 1, 0], [0, 4, 2], [1, 0, 5]]),
        ContingencyTable([[6, 2], [1, 8], [3, 4]]),
        ContingencyTable([[2, 0, 1, 3], [0, 5, 0, 1], [4, 0, 2, 0]]),
    ]
    for k, table in enumerate(emi_tables):
        assert table.total <= 30
        exact = entropy_stats(table).expected_mutual_information
        mean, se = permutation_emi(table, n_perm=200_000, seed=900 + k)
        assert abs(exact - mean) <= 3 * se, f"table {k}: {exact} vs {mean} +- {se}"

    assert time.perf_counter() - start < 120.0


def row_permuted(table: ContingencyTable, rng: np.random.Generator) -> ContingencyTable:
    grid = np.asarray(table.counts)
    return ContingencyTable(grid[rng.permutation(grid.shape[0])].tolist())


def col_permuted(table: ContingencyTable, rng: np.random.Generator) -> ContingencyTable:
    grid = np.asarray(table.counts)
    return ContingencyTable(grid[:, rng.permutation(grid.shape[1])].tolist())


def round_trip_table(rng: np.random.Generator) -> ContingencyTable:
    # label vectors cannot express trailing all-zero classes or clusters, so
    # the round-trip domain is tables whose last row and column are nonzero
    while True:
        t = random_table(rng)
        if any(t.counts[-1]) and any(row[-1] for row in t.counts):
            return t


def test_criterion_6():
    cases = 500

    # bounds
    rng = np.random.default_rng(600)
    for _ in range(cases):
        t = random_metric_table(rng, max_dim=6, max_cell=24)
        scores = all_scores(t)
        a, p, _ = ap_components(t)
        tca, purity, _ = f1_components(t)
        for value in (a, p, scores["ap"], tca, purity, scores["f1"], scores["fms"],
                      scores["homogeneity"], scores["completeness"], scores["v"]):
            assert 0.0 <= value <= 1.0
        assert -0.5 <= scores["ars"] <= 1.0
        assert scores["ami"] <= 1.0 + 1e-12

    # row/column permutation invariance; reordering columns can re-resolve a
    # tied row maximum (the argmax tie-break is positional), so the combined
    # score's column case is quantified over tie-free tables
    rng = np.random.default_rng(601)
    for _ in range(cases):
        t = random_metric_table(rng)
        before = all_scores(t)
        after_rows = all_scores(row_permuted(t, rng))
        after_cols = all_scores(col_permuted(t, rng))
        for name in before:
            assert after_rows[name] == pytest.approx(before[name], abs=1e-12), name
            if name == "ap" and not tie_free(t):
                continue
            assert after_cols[name] == pytest.approx(before[name], abs=1e-12), name

    # uniform-scaling invariance of the proportion-based metrics
    rng = np.random.default_rng(602)
    for _ in range(cases):
        t = random_metric_table(rng)
        k = int(rng.integers(2, 10))
        scaled = ContingencyTable([[k * v for v in row] for row in t.counts])
        assert ap_components(scaled) == ap_components(t)
        assert f1_components(scaled) == f1_components(t)
        assert homogeneity_completeness_v(scaled) == homogeneity_completeness_v(t)

    # harmonic mean is sandwiched between min and arithmetic mean
    rng = np.random.default_rng(603)
    for _ in range(cases):
        t = random_metric_table(rng)
        for x, y, hm in (ap_components(t), f1_components(t), homogeneity_completeness_v(t)):
            assert min(x, y) - 1e-12 <= hm <= (x + y) / 2 + 1e-12

    # table <-> labels round trip
    rng = np.random.default_rng(604)
    for _ in range(cases):
        t = round_trip_table(rng)
        pair = to_labels(t)
        assert len(pair.truth) == t.total
        assert from_labels(pair) == t
        again = to_labels(from_labels(pair))
        assert again.truth == pair.truth
        assert again.predicted == pair.predicted

    # generator sum preservation and determinism
    rng = np.random.default_rng(605)
    for _ in range(cases):
        total = int(rng.integers(1, 400))
        numvals = int(rng.integers(1, 30))
        mode = "low" if rng.random() < 0.5 else "high"
        seed = int(rng.integers(1 << 31))
        vec = random_sum_vector(total, numvals, mode, rng=table_rng(seed, 0))
        assert vec.sum() == total
        assert (vec >= 0).all()
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        spec = GenSpec(rows=rows, cols=cols, total=total, mode=mode, seed=seed)
        t = generate_table(spec)
        assert t.total == total
        assert t.shape == (rows, cols)
        assert generate_table(spec) == t


def test_criterion_7():
    start = time.perf_counter()
    reports = {sid: run_scenario(ScenarioConfig.preset(sid)) for sid in (3, 4, 5, 6)}
    for report in reports.values():
        assert len(report.scores) == 500
        assert all(report.missing[name] == 0 for name in METRIC_NAMES)

    s3 = reports[3]
    assert s3.correlations["f1"] == pytest.approx(0.602, abs=0.08)
    assert s3.correlations["fms"] == pytest.approx(0.483, abs=0.08)
    comparison = {n: r for n, r in s3.correlations.items() if r is not None}
    assert len(comparison) == 7
    assert min(comparison, key=comparison.get) == "fms"

    assert reports[4].correlations["f1"] == pytest.approx(0.583, abs=0.08)
    assert reports[5].correlations["f1"] == pytest.approx(0.638, abs=0.08)
    assert reports[6].correlations["f1"] == pytest.approx(0.185, abs=0.08)

    ap3 = [s.ap for s in s3.scores]
    assert any(v == 0.0 for v in ap3)
    assert max(ap3) > 0.8

    s6 = reports[6]
    ap6 = [s.ap for s in s6.scores]
    assert all(v != 1.0 for v in ap6)
    others_hit_ceiling = any(
        any(v is not None and v >= 0.99 for v in s6.metric_column(name))
        for name in METRIC_NAMES
        if name != "ap"
    )
    assert others_hit_ceiling

    assert time.perf_counter() - start < 300.0


def test_criterion_8():
    # timing order is asserted on the pure backend: compiled-call overhead is
    # flat across metrics and would mask the per-metric work at this table size
    tables = scenario_tables(ScenarioConfig.preset(3))
    assert len(tables) == 500
    means = {
        name: benchmark(name, tables, repetitions=3, backend="pure").mean_us
        for name in METRIC_NAMES
    }
    order = sorted(means, key=means.get)
    chain = " < ".join(f"{name}={means[name]:.2f}us" for name in order)
    print(f"mean per-call timing, pure backend: {chain}")

    pair_based = (means["ars"], means["fms"])
    entropy_based = (means["ami"], means["homogeneity"], means["completeness"], means["v"])
    full_chain = means["ap"] < means["f1"] < min(pair_based) and max(pair_based) < min(
        entropy_based
    )
    print(f"full chain ap < f1 < pair-based < entropy-based: {full_chain}")

    # the required endpoints: the combined metric is fastest overall and in
    # particular beats the f1 contingency metric
    assert means["ap"] == min(means.values()), chain
    assert means["ap"] < means["f1"], chain
