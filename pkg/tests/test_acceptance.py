"""Acceptance suite: the ten headline guarantees, one test per criterion.

Each criterion builds a deterministic JSON report and prints a single
PASS/FAIL line on the real stdout (visible regardless of capture).  The
final criterion re-runs every report builder and requires byte-identical
output.  Seeds and search budgets are fixed constants below.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from pathlib import Path

from gsroute.bottleneck import report_to_dict, scan_all
from gsroute.fixtures import (
    BUTTERFLY_SWAPS,
    GHZ4_LINE,
    GHZ4_TARGETS,
    derive_butterfly_fixture,
    nine_qubit_cluster,
    relabel,
    twelve_qubit_cluster,
)
from gsroute.graph import (
    LabeledGraph,
    combined_neighborhood,
    local_complement,
    measure_z,
)
from gsroute.orbit import lc_equivalent
from gsroute.paths import bfs_distances
from gsroute.protocols import (
    apply_complementation_plan,
    ghz3_extract,
    ghz4_extract,
    repeater_protocol,
    select_protocol_path,
    sequential_x_measurements,
    validate_transcript,
    x_measurements_as_complementations,
    x_protocol,
)
from gsroute.quantum import PHASE_FIDELITY_TOL, verify_graph

GOLDEN_DIR = Path(__file__).parent / "data"

SEED_INEQUALITY_SEVEN = 20240701
SEED_INEQUALITY_LARGE = 20240702
SEED_PIPELINES = 20240703
SEED_QUANTUM_SAMPLE = 20240704

SIX_VERTEX_PAIR_BUDGET = "exhaustive"
SEVEN_VERTEX_GRAPH_BUDGET = 3000  # seeded sample: full enumeration is out of budget
LARGE_RANDOM_INSTANCES = 10_000
PIPELINE_INSTANCES = 10_000
QUANTUM_SIX_SAMPLE = 500

_reports: dict[int, str] = {}


def _finish(number: int, report: dict, passed: bool, summary: str) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    _reports[number] = text
    verdict = "PASS" if passed else "FAIL"
    line = f"CRITERION {number}: {verdict} - {summary}"
    print(line)  # visible with pytest -s; captured output otherwise
    assert passed, f"criterion {number} failed: {summary}"


def _all_graphs(n: int):
    labels = list(range(1, n + 1))
    pairs = list(itertools.combinations(labels, 2))
    for mask in range(1 << len(pairs)):
        yield LabeledGraph(labels, [p for i, p in enumerate(pairs) if mask >> i & 1])


def _random_connected(rng: random.Random, n: int, p: float = 0.5) -> LabeledGraph:
    labels = list(range(1, n + 1))
    pairs = list(itertools.combinations(labels, 2))
    while True:
        g = LabeledGraph(labels, [e for e in pairs if rng.random() < p])
        if g.is_connected():
            return g


# -- criterion builders (deterministic; reused by the determinism check) --


def criterion_1_report() -> dict:
    started = time.monotonic()
    hits = scan_all(5)
    elapsed = time.monotonic() - started
    return {
        "criterion": "five-vertex scan over all terminal designations",
        "graphs_scanned": 1024,
        "terminal_designations": 15,
        "hits": len(hits),
        "within_time_budget": elapsed < 60.0,
    }


def criterion_2_report() -> dict:
    started = time.monotonic()
    reports = scan_all(6)
    elapsed = time.monotonic() - started
    hit_graphs = {r.instance.graph for r in reports}
    closed = all(
        relabel(g, perm) in hit_graphs for g in hit_graphs for perm in BUTTERFLY_SWAPS
    )
    doc = report_to_dict(reports, 6, ((1, 6), (2, 5)), False)
    doc["closed_under_label_swaps"] = closed
    doc["within_time_budget"] = elapsed < 1800.0
    return doc


def criterion_3_report() -> dict:
    fixture, unique = derive_butterfly_fixture()
    cur = fixture
    for a in (1, 3, 4):
        cur = local_complement(cur, a)
    measured = 0
    for v in (3, 4):
        cur = measure_z(cur, v)
        measured += 1
    return {
        "criterion": "butterfly witness sequence",
        "fixture_edges": [list(e) for e in sorted(fixture.edges())],
        "fixture_unique_up_to_swaps": unique,
        "sequence": ["lc 1", "lc 3", "lc 4", "z 3", "z 4"],
        "final_edges": [list(e) for e in sorted(cur.edges())],
        "measurements": measured,
    }


def criterion_4_report() -> dict:
    grid = nine_qubit_cluster()
    x = x_protocol(grid, 1, 9)
    second = x_protocol(x.residual, 3, 7)
    rep = repeater_protocol(grid, 1, 9)
    return {
        "criterion": "nine-qubit cluster measurement counts",
        "x_protocol_measurements": x.measurement_count,
        "residual_vertices": list(x.residual.vertices),
        "second_pair_measurements": second.measurement_count,
        "repeater_measurements": rep.measurement_count,
    }


def _count_inequality_ok(g: LabeledGraph, a: int, b: int) -> bool:
    path = select_protocol_path(g, a, b)[0]
    x = x_protocol(g, a, b, path=path)
    rep = repeater_protocol(g, a, b, path=path)
    if x.measurement_count > rep.measurement_count:
        return False
    # Strict-subset property: the interior vertices sit inside the initial
    # combined neighborhood and outside the terminals' final neighborhoods.
    interior = set(path.interior)
    after_x = x.transcript.snapshots[len(interior)]
    finals = after_x.neighbors(a) | after_x.neighbors(b)
    initial = combined_neighborhood(g, path)
    return interior <= initial and not interior & finals


def criterion_5_report() -> dict:
    instances = 0
    violations = 0
    for n in range(2, 7):
        for g in _all_graphs(n):
            if not g.is_connected():
                continue
            for a, b in itertools.combinations(g.vertices, 2):
                instances += 1
                if not _count_inequality_ok(g, a, b):
                    violations += 1
    rng = random.Random(SEED_INEQUALITY_SEVEN)
    for _ in range(SEVEN_VERTEX_GRAPH_BUDGET):
        g = _random_connected(rng, 7)
        for _ in range(3):
            a, b = rng.sample(g.vertices, 2)
            instances += 1
            if not _count_inequality_ok(g, a, b):
                violations += 1
    rng = random.Random(SEED_INEQUALITY_LARGE)
    for _ in range(LARGE_RANDOM_INSTANCES):
        n = rng.randint(2, 12)
        g = _random_connected(rng, n, p=rng.choice((0.3, 0.5, 0.7)))
        a, b = rng.sample(g.vertices, 2)
        instances += 1
        if not _count_inequality_ok(g, a, b):
            violations += 1
    return {
        "criterion": "x-first never needs more measurements than isolation-first",
        "exhaustive": "all connected graphs n <= 6, all terminal pairs",
        "seven_vertex_budget": SEVEN_VERTEX_GRAPH_BUDGET,
        "random_instances_up_to_12": LARGE_RANDOM_INSTANCES,
        "instances": instances,
        "violations": violations,
    }


def criterion_6_report() -> dict:
    rng = random.Random(SEED_PIPELINES)
    mismatches = 0
    for _ in range(PIPELINE_INSTANCES):
        n = rng.randint(2, 10)
        g = _random_connected(rng, n, p=rng.choice((0.3, 0.5, 0.7)))
        a, b = rng.sample(g.vertices, 2)
        da = bfs_distances(g, a)
        db = bfs_distances(g, b)
        d = da[b]
        path = [a]
        cur = a
        for t in range(1, d + 1):
            options = [v for v in sorted(g.neighbors(cur)) if da.get(v) == t and db.get(v) == d - t]
            cur = rng.choice(options)
            path.append(cur)
        pivots, z_list = x_measurements_as_complementations(g, tuple(path))
        if apply_complementation_plan(g, pivots, z_list) != sequential_x_measurements(g, tuple(path)):
            mismatches += 1
    return {
        "criterion": "complementation plan equals sequential X-measurements",
        "instances": PIPELINE_INSTANCES,
        "max_vertices": 10,
        "mismatches": mismatches,
    }


def criterion_7_report() -> dict:
    started = time.monotonic()
    lc_failures = 0
    correction_failures = 0
    graphs_checked = 0
    for n in range(1, 6):
        for g in _all_graphs(n):
            graphs_checked += 1
            report = verify_graph(g)
            lc_failures += sum(1 for _, f in report.lc_fidelities if f < 1.0 - PHASE_FIDELITY_TOL)
            correction_failures += sum(1 for m in report.measurements if m.status == "no-correction")
    rng = random.Random(SEED_QUANTUM_SAMPLE)
    pairs6 = list(itertools.combinations(range(1, 7), 2))
    for _ in range(QUANTUM_SIX_SAMPLE):
        g = LabeledGraph(range(1, 7), [p for p in pairs6 if rng.random() < 0.5])
        graphs_checked += 1
        report = verify_graph(g)
        lc_failures += sum(1 for _, f in report.lc_fidelities if f < 1.0 - PHASE_FIDELITY_TOL)
        correction_failures += sum(1 for m in report.measurements if m.status == "no-correction")
    elapsed = time.monotonic() - started
    return {
        "criterion": "state-vector soundness of the rewrite calculus",
        "graphs_checked": graphs_checked,
        "exhaustive": "all graphs with n <= 5",
        "six_vertex_sample": QUANTUM_SIX_SAMPLE,
        "lc_unitary_failures": lc_failures,
        "correction_failures": correction_failures,
        "within_time_budget": elapsed < 1800.0,
    }


def criterion_8_report() -> dict:
    runs = 0
    failures = 0
    for n in range(3, 7):
        for g in _all_graphs(n):
            if not g.is_connected():
                continue
            for triple in itertools.combinations(g.vertices, 3):
                runs += 1
                try:
                    t = ghz3_extract(g, *triple)
                    if t.final.component(triple[0]) != set(triple):
                        failures += 1
                except Exception:
                    failures += 1
    return {
        "criterion": "three-party extraction succeeds on every connected graph",
        "exhaustive": "all connected graphs n <= 6, every vertex triple",
        "runs": runs,
        "failures": failures,
    }


def criterion_9_report() -> dict:
    cluster = twelve_qubit_cluster()
    result = ghz4_extract(cluster, GHZ4_TARGETS, line=GHZ4_LINE)
    validate_transcript(result.transcript)
    payload = result.transcript.to_dict(include_snapshots=True)
    payload["line"] = list(GHZ4_LINE)
    return payload


# -- the tests -----------------------------------------------------------


def test_criterion_1_no_five_vertex_bottleneck():
    report = criterion_1_report()
    passed = report["hits"] == 0 and report["within_time_budget"]
    _finish(1, report, passed, f"{report['hits']} hits over all 5-vertex designations")


def test_criterion_2_exactly_four_six_vertex_graphs():
    report = criterion_2_report()
    passed = (
        report["hit_count"] == 4
        and report["closed_under_label_swaps"]
        and report["within_time_budget"]
        and report["graphs_scanned"] == 32768
    )
    _finish(2, report, passed, f"{report['hit_count']} hits, swap-closed")


def test_criterion_3_butterfly_witness_sequence():
    report = criterion_3_report()
    passed = (
        report["final_edges"] == [[1, 6], [2, 5]]
        and report["measurements"] == 2
        and report["fixture_unique_up_to_swaps"]
    )
    _finish(3, report, passed, "LC(1),LC(3),LC(4),Z(3),Z(4) yields both pairs")


def test_criterion_4_cluster_measurement_counts():
    report = criterion_4_report()
    passed = (
        report["x_protocol_measurements"] == 3
        and report["repeater_measurements"] == 6
        and len(report["residual_vertices"]) == 4
        and report["second_pair_measurements"] == 1
    )
    _finish(
        4, report, passed,
        f"x-first {report['x_protocol_measurements']}, isolation-first "
        f"{report['repeater_measurements']}, second pair "
        f"{report['second_pair_measurements']}",
    )


def test_criterion_5_measurement_count_inequality():
    report = criterion_5_report()
    passed = report["violations"] == 0
    _finish(5, report, passed, f"{report['instances']} instances, {report['violations']} violations")


def test_criterion_6_pipeline_equality():
    report = criterion_6_report()
    passed = report["mismatches"] == 0
    _finish(6, report, passed, f"{report['instances']} instances, {report['mismatches']} mismatches")


def test_criterion_7_quantum_soundness():
    report = criterion_7_report()
    passed = (
        report["lc_unitary_failures"] == 0
        and report["correction_failures"] == 0
        and report["within_time_budget"]
    )
    _finish(
        7, report, passed,
        f"{report['graphs_checked']} graphs, zero unitary or correction failures",
    )


def test_criterion_8_three_party_extraction():
    report = criterion_8_report()
    passed = report["failures"] == 0
    _finish(8, report, passed, f"{report['runs']} runs, {report['failures']} failures")


def test_criterion_9_four_party_golden_transcript():
    report = criterion_9_report()
    golden = json.loads((GOLDEN_DIR / "ghz4_cluster12_golden.json").read_text())
    final = LabeledGraph(
        golden["final"]["vertices"], [tuple(e) for e in golden["final"]["edges"]]
    ).induced(GHZ4_TARGETS)
    star = LabeledGraph(GHZ4_TARGETS, [(1, 2), (1, 4), (1, 5)])
    in_star_orbit = lc_equivalent(final, star)[0]
    passed = report == golden and in_star_orbit
    _finish(
        9, {"matches_golden": report == golden, "ends_in_star_orbit": in_star_orbit},
        passed, "transcript matches the stored golden file",
    )
    _reports[9] = json.dumps(report, sort_keys=True, indent=2) + "\n"


def test_criterion_10_reports_are_deterministic():
    builders = {
        1: criterion_1_report,
        2: criterion_2_report,
        3: criterion_3_report,
        4: criterion_4_report,
        5: criterion_5_report,
        6: criterion_6_report,
        7: criterion_7_report,
        8: criterion_8_report,
        9: criterion_9_report,
    }
    missing = [k for k in builders if k not in _reports]
    assert not missing, f"criteria {missing} did not run before the determinism check"
    unstable = []
    for number, builder in builders.items():
        again = json.dumps(builder(), sort_keys=True, indent=2) + "\n"
        if again != _reports[number]:
            unstable.append(number)
    report = {
        "criterion": "byte-identical reports on repeated runs",
        "unstable_criteria": unstable,
    }
    _finish(10, report, not unstable, "all nine reports reproduced byte-for-byte")
