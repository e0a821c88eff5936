"""Acceptance criteria, one test per criterion.

Each test records a ``criterion N PASS/FAIL`` line that is printed in the
terminal summary, then asserts.
"""
import json
import time
from pathlib import Path

import pytest

import oracles
from conftest import ACCEPTANCE_LINES
from preinforce.domination import uniqueness_report
from preinforce.family import build_block, generate_member, recognize, replay_trace, trace_code
from preinforce.graph_core import canonical_code, enumerate_trees
from preinforce.reinforcement import r_p
from preinforce.verifier import FIGURE1_EXPECTED, figure1_values, run_theorem_suite

GOLDEN = Path(__file__).parent / "golden"


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number} {'PASS' if ok else 'FAIL'}: {detail}"
    print(ACCEPTANCE_LINES[number])


def suites_clean(reports) -> tuple[bool, str]:
    bad = [r for r in reports if not r.passed]
    checked = sum(r.checked for r in reports)
    if bad:
        return False, f"{len(bad[0].violations)} violations in {bad[0].claim} p={bad[0].p}, e.g. {bad[0].violations[0]}"
    return True, f"{checked} cases, 0 violations"


def test_criterion_01_block_values():
    start = time.perf_counter()
    cases = [
        ("r_3(F_2)", build_block("F", 3)[0], 3, 4),
        ("r_4(F_3)", build_block("F", 4)[0], 4, 5),
        ("r_3(F_{3,2})", build_block("Ft", 3, 3)[0], 3, 4),
        ("r_4(F_{4,3})", build_block("Ft", 4, 4)[0], 4, 5),
    ]
    got = {name: r_p(G, p).value for name, G, p, _ in cases}
    # the smallest block also by the definition oracle
    F2 = cases[0][1]
    oracle_f2 = oracles.reinforcement(oracles.adjacency(F2.n, F2.edges), 3)
    elapsed = time.perf_counter() - start
    ok = all(got[name] == want for name, _, _, want in cases) and oracle_f2 == 4 and elapsed < 10
    record(1, ok, f"{got}, oracle r_3(F_2) = {oracle_f2}, {elapsed:.1f}s")
    assert ok


def test_criterion_02_figure1_fixture():
    start = time.perf_counter()
    got = figure1_values()
    elapsed = time.perf_counter() - start
    wrong = {k: (got[k], v) for k, v in FIGURE1_EXPECTED.items() if got[k] != v}
    ok = not wrong and elapsed < 30
    detail = "all values match" if not wrong else "mismatch (got, expected): " + ", ".join(
        f"{k} = {g} vs {e}" for k, (g, e) in wrong.items()
    )
    record(2, ok, f"{detail}, {elapsed:.1f}s")
    assert ok, detail


def test_criterion_03_upper_bound():
    start = time.perf_counter()
    ok, detail = suites_clean([run_theorem_suite("thm-1.2", p, 12) for p in (2, 3)])
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 600
    record(3, ok, f"r_p <= p + 1, n <= 12, p in 2,3: {detail}, {elapsed:.1f}s")
    assert ok


def test_criterion_04_definition_equals_eta():
    start = time.perf_counter()
    reports = [run_theorem_suite("thm-2.2", p, 9) for p in (1, 2, 3)]
    ok, detail = suites_clean(reports)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 600
    record(4, ok, f"definition == eta, trees n <= 9 plus 200 random graphs per p: {detail}, {elapsed:.1f}s")
    assert ok


def test_criterion_05_mu_bound():
    ok, detail = suites_clean([run_theorem_suite("thm-2.4", p, 11) for p in (2, 3)])
    record(5, ok, f"r_p <= mu_p with equality at r_p = 1, n <= 11: {detail}")
    assert ok


@pytest.fixture(scope="module")
def characterisation_report():
    start = time.perf_counter()
    report = run_theorem_suite("thm-4.4", 3, 14)
    return report, time.perf_counter() - start


def test_criterion_06_characterisation(characterisation_report):
    report, elapsed = characterisation_report
    golden = json.loads((GOLDEN / "census_p3.json").read_text())["census"]
    census = {str(k): v for k, v in sorted(report.census.items())}
    # the bound is stated for 4 workers; this runs single-threaded under the same limit
    ok = report.passed and census == golden and elapsed < 900
    record(6, ok, f"recognize <=> r_3 = 4 for {report.checked} trees n <= 14, "
                  f"{len(report.violations)} violations, census {census == golden and 'matches' or 'differs from'} golden, "
                  f"{elapsed:.1f}s")
    assert ok


def test_criterion_07_unique_sets_on_extremal_trees():
    report = run_theorem_suite("thm-3.2", 3, 14)
    extremal = sum(report.census.values())
    ok = report.passed and extremal == 15
    record(7, ok, f"{extremal} extremal trees, unique gamma_3-set with nonempty private neighbourhoods: "
                  f"{len(report.violations)} violations")
    assert ok


def test_criterion_08_property_suites():
    reports = [run_theorem_suite(c, p, 10) for c in ("obs-1.2", "obs-2.1", "eta-monotone") for p in (1, 2, 3)]
    ok, detail = suites_clean(reports)
    record(8, ok, f"three property suites, n <= 10, p in 1..3: {detail}")
    assert ok


def test_criterion_09_round_trip():
    start = time.perf_counter()
    failures, small = [], 0
    for i in range(500):
        G, trace = generate_member(3, 1 + i % 6, seed=i)
        H, _ = replay_trace(trace)
        found = recognize(G, 3)
        if found is None:
            failures.append((i, "recognize failed"))
            continue
        if not canonical_code(H) == canonical_code(G) == trace_code(trace) == trace_code(found):
            failures.append((i, "canonical codes differ"))
        if G.n <= 16:
            small += 1
            if r_p(G, 3).value != 4:
                failures.append((i, "r_3 != 4"))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600
    record(9, ok, f"500 samples ({small} with n <= 16), {len(failures)} failures {failures[:3]}, {elapsed:.1f}s")
    assert ok


def test_criterion_10_tree_counts():
    want = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    got = [sum(1 for _ in enumerate_trees(n)) for n in range(1, 11)]
    oracle = [oracles.count_trees_by_labelled_dedup(n) for n in range(1, 11)]
    ok = got == want == oracle
    record(10, ok, f"counts {got}, oracle {oracle}")
    assert ok


def test_extremal_trees_have_unique_sets_by_oracle(characterisation_report):
    # independent check of criterion 7 on the recognised extremal trees up to 12 vertices
    count = 0
    for n in range(1, 13):
        for T in enumerate_trees(n):
            if recognize(T, 3) is None:
                continue
            count += 1
            _, sets = oracles.min_dominating_sets(oracles.adjacency(T.n, T.edges), 3)
            assert len(sets) == 1 and uniqueness_report(T, 3, sets[0]).unique
    assert count == 6
