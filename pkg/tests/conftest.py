"""Shared fixtures and the acceptance verdict summary.

test_acceptance.py carries one test per release criterion; the terminal
summary hook below prints a single PASS/FAIL line per criterion so the
gate can be read without scrolling through the full pytest report.
"""

import pytest

from overpartition import recurrence


@pytest.fixture(scope="session")
def table4000():
    """Recurrence-computed counts for 0..4000, the ground-truth oracle."""
    return recurrence.recursion_table(4000).values


CRITERIA = {
    "test_c1_small_scale_exactness": "1 exactness at small scale",
    "test_c2_series_matches_recursion": "2 series equals recursion on 2001..4000",
    "test_c3_modular_engine_matches_exact": "3 modular engine equals exact mod m",
    "test_c4_three_route_agreement": "4 exponential-sum three-route agreement",
    "test_c5_tail_bound_behavior": "5 tail-bound certification and asymptote",
    "test_c6_growth_law": "6 growth law at n = 10^6",
    "test_c7_congruence_tables": "7 congruence hunts reproduce the tables",
    "test_c8_invariant_suites": "8 invariant selftest suites",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = {}
    for bucket, passed in (("passed", True), ("failed", False), ("error", False)):
        for report in terminalreporter.stats.get(bucket, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            if name in CRITERIA:
                verdicts[name] = verdicts.get(name, True) and passed
    if not verdicts:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, label in CRITERIA.items():
        if name in verdicts:
            outcome = "PASS" if verdicts[name] else "FAIL"
        else:
            outcome = "NOT RUN"
        terminalreporter.write_line(f"criterion {label}: {outcome}")
