"""Acceptance gate: one test per criterion, exact tolerances, one printed
pass/fail line each.  Run with -s to see the lines."""

import pytest

from framecat.suites import SuiteConfig, run_suite

CRITERIA = [
    ("1-non-strongness", "not-strong"),
    ("2-inner-anodyne-decomposition", "nh-unit"),
    ("3-retraction-identity", "retraction"),
    ("4-weq-class-agreement", "weq-agree"),
    ("5-reedy-colimit-oracle", "reedy-colim"),
    ("6-factorization-axiom", "factorize"),
    ("7-relative-replacement", "replace"),
    ("8-theta-suite", "theta"),
    ("9-equivalence-edge-criterion", "equiv-edge"),
    ("10-e-left-inverse", "e-mix"),
]


@pytest.mark.parametrize("label,suite", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance_criterion(label, suite):
    report = run_suite(SuiteConfig(name=suite, seed=0))
    failures = [r for r in report.records if not r.passed]
    status = "PASS" if not failures else "FAIL"
    print(f"[{status}] criterion {label}: {len(report.records)} checks "
          f"in {report.seconds:.2f}s")
    assert not failures, [(r.check_id, r.details) for r in failures]
