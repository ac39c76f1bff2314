import re

import pytest

# one line per acceptance criterion at the end of the run, aggregated over
# every test named test_criterion_NN_*; any failing clause fails the criterion
CRITERION_LABELS = {
    1: "vanishing cross-mode causality on the linear oracle",
    2: "genetic network steady-state means",
    3: "genetic dominant eigenvalue",
    4: "genetic sweep endpoint dominance (factor 5)",
    5: "reaction-diffusion sweep argmax at the pattern onset",
    6: "reaction-diffusion spatial variance onset",
    7: "mutualistic reduction consistency and marker surge",
    8: "causal-strength estimator identities",
    9: "variance grouping equals the exhaustive split oracle",
    10: "warning evaluation protocol on the constructed fixture",
}

_results: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call" or not item.get_closest_marker("acceptance"):
        return
    m = re.search(r"criterion_(\d+)", item.name)
    if m:
        _results.setdefault(int(m.group(1)), []).append(rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(_results):
        verdict = "PASS" if all(_results[k]) else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {k}: {CRITERION_LABELS[k]}")
