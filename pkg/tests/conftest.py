import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion; a criterion passes when all of its tests pass."""
    import re

    status: dict[int, list[bool]] = {}
    names: dict[int, str] = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", nodeid)
            if not m or getattr(rep, "when", "call") not in ("call", "setup"):
                continue
            if rep.when == "setup" and outcome == "passed":
                continue
            n = int(m.group(1))
            status.setdefault(n, []).append(outcome == "passed")
            names.setdefault(n, m.group(2).split("[")[0])
    if not status:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(status):
        verdict = "PASS" if all(status[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  ({names[n]}, {sum(status[n])}/{len(status[n])} checks)")
