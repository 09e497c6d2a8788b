import os
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))

# one PASS/FAIL line per acceptance check, echoed after the run
ACCEPTANCE: list[str] = []


def record(criterion: str, ok: bool, detail: str = "", skipped: bool = False) -> bool:
    status = "SKIP" if skipped else ("PASS" if ok else "FAIL")
    line = f"{status} {criterion}" + (f": {detail}" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
