"""Shared test configuration and the acceptance reporting hook."""

from hypothesis import settings

settings.register_profile("pkg", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("pkg")

# Criterion id -> (title, passed, detail); filled by tests/test_acceptance.py.
ACCEPTANCE_RESULTS = {}

ACCEPTANCE_CRITERIA = (
    ("C1", "equal lasso languages, distinct finite languages"),
    ("C2", "lasso equivalence is not a congruence"),
    ("C3", "joint reachability factors through the components"),
    ("C4", "finite trace membership factors through the components"),
    ("C5", "lasso trace membership factors through the components"),
    ("C6", "finite acceptance of joins factors through the components"),
    ("C7", "fuzzed congruence holds for ft, f, it"),
    ("C8", "distinguishing contexts for inequivalent machines"),
    ("C9", "complementation is exact on small machines"),
    ("C10", "record algebra laws hold exhaustively"),
)


def record_acceptance(cid: str, passed: bool, detail: str = "") -> None:
    titles = dict(ACCEPTANCE_CRITERIA)
    ACCEPTANCE_RESULTS[cid] = (titles[cid], bool(passed), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title in ACCEPTANCE_CRITERIA:
        if cid in ACCEPTANCE_RESULTS:
            _, passed, detail = ACCEPTANCE_RESULTS[cid]
            status = "PASS" if passed else "FAIL"
            extra = f" [{detail}]" if detail else ""
        else:
            status = "FAIL"
            extra = " [did not run to completion]"
        terminalreporter.write_line(f"{cid} {status} {title}{extra}")
