import itertools
import os

import pytest

from lcslab.core import make_sequence


def words(k):
    return ["".join(w) for w in itertools.product("01", repeat=k)]


def all_words(max_len):
    return [w for k in range(max_len + 1) for w in words(k)]


def brute_force_lcs(x: str, y: str) -> int:
    """Longest subsequence of x that is also a subsequence of y, by enumeration."""
    def is_sub(s, t):
        it = iter(t)
        return all(c in it for c in s)

    best = 0
    for mask in range(1 << len(x)):
        sub = "".join(c for k, c in enumerate(x) if mask >> k & 1)
        if len(sub) > best and is_sub(sub, y):
            best = len(sub)
    return best


@pytest.fixture(scope="session")
def small_words():
    """Every binary word of length 0..7, pre-packed."""
    return [make_sequence(w) for w in all_words(7)]


# -- acceptance report ------------------------------------------------------------
_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("LCSLAB_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long-running tier; set LCSLAB_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        note = getattr(item, "criterion_note", "")
        _RESULTS.setdefault(number, []).append((status, title, note))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS, key=lambda n: (int(str(n).rstrip("ab")), str(n))):
        for status, title, note in _RESULTS[number]:
            line = f"{status}  criterion {number}: {title}"
            if note:
                line += f"  [{note}]"
            terminalreporter.write_line(line)
