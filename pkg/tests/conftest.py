import pytest

from posetcm import homology

# Every Betti computation made during the session, keyed by the canonical
# facet masks and field; the Euler-Poincare acceptance check reads this.
BETTI_LOG: dict[tuple[frozenset, int], tuple[int, ...]] = {}

_inner = homology._betti_cached


def _recording(facets, p):
    values = _inner(facets, p)
    BETTI_LOG[(facets, p)] = tuple(values)
    return values


_recording.cache_clear = _inner.cache_clear
homology._betti_cached = _recording

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_collection_modifyitems(config, items):
    # the Euler-Poincare sweep must see complexes from every other test
    late = [it for it in items if it.get_closest_marker("run_last")]
    items[:] = [it for it in items if not it.get_closest_marker("run_last")] + late


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _RESULTS[n] = ("PASS" if rep.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title = _RESULTS[n]
        terminalreporter.write_line(f"[{status}] criterion {n:2d}: {title}")
