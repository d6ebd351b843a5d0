import numpy as np
import pytest

from mixedqsl.sampling import RngStream

CRITERIA = {
    1: "qubit attainability: tTheta = theta on the qubit grid",
    2: "qubit hierarchy, lambda symmetry, near-pure coincidence",
    3: "analytic qubit bounds match the pipeline; printed Phi form does not",
    4: "pure-state reductions",
    5: "tightness sweep at 1e4 samples per N in 3..6",
    6: "purity correlation at 1e4 samples, N = 3",
    7: "qutrit simplex region and edge checks",
    8: "complexity benchmark eta(N)",
    9: "property suites",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _outcomes.setdefault(mark.args[0], []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n}: NOT RUN  {label}")
            continue
        failed = [name for name, o in results if o != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f"  (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {n}: {status}  {label} [{len(results) - len(failed)}/{len(results)}]{detail}")


@pytest.fixture
def rng():
    return RngStream(12345, 0)


def random_hermitian(n, gen):
    g = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    return (g + g.conj().T) / 2


@pytest.fixture
def np_rng():
    return np.random.default_rng(2024)
