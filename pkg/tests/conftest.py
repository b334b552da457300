import random

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from lrbtools.constructions import (complex_sign_monoid, direct_product, free_lrb,
                                    free_partially_commutative, real_face_monoid_from_covectors,
                                    real_face_monoid_from_normals)
from lrbtools.core import submonoid_generated, canonical
from lrbtools.corpus import THREE_LINES

settings.register_profile("ci", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = mark.args
        _RESULTS.append((number, title, rep.outcome == "passed"))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")


_AMBIENTS = None


def ambients():
    global _AMBIENTS
    if _AMBIENTS is None:
        sign = real_face_monoid_from_covectors(["0", "+", "-"])
        _AMBIENTS = [
            free_lrb("abc"),
            free_partially_commutative(nx.cycle_graph(4)),
            real_face_monoid_from_normals(THREE_LINES),
            complex_sign_monoid(2),
            direct_product(free_lrb("ab"), sign),
        ]
    return _AMBIENTS


@st.composite
def small_lrbs(draw):
    """Submonoids of a few ambient LRBs, generated by a random subset."""
    B = draw(st.sampled_from(ambients()))
    gens = draw(st.lists(st.integers(0, B.size - 1), min_size=1, max_size=4, unique=True))
    return canonical(submonoid_generated(B, gens).sub)


@st.composite
def small_graphs(draw, max_nodes=5):
    n = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(p for p, keep in zip(pairs, mask) if keep)
    return G


@pytest.fixture
def rng():
    return random.Random(20240611)
