import sys
import os

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.defaults import CAPS
from modules.graph_core import Graph


def _path(n):
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def _cycle(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


@pytest.fixture(autouse=True)
def restore_caps():
    saved = dict(CAPS)
    yield
    CAPS.clear()
    CAPS.update(saved)


@pytest.fixture
def k2():
    return Graph.from_edges(2, [(1, 2)])


@pytest.fixture
def k3():
    return _cycle(3)


@pytest.fixture
def p3():
    return _path(3)


@pytest.fixture
def p4():
    return _path(4)


@pytest.fixture
def p5():
    return _path(5)


@pytest.fixture
def c4():
    return _cycle(4)


@pytest.fixture
def c5():
    return _cycle(5)


@pytest.fixture
def k13():
    return Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])


@pytest.fixture
def g5():
    """辺 12 に葉 3 と、頂点 2 を頂点とするペンダント三角形 {2, 4, 5} を付けたグラフ"""
    return Graph.from_edges(5, [(1, 2), (1, 3), (2, 4), (2, 5), (4, 5)])
