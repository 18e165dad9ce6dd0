import json

import pytest

from rsq.io import quiver_to_dict
from rsq.linalg import FieldSpec
from rsq.quiver import Quiver


def _cycle(n):
    names = [chr(ord("a") + k) for k in range(n)]
    return Quiver.from_edges(names, [(f"alpha{k}", names[k], names[(k + 1) % n]) for k in range(n)])


@pytest.fixture
def F():
    return FieldSpec(32003)


@pytest.fixture
def QQ():
    return FieldSpec()


@pytest.fixture
def F2():
    return FieldSpec(2)


@pytest.fixture
def a2():
    return Quiver.from_edges("ab", [("alpha", "a", "b")])


@pytest.fixture
def a3():
    return Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "b", "c")])


@pytest.fixture
def d4():
    return Quiver.from_edges("abcd", [("beta", "b", "a"), ("gamma", "c", "a"), ("delta", "d", "a")])


@pytest.fixture
def kronecker():
    return Quiver.from_edges("ab", [("alpha", "a", "b"), ("beta", "a", "b")])


@pytest.fixture
def loop():
    return Quiver.from_edges("a", [("alpha", "a", "a")])


@pytest.fixture
def two_cycle():
    return Quiver.from_edges("ab", [("alpha", "a", "b"), ("beta", "b", "a")])


@pytest.fixture
def cycle3():
    return Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "b", "c"), ("gamma", "c", "a")])


@pytest.fixture
def mixed3():
    return Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "b", "c"), ("gamma", "a", "c")])


@pytest.fixture
def quiver_file(tmp_path):
    def write(q, name="quiver.json"):
        path = tmp_path / name
        path.write_text(json.dumps(quiver_to_dict(q)))
        return str(path)
    return write


@pytest.fixture
def oriented_cycle():
    return _cycle


@pytest.fixture
def loop_with_tail():
    return Quiver.from_edges("ab", [("alpha", "a", "a"), ("gamma", "a", "b")])
