import numpy as np
import pytest

from zxweb.circuits import cnot_diagram
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.files import serialize_diagram

TOLERANCE = 1e-9


@pytest.fixture(scope='function')
def rng():
    """a freshly seeded generator per test"""
    yield np.random.default_rng(0)


@pytest.fixture(scope='function')
def write_diagram(tmp_path):
    """factory writing a diagram document to tmp_path"""
    def _write(d, name="diagram.json"):
        fn = tmp_path / name
        fn.write_text(serialize_diagram(d))
        return fn
    yield _write


@pytest.fixture(scope='function')
def cnot_files(write_diagram):
    """the two CNOT presentations, the second one unnormalized"""
    a = write_diagram(cnot_diagram("spiders"), "cnot-a.json")
    b = write_diagram(cnot_diagram("hadamard", normalized=False), "cnot-b.json")
    yield a, b


@pytest.fixture(scope='function')
def phase_chain():
    """a wire carrying three Z(pi/4) spiders"""
    d = Diagram()
    i = d.add_input()
    zs = [d.add_spider(VertexKind.z("1/4")) for _ in range(3)]
    d.add_path([i, *zs, d.add_output()])
    yield d
