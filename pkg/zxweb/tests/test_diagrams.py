import functools

import numpy as np
import pytest

from zxweb.diagrams import ArityMismatchError
from zxweb.diagrams import Diagram
from zxweb.diagrams import DiagramValidationError
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.diagrams import adjoint
from zxweb.diagrams import bend_input_to_output
from zxweb.diagrams import bend_output_to_input
from zxweb.diagrams import cap
from zxweb.diagrams import chain
from zxweb.diagrams import compose
from zxweb.diagrams import conjugate
from zxweb.diagrams import cup
from zxweb.diagrams import is_isomorphic
from zxweb.diagrams import permutation
from zxweb.diagrams import spider_diagram
from zxweb.diagrams import tensor_product
from zxweb.diagrams import wire
from zxweb.generate import random_diagram
from zxweb.phases import Phase
from zxweb.tensors import HADAMARD
from zxweb.tensors import VerdictKind
from zxweb.tensors import compare
from zxweb.tensors import evaluate


def test_vertex_kinds():
    assert VertexKind.z("1/4") == VertexKind(VertexType.Z, Phase(1, 4))
    assert VertexKind.x().phase == Phase(0)
    assert VertexKind.z("1/4").toggled() == VertexKind.x("1/4")
    assert VertexKind.z("1/4").negated() == VertexKind.z("7/4")
    assert VertexKind.hbox().negated() == VertexKind.hbox()
    assert str(VertexKind.x("1/2")) == "X(1/2)"
    assert str(VertexKind.hbox()) == "H"
    with pytest.raises(ValueError):
        VertexKind.spider(VertexType.H)
    with pytest.raises(ValueError):
        VertexKind.hbox().with_phase(1)
    with pytest.raises(ValueError):
        VertexType.BOUNDARY.toggled()


def test_add_spider_rejects_boundaries():
    d = Diagram()
    with pytest.raises(ValueError):
        d.add_spider(VertexKind.boundary())
    with pytest.raises(TypeError):
        d.add_spider("Z")  # noqa
    with pytest.raises(TypeError):
        d.add_spider(None)  # noqa
    assert d.num_vertices() == 0


def test_edges_form_a_multiset():
    d = Diagram()
    z = d.add_spider(VertexKind.z())
    x = d.add_spider(VertexKind.x())
    e1 = d.add_edge(z, x)
    e2 = d.add_edge(x, z)
    loop = d.add_edge(z, z)
    assert e1 != e2
    assert d.edges_between(z, x) == [e1, e2]
    assert d.loops(z) == [loop]
    assert d.degree(z) == 4
    assert d.degree(x) == 2
    assert d.neighbors(z) == [x]
    assert d.is_loop(loop)
    assert d.other_end(e1, z) == x
    d.remove_edge(e1)
    assert d.edges_between(z, x) == [e2]


def test_add_edge_unknown_vertex():
    d = Diagram()
    z = d.add_spider(VertexKind.z())
    with pytest.raises(DiagramValidationError) as e:
        d.add_edge(z, 17)
    assert e.value.rule == "unknown-vertex"


def test_validate_boundary_degree():
    d = Diagram()
    i = d.add_input()
    z = d.add_spider(VertexKind.z())
    d.add_edge(i, z)
    d.validate()

    # a boundary with a second edge
    d.add_edge(i, d.add_spider(VertexKind.x()))
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "boundary-degree"
    assert not d.is_valid()


def test_validate_dangling_boundary():
    d = Diagram()
    d.add_output()
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "boundary-degree"


def test_validate_hbox():
    d = Diagram()
    z = d.add_spider(VertexKind.z())
    h = d.add_spider(VertexKind.hbox())
    d.add_edge(z, h)
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "hbox-degree"

    d = Diagram()
    h = d.add_spider(VertexKind.hbox())
    d.add_edge(h, h)
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "hbox-self-loop"


def test_validate_boundary_roles():
    d = Diagram()
    b = d.add_vertex(VertexKind.boundary())
    d.add_edge(b, d.add_spider(VertexKind.z()))
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "boundary-role"
    d.set_boundaries([b], [])
    d.validate()
    assert d.inputs == (b,)


def test_validate_phase_on_hbox():
    d = Diagram()
    h = d.add_vertex(VertexKind(VertexType.H, Phase(1)))
    z = d.add_spider(VertexKind.z())
    d.add_edge(h, z)
    d.add_edge(h, z)
    with pytest.raises(DiagramValidationError) as e:
        d.validate()
    assert e.value.rule == "phase-on-non-spider"


def test_remove_vertex_drops_edges_and_roles():
    d = wire()
    (i,), (o,) = d.inputs, d.outputs
    d.remove_vertex(i)
    assert d.inputs == ()
    assert d.num_edges() == 0
    assert d.degree(o) == 0


def test_copy_is_independent():
    d = spider_diagram(VertexKind.z("1/4"), 1, 2)
    c = d.copy()
    (v,) = [v for v in c.spiders()]
    c.set_kind(v, VertexKind.z("1/2"))
    c.multiply_scalar(2)
    assert d.phase(v) == Phase(1, 4)
    assert d.scalar == 1
    assert c.scalar == 2


def test_set_kind_keeps_boundaries_apart():
    d = wire()
    with pytest.raises(ValueError):
        d.set_kind(d.inputs[0], VertexKind.z())


def test_compose_arity_mismatch():
    with pytest.raises(ArityMismatchError):
        compose(wire(2), wire(1))


def test_compose_evaluates_to_matrix_product():
    a = spider_diagram(VertexKind.z("1/4"), 1, 2)
    b = spider_diagram(VertexKind.x("1/2"), 2, 1)
    d = compose(a, b)
    expected = evaluate(b).matrix @ evaluate(a).matrix
    assert np.allclose(evaluate(d).matrix, expected, atol=1e-9)


def test_tensor_product_evaluates_to_kron():
    a = spider_diagram(VertexKind.z("1/4"), 1, 1)
    b = spider_diagram(VertexKind.x("1/2"), 1, 2)
    d = tensor_product(a, b)
    assert np.allclose(evaluate(d).matrix, np.kron(evaluate(a).matrix, evaluate(b).matrix), atol=1e-9)


def test_cup_then_cap_is_a_circle():
    d = compose(cup(), cap())
    assert d.num_vertices() == 0
    assert d.scalar == 2
    assert evaluate(d).to_scalar() == 2


def test_snake_is_a_wire():
    d = chain([tensor_product(wire(), cup()), tensor_product(cap(), wire())])
    assert is_isomorphic(d, wire())
    assert np.allclose(evaluate(d).matrix, np.eye(2))


def test_hbox_closed_on_itself_is_zero():
    h = spider_diagram(VertexKind.hbox(), 1, 1)
    d = chain([cup(), tensor_product(h, wire()), cap()])
    assert d.num_vertices() == 0
    assert d.scalar == 0


def test_conjugate_and_adjoint():
    d = spider_diagram(VertexKind.z("1/4"), 1, 2)
    d.multiply_scalar(1j)
    m = evaluate(d).matrix
    assert np.allclose(evaluate(conjugate(d)).matrix, m.conj())
    assert np.allclose(evaluate(adjoint(d)).matrix, m.conj().T)
    assert (len(adjoint(d).inputs), len(adjoint(d).outputs)) == (2, 1)


def test_bending(rng):
    d = random_diagram(rng, max_inputs=2, max_outputs=2)
    while not d.inputs:
        d = random_diagram(rng, max_inputs=2, max_outputs=2)
    bent = bend_input_to_output(d, 0)
    assert len(bent.inputs) == len(d.inputs) - 1
    assert len(bent.outputs) == len(d.outputs) + 1
    back = bend_output_to_input(bent, -1, position=0)
    assert compare(evaluate(d), evaluate(back), exact=True).is_equivalent
    with pytest.raises(IndexError):
        bend_input_to_output(d, len(d.inputs))


def test_bend_input_is_a_cup_plugged_in():
    d = spider_diagram(VertexKind.x("1/4"), 1, 1)
    bent = bend_input_to_output(d, 0)
    plugged = compose(cup(), tensor_product(d, wire()))
    assert np.allclose(evaluate(bent).matrix, evaluate(plugged).matrix)


def test_permutation():
    d = permutation([1, 0])
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(evaluate(d).matrix, swap)
    with pytest.raises(ValueError):
        permutation([0, 0])


def test_isomorphism_respects_labels():
    a = spider_diagram(VertexKind.z("1/4"), 1, 1)
    b = spider_diagram(VertexKind.z("1/4"), 1, 1).relabeled(lambda v: 10 - v)
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, spider_diagram(VertexKind.z("1/2"), 1, 1))
    assert not is_isomorphic(a, spider_diagram(VertexKind.x("1/4"), 1, 1))


def test_isomorphism_respects_boundary_order():
    assert is_isomorphic(permutation([0, 1]), wire(2))
    assert not is_isomorphic(permutation([1, 0]), wire(2))


def test_with_boundaries():
    d = wire(2)
    swapped = d.with_boundaries(d.inputs, list(reversed(d.outputs)))
    assert is_isomorphic(swapped, permutation([1, 0]))
    with pytest.raises(DiagramValidationError):
        d.with_boundaries(d.inputs, d.outputs[:1])


def test_relabeled_must_be_injective():
    with pytest.raises(ValueError):
        wire().relabeled(lambda v: 0)


def test_chain_requires_input():
    with pytest.raises(ValueError):
        chain([])


def test_repr():
    assert repr(wire()).startswith("<Diagram vertices=2 edges=1")


def _random_with_inputs(rng, n_inputs):
    while True:
        d = random_diagram(rng, max_spiders=4, max_edges=8)
        if len(d.inputs) == n_inputs:
            return d


def _hadamards(n):
    return functools.reduce(np.kron, [HADAMARD] * n, np.eye(1))


@pytest.mark.parametrize("seed", range(50))
def test_adjoint_is_an_involution(seed):
    d = random_diagram(np.random.default_rng(seed))
    d.multiply_scalar(0.5 + 1j)
    twice = adjoint(adjoint(d))
    assert is_isomorphic(twice, d)
    assert twice.scalar == d.scalar
    assert np.allclose(evaluate(adjoint(d)).matrix, evaluate(d).matrix.conj().T)


@pytest.mark.parametrize("seed", range(50))
def test_evaluation_ignores_vertex_ids(seed):
    rng = np.random.default_rng(seed)
    d = random_diagram(rng)
    ids = d.vertices()
    mapping = dict(zip(ids, (100 + 3 * int(p) for p in rng.permutation(len(ids)))))
    relabeled = d.relabeled(mapping.__getitem__)
    assert is_isomorphic(relabeled, d)
    assert compare(evaluate(d), evaluate(relabeled), exact=True).kind is VerdictKind.EQUAL


@pytest.mark.parametrize("seed", range(50))
def test_compose_and_tensor_on_random_diagrams(seed):
    rng = np.random.default_rng(seed)
    f = random_diagram(rng, max_spiders=4, max_edges=8)
    g = _random_with_inputs(rng, len(f.outputs))
    fm, gm = evaluate(f).matrix, evaluate(g).matrix
    assert compare(gm @ fm, evaluate(compose(f, g)), exact=True).kind is VerdictKind.EQUAL
    assert compare(np.kron(fm, gm), evaluate(tensor_product(f, g)), exact=True).kind is VerdictKind.EQUAL


@pytest.mark.parametrize("seed", range(50))
def test_swapping_colours_conjugates_by_hadamards(seed):
    d = random_diagram(np.random.default_rng(seed))
    swapped = d.copy()
    for v in swapped.spiders():
        if swapped.kind(v).is_spider:
            swapped.set_kind(v, swapped.kind(v).toggled())
    m = evaluate(d).matrix
    expected = _hadamards(len(d.outputs)) @ m @ _hadamards(len(d.inputs))
    assert compare(expected, evaluate(swapped), exact=True).kind is VerdictKind.EQUAL
