import math

import numpy as np
import pytest

from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.diagrams import is_isomorphic
from zxweb.diagrams import spider_diagram
from zxweb.diagrams import wire
from zxweb.generate import plant_redex
from zxweb.phases import Phase
from zxweb.rules import CATALOG
from zxweb.rules import RULE_IDS
from zxweb.rules import Match
from zxweb.rules import StaleMatchError
from zxweb.rules import UnknownRuleError
from zxweb.rules import apply_match
from zxweb.rules import derive_hopf_trace
from zxweb.rules import find_matches
from zxweb.rules import get_rule
from zxweb.rules import hopf_lhs
from zxweb.rules import hopf_rhs
from zxweb.rules import rewrite
from zxweb.tensors import VerdictKind
from zxweb.tensors import compare
from zxweb.tensors import evaluate


def _exact(a, b):
    return compare(evaluate(a), evaluate(b), exact=True).kind is VerdictKind.EQUAL


def test_catalog_ids():
    assert RULE_IDS == (
        "fusion", "identity", "self-loop", "hopf", "bialgebra",
        "copy", "pi-copy", "colour-change", "h-cancel",
    )
    for rule_id, rule in CATALOG.items():
        assert rule.rule_id == rule_id
        assert rule.description
        assert repr(rule) == f"<RewriteRule {rule_id!r}>"


def test_unknown_rule():
    with pytest.raises(UnknownRuleError):
        get_rule("spider-merge")
    with pytest.raises(KeyError):
        find_matches(wire(), "spider-merge")


@pytest.mark.parametrize("rule_id", RULE_IDS)
@pytest.mark.parametrize("seed", range(100))
def test_rewrites_preserve_the_tensor(rule_id, seed):
    rng = np.random.default_rng(seed)
    d = plant_redex(rng, rule_id)
    matches = find_matches(d, rule_id)
    assert matches, f"planted {rule_id} left hand side was not found"
    m = matches[int(rng.integers(len(matches)))]
    out, scalar = rewrite(d, m)
    out.validate()
    assert _exact(d, out)
    assert abs(scalar) > 0


def test_matches_are_sorted_and_deterministic(phase_chain):
    matches = find_matches(phase_chain, "fusion")
    assert matches == sorted(matches, key=Match.sort_key)
    assert matches == find_matches(phase_chain.copy(), "fusion")
    assert [m.vertices for m in matches] == [(1, 2), (2, 3)]


def test_fusion_adds_phases(phase_chain):
    d = phase_chain
    while find_matches(d, "fusion"):
        d = apply_match(d, find_matches(d, "fusion")[0])
    (v,) = d.spiders()
    assert d.kind(v) == VertexKind.z("3/4")
    assert _exact(d, phase_chain)


def test_fusion_of_parallel_edges_leaves_loops():
    d = Diagram()
    u = d.add_spider(VertexKind.x("1/4"))
    v = d.add_spider(VertexKind.x("1/4"))
    for _ in range(3):
        d.add_edge(u, v)
    d.add_edge(d.add_input(), u)
    (m,) = find_matches(d, "fusion")
    out = apply_match(d, m)
    assert len(out.loops(u)) == 2
    assert out.phase(u) == Phase(1, 2)
    assert _exact(d, out)


def test_fusion_needs_same_color():
    d = spider_diagram(VertexKind.z(), 1, 0)
    (z,) = d.spiders()
    d.add_edge(z, d.add_spider(VertexKind.x()))
    assert find_matches(d, "fusion") == []


def test_identity_removal():
    d = spider_diagram(VertexKind.z(), 1, 1)
    (m,) = find_matches(d, "identity")
    assert is_isomorphic(apply_match(d, m), wire())
    assert find_matches(spider_diagram(VertexKind.z("1/4"), 1, 1), "identity") == []
    assert find_matches(spider_diagram(VertexKind.z(), 1, 2), "identity") == []


def test_identity_removal_into_a_loop():
    d = Diagram()
    z = d.add_spider(VertexKind.z("1/2"))
    x = d.add_spider(VertexKind.x())
    d.add_edge(z, x)
    d.add_edge(z, x)
    (m,) = find_matches(d, "identity")
    out = apply_match(d, m)
    assert out.loops(z)
    assert _exact(d, out)


def test_self_loop_removal():
    d = spider_diagram(VertexKind.z("1/4"), 1, 1)
    (v,) = d.spiders()
    d.add_edge(v, v)
    (m,) = find_matches(d, "self-loop")
    assert is_isomorphic(apply_match(d, m), spider_diagram(VertexKind.z("1/4"), 1, 1))


def test_hopf_scalar():
    d = hopf_lhs()
    (m,) = find_matches(d, "hopf")
    out, scalar = rewrite(d, m)
    assert scalar == 0.5
    assert is_isomorphic(out, hopf_rhs())
    assert _exact(d, hopf_rhs())


def test_hopf_with_three_edges_keeps_one():
    d = Diagram()
    z = d.add_spider(VertexKind.z("1/4"))
    x = d.add_spider(VertexKind.x("1/2"))
    for _ in range(3):
        d.add_edge(z, x)
    d.add_edge(d.add_input(), z)
    d.add_edge(x, d.add_output())
    (m,) = find_matches(d, "hopf")
    out = apply_match(d, m)
    assert len(out.edges_between(z, x)) == 1
    assert _exact(d, out)


def _square():
    d = Diagram()
    ins = [d.add_input(), d.add_input()]
    zs = [d.add_spider(VertexKind.z()) for _ in range(2)]
    xs = [d.add_spider(VertexKind.x()) for _ in range(2)]
    outs = [d.add_output(), d.add_output()]
    for i, z in zip(ins, zs):
        d.add_edge(i, z)
    for z in zs:
        for x in xs:
            d.add_edge(z, x)
    for x, o in zip(xs, outs):
        d.add_edge(x, o)
    return d


def test_bialgebra():
    d = _square()
    (m,) = find_matches(d, "bialgebra")
    out, scalar = rewrite(d, m)
    assert scalar == pytest.approx(1 / math.sqrt(2))
    assert out.num_vertices() == 6
    assert sorted(out.type(v).value for v in out.spiders()) == ["X", "Z"]
    assert _exact(d, out)


def test_bialgebra_unfuses_phased_corners():
    d = _square()
    z = d.spiders()[0]
    d.set_kind(z, VertexKind.z("1/4"))
    (m,) = find_matches(d, "bialgebra")
    out, scalar = rewrite(d, m)
    assert scalar == pytest.approx(1 / math.sqrt(2))
    assert sorted(str(out.kind(v)) for v in out.spiders()) == ["X(0)", "Z(0)", "Z(1/4)"]
    assert _exact(d, out)


def test_bialgebra_corners_with_many_legs():
    d = _square()
    z, _, x, _ = d.spiders()
    d.add_edge(z, d.add_input())
    d.add_edge(z, d.add_output())
    # an X corner without outer legs
    (leg,) = [e for e in d.incident_edges(x) if not d.kind(d.other_end(e, x)).is_spider]
    d.remove_vertex(d.other_end(leg, x))
    (m,) = find_matches(d, "bialgebra")
    out, _ = rewrite(d, m)
    out.validate()
    assert len(out.spiders()) == 4
    assert _exact(d, out)


def test_bialgebra_skips_looped_corners():
    d = _square()
    z = d.spiders()[0]
    d.add_edge(z, z)
    assert find_matches(d, "bialgebra") == []


@pytest.mark.parametrize("color", [VertexType.Z, VertexType.X])
@pytest.mark.parametrize("bit", [0, 1])
@pytest.mark.parametrize("legs", [1, 2, 3])
def test_copy_scalar(color, bit, legs):
    alpha = Phase(1, 4)
    d = spider_diagram(VertexKind.spider(color.toggled(), alpha), 0, legs)
    (t,) = d.spiders()
    d.add_edge(d.add_spider(VertexKind.spider(color, bit)), t)
    (m,) = find_matches(d, "copy")
    out, scalar = rewrite(d, m)
    expected = 2 ** ((1 - legs) / 2) * (alpha.phasor() if bit else 1)
    assert scalar == pytest.approx(expected)
    assert len(out.spiders()) == legs
    assert all(out.kind(v) == VertexKind.spider(color, bit) for v in out.spiders())
    assert _exact(d, out)


def test_pi_copy():
    d = Diagram()
    i = d.add_input()
    p = d.add_spider(VertexKind.x(1))
    t = d.add_spider(VertexKind.z("1/4"))
    d.add_path([i, p, t])
    d.add_edge(t, d.add_output())
    d.add_edge(t, d.add_output())
    (m,) = find_matches(d, "pi-copy")
    out, scalar = rewrite(d, m)
    assert scalar == pytest.approx(Phase(1, 4).phasor())
    assert out.phase(t) == Phase(7, 4)
    nots = [v for v in out.spiders() if out.kind(v) == VertexKind.x(1)]
    assert len(nots) == 2
    assert _exact(d, out)


def test_colour_change():
    d = spider_diagram(VertexKind.z("1/4"), 1, 2)
    (m,) = find_matches(d, "colour-change")
    out = apply_match(d, m)
    assert sum(out.type(v) is VertexType.H for v in out.spiders()) == 3
    assert _exact(d, out)


def test_h_cancel():
    d = Diagram()
    i = d.add_input()
    h = d.add_spider(VertexKind.hbox())
    g = d.add_spider(VertexKind.hbox())
    d.add_path([i, h, g, d.add_output()])
    (m,) = find_matches(d, "h-cancel")
    assert is_isomorphic(apply_match(d, m), wire())


def test_stale_match():
    d = hopf_lhs()
    (m,) = find_matches(d, "hopf")
    out = apply_match(d, m)
    with pytest.raises(StaleMatchError):
        apply_match(out, m)
    with pytest.raises(StaleMatchError):
        apply_match(d, m._replace(edges=m.edges[:1]))


def test_scalar_override():
    d = hopf_lhs()
    (m,) = find_matches(d, "hopf")
    out, scalar = rewrite(d, m, scalar=3)
    assert scalar == 3
    assert out.scalar == 3


def test_derive_hopf():
    derivation = derive_hopf_trace()
    assert [rule for rule, _ in derivation.steps] == ["bialgebra", "copy", "fusion", "copy"]
    d = derivation.start
    start = evaluate(d)
    assert compare(evaluate(hopf_lhs()), start, exact=True).kind is VerdictKind.EQUAL
    for _, m in derivation.steps:
        d = apply_match(d, m)
        assert compare(start, evaluate(d), exact=True).kind is VerdictKind.EQUAL
    assert is_isomorphic(d, hopf_rhs())
    assert d.scalar == pytest.approx(hopf_rhs().scalar)
