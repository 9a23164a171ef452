import numpy as np
import pytest

from zxweb.circuits import Circuit
from zxweb.circuits import circuit_to_diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.diagrams import is_isomorphic
from zxweb.diagrams import wire
from zxweb.generate import random_circuit
from zxweb.generate import random_diagram
from zxweb.rules import hopf_lhs
from zxweb.simplify import ReplayDivergenceError
from zxweb.simplify import SimplifyConfig
from zxweb.simplify import TraceLine
from zxweb.simplify import cleanup_pass
from zxweb.simplify import dumps_trace
from zxweb.simplify import loads_trace
from zxweb.simplify import measure
from zxweb.simplify import replay_lines
from zxweb.simplify import simplify
from zxweb.simplify import verify_trace
from zxweb.tensors import VerdictKind
from zxweb.tensors import compare
from zxweb.tensors import evaluate


def test_config_from_settings():
    cfg = SimplifyConfig.from_settings()
    assert cfg == SimplifyConfig(max_steps=10000, enable_bialgebra=True, enable_colour_change=False)
    assert SimplifyConfig.from_settings(max_steps=5, enable_colour_change=None).max_steps == 5
    assert "colour-change" not in cfg.strategy_rules()
    assert SimplifyConfig(enable_colour_change=True).strategy_rules() == (
        "bialgebra", "copy", "pi-copy", "colour-change",
    )
    assert SimplifyConfig(enable_bialgebra=False).strategy_rules() == ("copy", "pi-copy")


def test_config_rejects_empty_budget():
    with pytest.raises(ValueError):
        simplify(wire(), SimplifyConfig(max_steps=0))


def test_phase_chain_fuses(phase_chain):
    result, trace = simplify(phase_chain, SimplifyConfig())
    (v,) = result.spiders()
    assert result.kind(v) == VertexKind.z("3/4")
    assert trace.rule_counts() == {"fusion": 2}
    assert not trace.exhausted
    assert repr(trace) == "<Trace steps=2>"
    assert verify_trace(trace).kind is VerdictKind.EQUAL


def test_input_is_not_modified(phase_chain):
    before = phase_chain.copy()
    simplify(phase_chain, SimplifyConfig())
    assert is_isomorphic(phase_chain, before)


def test_budget_exhaustion(phase_chain):
    result, trace = simplify(phase_chain, SimplifyConfig(max_steps=1))
    assert trace.exhausted
    assert len(trace) == 1
    assert len(result.spiders()) == 2
    assert verify_trace(trace).kind is VerdictKind.EQUAL


def test_hopf_lhs_simplifies_to_rhs():
    result, trace = simplify(hopf_lhs(), SimplifyConfig())
    assert [step.rule for step in trace] == ["hopf"]
    assert result.scalar == 0.5
    assert compare(evaluate(hopf_lhs()), evaluate(result), exact=True).kind is VerdictKind.EQUAL


def test_cleanup_pass_only_uses_cleanup_rules(phase_chain):
    result, trace = cleanup_pass(phase_chain)
    assert set(trace.rule_counts()) <= {"fusion", "identity", "self-loop", "hopf", "h-cancel"}
    assert len(result.spiders()) == 1


@pytest.mark.parametrize("seed", range(30))
def test_random_diagrams_keep_their_tensor(seed):
    rng = np.random.default_rng(seed)
    d = random_diagram(rng)
    result, trace = simplify(d, SimplifyConfig())
    assert not trace.exhausted
    assert measure(result) <= measure(d)
    assert verify_trace(trace).kind is VerdictKind.EQUAL
    assert compare(evaluate(d), evaluate(result), exact=True).kind is VerdictKind.EQUAL


@pytest.mark.parametrize("seed", range(100))
def test_random_circuits_keep_their_unitary(seed):
    rng = np.random.default_rng(seed)
    c = random_circuit(rng, n_qubits=3, n_gates=25)
    d = circuit_to_diagram(c)
    result, trace = simplify(d, SimplifyConfig())
    assert result.num_vertices() <= d.num_vertices()
    assert compare(c.matrix(), evaluate(result), exact=True).kind is VerdictKind.EQUAL


@pytest.mark.parametrize("seed", range(10))
def test_random_circuits_with_colour_change(seed):
    rng = np.random.default_rng(seed)
    c = random_circuit(rng, n_qubits=3, n_gates=20)
    result, trace = simplify(circuit_to_diagram(c), SimplifyConfig(enable_colour_change=True))
    assert compare(c.matrix(), evaluate(result), exact=True).kind is VerdictKind.EQUAL


def test_cleanup_never_adds_vertices(rng):
    for _ in range(20):
        d = random_diagram(rng)
        result, _ = cleanup_pass(d)
        assert result.num_vertices() <= d.num_vertices()


def test_cnot_twice_is_the_identity():
    c = Circuit(2).add("cnot", 0, 1).add("cnot", 0, 1)
    result, trace = simplify(circuit_to_diagram(c), SimplifyConfig())
    assert result.spiders() == []
    assert "hopf" in trace.rule_counts()
    assert compare(np.eye(4), evaluate(result), exact=True).kind is VerdictKind.EQUAL


def test_hidden_square_is_popped():
    # two CNOTs with swapped roles wire up an alternating Z/X square
    c = Circuit(2).add("cnot", 0, 1).add("cnot", 1, 0)
    d = circuit_to_diagram(c)
    result, trace = simplify(d, SimplifyConfig())
    assert [step.rule for step in trace] == ["bialgebra"]
    assert len(result.spiders()) < len(d.spiders())
    assert compare(c.matrix(), evaluate(result), exact=True).kind is VerdictKind.EQUAL


def test_three_cnots_leave_no_spiders_on_the_wires():
    c = Circuit(2).add("cnot", 0, 1).add("cnot", 1, 0).add("cnot", 0, 1)
    result, trace = simplify(circuit_to_diagram(c), SimplifyConfig())
    assert trace.rule_counts()["bialgebra"] == 1
    assert result.spiders() == []
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert compare(swap, evaluate(result), exact=True).kind is VerdictKind.EQUAL
    assert verify_trace(trace).kind is VerdictKind.EQUAL


def test_phase_gadget_leaves_only_green_spiders_on_the_wires():
    # the X spiders of the CNOT targets hide two squares; popping both
    # leaves one green spider per wire joined through a red hub
    c = (
        Circuit(3)
        .add("cnot", 0, 2)
        .add("cnot", 1, 2)
        .add("rz", 2, phase="1/4")
        .add("cnot", 1, 2)
        .add("cnot", 0, 2)
    )
    d = circuit_to_diagram(c)
    result, trace = simplify(d, SimplifyConfig())
    assert trace.rule_counts()["bialgebra"] >= 2
    assert measure(result) < measure(cleanup_pass(d)[0])
    for b in result.inputs + result.outputs:
        for v in result.neighbors(b):
            assert result.type(v) is VertexType.Z
    assert compare(c.matrix(), evaluate(result), exact=True).kind is VerdictKind.EQUAL
    assert verify_trace(trace).kind is VerdictKind.EQUAL


def test_simplified_spider_is_left_alone():
    d = circuit_to_diagram(Circuit(1).add("rz", 0, phase="1/4"))
    result, trace = simplify(d, SimplifyConfig())
    assert len(trace) == 0
    assert is_isomorphic(result, d)


def test_simplify_is_deterministic(rng):
    d = random_diagram(rng)
    a, ta = simplify(d, SimplifyConfig())
    b, tb = simplify(d, SimplifyConfig())
    assert is_isomorphic(a, b)
    assert dumps_trace(ta) == dumps_trace(tb)


def test_verify_detects_a_wrong_final(phase_chain):
    _, trace = simplify(phase_chain, SimplifyConfig())
    trace.final = wire()
    with pytest.raises(ReplayDivergenceError):
        verify_trace(trace)


def test_verify_detects_a_wrong_scalar(phase_chain):
    _, trace = simplify(phase_chain, SimplifyConfig())
    trace.steps[0] = trace.steps[0]._replace(scalar=2)
    trace.final.multiply_scalar(2)
    assert verify_trace(trace).kind is VerdictKind.DISTINCT


def test_verify_detects_a_stale_step(phase_chain):
    _, trace = simplify(phase_chain, SimplifyConfig())
    trace.steps.reverse()
    with pytest.raises(ReplayDivergenceError):
        verify_trace(trace)


def test_verify_skips_the_oracle_for_wide_diagrams(phase_chain):
    _, trace = simplify(phase_chain, SimplifyConfig())
    trace.steps[0] = trace.steps[0]._replace(scalar=2)
    verdict = verify_trace(trace, max_boundaries=1)
    assert verdict.kind is VerdictKind.UNCHECKED
    assert not verdict.is_equivalent
    assert str(verdict) == "Unchecked"
    assert verify_trace(trace).kind is VerdictKind.DISTINCT


def test_trace_text_format(phase_chain):
    _, trace = simplify(phase_chain, SimplifyConfig())
    text = dumps_trace(trace)
    assert text == "fusion 1,2 1.0,0.0\nfusion 1,3 1.0,0.0\n"
    lines = loads_trace(text)
    assert lines == [TraceLine("fusion", (1, 2), 1), TraceLine("fusion", (1, 3), 1)]
    replayed = replay_lines(phase_chain, lines)
    assert is_isomorphic(replayed.final, trace.final)
    assert verify_trace(replayed).kind is VerdictKind.EQUAL


def test_trace_text_roundtrip_on_random_diagrams(rng):
    d = random_diagram(rng)
    _, trace = simplify(d, SimplifyConfig())
    replayed = replay_lines(d, loads_trace(dumps_trace(trace)))
    assert is_isomorphic(replayed.final, trace.final)
    assert replayed.final.scalar == pytest.approx(trace.final.scalar)


def test_loads_trace_skips_blank_lines():
    assert loads_trace("\n  \nhopf 1,2 0.5,0.0\n\n") == [TraceLine("hopf", (1, 2), 0.5)]


@pytest.mark.parametrize(
    "text", [
        "fusion 1,2\n",
        "hopf 1,2 0.5\n",
        "hopf one,2 0.5,0\n",
    ]
)
def test_loads_trace_reports_the_line(text):
    with pytest.raises(ValueError, match="line 1"):
        loads_trace(text)


def test_loads_trace_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        loads_trace("hopf 1,2 0.5,0\nhopf 1,2\n")


def test_replay_divergence(phase_chain):
    with pytest.raises(ReplayDivergenceError, match="step 0"):
        replay_lines(phase_chain, [TraceLine("hopf", (1, 2), 0.5)])
