"""protocol corpus: Bell states, teleportation, measurement based computing

Every builder returns an ordinary (or doubled) diagram. The ``check_*``
functions verify the claims made about a protocol with the tensor oracle
and the rewrite engine, and are what ``zxweb protocol NAME`` runs.
"""
import itertools
from typing import Callable
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from zxweb._logging import get_logger
from zxweb.circuits import Circuit
from zxweb.circuits import Gate
from zxweb.circuits import circuit_to_diagram
from zxweb.circuits import cnot_diagram
from zxweb.circuits import gate_matrix
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.diagrams import adjoint
from zxweb.diagrams import chain
from zxweb.diagrams import compose
from zxweb.diagrams import cup
from zxweb.diagrams import is_isomorphic
from zxweb.diagrams import spider_diagram
from zxweb.diagrams import tensor_product
from zxweb.diagrams import wire
from zxweb.doubling import DoubledDiagram
from zxweb.doubling import WireKind
from zxweb.doubling import chain_doubled
from zxweb.doubling import classical_wire
from zxweb.doubling import compose_doubled
from zxweb.doubling import discard
from zxweb.doubling import double
from zxweb.doubling import encode_spider
from zxweb.doubling import measure_spider
from zxweb.doubling import nondemolition_measure
from zxweb.doubling import quantum_wire
from zxweb.doubling import tensor_doubled
from zxweb.phases import Phase
from zxweb.phases import PhaseLike
from zxweb.rules import apply_match
from zxweb.rules import derive_hopf_trace
from zxweb.rules import hopf_rhs
from zxweb.simplify import SimplifyConfig
from zxweb.simplify import simplify
from zxweb.simplify import verify_trace
from zxweb.tensors import VerdictKind
from zxweb.tensors import compare
from zxweb.tensors import evaluate

__all__ = [
    "Check",
    "PROTOCOLS",
    "build_bell",
    "build_classical_teleportation",
    "build_cluster_mbqc",
    "build_mbqc_step",
    "build_teleportation",
    "classical_basis_change",
    "cluster_unitary",
    "run_protocol",
]

_log = get_logger(__name__)

_PAULI_PHASES = (Phase(0), Phase(1))


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _pauli(value: PhaseLike, name: str) -> Phase:
    phase = Phase.from_any(value)
    if phase not in _PAULI_PHASES:
        raise ValueError(f"invalid phase {name}={phase}, must be 0 or 1 (units of pi)")
    return phase


def _bit(value: int, name: str) -> int:
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")
    return value


def _single_qubit(*gates: Tuple[str, PhaseLike]) -> Diagram:
    c = Circuit(1)
    for name, phase in gates:
        c.add(name, 0, phase=phase)
    return circuit_to_diagram(c)


# --- builders -----------------------------------------------------------------

def build_bell(a: PhaseLike = 0, b: PhaseLike = 0, effect: bool = False) -> Diagram:
    """one of the four Bell states: a cup decorated with Z(a) and X(b)

    With `effect` the adjoint, a Bell effect on two inputs, is returned.
    """
    a, b = _pauli(a, "a"), _pauli(b, "b")
    d = Diagram()
    o0 = d.add_output()
    o1 = d.add_output()
    d.add_path([o0, d.add_spider(VertexKind.z(a)), d.add_spider(VertexKind.x(b)), o1])
    return adjoint(d) if effect else d


def build_teleportation(a: PhaseLike = 0, b: PhaseLike = 0, corrected: bool = False) -> Diagram:
    """Alice's Bell effect (a, b) on her input and half of a shared cup

    Bob receives X^b Z^a of the input. `corrected` appends X(b) then Z(a)
    on Bob's wire, giving the identity.
    """
    a, b = _pauli(a, "a"), _pauli(b, "b")
    shared = tensor_product(wire(), cup())
    alice = tensor_product(build_bell(a, b, effect=True), wire())
    d = compose(shared, alice)
    if corrected:
        d = compose(d, _single_qubit(("rx", b), ("rz", a)))
    return d


def classical_basis_change(color: VertexType) -> DoubledDiagram:
    """classical wire re-expressing data of the `color` basis in Z coordinates"""
    if color is VertexType.Z:
        return classical_wire()
    return DoubledDiagram(spider_diagram(VertexKind.hbox()), [WireKind.CLASSICAL], [WireKind.CLASSICAL])


def _classical_corrections() -> DoubledDiagram:
    """Bob's corrections driven by two classical bits

    The X-data bit is copied by an X-spider into Z-spiders on Bob's ket and
    bra wires (controlled Z), the Z-data bit by a Z-spider into X-spiders
    (controlled X).
    """
    d = Diagram()
    c_x, c_z, ket, bra = (d.add_input() for _ in range(4))
    copy_z = d.add_spider(VertexKind.z())
    copy_x = d.add_spider(VertexKind.x())
    d.add_edge(c_z, copy_z)
    d.add_edge(c_x, copy_x)
    for leg in (ket, bra):
        not_ = d.add_spider(VertexKind.x())
        phase = d.add_spider(VertexKind.z())
        d.add_edge(copy_z, not_)
        d.add_edge(copy_x, phase)
        d.add_path([leg, not_, phase, d.add_output()])
    return DoubledDiagram(d, [WireKind.CLASSICAL, WireKind.CLASSICAL, WireKind.QUANTUM], [WireKind.QUANTUM])


def build_classical_teleportation() -> DoubledDiagram:
    """teleportation as a quantum channel with classical correction wires

    Alice's Bell measurement is a CNOT followed by an X measurement of her
    input and a Z measurement of her half of the pair. Both outcomes travel
    as classical wires to Bob's controlled corrections.
    """
    entangle = compose(tensor_product(wire(), cup()), tensor_product(cnot_diagram(), wire()))
    measured = compose_doubled(
        double(entangle),
        tensor_doubled(tensor_doubled(measure_spider(VertexType.X), measure_spider(VertexType.Z)), quantum_wire()),
    )
    return compose_doubled(measured, _classical_corrections())


def build_mbqc_step(alpha: PhaseLike = 0, s: int = 0, corrected: bool = False) -> Diagram:
    """a two qubit measurement pattern applying the phase gate Z(alpha)

    The input enters a three legged Z-spider whose third leg is measured
    with the phased effect Z(alpha + s pi). `corrected` appends Z(-s pi).
    """
    alpha = Phase.from_any(alpha)
    s = _bit(s, "s")
    d = Diagram()
    i = d.add_input()
    centre = d.add_spider(VertexKind.z())
    effect = d.add_spider(VertexKind.z(alpha + Phase(s)))
    d.add_path([i, centre, d.add_output()])
    d.add_edge(centre, effect)
    if corrected:
        d = compose(d, _single_qubit(("rz", -Phase(s))))
    return d


def _measurement_phases(
    alpha: Phase, beta: Phase, gamma: Phase, outcomes: Sequence[int], corrected: bool,
) -> List[Phase]:
    s1, s2, s3 = outcomes
    if corrected:
        # adapt later angles to earlier outcomes
        beta = -beta if s1 else beta
        gamma = -gamma if s2 else gamma
    return [alpha + Phase(s1), beta + Phase(s2), gamma + Phase(s3)]


def build_cluster_mbqc(
    alpha: PhaseLike = 0,
    beta: PhaseLike = 0,
    gamma: PhaseLike = 0,
    outcomes: Sequence[int] = (0, 0, 0),
    corrected: bool = False,
) -> Diagram:
    """a four qubit linear cluster measured on its first three qubits

    Qubit 0 is the input, qubits 1 to 3 start as Z(0) states and are
    entangled with CZ gates. The uncorrected pattern with zero outcomes
    applies H Z(gamma) H Z(beta) H Z(alpha). The corrected pattern adapts
    the measurement angles and appends the Pauli corrections, so every
    outcome applies the same unitary.
    """
    if len(outcomes) != 3:
        raise ValueError(f"need 3 outcome bits, got {len(outcomes)}")
    outcomes = [_bit(s, "outcome") for s in outcomes]
    phases = _measurement_phases(
        Phase.from_any(alpha), Phase.from_any(beta), Phase.from_any(gamma), outcomes, corrected
    )
    plus = spider_diagram(VertexKind.z(), 0, 1)
    prepare = tensor_product(tensor_product(tensor_product(wire(), plus), plus), plus)
    entangle = circuit_to_diagram(Circuit(4).add("cz", 0, 1).add("cz", 1, 2).add("cz", 2, 3))
    measure = wire()
    for phase in reversed(phases):
        measure = tensor_product(spider_diagram(VertexKind.z(phase), 1, 0), measure)
    d = chain([prepare, entangle, measure])
    if corrected:
        s1, s2, s3 = outcomes
        d = compose(d, _single_qubit(("rx", Phase(s1)), ("rz", Phase(s2)), ("rx", Phase(s3))))
    return d


def cluster_unitary(alpha: PhaseLike, beta: PhaseLike, gamma: PhaseLike) -> np.ndarray:
    """H Z(gamma) H Z(beta) H Z(alpha)"""
    c = Circuit(1)
    for phase in (alpha, beta, gamma):
        c.add("rz", 0, phase=phase).add("h", 0)
    return c.matrix()


# --- checks -----------------------------------------------------------------------

def _proportional(expected: np.ndarray, actual, positive: bool = False) -> Tuple[bool, str]:
    verdict = compare(expected, actual)
    ok = verdict.is_equivalent
    if ok and positive and verdict.kind is VerdictKind.PROPORTIONAL:
        ok = abs(verdict.ratio.imag) <= 1e-9 and verdict.ratio.real > 0
    return ok, str(verdict)


def check_bell(**_) -> List[Check]:
    checks = []
    vectors = {}
    for a, b in itertools.product(_PAULI_PHASES, repeat=2):
        vectors[(a, b)] = evaluate(build_bell(a, b)).matrix[:, 0]
    ok, detail = _proportional(np.array([1, 0, 0, 1]), vectors[(Phase(0), Phase(0))])
    checks.append(Check("bell(0,0) is the cup", ok, detail))
    gram = np.array([[np.vdot(u, v) for v in vectors.values()] for u in vectors.values()])
    ok, detail = _proportional(np.eye(4), gram)
    checks.append(Check("bell basis gram matrix", ok, detail))
    for (a, b), v in vectors.items():
        effect = evaluate(build_bell(a, b, effect=True)).matrix[0, :]
        checks.append(Check(f"bell effect ({a},{b}) is the adjoint", bool(np.allclose(effect, v.conj())), ""))
    return checks


def check_teleportation(**_) -> List[Check]:
    checks = []
    ok, detail = _proportional(np.eye(2), evaluate(build_teleportation(0, 0)))
    checks.append(Check("uncorrected (0,0) slides the state", ok, detail))
    for a, b in itertools.product(_PAULI_PHASES, repeat=2):
        d = build_teleportation(a, b, corrected=True)
        ok, detail = _proportional(np.eye(2), evaluate(d))
        checks.append(Check(f"corrected ({a},{b}) is the identity", ok, detail))
        simplified, trace = simplify(d, SimplifyConfig.from_settings())
        bare = is_isomorphic(simplified, wire()) and len(trace) <= 20
        checks.append(Check(f"corrected ({a},{b}) rewrites to a bare wire", bare, f"{len(trace)} steps"))
    return checks


def check_classical_teleportation(**_) -> List[Check]:
    d = build_classical_teleportation()
    ok, detail = _proportional(np.eye(4), evaluate(d.underlying), positive=True)
    return [Check("doubled teleportation is the identity channel", ok, detail)]


def check_mbqc(alpha: PhaseLike = Phase(1, 4), **_) -> List[Check]:
    alpha = Phase.from_any(alpha)
    z_alpha = gate_matrix(Gate("rz", (0,), alpha))
    checks = []
    ok, detail = _proportional(z_alpha, evaluate(build_mbqc_step(alpha, 0)))
    checks.append(Check(f"step s=0 applies Z({alpha})", ok, detail))
    for s in (0, 1):
        ok, detail = _proportional(z_alpha, evaluate(build_mbqc_step(alpha, s, corrected=True)))
        checks.append(Check(f"corrected step s={s} applies Z({alpha})", ok, detail))
    ok, detail = _proportional(np.eye(2), evaluate(build_mbqc_step(0, 0)))
    checks.append(Check("phase free step transfers the state", ok, detail))
    return checks


def check_cluster(
    alpha: PhaseLike = Phase(1, 4),
    beta: PhaseLike = Phase(1, 2),
    gamma: PhaseLike = Phase(3, 4),
    **_,
) -> List[Check]:
    u = cluster_unitary(alpha, beta, gamma)
    checks = []
    plain = evaluate(build_cluster_mbqc(alpha, beta, gamma)).matrix
    ok, detail = _proportional(u, plain)
    checks.append(Check("zero outcomes apply the Euler unitary", ok, detail))
    ok, detail = _proportional(np.eye(2), plain.conj().T @ plain)
    checks.append(Check("result is proportional to a unitary", ok, detail))
    for outcomes in itertools.product((0, 1), repeat=3):
        d = build_cluster_mbqc(alpha, beta, gamma, outcomes, corrected=True)
        ok, detail = _proportional(u, evaluate(d))
        checks.append(Check(f"corrected outcomes {outcomes}", ok, detail))
    _, trace = simplify(build_cluster_mbqc(alpha, beta, gamma, corrected=True), SimplifyConfig.from_settings())
    verdict = verify_trace(trace)
    checks.append(Check("simplified pattern matches the oracle", verdict.kind is VerdictKind.EQUAL, str(verdict)))
    return checks


def check_measurement(**_) -> List[Check]:
    checks = []
    uniform = np.ones((2, 2))
    for c, c2 in itertools.product((VertexType.Z, VertexType.X), repeat=2):
        d = chain_doubled(
            classical_basis_change(c), encode_spider(c), measure_spider(c2), classical_basis_change(c2)
        )
        expected = np.eye(2) if c is c2 else uniform
        ok, detail = _proportional(expected, evaluate(d.underlying), positive=True)
        label = "does nothing" if c is c2 else "lets nothing through"
        checks.append(Check(f"measure {c2.value} after encode {c.value} {label}", ok, detail))

    phased = double(spider_diagram(VertexKind.z(Phase(1, 3)), 0, 1))
    d = compose_doubled(phased, measure_spider(VertexType.Z))
    ok, detail = _proportional(np.ones((2, 1)), evaluate(d.underlying), positive=True)
    checks.append(Check("measuring a phase state gives the uniform distribution", ok, detail))

    chained = chain_doubled(
        double(spider_diagram(VertexKind.x(Phase(1, 3)), 0, 1)),
        nondemolition_measure(VertexType.Z),
        tensor_doubled(nondemolition_measure(VertexType.X), classical_wire()),
        tensor_doubled(tensor_doubled(measure_spider(VertexType.Z), discard(VertexType.X)), classical_wire()),
    )
    # rows: last Z outcome, columns: first Z outcome
    joint = evaluate(chained.underlying).matrix.reshape(2, 2)
    rank = int(np.linalg.matrix_rank(joint, tol=1e-9))
    checks.append(Check("Z outcomes around an X measurement are unrelated", rank == 1, f"rank {rank}"))
    return checks


def check_hopf(**_) -> List[Check]:
    derivation = derive_hopf_trace()
    start = evaluate(derivation.start)
    d = derivation.start
    proportional = True
    for _rule_id, m in derivation.steps:
        d = apply_match(d, m)
        proportional &= compare(start, evaluate(d)).is_equivalent
    return [
        Check("every intermediate step is proportional to the start", proportional),
        Check("derivation ends in the Hopf right hand side", is_isomorphic(d, hopf_rhs())),
        Check("derivation is exact", compare(start, evaluate(d), exact=True).is_equivalent),
        Check("derivation is short", len(derivation.steps) <= 8, f"{len(derivation.steps)} steps"),
    ]


def check_cnot(**_) -> List[Check]:
    spiders = evaluate(cnot_diagram("spiders", normalized=False)).matrix
    hadamard = evaluate(cnot_diagram("hadamard", normalized=False)).matrix
    ok, detail = _proportional(spiders, hadamard)
    checks = [Check("both CNOT presentations agree", ok, detail)]
    ratio = None
    routing = True
    for c, t in itertools.product((0, 1), repeat=2):
        column = spiders[:, 2 * c + t]
        target = 2 * c + (t ^ c)
        routing &= bool(np.count_nonzero(np.abs(column) > 1e-9) == 1)
        value = column[target]
        ratio = value if ratio is None else ratio
        routing &= bool(abs(value - ratio) <= 1e-9)
    checks.append(Check("CNOT routes basis states by XOR", routing))
    return checks


PROTOCOLS: Dict[str, Callable[..., List[Check]]] = {
    "bell": check_bell,
    "teleportation": check_teleportation,
    "teleportation-classical": check_classical_teleportation,
    "mbqc": check_mbqc,
    "cluster": check_cluster,
    "measurement": check_measurement,
    "hopf": check_hopf,
    "cnot": check_cnot,
}


def run_protocol(name: str, params: Optional[Dict[str, PhaseLike]] = None) -> List[Check]:
    try:
        check = PROTOCOLS[name]
    except KeyError:
        raise KeyError(f"unknown protocol {name!r}, choose from {', '.join(PROTOCOLS)}") from None
    checks = check(**(params or {}))
    failed = [c for c in checks if not c.passed]
    if failed:
        _log.warning(f"protocol {name}: {len(failed)} of {len(checks)} checks failed")
    return checks
