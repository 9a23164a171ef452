"""gate circuits, their text format and their translation into diagrams

Circuit text format::

    qubits 3
    h 0
    rz 1/4 1      # phase in units of pi, then the qubit
    cnot 0 2      # control, target
    cz 1 2

Blank lines and ``#`` comments are ignored.
"""
import math
from typing import Dict
from typing import Iterable
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple

import numpy as np

from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.phases import Phase
from zxweb.phases import PhaseLike

__all__ = [
    "Circuit",
    "CircuitSyntaxError",
    "Gate",
    "GATE_ARITY",
    "QubitIndexError",
    "circuit_to_diagram",
    "cnot_diagram",
    "gate_matrix",
    "parse_circuit",
]

_SQRT2 = math.sqrt(2)

# gate name -> (number of qubits, takes a phase)
GATE_ARITY: Dict[str, Tuple[int, bool]] = {
    "h": (1, False),
    "x": (1, False),
    "z": (1, False),
    "s": (1, False),
    "t": (1, False),
    "rz": (1, True),
    "rx": (1, True),
    "cnot": (2, False),
    "cz": (2, False),
}

# fixed phase gates are phase rotations in disguise
_FIXED_PHASES = {
    "x": ("rx", Phase(1)),
    "z": ("rz", Phase(1)),
    "s": ("rz", Phase(1, 2)),
    "t": ("rz", Phase(1, 4)),
}


class CircuitSyntaxError(ValueError):
    """raised for malformed circuit text"""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class QubitIndexError(IndexError):
    """raised when a gate addresses a qubit outside the circuit"""


class Gate(NamedTuple):
    name: str
    qubits: Tuple[int, ...]
    phase: Optional[Phase] = None

    def normalized(self) -> 'Gate':
        """express x, z, s and t as rx/rz rotations"""
        if self.name in _FIXED_PHASES:
            name, phase = _FIXED_PHASES[self.name]
            return Gate(name, self.qubits, phase)
        return self

    def __str__(self) -> str:
        args = [str(q) for q in self.qubits]
        if self.phase is not None:
            args.insert(0, str(self.phase))
        return " ".join([self.name, *args])


class Circuit:
    """an ordered list of gates on a fixed number of qubits"""

    def __init__(self, n_qubits: int, gates: Iterable[Gate] = ()) -> None:
        if n_qubits < 0:
            raise ValueError(f"qubit count must be non-negative, got {n_qubits}")
        self.n_qubits = n_qubits
        self.gates: List[Gate] = []
        for gate in gates:
            self.append(gate)

    def append(self, gate: Gate) -> None:
        try:
            arity, has_phase = GATE_ARITY[gate.name]
        except KeyError:
            raise ValueError(f"unknown gate {gate.name!r}") from None
        if len(gate.qubits) != arity:
            raise ValueError(f"{gate.name} acts on {arity} qubit(s), got {len(gate.qubits)}")
        if has_phase != (gate.phase is not None):
            raise ValueError(f"{gate.name} {'requires' if has_phase else 'takes no'} phase")
        for q in gate.qubits:
            if not 0 <= q < self.n_qubits:
                raise QubitIndexError(f"qubit {q} out of range for {self.n_qubits} qubit(s)")
        if len(set(gate.qubits)) != len(gate.qubits):
            raise ValueError(f"{gate.name} requires distinct qubits, got {list(gate.qubits)}")
        self.gates.append(gate)

    def add(self, name: str, *qubits: int, phase: Optional[PhaseLike] = None) -> 'Circuit':
        """append a gate by name, returning self for chaining"""
        self.append(Gate(name, tuple(qubits), None if phase is None else Phase.from_any(phase)))
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def matrix(self) -> np.ndarray:
        """the unitary of the circuit as a direct product of gate matrices"""
        n = self.n_qubits
        dim = 2 ** n
        state = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
        for gate in self.gates:
            k = len(gate.qubits)
            g = gate_matrix(gate).reshape((2,) * (2 * k))
            state = np.tensordot(g, state, axes=(list(range(k, 2 * k)), list(gate.qubits)))
            state = np.moveaxis(state, list(range(k)), list(gate.qubits))
        return state.reshape(dim, dim)

    def to_text(self) -> str:
        lines = [f"qubits {self.n_qubits}"] + [str(g) for g in self.gates]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"<Circuit qubits={self.n_qubits} gates={len(self.gates)}>"


_H = np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2


def _rz(phase: Phase) -> np.ndarray:
    return np.diag([1, phase.phasor()]).astype(complex)


def gate_matrix(gate: Gate) -> np.ndarray:
    """matrix of a gate with RZ(a) = diag(1, e^ia) and RX(a) = H RZ(a) H"""
    gate = gate.normalized()
    if gate.name == "h":
        return _H.copy()
    elif gate.name == "rz":
        assert gate.phase is not None
        return _rz(gate.phase)
    elif gate.name == "rx":
        assert gate.phase is not None
        return _H @ _rz(gate.phase) @ _H
    elif gate.name == "cnot":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    elif gate.name == "cz":
        return np.diag([1, 1, 1, -1]).astype(complex)
    raise ValueError(f"unknown gate {gate.name!r}")


def parse_circuit(text: str) -> Circuit:
    circuit: Optional[Circuit] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        name = tokens[0].lower()
        if circuit is None:
            if name != "qubits" or len(tokens) != 2:
                raise CircuitSyntaxError("expected 'qubits N' as first statement", lineno)
            circuit = Circuit(_parse_int(tokens[1], lineno))
            continue
        if name not in GATE_ARITY:
            raise CircuitSyntaxError(f"unknown gate {tokens[0]!r}", lineno)
        arity, has_phase = GATE_ARITY[name]
        args = tokens[1:]
        if len(args) != arity + has_phase:
            raise CircuitSyntaxError(
                f"{name} expects {'a phase and ' if has_phase else ''}{arity} qubit(s)", lineno
            )
        phase = None
        if has_phase:
            try:
                phase = Phase.from_str(args.pop(0))
            except ValueError as err:
                raise CircuitSyntaxError(str(err), lineno) from None
        qubits = tuple(_parse_int(a, lineno) for a in args)
        try:
            circuit.append(Gate(name, qubits, phase))
        except QubitIndexError as err:
            raise QubitIndexError(f"line {lineno}: {err}") from None
        except ValueError as err:
            raise CircuitSyntaxError(str(err), lineno) from None
    if circuit is None:
        raise CircuitSyntaxError("empty circuit, expected 'qubits N'")
    return circuit


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CircuitSyntaxError(f"expected an integer, got {token!r}", lineno) from None


class _Builder:
    """appends gates to a diagram one wire frontier at a time"""

    def __init__(self, n_qubits: int) -> None:
        self.diagram = Diagram()
        self.frontier = [self.diagram.add_input() for _ in range(n_qubits)]

    def place(self, q: int, kind: VertexKind) -> int:
        v = self.diagram.add_spider(kind)
        self.diagram.add_edge(self.frontier[q], v)
        self.frontier[q] = v
        return v

    def finish(self) -> Diagram:
        for v in self.frontier:
            self.diagram.add_edge(v, self.diagram.add_output())
        return self.diagram


def _append_gate(b: _Builder, gate: Gate, normalized: bool = True) -> None:
    gate = gate.normalized()
    d = b.diagram
    if gate.name == "h":
        b.place(gate.qubits[0], VertexKind.hbox())
    elif gate.name == "rz":
        b.place(gate.qubits[0], VertexKind.z(gate.phase or 0))
    elif gate.name == "rx":
        b.place(gate.qubits[0], VertexKind.x(gate.phase or 0))
    elif gate.name == "cnot":
        control, target = gate.qubits
        d.add_edge(b.place(control, VertexKind.z()), b.place(target, VertexKind.x()))
        if normalized:
            d.multiply_scalar(_SQRT2)
    elif gate.name == "cz":
        p, q = gate.qubits
        zp = b.place(p, VertexKind.z())
        zq = b.place(q, VertexKind.z())
        d.add_path([zp, d.add_spider(VertexKind.hbox()), zq])
        if normalized:
            d.multiply_scalar(_SQRT2)
    else:  # pragma: no cover
        raise ValueError(f"unknown gate {gate.name!r}")


def circuit_to_diagram(circuit: Circuit, normalized: bool = True) -> Diagram:
    """translate a circuit into a diagram, gate by gate from left to right

    With `normalized` the scalar is chosen so the diagram evaluates to
    exactly ``circuit.matrix()``; otherwise each two qubit gate contributes
    its bare spider network, which is the gate divided by sqrt(2).
    """
    b = _Builder(circuit.n_qubits)
    for gate in circuit.gates:
        _append_gate(b, gate, normalized)
    return b.finish()


def cnot_diagram(variant: str = "spiders", normalized: bool = True) -> Diagram:
    """CNOT on (control 0, target 1) in one of two presentations

    "spiders" joins a Z-spider on the control to an X-spider on the target,
    "hadamard" conjugates the target of a CZ with Hadamard boxes.
    """
    c = Circuit(2)
    if variant == "spiders":
        c.add("cnot", 0, 1)
    elif variant == "hadamard":
        c.add("h", 1).add("cz", 0, 1).add("h", 1)
    else:
        raise ValueError(f"unknown CNOT variant {variant!r}, use 'spiders' or 'hadamard'")
    return circuit_to_diagram(c, normalized=normalized)
