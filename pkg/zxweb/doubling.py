"""quantum and classical wires via doubled diagrams

A pure diagram D becomes a quantum process by pairing it with its
conjugate. A quantum wire is then a (ket, bra) pair of plain wires while a
classical wire stays single. Measurements and encodings are spiders that
join a pair with a classical wire.

Classical data is read in the basis of the measuring color: for Z the
point distributions are the X(0) and X(pi) states, for X they are the
Z(0) and Z(pi) states.
"""
from enum import Enum
from typing import List
from typing import Sequence

from zxweb.diagrams import ArityMismatchError
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.diagrams import compose
from zxweb.diagrams import conjugate
from zxweb.diagrams import spider_diagram
from zxweb.diagrams import tensor_product
from zxweb.diagrams import wire

__all__ = [
    "DoubledDiagram",
    "WireKind",
    "chain_doubled",
    "classical_wire",
    "compose_doubled",
    "discard",
    "double",
    "encode_spider",
    "measure_spider",
    "nondemolition_measure",
    "point_state",
    "quantum_wire",
    "tensor_doubled",
    "uniform_state",
]


class WireKind(str, Enum):
    CLASSICAL = "c"
    QUANTUM = "q"

    @property
    def width(self) -> int:
        """number of plain wires this kind occupies"""
        return 2 if self is WireKind.QUANTUM else 1


def _width(kinds: Sequence[WireKind]) -> int:
    return sum(k.width for k in kinds)


class DoubledDiagram:
    """a plain diagram with quantum/classical annotations on its boundaries"""

    def __init__(
        self,
        underlying: Diagram,
        input_kinds: Sequence[WireKind],
        output_kinds: Sequence[WireKind],
    ) -> None:
        self.underlying = underlying
        self.input_kinds: List[WireKind] = [WireKind(k) for k in input_kinds]
        self.output_kinds: List[WireKind] = [WireKind(k) for k in output_kinds]
        if _width(self.input_kinds) != len(underlying.inputs):
            raise ArityMismatchError(
                f"input kinds need {_width(self.input_kinds)} boundaries, diagram has {len(underlying.inputs)}"
            )
        if _width(self.output_kinds) != len(underlying.outputs):
            raise ArityMismatchError(
                f"output kinds need {_width(self.output_kinds)} boundaries, diagram has {len(underlying.outputs)}"
            )

    def __repr__(self) -> str:
        ins = "".join(k.value for k in self.input_kinds)
        outs = "".join(k.value for k in self.output_kinds)
        return f"<DoubledDiagram {ins or '-'} -> {outs or '-'} {self.underlying!r}>"


def _interleave(first: Sequence[int], second: Sequence[int]) -> List[int]:
    return [v for pair in zip(first, second) for v in pair]


def double(d: Diagram) -> DoubledDiagram:
    """pair a diagram with its conjugate, grouping boundaries as (ket, bra)"""
    n, m = len(d.inputs), len(d.outputs)
    both = tensor_product(d, conjugate(d))
    inputs = _interleave(both.inputs[:n], both.inputs[n:])
    outputs = _interleave(both.outputs[:m], both.outputs[m:])
    return DoubledDiagram(
        both.with_boundaries(inputs, outputs),
        [WireKind.QUANTUM] * n,
        [WireKind.QUANTUM] * m,
    )


def _spider_with_legs(color: VertexType, n_inputs: int, n_outputs: int, phase: int = 0) -> Diagram:
    return spider_diagram(VertexKind.spider(color, phase), n_inputs, n_outputs)


def measure_spider(color: VertexType) -> DoubledDiagram:
    """quantum to classical: a 3-legged spider extracting the diagonal"""
    return DoubledDiagram(
        _spider_with_legs(color, 2, 1),
        [WireKind.QUANTUM],
        [WireKind.CLASSICAL],
    )


def encode_spider(color: VertexType) -> DoubledDiagram:
    """classical to quantum: the mirror image of measure_spider"""
    return DoubledDiagram(
        _spider_with_legs(color, 1, 2),
        [WireKind.CLASSICAL],
        [WireKind.QUANTUM],
    )


def nondemolition_measure(color: VertexType) -> DoubledDiagram:
    """measure, keep the collapsed quantum state and output the classical result"""
    return DoubledDiagram(
        _spider_with_legs(color, 2, 3),
        [WireKind.QUANTUM],
        [WireKind.QUANTUM, WireKind.CLASSICAL],
    )


def uniform_state(color: VertexType = VertexType.Z) -> DoubledDiagram:
    """the uniform distribution over the basis of `color`"""
    return DoubledDiagram(_spider_with_legs(color, 0, 1), [], [WireKind.CLASSICAL])


def point_state(color: VertexType, bit: int) -> DoubledDiagram:
    """the point distribution on outcome `bit` in the basis of `color`"""
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    return DoubledDiagram(
        _spider_with_legs(color.toggled(), 0, 1, phase=bit),
        [],
        [WireKind.CLASSICAL],
    )


def discard(color: VertexType = VertexType.Z) -> DoubledDiagram:
    """marginalize a classical wire carrying data of the basis `color`"""
    return DoubledDiagram(_spider_with_legs(color, 1, 0), [WireKind.CLASSICAL], [])


def compose_doubled(first: DoubledDiagram, then: DoubledDiagram) -> DoubledDiagram:
    if first.output_kinds != then.input_kinds:
        raise ArityMismatchError(
            f"wire kinds {[k.value for k in first.output_kinds]} can't feed {[k.value for k in then.input_kinds]}"
        )
    return DoubledDiagram(
        compose(first.underlying, then.underlying),
        first.input_kinds,
        then.output_kinds,
    )


def tensor_doubled(left: DoubledDiagram, right: DoubledDiagram) -> DoubledDiagram:
    return DoubledDiagram(
        tensor_product(left.underlying, right.underlying),
        left.input_kinds + right.input_kinds,
        left.output_kinds + right.output_kinds,
    )


def classical_wire() -> DoubledDiagram:
    return DoubledDiagram(wire(), [WireKind.CLASSICAL], [WireKind.CLASSICAL])


def quantum_wire() -> DoubledDiagram:
    return double(wire())


def chain_doubled(*diagrams: DoubledDiagram) -> DoubledDiagram:
    """compose doubled diagrams left to right"""
    if not diagrams:
        raise ValueError("need at least one diagram")
    result = diagrams[0]
    for d in diagrams[1:]:
        result = compose_doubled(result, d)
    return result
