"""open multigraph representation of ZX-diagrams

A :class:`Diagram` is a web of Z-spiders, X-spiders and Hadamard boxes,
with ordered lists of boundary vertices acting as inputs and outputs. Edges
form a multiset: parallel edges and self-loops on spiders are allowed.

Vertex and edge ids are opaque integers handed out in increasing order.
Everything that needs determinism (matching, serialization, rendering)
iterates ids in ascending order.
"""
import itertools
from enum import Enum
from typing import Callable
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx

from zxweb.phases import Phase
from zxweb.phases import PhaseLike

__all__ = [
    "ArityMismatchError",
    "Diagram",
    "DiagramValidationError",
    "VertexKind",
    "VertexType",
    "adjoint",
    "bend_input_to_output",
    "bend_output_to_input",
    "cap",
    "chain",
    "compose",
    "conjugate",
    "cup",
    "is_isomorphic",
    "permutation",
    "spider_diagram",
    "tensor_product",
    "wire",
]


class DiagramValidationError(ValueError):
    """raised when a diagram violates one of its structural invariants"""

    def __init__(self, rule: str, message: str) -> None:
        super().__init__(f"[{rule}] {message}")
        self.rule = rule


class ArityMismatchError(ValueError):
    """raised when composing diagrams with incompatible boundaries"""


class VertexType(Enum):
    Z = "Z"
    X = "X"
    H = "H"
    BOUNDARY = "B"

    @property
    def is_spider(self) -> bool:
        return self in (VertexType.Z, VertexType.X)

    def toggled(self) -> 'VertexType':
        """swap the spider colors"""
        if self is VertexType.Z:
            return VertexType.X
        elif self is VertexType.X:
            return VertexType.Z
        raise ValueError(f"{self.name} has no opposite color")


class VertexKind(NamedTuple):
    """the kind of a diagram vertex

    >>> VertexKind.z("1/4")
    VertexKind(type=<VertexType.Z: 'Z'>, phase=Phase(1, 4))
    """
    type: VertexType
    phase: Phase = Phase(0)

    @classmethod
    def z(cls, phase: PhaseLike = 0) -> 'VertexKind':
        return cls(VertexType.Z, Phase.from_any(phase))

    @classmethod
    def x(cls, phase: PhaseLike = 0) -> 'VertexKind':
        return cls(VertexType.X, Phase.from_any(phase))

    @classmethod
    def spider(cls, type_: VertexType, phase: PhaseLike = 0) -> 'VertexKind':
        if not type_.is_spider:
            raise ValueError(f"{type_.name} is not a spider type")
        return cls(type_, Phase.from_any(phase))

    @classmethod
    def hbox(cls) -> 'VertexKind':
        return cls(VertexType.H)

    @classmethod
    def boundary(cls) -> 'VertexKind':
        return cls(VertexType.BOUNDARY)

    @property
    def is_spider(self) -> bool:
        return self.type.is_spider

    def with_phase(self, phase: PhaseLike) -> 'VertexKind':
        if not self.is_spider:
            raise ValueError(f"{self.type.name} vertices carry no phase")
        return VertexKind(self.type, Phase.from_any(phase))

    def negated(self) -> 'VertexKind':
        """the same kind with its phase negated (no-op for non-spiders)"""
        if not self.is_spider:
            return self
        return VertexKind(self.type, -self.phase)

    def toggled(self) -> 'VertexKind':
        """the same phase on a spider of the opposite color"""
        return VertexKind(self.type.toggled(), self.phase)

    def __str__(self) -> str:
        if self.is_spider:
            return f"{self.type.value}({self.phase})"
        return self.type.value


class Diagram:
    """a ZX-diagram: vertices, a multiset of edges, boundaries and a scalar"""

    def __init__(self) -> None:
        self._vertices: Dict[int, VertexKind] = {}
        self._edges: Dict[int, Tuple[int, int]] = {}
        # vertex -> insertion ordered set of incident edge ids
        self._incident: Dict[int, Dict[int, None]] = {}
        self._inputs: List[int] = []
        self._outputs: List[int] = []
        self._scalar: complex = 1 + 0j
        self._next_vertex = 0
        self._next_edge = 0

    # --- construction -------------------------------------------------

    def _add_vertex(self, kind: VertexKind) -> int:
        if not isinstance(kind, VertexKind):
            raise TypeError(f"requires VertexKind instance got {kind.__class__.__name__}")
        v = self._next_vertex
        self._next_vertex += 1
        self._vertices[v] = kind
        self._incident[v] = {}
        return v

    def add_spider(self, kind: VertexKind) -> int:
        """add an isolated Z-spider, X-spider or HBox and return its id"""
        if not isinstance(kind, VertexKind):
            raise TypeError(f"requires VertexKind instance got {kind.__class__.__name__}")
        if kind.type is VertexType.BOUNDARY:
            raise ValueError("use add_input / add_output for boundary vertices")
        return self._add_vertex(kind)

    def add_vertex(self, kind: VertexKind) -> int:
        """add a vertex of any kind

        boundary vertices added this way have no role until
        :meth:`set_boundaries` lists them
        """
        return self._add_vertex(kind)

    def set_boundaries(self, inputs: Sequence[int], outputs: Sequence[int]) -> None:
        """assign the ordered input and output boundary lists"""
        for v in itertools.chain(inputs, outputs):
            if v not in self._vertices:
                raise DiagramValidationError("unknown-vertex", f"boundary {v} does not exist")
        self._inputs = list(inputs)
        self._outputs = list(outputs)

    def add_input(self) -> int:
        """append a new boundary vertex to the inputs"""
        v = self._add_vertex(VertexKind.boundary())
        self._inputs.append(v)
        return v

    def add_output(self) -> int:
        """append a new boundary vertex to the outputs"""
        v = self._add_vertex(VertexKind.boundary())
        self._outputs.append(v)
        return v

    def add_edge(self, a: int, b: int) -> int:
        """add one copy of the edge {a, b} and return the edge id

        degree constraints are only enforced by :meth:`validate`
        """
        for v in (a, b):
            if v not in self._vertices:
                raise DiagramValidationError("unknown-vertex", f"vertex {v} does not exist")
        e = self._next_edge
        self._next_edge += 1
        self._edges[e] = (a, b) if a <= b else (b, a)
        self._incident[a][e] = None
        self._incident[b][e] = None
        return e

    def add_path(self, vertices: Sequence[int]) -> List[int]:
        """connect consecutive vertices with edges"""
        return [self.add_edge(a, b) for a, b in zip(vertices, vertices[1:])]

    def remove_edge(self, e: int) -> None:
        a, b = self._edges.pop(e)
        del self._incident[a][e]
        self._incident[b].pop(e, None)

    def remove_vertex(self, v: int) -> None:
        """remove a vertex and all its incident edges"""
        for e in list(self._incident[v]):
            self.remove_edge(e)
        del self._incident[v]
        del self._vertices[v]
        if v in self._inputs:
            self._inputs.remove(v)
        if v in self._outputs:
            self._outputs.remove(v)

    def set_kind(self, v: int, kind: VertexKind) -> None:
        if v not in self._vertices:
            raise DiagramValidationError("unknown-vertex", f"vertex {v} does not exist")
        if (kind.type is VertexType.BOUNDARY) != (self._vertices[v].type is VertexType.BOUNDARY):
            raise ValueError("boundary vertices can't change kind")
        self._vertices[v] = kind

    def multiply_scalar(self, factor: complex) -> None:
        self._scalar *= complex(factor)

    # --- queries --------------------------------------------------------

    @property
    def inputs(self) -> Tuple[int, ...]:
        return tuple(self._inputs)

    @property
    def outputs(self) -> Tuple[int, ...]:
        return tuple(self._outputs)

    @property
    def scalar(self) -> complex:
        return self._scalar

    def vertices(self) -> List[int]:
        """all vertex ids in ascending order"""
        return sorted(self._vertices)

    def spiders(self) -> List[int]:
        """all non-boundary vertex ids in ascending order"""
        return [v for v in self.vertices() if self._vertices[v].type is not VertexType.BOUNDARY]

    def edges(self) -> List[int]:
        """all edge ids in ascending order"""
        return sorted(self._edges)

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._vertices

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def kind(self, v: int) -> VertexKind:
        return self._vertices[v]

    def type(self, v: int) -> VertexType:
        return self._vertices[v].type

    def phase(self, v: int) -> Phase:
        return self._vertices[v].phase

    def endpoints(self, e: int) -> Tuple[int, int]:
        return self._edges[e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        if v == a:
            return b
        elif v == b:
            return a
        raise ValueError(f"edge {e} is not incident to vertex {v}")

    def is_loop(self, e: int) -> bool:
        a, b = self._edges[e]
        return a == b

    def incident_edges(self, v: int) -> List[int]:
        return sorted(self._incident[v])

    def loops(self, v: int) -> List[int]:
        return [e for e in self.incident_edges(v) if self.is_loop(e)]

    def degree(self, v: int) -> int:
        """number of edge ends at v (a self-loop counts twice)"""
        return sum(2 if self.is_loop(e) else 1 for e in self._incident[v])

    def neighbors(self, v: int) -> List[int]:
        """distinct neighbors of v (excluding v itself) in ascending order"""
        return sorted({self.other_end(e, v) for e in self._incident[v]} - {v})

    def edges_between(self, a: int, b: int) -> List[int]:
        if a == b:
            return self.loops(a)
        return [e for e in self.incident_edges(a) if self.other_end(e, a) == b]

    def boundary_count(self) -> int:
        return len(self._inputs) + len(self._outputs)

    # --- invariants -----------------------------------------------------

    def validate(self) -> None:
        """raise DiagramValidationError if a structural invariant is violated"""
        boundaries = [v for v, k in self._vertices.items() if k.type is VertexType.BOUNDARY]
        listed = self._inputs + self._outputs
        for v in listed:
            if v not in self._vertices:
                raise DiagramValidationError("unknown-vertex", f"boundary {v} does not exist")
        if len(set(listed)) != len(listed):
            raise DiagramValidationError("boundary-role", "a boundary is listed more than once")
        if set(listed) != set(boundaries):
            missing = sorted(set(boundaries) - set(listed))
            if missing:
                raise DiagramValidationError(
                    "boundary-role", f"boundary vertices {missing} are neither inputs nor outputs"
                )
            raise DiagramValidationError("boundary-role", "inputs/outputs reference non-boundary vertices")
        for v, kind in self._vertices.items():
            if kind.type is VertexType.BOUNDARY:
                if self.degree(v) != 1:
                    raise DiagramValidationError(
                        "boundary-degree", f"boundary {v} has degree {self.degree(v)}, expected 1"
                    )
            elif kind.type is VertexType.H:
                if self.loops(v):
                    raise DiagramValidationError("hbox-self-loop", f"HBox {v} has a self-loop")
                if self.degree(v) != 2:
                    raise DiagramValidationError(
                        "hbox-degree", f"HBox {v} has degree {self.degree(v)}, expected 2"
                    )
            if not kind.is_spider and not kind.phase.is_zero():
                raise DiagramValidationError("phase-on-non-spider", f"vertex {v} is not a spider but has a phase")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except DiagramValidationError:
            return False
        return True

    # --- copies and relabeling ----------------------------------------

    def copy(self) -> 'Diagram':
        d = Diagram()
        d._vertices = dict(self._vertices)
        d._edges = dict(self._edges)
        d._incident = {v: dict(es) for v, es in self._incident.items()}
        d._inputs = list(self._inputs)
        d._outputs = list(self._outputs)
        d._scalar = self._scalar
        d._next_vertex = self._next_vertex
        d._next_edge = self._next_edge
        return d

    def with_boundaries(self, inputs: Sequence[int], outputs: Sequence[int]) -> 'Diagram':
        """return a copy with the boundary vertices reassigned and reordered"""
        if sorted(list(inputs) + list(outputs)) != sorted(self._inputs + self._outputs):
            raise DiagramValidationError("boundary-role", "boundaries must be a rearrangement of the existing ones")
        d = self.copy()
        d._inputs = list(inputs)
        d._outputs = list(outputs)
        return d

    def _absorb(self, other: 'Diagram') -> Dict[int, int]:
        """add a disjoint copy of other's vertices and edges, return the id map"""
        mapping = {v: self._add_vertex(other.kind(v)) for v in other.vertices()}
        for e in other.edges():
            a, b = other.endpoints(e)
            self.add_edge(mapping[a], mapping[b])
        return mapping

    def relabeled(self, relabel: Callable[[int], int]) -> 'Diagram':
        """return a copy with every vertex id v replaced by relabel(v)"""
        mapping = {v: relabel(v) for v in self._vertices}
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("relabeling must be injective")
        d = Diagram()
        for v in sorted(self._vertices, key=mapping.__getitem__):
            d._vertices[mapping[v]] = self._vertices[v]
            d._incident[mapping[v]] = {}
        for e in self.edges():
            a, b = self._edges[e]
            d.add_edge(mapping[a], mapping[b])
        d._inputs = [mapping[v] for v in self._inputs]
        d._outputs = [mapping[v] for v in self._outputs]
        d._scalar = self._scalar
        d._next_vertex = max(mapping.values(), default=-1) + 1
        return d

    def _join_boundaries(self, u: int, v: int) -> None:
        """dissolve two boundary vertices, plugging their wires together"""
        (eu,) = self._incident[u]
        (ev,) = self._incident[v]
        if eu == ev:
            # the two boundaries were wired to each other: a closed circle
            self.remove_vertex(u)
            self.remove_vertex(v)
            self._scalar *= 2
            return
        x = self.other_end(eu, u)
        y = self.other_end(ev, v)
        self.remove_vertex(u)
        self.remove_vertex(v)
        if x == y and self._vertices[x].type is VertexType.H:
            # an HBox closed on itself is the trace of the Hadamard matrix
            self.remove_vertex(x)
            self._scalar *= 0
            return
        self.add_edge(x, y)

    # --- export ---------------------------------------------------------

    def vertex_label(self, v: int) -> Tuple[str, str]:
        """hashable label used for isomorphism checks and canonical ordering"""
        kind = self._vertices[v]
        if kind.type is VertexType.BOUNDARY:
            if v in self._inputs:
                return "in", str(self._inputs.index(v))
            return "out", str(self._outputs.index(v))
        return kind.type.value, str(kind.phase)

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        for v in self.vertices():
            g.add_node(v, label=self.vertex_label(v))
        for e in self.edges():
            a, b = self._edges[e]
            g.add_edge(a, b, key=e)
        return g

    def __repr__(self) -> str:
        return (
            f"<Diagram vertices={self.num_vertices()} edges={self.num_edges()}"
            f" inputs={len(self._inputs)} outputs={len(self._outputs)} scalar={self._scalar:.6g}>"
        )


# --- operations on diagrams ---------------------------------------------

def compose(first: Diagram, then: Diagram) -> Diagram:
    """sequential composition: plug the outputs of `first` into the inputs of `then`"""
    if len(first.outputs) != len(then.inputs):
        raise ArityMismatchError(
            f"cannot compose {len(first.outputs)} outputs with {len(then.inputs)} inputs"
        )
    d = first.copy()
    mapping = d._absorb(then)
    junctions = list(zip(first.outputs, (mapping[v] for v in then.inputs)))
    d._inputs = list(first.inputs)
    d._outputs = [mapping[v] for v in then.outputs]
    d._scalar = first.scalar * then.scalar
    for u, v in junctions:
        d._join_boundaries(u, v)
    return d


def tensor_product(left: Diagram, right: Diagram) -> Diagram:
    """parallel composition: place two diagrams side by side"""
    d = left.copy()
    mapping = d._absorb(right)
    d._inputs = list(left.inputs) + [mapping[v] for v in right.inputs]
    d._outputs = list(left.outputs) + [mapping[v] for v in right.outputs]
    d._scalar = left.scalar * right.scalar
    return d


def conjugate(d: Diagram) -> Diagram:
    """entrywise complex conjugate: negate all phases and conjugate the scalar"""
    out = d.copy()
    for v in out.spiders():
        out._vertices[v] = out._vertices[v].negated()
    out._scalar = d.scalar.conjugate()
    return out


def adjoint(d: Diagram) -> Diagram:
    """the dagger of a diagram: conjugate and swap inputs with outputs"""
    out = conjugate(d)
    out._inputs, out._outputs = list(d.outputs), list(d.inputs)
    return out


def bend_input_to_output(d: Diagram, which: int) -> Diagram:
    """turn input `which` into the new last output by attaching a cup"""
    if not 0 <= which < len(d.inputs):
        raise IndexError(f"input index {which} out of range for {len(d.inputs)} inputs")
    out = d.copy()
    v = out._inputs.pop(which)
    out._outputs.append(v)
    return out


def bend_output_to_input(d: Diagram, which: int, position: Optional[int] = None) -> Diagram:
    """turn output `which` into an input (inserted at `position`) by attaching a cap"""
    if not -len(d.outputs) <= which < len(d.outputs):
        raise IndexError(f"output index {which} out of range for {len(d.outputs)} outputs")
    out = d.copy()
    v = out._outputs.pop(which)
    if position is None:
        position = len(out._inputs)
    out._inputs.insert(position, v)
    return out


def is_isomorphic(a: Diagram, b: Diagram) -> bool:
    """graph isomorphism respecting vertex kinds, phases and boundary order"""
    if (a.num_vertices(), a.num_edges()) != (b.num_vertices(), b.num_edges()):
        return False
    return nx.is_isomorphic(
        a.to_networkx(),
        b.to_networkx(),
        node_match=lambda x, y: x["label"] == y["label"],
    )


# --- standard diagrams ----------------------------------------------------

def wire(n: int = 1) -> Diagram:
    """n parallel bare wires"""
    d = Diagram()
    ins = [d.add_input() for _ in range(n)]
    outs = [d.add_output() for _ in range(n)]
    for i, o in zip(ins, outs):
        d.add_edge(i, o)
    return d


def cup() -> Diagram:
    """the Bell state |00> + |11> as a bent wire"""
    d = Diagram()
    d.add_edge(d.add_output(), d.add_output())
    return d


def cap() -> Diagram:
    """the Bell effect <00| + <11| as a bent wire"""
    d = Diagram()
    d.add_edge(d.add_input(), d.add_input())
    return d


def spider_diagram(kind: VertexKind, n_inputs: int = 1, n_outputs: int = 1) -> Diagram:
    """a single spider (or HBox) with the given number of boundary legs"""
    d = Diagram()
    ins = [d.add_input() for _ in range(n_inputs)]
    v = d.add_spider(kind)
    outs = [d.add_output() for _ in range(n_outputs)]
    for b in itertools.chain(ins, outs):
        d.add_edge(b, v)
    return d


def permutation(perm: Sequence[int]) -> Diagram:
    """bare wires sending input i to output perm[i]"""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)!r} is not a permutation of range({n})")
    d = Diagram()
    ins = [d.add_input() for _ in range(n)]
    outs = [d.add_output() for _ in range(n)]
    for i, target in enumerate(perm):
        d.add_edge(ins[i], outs[target])
    return d


def chain(diagrams: Iterable[Diagram]) -> Diagram:
    """compose a sequence of diagrams left to right"""
    it: Iterator[Diagram] = iter(diagrams)
    try:
        result = next(it)
    except StopIteration:
        raise ValueError("chain requires at least one diagram") from None
    for d in it:
        result = compose(result, d)
    return result
