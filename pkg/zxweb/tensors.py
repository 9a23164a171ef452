"""dense tensor semantics for ZX-diagrams

`evaluate` turns a :class:`~zxweb.diagrams.Diagram` into the linear map it
denotes, as a ``2**m x 2**n`` matrix from its n inputs to its m outputs.
Boundary position 0 is the most significant bit of the row/column index.
"""
import math
from enum import Enum
from typing import Dict
from typing import Hashable
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple
from typing import Union

import numpy as np

from zxweb._logging import get_logger
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType

__all__ = [
    "HADAMARD",
    "SizeGuardError",
    "Tensor",
    "Verdict",
    "VerdictKind",
    "compare",
    "evaluate",
    "labelled_entries",
    "vertex_tensor",
]

_log = get_logger(__name__)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


class SizeGuardError(RuntimeError):
    """raised when an intermediate tensor would exceed the size guard"""


class Tensor:
    """a linear map between qubit wires, stored as a dense complex matrix"""
    __slots__ = ("_matrix",)

    def __init__(self, matrix: np.ndarray) -> None:
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2:
            raise ValueError(f"tensor matrix must be 2-dimensional, got shape {matrix.shape}")
        for dim in matrix.shape:
            if dim < 1 or dim & (dim - 1):
                raise ValueError(f"tensor dimensions must be powers of 2, got shape {matrix.shape}")
        self._matrix = matrix

    @classmethod
    def from_scalar(cls, value: complex) -> 'Tensor':
        return cls(np.array([[value]], dtype=complex))

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def n_outputs(self) -> int:
        return self._matrix.shape[0].bit_length() - 1

    @property
    def n_inputs(self) -> int:
        return self._matrix.shape[1].bit_length() - 1

    @property
    def shape(self) -> Tuple[int, int]:
        """the (outputs, inputs) wire counts"""
        return self.n_outputs, self.n_inputs

    def is_scalar(self) -> bool:
        return self._matrix.shape == (1, 1)

    def to_scalar(self) -> complex:
        if not self.is_scalar():
            raise ValueError(f"tensor of shape {self.shape} is not a scalar")
        return complex(self._matrix[0, 0])

    def kron(self, other: 'Tensor') -> 'Tensor':
        """side by side placement, self on the most significant wires"""
        return Tensor(np.kron(self._matrix, other._matrix))

    def dagger(self) -> 'Tensor':
        return Tensor(self._matrix.conj().T)

    def matmul(self, other: 'Tensor') -> 'Tensor':
        """apply `other` first, then `self`"""
        return Tensor(self._matrix @ other._matrix)

    __matmul__ = matmul

    def __mul__(self, factor: complex) -> 'Tensor':
        return Tensor(self._matrix * factor)

    __rmul__ = __mul__

    def __array__(self, dtype=None, copy=None):
        return self._matrix if dtype is None else self._matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"<Tensor outputs={self.n_outputs} inputs={self.n_inputs}>"


def _z_tensor(n: int, phasor: complex) -> np.ndarray:
    t = np.zeros((2,) * n, dtype=complex)
    t[(0,) * n] += 1
    t[(1,) * n] += phasor
    return t


def _hadamard_all_legs(t: np.ndarray) -> np.ndarray:
    for axis in range(t.ndim):
        t = np.moveaxis(np.tensordot(HADAMARD, t, axes=([1], [axis])), 0, axis)
    return t


def _vertex_array(kind: VertexKind, degree: int) -> np.ndarray:
    if kind.type is VertexType.Z:
        return _z_tensor(degree, kind.phase.phasor())
    elif kind.type is VertexType.X:
        return _hadamard_all_legs(_z_tensor(degree, kind.phase.phasor()))
    elif kind.type is VertexType.H:
        if degree != 2:
            raise ValueError(f"HBox requires exactly 2 legs, got {degree}")
        return HADAMARD.copy()
    raise ValueError("boundary vertices have no tensor")


def vertex_tensor(kind: VertexKind, n_inputs: int, n_outputs: int) -> Tensor:
    """the matrix of a single vertex with the given number of legs"""
    t = _vertex_array(kind, n_inputs + n_outputs)
    return Tensor(t.reshape(2 ** n_outputs, 2 ** n_inputs))


class _Node(NamedTuple):
    array: np.ndarray
    labels: Tuple[Hashable, ...]


def _contract_pair(a: _Node, b: _Node) -> _Node:
    shared = [label for label in a.labels if label in b.labels]
    axes_a = [a.labels.index(label) for label in shared]
    axes_b = [b.labels.index(label) for label in shared]
    array = np.tensordot(a.array, b.array, axes=(axes_a, axes_b))
    labels = tuple(label for label in a.labels if label not in shared)
    labels += tuple(label for label in b.labels if label not in shared)
    return _Node(array, labels)


def _result_ndim(a: _Node, b: _Node) -> int:
    shared = len(set(a.labels) & set(b.labels))
    return len(a.labels) + len(b.labels) - 2 * shared


def _check_guard(ndim: int, max_entries: int) -> None:
    if 2 ** ndim > max_entries:
        raise SizeGuardError(
            f"intermediate tensor with {2 ** ndim} entries exceeds the guard of {max_entries}"
        )


def _network(d: Diagram, max_entries: int) -> List[_Node]:
    """one tensor per vertex with edge labels, self-loops already traced"""
    nodes = []
    for v in d.vertices():
        kind = d.kind(v)
        if kind.type is VertexType.BOUNDARY:
            (e,) = d.incident_edges(v)
            other = d.other_end(e, v)
            if d.type(other) is VertexType.BOUNDARY and v < other:
                # a bare wire between two boundaries is a delta tensor
                nodes.append(_Node(np.eye(2, dtype=complex), (("B", v), ("B", other))))
            continue
        labels: List[Hashable] = []
        loop_axes = []
        for e in d.incident_edges(v):
            a, b = d.endpoints(e)
            if a == b:
                if kind.type is VertexType.H:
                    loop_axes.append((len(labels), len(labels) + 1))
                    labels.extend([("L", e, 0), ("L", e, 1)])
                # a traced loop on a spider is the same spider with two legs fewer
                continue
            other = b if a == v else a
            if d.type(other) is VertexType.BOUNDARY:
                labels.append(("B", other))
            else:
                labels.append(("E", e))
        _check_guard(len(labels), max_entries)
        array = _vertex_array(kind, len(labels))
        # trace loops from the back so earlier axis positions stay valid
        for i, j in reversed(loop_axes):
            array = np.trace(array, axis1=i, axis2=j)
            del labels[i:j + 1]
        nodes.append(_Node(array, tuple(labels)))
    return nodes


def _contract_greedy(nodes: List[_Node], max_entries: int) -> _Node:
    nodes = list(nodes)
    while len(nodes) > 1:
        best: Optional[Tuple[int, int, int, int]] = None
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                connected = 0 if set(nodes[i].labels) & set(nodes[j].labels) else 1
                cand = (connected, _result_ndim(nodes[i], nodes[j]), i, j)
                if best is None or cand < best:
                    best = cand
        assert best is not None
        _, ndim, i, j = best
        _check_guard(ndim, max_entries)
        merged = _contract_pair(nodes[i], nodes[j])
        nodes = [n for k, n in enumerate(nodes) if k not in (i, j)] + [merged]
    return nodes[0]


def _contract_sequential(nodes: List[_Node], max_entries: int) -> _Node:
    acc = nodes[0]
    for node in nodes[1:]:
        _check_guard(_result_ndim(acc, node), max_entries)
        acc = _contract_pair(acc, node)
    return acc


_STRATEGIES = {
    "greedy": _contract_greedy,
    "sequential": _contract_sequential,
}


def evaluate(
    d: Diagram,
    *,
    strategy: str = "greedy",
    max_entries: Optional[int] = None,
    validate: bool = True,
) -> Tensor:
    """contract the tensor network of a diagram

    Parameters
    ----------
    d:
        the diagram to evaluate
    strategy:
        "greedy" contracts the connected pair with the smallest result first,
        "sequential" contracts vertices in ascending id order
    max_entries:
        size guard for intermediate tensors, defaults to
        ``2 ** settings.size_guard_log2``
    validate:
        validate the diagram before evaluation
    """
    try:
        contract = _STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown contraction strategy {strategy!r}") from None
    if max_entries is None:
        from zxweb import settings
        max_entries = 2 ** int(settings.size_guard_log2)
    if validate:
        d.validate()

    nodes = _network(d, max_entries)
    if nodes:
        result = contract(nodes, max_entries)
    else:
        result = _Node(np.array(1, dtype=complex), ())

    order = [("B", v) for v in d.outputs + d.inputs]
    array = np.transpose(result.array, [result.labels.index(label) for label in order])
    matrix = array.reshape(2 ** len(d.outputs), 2 ** len(d.inputs)) * d.scalar
    return Tensor(matrix)


# --- comparison -------------------------------------------------------------

class VerdictKind(Enum):
    EQUAL = "Equal"
    PROPORTIONAL = "ProportionalBy"
    DISTINCT = "Distinct"
    UNCHECKED = "Unchecked"


class Verdict(NamedTuple):
    """outcome of comparing two tensors"""
    kind: VerdictKind
    ratio: complex = 1 + 0j
    deviation: float = 0.0

    @classmethod
    def equal(cls) -> 'Verdict':
        return cls(VerdictKind.EQUAL)

    @classmethod
    def proportional(cls, ratio: complex) -> 'Verdict':
        return cls(VerdictKind.PROPORTIONAL, ratio=complex(ratio))

    @classmethod
    def distinct(cls, deviation: float) -> 'Verdict':
        return cls(VerdictKind.DISTINCT, ratio=0j, deviation=float(deviation))

    @classmethod
    def unchecked(cls) -> 'Verdict':
        """no oracle comparison was made"""
        return cls(VerdictKind.UNCHECKED)

    @property
    def is_equivalent(self) -> bool:
        """equal or proportional"""
        return self.kind in (VerdictKind.EQUAL, VerdictKind.PROPORTIONAL)

    def __str__(self) -> str:
        if self.kind is VerdictKind.EQUAL:
            return "Equal"
        elif self.kind is VerdictKind.PROPORTIONAL:
            r = self.ratio
            return f"ProportionalBy({r.real:.12g}{r.imag:+.12g}j)"
        elif self.kind is VerdictKind.UNCHECKED:
            return "Unchecked"
        return f"Distinct({self.deviation:.12g})"


TensorLike = Union[Tensor, np.ndarray]


def compare(
    a: TensorLike,
    b: TensorLike,
    *,
    exact: bool = False,
    tolerance: Optional[float] = None,
) -> Verdict:
    """compare two tensors exactly or up to a global scalar

    In the up-to-scalar mode the ratio is read off the largest magnitude
    entry of `a`. A zero tensor only compares equal to another zero tensor.
    """
    if tolerance is None:
        from zxweb import settings
        tolerance = float(settings.tolerance)
    ma = np.asarray(a, dtype=complex)
    mb = np.asarray(b, dtype=complex)
    if ma.shape != mb.shape:
        raise ValueError(f"shape mismatch: {ma.shape} != {mb.shape}")

    if exact:
        deviation = float(np.max(np.abs(ma - mb), initial=0.0))
        return Verdict.equal() if deviation <= tolerance else Verdict.distinct(deviation)

    k = np.unravel_index(np.argmax(np.abs(ma)), ma.shape) if ma.size else None
    if k is None or abs(ma[k]) <= tolerance:
        # a is (numerically) zero
        deviation = float(np.max(np.abs(mb), initial=0.0))
        return Verdict.equal() if deviation <= tolerance else Verdict.distinct(deviation)

    ratio = complex(mb[k] / ma[k])
    if abs(ratio) <= tolerance:
        deviation = float(np.max(np.abs(ma - mb)))
        return Verdict.distinct(deviation)
    residual = float(np.max(np.abs(mb - ratio * ma)))
    if residual > tolerance:
        return Verdict.distinct(max(residual, float(np.max(np.abs(ma - mb)))))
    if abs(ratio - 1) <= tolerance:
        return Verdict.equal()
    _log.debug(f"tensors proportional by {ratio}")
    return Verdict.proportional(ratio)


def labelled_entries(t: Tensor) -> Dict[str, complex]:
    """nonzero entries keyed by their 'outputs|inputs' bit strings"""
    out: Dict[str, complex] = {}
    m, n = t.shape
    for (row, col), value in np.ndenumerate(t.matrix):
        if abs(value) > 1e-12:
            out[f"{_bits(row, m)}|{_bits(col, n)}"] = complex(value)
    return out


def _bits(index: int, width: int) -> str:
    return format(index, f"0{width}b") if width else ""
