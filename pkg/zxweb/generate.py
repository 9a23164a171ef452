"""seeded random diagrams and circuits

All generators take a ``numpy.random.Generator`` so that every randomized
check is reproducible from its seed.
"""
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import numpy as np

from zxweb.circuits import Circuit
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.phases import Phase

__all__ = [
    'random_circuit',
    'random_diagram',
    'random_phase',
    'plant_redex',
]


def _pick(rng: np.random.Generator, items: Sequence[int]) -> int:
    return items[int(rng.integers(len(items)))]


def random_phase(rng: np.random.Generator, denominator: int = 4) -> Phase:
    """a uniformly random multiple of pi/denominator"""
    return Phase(int(rng.integers(2 * denominator)), denominator)


def _random_color(rng: np.random.Generator) -> VertexType:
    return VertexType.Z if rng.random() < 0.5 else VertexType.X


def _random_spider(rng: np.random.Generator) -> VertexKind:
    return VertexKind.spider(_random_color(rng), random_phase(rng))


def random_diagram(
    rng: np.random.Generator,
    *,
    max_spiders: int = 6,
    max_edges: int = 10,
    max_inputs: int = 2,
    max_outputs: int = 2,
    hbox_probability: float = 0.2,
) -> Diagram:
    """a random valid diagram

    Spiders get phases in multiples of pi/4. Inner edges may be parallel,
    may be self-loops and may carry an HBox.
    """
    d = Diagram()
    n_in = int(rng.integers(max_inputs + 1))
    n_out = int(rng.integers(max_outputs + 1))
    inputs = [d.add_input() for _ in range(n_in)]
    spiders = [d.add_spider(_random_spider(rng)) for _ in range(int(rng.integers(1, max_spiders + 1)))]
    outputs = [d.add_output() for _ in range(n_out)]
    for b in inputs + outputs:
        d.add_edge(b, _pick(rng, spiders))
    n_inner = int(rng.integers(max(max_edges - n_in - n_out, 0) + 1))
    for _ in range(n_inner):
        a, b = _pick(rng, spiders), _pick(rng, spiders)
        if a != b and rng.random() < hbox_probability:
            d.add_path([a, d.add_spider(VertexKind.hbox()), b])
        else:
            d.add_edge(a, b)
    return d


def random_circuit(
    rng: np.random.Generator,
    n_qubits: int = 3,
    n_gates: int = 25,
    gate_set: Sequence[str] = ("cnot", "cz", "h", "rz", "rx"),
) -> Circuit:
    """a random circuit, rotation phases in multiples of pi/4"""
    c = Circuit(n_qubits)
    for _ in range(n_gates):
        name = gate_set[int(rng.integers(len(gate_set)))]
        if name in ("cnot", "cz"):
            if n_qubits < 2:
                continue
            a, b = (int(q) for q in rng.choice(n_qubits, size=2, replace=False))
            c.add(name, a, b)
        elif name in ("rz", "rx"):
            c.add(name, int(rng.integers(n_qubits)), phase=random_phase(rng))
        else:
            c.add(name, int(rng.integers(n_qubits)))
    return c


# --- left hand side gadgets ------------------------------------------------
# each adds one instance of a rule's left hand side and returns the vertices
# that still need one outer edge per listed occurrence

def _legs(rng: np.random.Generator, v: int, low: int, high: int) -> List[int]:
    return [v] * int(rng.integers(low, high + 1))


def _fusion(d: Diagram, rng: np.random.Generator) -> List[int]:
    color = _random_color(rng)
    u = d.add_spider(VertexKind.spider(color, random_phase(rng)))
    v = d.add_spider(VertexKind.spider(color, random_phase(rng)))
    for _ in range(int(rng.integers(1, 3))):
        d.add_edge(u, v)
    return _legs(rng, u, 0, 2) + _legs(rng, v, 1, 2)


def _identity(d: Diagram, rng: np.random.Generator) -> List[int]:
    v = d.add_spider(VertexKind.spider(_random_color(rng)))
    return [v, v]


def _self_loop(d: Diagram, rng: np.random.Generator) -> List[int]:
    v = d.add_spider(_random_spider(rng))
    d.add_edge(v, v)
    return _legs(rng, v, 1, 2)


def _hopf(d: Diagram, rng: np.random.Generator) -> List[int]:
    z = d.add_spider(VertexKind.z(random_phase(rng)))
    x = d.add_spider(VertexKind.x(random_phase(rng)))
    d.add_edge(z, x)
    d.add_edge(z, x)
    return _legs(rng, z, 0, 2) + _legs(rng, x, 1, 2)


def _corner_phase(rng: np.random.Generator) -> Phase:
    # mostly phase free, the plain square
    return random_phase(rng) if rng.random() < 0.3 else Phase(0)


def _bialgebra(d: Diagram, rng: np.random.Generator) -> List[int]:
    zs = [d.add_spider(VertexKind.z(_corner_phase(rng))) for _ in range(2)]
    xs = [d.add_spider(VertexKind.x(_corner_phase(rng))) for _ in range(2)]
    for z in zs:
        for x in xs:
            d.add_edge(z, x)
    return [leg for v in zs + xs for leg in _legs(rng, v, 0, 2)]


def _copy(d: Diagram, rng: np.random.Generator) -> List[int]:
    color = _random_color(rng)
    s = d.add_spider(VertexKind.spider(color, int(rng.integers(2))))
    t = d.add_spider(VertexKind.spider(color.toggled(), random_phase(rng)))
    d.add_edge(s, t)
    return _legs(rng, t, 0, 3)


def _pi_copy(d: Diagram, rng: np.random.Generator) -> List[int]:
    color = _random_color(rng)
    p = d.add_spider(VertexKind.spider(color, 1))
    t = d.add_spider(VertexKind.spider(color.toggled(), random_phase(rng)))
    d.add_edge(p, t)
    return [p] + _legs(rng, t, 0, 2)


def _colour_change(d: Diagram, rng: np.random.Generator) -> List[int]:
    return _legs(rng, d.add_spider(_random_spider(rng)), 1, 3)


def _h_cancel(d: Diagram, rng: np.random.Generator) -> List[int]:
    h, g = d.add_spider(VertexKind.hbox()), d.add_spider(VertexKind.hbox())
    d.add_edge(h, g)
    return [h, g]


_GADGETS: Dict[str, Callable[[Diagram, np.random.Generator], List[int]]] = {
    "fusion": _fusion,
    "identity": _identity,
    "self-loop": _self_loop,
    "hopf": _hopf,
    "bialgebra": _bialgebra,
    "copy": _copy,
    "pi-copy": _pi_copy,
    "colour-change": _colour_change,
    "h-cancel": _h_cancel,
}


def plant_redex(
    rng: np.random.Generator,
    rule_id: str,
    base: Optional[Diagram] = None,
) -> Diagram:
    """add an instance of a rule's left hand side to a (random) diagram

    The outer legs of the instance go to spiders of the base diagram or to
    fresh boundaries.
    """
    try:
        gadget = _GADGETS[rule_id]
    except KeyError:
        raise ValueError(f"no left hand side generator for rule {rule_id!r}") from None
    if base is None:
        base = random_diagram(rng, max_spiders=4, max_edges=6, max_inputs=1, max_outputs=1)
    d = base.copy()
    anchors = [v for v in d.spiders() if d.kind(v).is_spider]
    for v in gadget(d, rng):
        if anchors and rng.random() < 0.6:
            d.add_edge(v, _pick(rng, anchors))
        elif rng.random() < 0.5:
            d.add_edge(v, d.add_input())
        else:
            d.add_edge(v, d.add_output())
    return d
