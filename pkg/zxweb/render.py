from typing import Dict
from typing import List
from typing import Optional
from typing import Union

from zxweb.colors import RenderColor
from zxweb.colors import vertex_colors
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexType
from zxweb.doubling import DoubledDiagram
from zxweb.phases import Phase

__all__ = ['render_dot', 'phase_label']


def phase_label(phase: Phase) -> str:
    """'' for 0, 'π' for pi, otherwise 'p/q π'"""
    if phase.is_zero():
        return ""
    if phase.is_pi():
        return "π"
    return f"{phase} π"


def _boundary_label(d: Diagram, v: int) -> str:
    if v in d.inputs:
        return f"in{d.inputs.index(v)}"
    return f"out{d.outputs.index(v)}"


def render_dot(
    d: Union[Diagram, DoubledDiagram],
    colors: Optional[Dict[VertexType, RenderColor]] = None,
) -> str:
    """render a diagram as a Graphviz DOT graph, inputs at the bottom"""
    if isinstance(d, DoubledDiagram):
        d = d.underlying
    if colors is None:
        colors = vertex_colors()

    lines: List[str] = [
        "graph zx {",
        "  rankdir=BT;",
        '  node [fontname="Helvetica", fontsize=10];',
    ]
    for v in d.vertices():
        kind = d.kind(v)
        if kind.type is VertexType.BOUNDARY:
            attrs = f'shape=point, xlabel="{_boundary_label(d, v)}"'
        elif kind.type is VertexType.H:
            attrs = f'shape=square, style=filled, fillcolor="{colors[VertexType.H].to_hex()}", label="", width=0.15'
        else:
            fill = colors[kind.type].to_hex()
            attrs = f'shape=circle, style=filled, fillcolor="{fill}", label="{phase_label(kind.phase)}"'
        lines.append(f"  v{v} [{attrs}];")
    if d.inputs:
        lines.append("  { rank=source; " + " ".join(f"v{v};" for v in d.inputs) + " }")
    if d.outputs:
        lines.append("  { rank=sink; " + " ".join(f"v{v};" for v in d.outputs) + " }")
    for e in d.edges():
        a, b = d.endpoints(e)
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
