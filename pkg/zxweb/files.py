"""the JSON diagram document format

A diagram document looks like::

    {
      "edges": [[0, 1], [1, 2]],
      "inputs": [0],
      "outputs": [2],
      "scalar": [1.0, 0.0],
      "vertices": {"0": {"kind": "B"}, "1": {"kind": "Z", "phase": "1/4"}, "2": {"kind": "B"}}
    }

Doubled diagrams add ``"wire-kinds": {"inputs": ["q"], "outputs": ["c"]}``.
Serialization is canonical: keys sorted, vertex ids ascending, edges sorted
and phases in lowest terms, so equal diagrams give byte-identical text.
"""
import json
import lzma
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union

from zxweb._utils import PathLike
from zxweb._utils import read_text_from_path
from zxweb._utils import strip_compression_suffix
from zxweb.circuits import circuit_to_diagram
from zxweb.circuits import parse_circuit
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType
from zxweb.doubling import DoubledDiagram
from zxweb.doubling import WireKind
from zxweb.phases import Phase

__all__ = [
    "CIRCUIT_SUFFIX",
    "DiagramFileError",
    "load_annotated",
    "load_diagram",
    "load_doubled",
    "parse_diagram",
    "parse_doubled",
    "serialize_diagram",
]

CIRCUIT_SUFFIX = ".qc"

_KINDS = {t.value: t for t in VertexType}


class DiagramFileError(ValueError):
    """raised for documents that are not well formed"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


def _require(doc: Dict[str, Any], key: str, type_: type) -> Any:
    if key not in doc:
        raise DiagramFileError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, type_):
        raise DiagramFileError(f"{key!r} must be a {type_.__name__}")
    return value


def _parse_id(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DiagramFileError(f"{where}: vertex ids must be integers, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise DiagramFileError(f"{where}: vertex ids must be integers, got {value!r}") from None


def _parse_kind(spec: Any, vid: int) -> VertexKind:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DiagramFileError(f"vertex {vid}: expected an object with a 'kind'")
    try:
        type_ = _KINDS[spec["kind"]]
    except (KeyError, TypeError):
        raise DiagramFileError(f"vertex {vid}: unknown kind {spec['kind']!r}, use Z, X, H or B") from None
    phase_text = spec.get("phase", "0")
    if not isinstance(phase_text, str):
        raise DiagramFileError(f"vertex {vid}: phase must be a 'p/q' string")
    try:
        phase = Phase.from_str(phase_text)
    except ValueError as err:
        raise DiagramFileError(f"vertex {vid}: {err}") from None
    # a phase on an HBox or boundary is left for validation to report
    return VertexKind(type_, phase)


def _parse_document(text: str) -> Tuple[Diagram, Optional[Dict[str, List[WireKind]]]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DiagramFileError(f"syntax error: {err.msg}", err.lineno, err.colno) from None
    if not isinstance(doc, dict):
        raise DiagramFileError("a diagram document must be a JSON object")

    vertices = _require(doc, "vertices", dict)
    edges = _require(doc, "edges", list)
    inputs = _require(doc, "inputs", list)
    outputs = _require(doc, "outputs", list)
    scalar = doc.get("scalar", [1.0, 0.0])
    if (
        not isinstance(scalar, list) or len(scalar) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in scalar)
    ):
        raise DiagramFileError("'scalar' must be a [re, im] pair of numbers")

    kinds: Dict[int, VertexKind] = {}
    for k, v in vertices.items():
        vid = _parse_id(k, "vertices")
        if vid in kinds:
            raise DiagramFileError(f"vertices: id {vid} is listed twice (as {k!r})")
        kinds[vid] = _parse_kind(v, k)
    ids = sorted(kinds)
    d = Diagram()
    for vid in ids:
        d.add_vertex(kinds[vid])
    d = d.relabeled(lambda v: ids[v])
    for i, edge in enumerate(edges):
        if not isinstance(edge, list) or len(edge) != 2:
            raise DiagramFileError(f"edges[{i}] must be a pair of vertex ids")
        d.add_edge(_parse_id(edge[0], f"edges[{i}]"), _parse_id(edge[1], f"edges[{i}]"))
    d.set_boundaries(
        [_parse_id(v, "inputs") for v in inputs],
        [_parse_id(v, "outputs") for v in outputs],
    )
    d.multiply_scalar(complex(scalar[0], scalar[1]))
    d.validate()

    wire_kinds = None
    if "wire-kinds" in doc:
        wk = doc["wire-kinds"]
        try:
            wire_kinds = {
                "inputs": [WireKind(k) for k in wk["inputs"]],
                "outputs": [WireKind(k) for k in wk["outputs"]],
            }
        except (KeyError, TypeError, ValueError):
            raise DiagramFileError("'wire-kinds' needs 'inputs' and 'outputs' lists of 'c'/'q'") from None
    return d, wire_kinds


def parse_diagram(text: str) -> Diagram:
    """parse a diagram document, ignoring any wire-kinds annotation"""
    d, _ = _parse_document(text)
    return d


def parse_doubled(text: str) -> DoubledDiagram:
    """parse a document carrying a wire-kinds annotation"""
    d, wire_kinds = _parse_document(text)
    if wire_kinds is None:
        raise DiagramFileError("document has no 'wire-kinds' annotation")
    return DoubledDiagram(d, wire_kinds["inputs"], wire_kinds["outputs"])


def _vertex_spec(kind: VertexKind) -> Dict[str, str]:
    if kind.is_spider:
        return {"kind": kind.type.value, "phase": str(kind.phase)}
    return {"kind": kind.type.value}


def serialize_diagram(d: Union[Diagram, DoubledDiagram]) -> str:
    """canonical document text for a diagram"""
    wire_kinds = None
    if isinstance(d, DoubledDiagram):
        wire_kinds = {
            "inputs": [k.value for k in d.input_kinds],
            "outputs": [k.value for k in d.output_kinds],
        }
        d = d.underlying
    edges = sorted(list(d.endpoints(e)) for e in d.edges())
    vertices = [
        f'    "{v}": {json.dumps(_vertex_spec(d.kind(v)), sort_keys=True)}' for v in d.vertices()
    ]
    parts = [
        ("edges", "[" + ", ".join(json.dumps(e) for e in edges) + "]"),
        ("inputs", json.dumps(list(d.inputs))),
        ("outputs", json.dumps(list(d.outputs))),
        ("scalar", json.dumps([d.scalar.real, d.scalar.imag])),
        ("vertices", "{\n" + ",\n".join(vertices) + "\n  }" if vertices else "{}"),
    ]
    if wire_kinds is not None:
        parts.append(("wire-kinds", json.dumps(wire_kinds, sort_keys=True)))
    parts.sort()
    body = ",\n".join(f'  "{key}": {value}' for key, value in parts)
    return "{\n" + body + "\n}\n"


def _read_document(path: PathLike) -> str:
    try:
        return read_text_from_path(path)
    except UnicodeDecodeError as err:
        raise DiagramFileError(f"{path}: not UTF-8 text ({err.reason} at byte {err.start})") from None
    except (lzma.LZMAError, EOFError) as err:
        raise DiagramFileError(f"{path}: corrupt xz stream ({err})") from None


def load_diagram(path: PathLike) -> Diagram:
    """load a diagram document, or a circuit file by its '.qc' suffix"""
    text = _read_document(path)
    if strip_compression_suffix(path).suffix == CIRCUIT_SUFFIX:
        return circuit_to_diagram(parse_circuit(text))
    return parse_diagram(text)


def load_doubled(path: PathLike) -> DoubledDiagram:
    return parse_doubled(_read_document(Path(path)))


def load_annotated(path: PathLike) -> Union[Diagram, DoubledDiagram]:
    """like load_diagram, but keep a wire-kinds annotation if there is one"""
    text = _read_document(path)
    if strip_compression_suffix(path).suffix == CIRCUIT_SUFFIX:
        return circuit_to_diagram(parse_circuit(text))
    d, wire_kinds = _parse_document(text)
    if wire_kinds is None:
        return d
    return DoubledDiagram(d, wire_kinds["inputs"], wire_kinds["outputs"])
