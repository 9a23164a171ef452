"""rewrite rules of the ZX-calculus with exact scalar bookkeeping

Every rule in :data:`CATALOG` finds bindings of its left hand side in a
diagram and replaces them with the right hand side. Each application
multiplies the diagram scalar by the factor that keeps the evaluated tensor
unchanged, so rewriting is sound without an "up to a number" caveat.
"""
import math
from abc import ABC
from abc import abstractmethod
from typing import Dict
from typing import Iterator
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple

from zxweb._logging import get_logger
from zxweb.diagrams import Diagram
from zxweb.diagrams import VertexKind
from zxweb.diagrams import VertexType

__all__ = [
    "CATALOG",
    "HopfDerivation",
    "Match",
    "RULE_IDS",
    "RewriteRule",
    "StaleMatchError",
    "UnknownRuleError",
    "apply_match",
    "derive_hopf_trace",
    "find_matches",
    "get_rule",
    "hopf_lhs",
    "hopf_rhs",
    "rewrite",
]

_log = get_logger(__name__)

_SQRT1_2 = 1 / math.sqrt(2)


class UnknownRuleError(KeyError):
    """raised for rule ids that are not in the catalog"""


class StaleMatchError(ValueError):
    """raised when a match no longer binds into the diagram"""


class Match(NamedTuple):
    """a binding of a rule's left hand side into a concrete diagram

    `vertices` are listed in the rule's role order, `edges` are the bound
    edge instances. Sorting matches orders them by vertices, then edges.
    """
    rule: str
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.vertices, self.edges


def _is_spider(d: Diagram, v: int) -> bool:
    return d.has_vertex(v) and d.kind(v).is_spider


def _opposite_spiders(d: Diagram, a: int, b: int) -> bool:
    return (
        _is_spider(d, a) and _is_spider(d, b)
        and d.type(a) is not d.type(b)
    )


class RewriteRule(ABC):
    """base class of the catalog entries"""
    rule_id: str = ""
    description: str = ""

    @abstractmethod
    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        """vertex tuples that may bind the left hand side"""

    @abstractmethod
    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        """return the bound edges if `vertices` match the left hand side"""

    @abstractmethod
    def scalar(self, d: Diagram, m: Match) -> complex:
        """the factor by which the right hand side is multiplied"""

    @abstractmethod
    def _replace(self, d: Diagram, m: Match) -> None:
        """replace the bound left hand side in place"""

    def find(self, d: Diagram) -> List[Match]:
        matches = []
        for vertices in self.candidates(d):
            edges = self.bind(d, vertices)
            if edges is not None:
                matches.append(Match(self.rule_id, vertices, edges))
        return sorted(matches, key=Match.sort_key)

    def is_live(self, d: Diagram, m: Match) -> bool:
        if m.rule != self.rule_id:
            return False
        if not all(d.has_vertex(v) for v in m.vertices):
            return False
        if not all(d.has_edge(e) for e in m.edges):
            return False
        return self.bind(d, m.vertices) == m.edges

    def apply(self, d: Diagram, m: Match, scalar: Optional[complex] = None) -> Tuple[Diagram, complex]:
        """return the rewritten copy of d and the scalar that was applied

        passing `scalar` overrides the rule's own factor (used when replaying
        recorded traces)
        """
        if not self.is_live(d, m):
            raise StaleMatchError(f"{m.rule} match on vertices {list(m.vertices)} is stale")
        factor = self.scalar(d, m) if scalar is None else complex(scalar)
        out = d.copy()
        self._replace(out, m)
        out.multiply_scalar(factor)
        _log.debug(f"applied {m.rule} at {list(m.vertices)} (scalar {factor})")
        return out, factor

    def __repr__(self) -> str:
        return f"<RewriteRule {self.rule_id!r}>"


def _reconnect(d: Diagram, e: int, old: int, new: int) -> None:
    """move the `old` end of edge e to vertex `new`"""
    a, b = d.endpoints(e)
    d.remove_edge(e)
    if a == b:
        d.add_edge(new, new)
    else:
        d.add_edge(new, b if a == old else a)


def _insert_on_edge(d: Diagram, e: int, kind: VertexKind) -> int:
    """subdivide edge e with a new degree-2 vertex"""
    a, b = d.endpoints(e)
    d.remove_edge(e)
    v = d.add_spider(kind)
    d.add_edge(a, v)
    d.add_edge(v, b)
    return v


class SpiderFusion(RewriteRule):
    rule_id = "fusion"
    description = "same colored spiders joined by edges merge, phases add"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for u in d.spiders():
            for v in d.neighbors(u):
                if u < v:
                    yield u, v

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        u, v = vertices
        if u == v or not (_is_spider(d, u) and _is_spider(d, v)):
            return None
        if d.type(u) is not d.type(v):
            return None
        edges = d.edges_between(u, v)
        return tuple(edges) if edges else None

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 1 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        u, v = m.vertices
        d.set_kind(u, d.kind(u).with_phase(d.phase(u) + d.phase(v)))
        for _ in m.edges[1:]:
            d.add_edge(u, u)
        for e in m.edges:
            d.remove_edge(e)
        for e in d.incident_edges(v):
            _reconnect(d, e, v, u)
        d.remove_vertex(v)


class IdentityRemoval(RewriteRule):
    rule_id = "identity"
    description = "a phase free spider with two legs is a plain wire"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for v in d.spiders():
            yield (v,)

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        (v,) = vertices
        if not _is_spider(d, v) or not d.phase(v).is_zero():
            return None
        edges = d.incident_edges(v)
        if len(edges) != 2 or d.loops(v):
            return None
        a, b = (d.other_end(e, v) for e in edges)
        if a == b and not _is_spider(d, a):
            return None
        return tuple(edges)

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 1 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        (v,) = m.vertices
        a, b = (d.other_end(e, v) for e in m.edges)
        d.remove_vertex(v)
        d.add_edge(a, b)


class SelfLoopRemoval(RewriteRule):
    rule_id = "self-loop"
    description = "a self-loop on a spider can be dropped"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for v in d.spiders():
            yield (v,)

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        (v,) = vertices
        if not _is_spider(d, v):
            return None
        loops = d.loops(v)
        return (loops[0],) if loops else None

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 1 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        d.remove_edge(m.edges[0])


class Hopf(RewriteRule):
    rule_id = "hopf"
    description = "two parallel edges between opposite colored spiders cancel"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for u in d.spiders():
            for v in d.neighbors(u):
                if u < v:
                    yield u, v

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        u, v = vertices
        if not _opposite_spiders(d, u, v):
            return None
        edges = d.edges_between(u, v)
        return tuple(edges[:2]) if len(edges) >= 2 else None

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 0.5 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        for e in m.edges:
            d.remove_edge(e)


class Bialgebra(RewriteRule):
    """square popping

    Two Z-spiders and two X-spiders wired as a complete bipartite square are
    replaced by an X-spider joined to a Z-spider. The X-spider takes over the
    outer legs of the Z pair and the Z-spider those of the X pair.

    Corners may carry a phase and any number of outer legs. Such a corner is
    first unfused: a spider of its color keeps the phase and the outer legs
    and hangs off the popped pair in its place.
    """
    rule_id = "bialgebra"
    description = "a Z/X square is popped into a single X-Z pair"

    @staticmethod
    def _corner(d: Diagram, v: int, type_: VertexType) -> bool:
        return d.has_vertex(v) and d.type(v) is type_ and not d.loops(v)

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for a in d.spiders():
            if not self._corner(d, a, VertexType.Z):
                continue
            xs = [x for x in d.neighbors(a) if self._corner(d, x, VertexType.X)]
            for i, c in enumerate(xs):
                for dd in xs[i + 1:]:
                    for b in d.neighbors(c):
                        if b > a and b in d.neighbors(dd):
                            yield a, b, c, dd

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        a, b, c, x = vertices
        if len(set(vertices)) != 4:
            return None
        if not (self._corner(d, a, VertexType.Z) and self._corner(d, b, VertexType.Z)):
            return None
        if not (self._corner(d, c, VertexType.X) and self._corner(d, x, VertexType.X)):
            return None
        if a > b or c > x:
            return None
        square = []
        for z in (a, b):
            for xx in (c, x):
                edges = d.edges_between(z, xx)
                if len(edges) != 1:
                    return None
                square.extend(edges)
        for v in vertices:
            if any(d.other_end(e, v) in vertices for e in d.incident_edges(v) if e not in square):
                return None
        return tuple(square)

    def scalar(self, d: Diagram, m: Match) -> complex:
        return _SQRT1_2 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        ends = {}
        for v in m.vertices:
            kind = d.kind(v)
            outer = [e for e in d.incident_edges(v) if e not in m.edges]
            if len(outer) == 1 and kind.phase.is_zero():
                ends[v] = d.other_end(outer[0], v)
                continue
            # unfuse: the phase and the outer legs move to a fresh spider
            h = d.add_spider(kind)
            for e in outer:
                _reconnect(d, e, v, h)
            ends[v] = h
        a, b, c, x = m.vertices
        for v in m.vertices:
            d.remove_vertex(v)
        p = d.add_spider(VertexKind.x())
        q = d.add_spider(VertexKind.z())
        d.add_edge(p, ends[a])
        d.add_edge(p, ends[b])
        d.add_edge(q, ends[c])
        d.add_edge(q, ends[x])
        d.add_edge(p, q)


class Copy(RewriteRule):
    """a 0 or pi basis state of one color is copied through a spider of the other"""
    rule_id = "copy"
    description = "basis states copy through opposite colored spiders"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for s in d.spiders():
            if d.degree(s) == 1 and d.neighbors(s):
                yield s, d.neighbors(s)[0]

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        s, t = vertices
        if s == t or not _opposite_spiders(d, s, t):
            return None
        if d.degree(s) != 1 or not d.phase(s).is_pauli():
            return None
        if d.loops(t):
            return None
        (e,) = d.incident_edges(s)
        if d.other_end(e, s) != t:
            return None
        return (e,)

    def scalar(self, d: Diagram, m: Match) -> complex:
        s, t = m.vertices
        n = d.degree(t) - 1
        factor = complex(2 ** ((1 - n) / 2))
        if d.phase(s).is_pi():
            factor *= d.phase(t).phasor()
        return factor

    def _replace(self, d: Diagram, m: Match) -> None:
        s, t = m.vertices
        kind = d.kind(s)
        legs = [d.other_end(e, t) for e in d.incident_edges(t) if e not in m.edges]
        d.remove_vertex(s)
        d.remove_vertex(t)
        for w in legs:
            d.add_edge(d.add_spider(kind), w)


class PiCopy(RewriteRule):
    """push a NOT (a pi spider with two legs) through an opposite colored spider

    The spider phase is negated and a pi spider of the NOT's color appears
    on each of its other legs.
    """
    rule_id = "pi-copy"
    description = "pi phases copy through opposite colored spiders, negating their phase"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for p in d.spiders():
            if d.phase(p).is_pi() and d.degree(p) == 2:
                for t in d.neighbors(p):
                    yield p, t

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        p, t = vertices
        if p == t or not _opposite_spiders(d, p, t):
            return None
        if not d.phase(p).is_pi() or d.degree(p) != 2 or d.loops(p) or d.loops(t):
            return None
        to_t = d.edges_between(p, t)
        if len(to_t) != 1:
            return None
        (other,) = [e for e in d.incident_edges(p) if e != to_t[0]]
        return to_t[0], other

    def scalar(self, d: Diagram, m: Match) -> complex:
        _, t = m.vertices
        return d.phase(t).phasor()

    def _replace(self, d: Diagram, m: Match) -> None:
        p, t = m.vertices
        e_pt, e_pw = m.edges
        kind = d.kind(p)
        w = d.other_end(e_pw, p)
        legs = [e for e in d.incident_edges(t) if e != e_pt]
        d.remove_vertex(p)
        d.set_kind(t, d.kind(t).with_phase(-d.phase(t)))
        for e in legs:
            _insert_on_edge(d, e, kind)
        d.add_edge(t, w)


class ColourChange(RewriteRule):
    rule_id = "colour-change"
    description = "toggle a spider's color and put a Hadamard box on every leg"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for v in d.spiders():
            yield (v,)

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        (v,) = vertices
        if not _is_spider(d, v) or d.loops(v):
            return None
        return tuple(d.incident_edges(v))

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 1 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        (v,) = m.vertices
        d.set_kind(v, d.kind(v).toggled())
        for e in m.edges:
            _insert_on_edge(d, e, VertexKind.hbox())


class HCancel(RewriteRule):
    rule_id = "h-cancel"
    description = "two Hadamard boxes in series cancel"

    def candidates(self, d: Diagram) -> Iterator[Tuple[int, ...]]:
        for h in d.spiders():
            if d.type(h) is VertexType.H:
                for g in d.neighbors(h):
                    if h < g:
                        yield h, g

    def bind(self, d: Diagram, vertices: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        h, g = vertices
        if h == g:
            return None
        for v in vertices:
            if not d.has_vertex(v) or d.type(v) is not VertexType.H or d.degree(v) != 2:
                return None
        between = d.edges_between(h, g)
        if len(between) != 1:
            return None
        (eh,) = [e for e in d.incident_edges(h) if e != between[0]]
        (eg,) = [e for e in d.incident_edges(g) if e != between[0]]
        a, b = d.other_end(eh, h), d.other_end(eg, g)
        if a == b and not _is_spider(d, a):
            return None
        return eh, between[0], eg

    def scalar(self, d: Diagram, m: Match) -> complex:
        return 1 + 0j

    def _replace(self, d: Diagram, m: Match) -> None:
        h, g = m.vertices
        eh, _, eg = m.edges
        a, b = d.other_end(eh, h), d.other_end(eg, g)
        d.remove_vertex(h)
        d.remove_vertex(g)
        d.add_edge(a, b)


CATALOG: Dict[str, RewriteRule] = {
    rule.rule_id: rule for rule in (
        SpiderFusion(),
        IdentityRemoval(),
        SelfLoopRemoval(),
        Hopf(),
        Bialgebra(),
        Copy(),
        PiCopy(),
        ColourChange(),
        HCancel(),
    )
}

RULE_IDS: Tuple[str, ...] = tuple(CATALOG)


def get_rule(rule_id: str) -> RewriteRule:
    try:
        return CATALOG[rule_id]
    except KeyError:
        raise UnknownRuleError(f"unknown rule {rule_id!r}, choose from {', '.join(RULE_IDS)}") from None


def find_matches(d: Diagram, rule_id: str) -> List[Match]:
    """all matches of a rule, sorted by bound vertex ids then edge ids"""
    return get_rule(rule_id).find(d)


def rewrite(d: Diagram, m: Match, scalar: Optional[complex] = None) -> Tuple[Diagram, complex]:
    """apply a match and also return the scalar the rewrite multiplied in"""
    return get_rule(m.rule).apply(d, m, scalar)


def apply_match(d: Diagram, m: Match) -> Diagram:
    """apply a match, returning the rewritten copy of d"""
    out, _ = rewrite(d, m)
    return out


# --- the Hopf rule from the bialgebra rule ---------------------------------

def hopf_lhs() -> Diagram:
    """Z(0) and X(0) joined by two parallel edges, one boundary leg each"""
    d = Diagram()
    i = d.add_input()
    z = d.add_spider(VertexKind.z())
    x = d.add_spider(VertexKind.x())
    o = d.add_output()
    d.add_edge(i, z)
    d.add_edge(z, x)
    d.add_edge(z, x)
    d.add_edge(x, o)
    return d


def hopf_rhs() -> Diagram:
    """a Z(0) effect on the input and an X(0) state on the output"""
    d = Diagram()
    i = d.add_input()
    o = d.add_output()
    d.add_edge(i, d.add_spider(VertexKind.z()))
    d.add_edge(d.add_spider(VertexKind.x()), o)
    d.multiply_scalar(0.5)
    return d


def _unfused_hopf_lhs() -> Diagram:
    """the Hopf left hand side with both spiders split open into a square

    Fusing the phase free units back in (and removing the resulting
    identity) gives :func:`hopf_lhs` with scalar 1.
    """
    d = Diagram()
    i = d.add_input()
    za = d.add_spider(VertexKind.z())
    zb = d.add_spider(VertexKind.z())
    xc = d.add_spider(VertexKind.x())
    xd = d.add_spider(VertexKind.x())
    z_unit = d.add_spider(VertexKind.z())
    x_unit = d.add_spider(VertexKind.x())
    o = d.add_output()
    d.add_edge(i, za)
    for z in (za, zb):
        for x in (xc, xd):
            d.add_edge(z, x)
    d.add_edge(zb, z_unit)
    d.add_edge(xc, x_unit)
    d.add_edge(xd, o)
    return d


class HopfDerivation(NamedTuple):
    start: Diagram
    steps: List[Tuple[str, Match]]


def derive_hopf_trace() -> HopfDerivation:
    """rewrite the Hopf left hand side into its right hand side

    Only bialgebra, copy and fusion are used. The start diagram is the left
    hand side with its spiders unfused, since no rule other than Hopf
    itself applies to the fused form.
    """
    d = _unfused_hopf_lhs()
    start = d.copy()
    steps: List[Tuple[str, Match]] = []
    for rule_id in ("bialgebra", "copy", "fusion", "copy"):
        m = find_matches(d, rule_id)[0]
        steps.append((rule_id, m))
        d = apply_match(d, m)
    return HopfDerivation(start, steps)
