"""terminating simplification strategy with replayable traces"""
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

from zxweb._logging import get_logger
from zxweb.diagrams import Diagram
from zxweb.diagrams import is_isomorphic
from zxweb.rules import RULE_IDS
from zxweb.rules import Match
from zxweb.rules import StaleMatchError
from zxweb.rules import find_matches
from zxweb.rules import rewrite
from zxweb.tensors import Verdict
from zxweb.tensors import compare
from zxweb.tensors import evaluate

__all__ = [
    "CLEANUP_RULES",
    "ReplayDivergenceError",
    "SimplifyConfig",
    "Trace",
    "TraceLine",
    "TraceStep",
    "cleanup_pass",
    "dumps_trace",
    "loads_trace",
    "measure",
    "replay_lines",
    "simplify",
    "verify_trace",
]

_log = get_logger(__name__)

# every one of these strictly lowers (#vertices, #edges)
CLEANUP_RULES = ("fusion", "identity", "self-loop", "hopf", "h-cancel")


class ReplayDivergenceError(RuntimeError):
    """raised when replaying a trace does not reproduce its final diagram"""


class SimplifyConfig(NamedTuple):
    max_steps: int = 10000
    enable_bialgebra: bool = True
    enable_colour_change: bool = False

    @classmethod
    def from_settings(cls, **overrides) -> 'SimplifyConfig':
        """defaults taken from zxweb.settings, overridden by keyword arguments"""
        from zxweb import settings
        kwargs = {
            "max_steps": int(settings.max_steps),
            "enable_bialgebra": bool(settings.enable_bialgebra),
            "enable_colour_change": bool(settings.enable_colour_change),
        }
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)

    def validate(self) -> None:
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")

    def strategy_rules(self) -> Tuple[str, ...]:
        """non cleanup rules tried by simplify, in catalog order"""
        enabled = {
            "bialgebra": self.enable_bialgebra,
            "copy": True,
            "pi-copy": True,
            "colour-change": self.enable_colour_change,
        }
        return tuple(r for r in RULE_IDS if enabled.get(r, False))


class TraceStep(NamedTuple):
    rule: str
    match: Match
    scalar: complex


class Trace:
    """the rewrite steps leading from an initial to a final diagram"""

    def __init__(self, initial: Diagram) -> None:
        self.initial = initial.copy()
        self.final = initial.copy()
        self.steps: List[TraceStep] = []
        self.exhausted = False

    def record(self, step: TraceStep, result: Diagram) -> None:
        self.steps.append(step)
        self.final = result

    def extend(self, other: 'Trace') -> None:
        """append the steps of a trace that starts where this one ends"""
        self.steps.extend(other.steps)
        self.final = other.final

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[TraceStep]:
        return iter(self.steps)

    def rule_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for step in self.steps:
            counts[step.rule] = counts.get(step.rule, 0) + 1
        return counts

    def __repr__(self) -> str:
        flag = " exhausted" if self.exhausted else ""
        return f"<Trace steps={len(self.steps)}{flag}>"


def measure(d: Diagram) -> Tuple[int, int]:
    """termination measure, compared lexicographically"""
    return d.num_vertices(), d.num_edges()


def _first_match(d: Diagram, rule_ids: Iterable[str]) -> Optional[Match]:
    for rule_id in rule_ids:
        matches = find_matches(d, rule_id)
        if matches:
            return matches[0]
    return None


def _cleanup(d: Diagram, limit: Optional[int] = None) -> Trace:
    trace = Trace(d)
    current = d
    while limit is None or len(trace) < limit:
        m = _first_match(current, CLEANUP_RULES)
        if m is None:
            break
        current, scalar = rewrite(current, m)
        trace.record(TraceStep(m.rule, m, scalar), current)
    return trace


def cleanup_pass(d: Diagram) -> Tuple[Diagram, Trace]:
    """apply fusion, identity, self-loop, hopf and h-cancel to a fixpoint"""
    trace = _cleanup(d)
    return trace.final.copy(), trace


def _follow_up(current: Diagram, after: Trace) -> Optional[Tuple[TraceStep, Diagram, Trace]]:
    """a second square pop that makes a non-improving first pop pay off"""
    for m in find_matches(after.final, "bialgebra"):
        candidate, scalar = rewrite(after.final, m)
        sub = _cleanup(candidate)
        if measure(sub.final) < measure(current):
            return TraceStep("bialgebra", m, scalar), candidate, sub
    return None


def simplify(d: Diagram, cfg: Optional[SimplifyConfig] = None) -> Tuple[Diagram, Trace]:
    """simplify a diagram, preserving its evaluation exactly

    After each cleanup the strategy rules are tried in catalog order, match
    by match. A candidate is kept only if it plus the following cleanup
    strictly lowers the measure. A square pop that does not may still be
    kept together with a second pop that does; popping a square often
    exposes the next one. Hitting `max_steps` returns the best diagram so
    far with ``trace.exhausted`` set.
    """
    if cfg is None:
        cfg = SimplifyConfig.from_settings()
    cfg.validate()

    trace = Trace(d)
    trace.extend(_cleanup(d, cfg.max_steps))
    current = trace.final
    if len(trace) >= cfg.max_steps and _first_match(current, CLEANUP_RULES) is not None:
        trace.exhausted = True

    while not trace.exhausted:
        accepted: List[Tuple[TraceStep, Diagram, Trace]] = []
        for rule_id in cfg.strategy_rules():
            for m in find_matches(current, rule_id):
                candidate, scalar = rewrite(current, m)
                sub = _cleanup(candidate)
                if measure(sub.final) < measure(current):
                    accepted = [(TraceStep(rule_id, m, scalar), candidate, sub)]
                    break
                if rule_id == "bialgebra":
                    second = _follow_up(current, sub)
                    if second is not None:
                        accepted = [(TraceStep(rule_id, m, scalar), candidate, sub), second]
                        break
            if accepted:
                break
        if not accepted:
            break
        n_steps = sum(1 + len(sub) for _, _, sub in accepted)
        if len(trace) + n_steps > cfg.max_steps:
            trace.exhausted = True
            break
        for step, candidate, sub in accepted:
            trace.record(step, candidate)
            trace.extend(sub)
        current = trace.final

    if trace.exhausted:
        _log.warning(f"simplify stopped after {len(trace)} steps: step budget {cfg.max_steps} exhausted")
    _log.info(f"simplified {measure(d)} -> {measure(current)} in {len(trace)} steps")
    return current.copy(), trace


def verify_trace(
    trace: Trace,
    *,
    tolerance: Optional[float] = None,
    max_boundaries: Optional[int] = None,
) -> Verdict:
    """replay a trace with its recorded scalars and oracle-check the endpoints

    Past `max_boundaries` the replay still runs but the tensors are not
    compared and the verdict is ``Unchecked``.
    """
    if max_boundaries is None:
        from zxweb import settings
        max_boundaries = int(settings.oracle_max_boundaries)

    current = trace.initial
    for i, step in enumerate(trace.steps):
        try:
            current, _ = rewrite(current, step.match, scalar=step.scalar)
        except StaleMatchError as err:
            raise ReplayDivergenceError(f"step {i} ({step.rule}) does not apply: {err}") from err
    if not is_isomorphic(current, trace.final):
        raise ReplayDivergenceError("replayed diagram differs from the recorded final diagram")

    if trace.initial.boundary_count() > max_boundaries:
        _log.info(
            f"skipping oracle check: {trace.initial.boundary_count()} boundaries"
            f" exceed the limit of {max_boundaries}"
        )
        return Verdict.unchecked()
    return compare(evaluate(trace.initial), evaluate(current), exact=True, tolerance=tolerance)


# --- line oriented trace format ----------------------------------------------

class TraceLine(NamedTuple):
    rule: str
    vertices: Tuple[int, ...]
    scalar: complex


def dumps_trace(trace: Trace) -> str:
    """one `<rule-id> <sorted vertex ids> <re>,<im>` line per step"""
    lines = []
    for step in trace.steps:
        ids = ",".join(str(v) for v in sorted(step.match.vertices))
        lines.append(f"{step.rule} {ids} {step.scalar.real!r},{step.scalar.imag!r}")
    return "".join(f"{line}\n" for line in lines)


def loads_trace(text: str) -> List[TraceLine]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rule, ids, scalar = line.split()
            re_, im_ = scalar.split(",")
            vertices = tuple(int(v) for v in ids.split(","))
            out.append(TraceLine(rule, vertices, complex(float(re_), float(im_))))
        except ValueError:
            raise ValueError(f"line {lineno}: malformed trace step {line!r}") from None
    return out


def replay_lines(initial: Diagram, lines: Sequence[TraceLine]) -> Trace:
    """rebuild a Trace from its text form by re-finding every match"""
    trace = Trace(initial)
    current = trace.final
    for i, line in enumerate(lines):
        candidates = [
            m for m in find_matches(current, line.rule)
            if tuple(sorted(m.vertices)) == line.vertices
        ]
        if not candidates:
            raise ReplayDivergenceError(f"step {i}: no {line.rule} match on vertices {list(line.vertices)}")
        m = candidates[0]
        current, _ = rewrite(current, m, scalar=line.scalar)
        trace.record(TraceStep(line.rule, m, line.scalar), current)
    return trace

