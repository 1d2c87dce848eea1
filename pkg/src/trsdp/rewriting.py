"""One-step and multi-step rewriting, bounded search and trace validation."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import kernels
from .errors import PositionError
from .termtypes import Position, Term, Var, iter_positions, size
from .terms import EMPTY, Substitution, match, subterm_at
from .trs import Trs

FULL = "full"
INNERMOST = "innermost"

FULL_LEFTMOST = "full-leftmost"
INNERMOST_LEFTMOST = "innermost-leftmost"
STRATEGIES = (FULL_LEFTMOST, INNERMOST_LEFTMOST)


@dataclass(frozen=True)
class Fuel:
    """Resource bound for otherwise semi-decidable searches.

    ``max_steps`` bounds rewrite steps (or explored terms, for graph
    searches); ``max_size`` bounds the number of symbols in any term visited.
    """

    max_steps: int = 10_000
    max_size: int = 200

    def __post_init__(self):
        if self.max_steps < 1 or self.max_size < 1:
            raise ValueError("fuel bounds must be positive")


@dataclass(frozen=True)
class RewriteStep:
    position: Position
    rule_index: int
    source: Term
    target: Term
    rule_set: str = "R"
    # stored for explanation only; validation recomputes it
    matcher: Substitution = field(default=EMPTY, compare=False)

    @property
    def is_root(self) -> bool:
        return not self.position

    def shifted(self, prefix: Position, source: Term, target: Term) -> "RewriteStep":
        return RewriteStep(prefix + self.position, self.rule_index, source, target,
                           self.rule_set, self.matcher)


@dataclass(frozen=True)
class Trace:
    initial: Term
    steps: Tuple[RewriteStep, ...] = ()

    def __post_init__(self):
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    @property
    def final(self) -> Term:
        return self.steps[-1].target if self.steps else self.initial

    def terms(self) -> List[Term]:
        return [self.initial] + [s.target for s in self.steps]

    def then(self, other: "Trace") -> "Trace":
        if other.initial != self.final:
            raise ValueError(f"cannot append a trace starting at {other.initial} to one ending at {self.final}")
        return Trace(self.initial, self.steps + other.steps)

    def __str__(self):
        lines = [str(self.initial)]
        for s in self.steps:
            pos = ".".join(map(str, s.position)) or "e"
            lines.append(f"-> [p={pos}, rule={s.rule_index}, set={s.rule_set}] {s.target}")
        return "\n".join(lines)


def _step(t, pos, idx, binds, target, rule_set="R"):
    return RewriteStep(pos, idx, t, target, rule_set, Substitution._trusted(binds))


def redexes(t: Term, R: Trs) -> List[Tuple[Position, int, Substitution]]:
    """Every ``(position, rule_index, matcher)``, leftmost-outermost then rule order."""
    return [(p, i, Substitution._trusted(b)) for p, i, b in kernels.find_redexes(t, R.lhs_index)]


def innermost_redexes(t: Term, R: Trs) -> List[Tuple[Position, int, Substitution]]:
    return [(p, i, Substitution._trusted(b))
            for p, i, b in kernels.find_redexes(t, R.lhs_index, True)]


def is_normal_form(t: Term, R: Trs) -> bool:
    return not kernels.has_redex(t, R.lhs_index)


def rewrite_steps(t: Term, R: Trs, innermost: bool = False, rule_set: str = "R") -> List[RewriteStep]:
    """All one-step reducts of ``t`` as steps, in redex order."""
    return [_step(t, p, i, b, u, rule_set)
            for p, i, b, u in kernels.successors(t, R.lhs_index, R.rhss, innermost)]


def rewrite_at(t: Term, R: Trs, position: Position, rule_index: int, rule_set: str = "R") -> RewriteStep:
    rule = R[rule_index]
    sub = subterm_at(t, position)
    m = match(rule.lhs, sub)
    if m is None:
        raise ValueError(f"rule {rule_index} ({rule}) does not match {sub}")
    target = kernels.replace_at(t, tuple(position), m(rule.rhs))
    return RewriteStep(tuple(position), rule_index, t, target, rule_set, m)


@dataclass(frozen=True)
class Normalization:
    trace: Trace
    complete: bool  # False when fuel ran out first

    @property
    def final(self) -> Term:
        return self.trace.final


def normalize(t: Term, R: Trs, strategy: str = INNERMOST_LEFTMOST, fuel: Fuel = Fuel()) -> Normalization:
    """Rewrite with the first redex of the strategy's order until a normal form.

    ``complete`` is False when ``fuel.max_steps`` steps were taken (or a term
    outgrew ``fuel.max_size``) without reaching a normal form.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    innermost = strategy == INNERMOST_LEFTMOST
    index, rhss = R.lhs_index, R.rhss
    steps = []
    cur = t
    while True:
        found = kernels.find_redexes(cur, index, innermost)
        if not found:
            return Normalization(Trace(t, tuple(steps)), True)
        if len(steps) >= fuel.max_steps or size(cur) > fuel.max_size:
            return Normalization(Trace(t, tuple(steps)), False)
        pos, idx, binds = found[0]
        nxt = kernels.replace_at(cur, pos, kernels.substitute(rhss[idx], binds))
        steps.append(_step(cur, pos, idx, binds, nxt))
        cur = nxt


class Verdict(enum.Enum):
    TERMINATING = "terminating"
    NONTERMINATING = "nonterminating"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TerminationResult:
    verdict: Verdict
    loop: Optional[Trace] = None
    explored: int = 0

    @property
    def terminating(self) -> bool:
        return self.verdict is Verdict.TERMINATING

    @property
    def nonterminating(self) -> bool:
        return self.verdict is Verdict.NONTERMINATING


def reduction_graph(t: Term, R: Trs, fuel: Fuel, innermost: bool = False):
    """Breadth-first exploration of the reduction graph from ``t``.

    Returns ``(edges, complete)`` where ``edges`` maps each expanded term to
    its outgoing steps.  At most ``fuel.max_steps`` terms are expanded and
    terms larger than ``fuel.max_size`` are not expanded.
    """
    index, rhss = R.lhs_index, R.rhss
    edges = {}
    seen = {t}
    queue = deque([t])
    complete = True
    while queue:
        u = queue.popleft()
        if len(edges) >= fuel.max_steps or size(u) > fuel.max_size:
            complete = False
            continue
        out = [_step(u, p, i, b, v) for p, i, b, v in kernels.successors(u, index, rhss, innermost)]
        edges[u] = out
        for s in out:
            if s.target not in seen:
                seen.add(s.target)
                queue.append(s.target)
    return edges, complete


def _find_cycle(t, edges) -> Optional[List[RewriteStep]]:
    # iterative DFS restricted to expanded nodes; returns root path + back edge
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {t: GRAY}
    path: List[RewriteStep] = []
    stack = [(t, iter(edges.get(t, ())))]
    while stack:
        node, it = stack[-1]
        advanced = False
        for s in it:
            v = s.target
            c = color.get(v, WHITE)
            if c == GRAY:
                return path + [s]
            if c == WHITE:
                color[v] = GRAY
                path.append(s)
                stack.append((v, iter(edges.get(v, ()))))
                advanced = True
                break
        if not advanced:
            color[node] = BLACK
            stack.pop()
            if path:
                path.pop()
    return None


def is_terminating_bounded(t: Term, R: Trs, fuel: Fuel = Fuel(), innermost: bool = False) -> TerminationResult:
    """Bounded termination check of ``t`` under full (or innermost) rewriting.

    Only syntactic loops ``u ->+ u`` count as nontermination certificates;
    anything else that does not fit in the fuel is inconclusive.
    """
    edges, complete = reduction_graph(t, R, fuel, innermost)
    cycle = _find_cycle(t, edges)
    if cycle is not None:
        return TerminationResult(Verdict.NONTERMINATING, Trace(t, tuple(cycle)), len(edges))
    if complete:
        return TerminationResult(Verdict.TERMINATING, None, len(edges))
    return TerminationResult(Verdict.INCONCLUSIVE, None, len(edges))


def find_rewrite_path(s: Term, t: Term, R: Trs, fuel: Fuel = Fuel(), innermost: bool = False,
                      below_root: bool = False) -> Optional[Trace]:
    """Shortest rewrite sequence from ``s`` to ``t`` found by bounded BFS."""
    index, rhss = R.lhs_index, R.rhss
    parent = {s: None}
    queue = deque([s])
    expanded = 0
    while queue:
        u = queue.popleft()
        if u == t:
            steps = []
            while parent[u] is not None:
                st = parent[u]
                steps.append(st)
                u = st.source
            return Trace(s, tuple(reversed(steps)))
        if expanded >= fuel.max_steps or size(u) > fuel.max_size:
            continue
        expanded += 1
        for p, i, b, v in kernels.successors(u, index, rhss, innermost):
            if below_root and not p:
                continue
            if v not in parent:
                parent[v] = _step(u, p, i, b, v)
                queue.append(v)
    return None


def reachable_normal_forms(s: Term, R: Trs, fuel: Fuel = Fuel()):
    """Normal forms met by a bounded BFS from ``s``, with a flag for completeness."""
    edges, complete = reduction_graph(s, R, fuel)
    return [u for u, out in edges.items() if not out], complete


@dataclass(frozen=True)
class TraceCheck:
    ok: bool
    failed_step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return f"invalid at step {self.failed_step}: {self.reason}"


def check_step(step: RewriteStep, rules: Trs, innermost_wrt: Optional[Trs] = None) -> Optional[str]:
    """Reason why ``step`` is not a legal step of ``rules``, or ``None``.

    With ``innermost_wrt`` the proper subterms of the redex must also be
    normal forms of that system.
    """
    if not 0 <= step.rule_index < len(rules):
        return f"rule index {step.rule_index} out of range"
    rule = rules[step.rule_index]
    try:
        redex = subterm_at(step.source, step.position)
    except PositionError as e:
        return str(e)
    m = match(rule.lhs, redex)
    if m is None:
        return f"rule {step.rule_index} ({rule}) does not match {redex}"
    expected = kernels.replace_at(step.source, tuple(step.position), m(rule.rhs))
    if expected != step.target:
        return f"expected target {expected}, got {step.target}"
    if innermost_wrt is not None and type(redex) is not Var:
        for a in redex.args:
            if kernels.has_redex(a, innermost_wrt.lhs_index):
                return f"redex {redex} has a proper subterm {a} that is not a normal form"
    return None


def validate_trace(tr: Trace, R: Trs, mode: str = FULL) -> TraceCheck:
    if mode not in (FULL, INNERMOST):
        raise ValueError(f"unknown mode {mode!r}")
    cur = tr.initial
    for k, step in enumerate(tr.steps):
        if step.source != cur:
            return TraceCheck(False, k, f"step source {step.source} differs from previous term {cur}")
        if step.rule_set != "R":
            return TraceCheck(False, k, f"step uses rule set {step.rule_set}, expected R")
        reason = check_step(step, R, R if mode == INNERMOST else None)
        if reason:
            return TraceCheck(False, k, reason)
        cur = step.target
    return TraceCheck(True)


def embed_trace(tr: Trace, context: Term, position: Position) -> Trace:
    """Replay ``tr`` inside ``context`` at ``position`` (``context|position == tr.initial``)."""
    position = tuple(position)
    if subterm_at(context, position) != tr.initial:
        raise ValueError("trace does not start at the subterm being embedded into")
    cur = context
    steps = []
    for s in tr.steps:
        nxt = kernels.replace_at(cur, position, s.target)
        steps.append(s.shifted(position, cur, nxt))
        cur = nxt
    return Trace(context, tuple(steps))


def project_trace(tr: Trace, i: int) -> Trace:
    """Restriction of a below-root trace to argument ``i`` (1-based)."""
    steps = []
    for s in tr.steps:
        if not s.position:
            raise ValueError("cannot project a trace containing a root step")
        if s.position[0] == i:
            steps.append(RewriteStep(s.position[1:], s.rule_index, s.source.args[i - 1],
                                     s.target.args[i - 1], s.rule_set, s.matcher))
    return Trace(tr.initial.args[i - 1], tuple(steps))


def lift_bindings(pattern: Term, before: dict, traces: dict) -> Trace:
    """Trace from ``pattern`` instantiated by ``before`` to its instance by the traces' ends.

    ``traces`` maps variable names to traces starting at ``before[x]``; every
    occurrence of ``x`` in ``pattern`` is rewritten along its trace,
    occurrences taken in pre-order.
    """
    cur = kernels.substitute(pattern, before)
    start = cur
    steps = []
    for p, u in iter_positions(pattern):
        if type(u) is not Var or u.name not in traces:
            continue
        embedded = embed_trace(traces[u.name], cur, p)
        steps.extend(embedded.steps)
        cur = embedded.final
    return Trace(start, tuple(steps))


def concat(parts: Sequence[Trace]) -> Trace:
    out = parts[0]
    for p in parts[1:]:
        out = out.then(p)
    return out
