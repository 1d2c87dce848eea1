"""Dependency pairs, generalized (P,R)-chains and the flag-switching processor.

A chain over a non-collapsing ``P`` and a TRS ``R`` alternates below-root
``R`` steps with root ``P`` steps::

    t0 ->>e,R* s1 ->e,P t1 ->>e,R* s2 ->e,P t2 ...

Its length is the number of root ``P`` steps.  When ``R u P`` is a
right-linear overlay system, infinite minimal chains and infinite innermost
minimal chains exist together, so a DP problem may switch from the
termination flag to the innermost flag.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from . import kernels
from .errors import MalformedChainError, NotDefinedRootError
from .rewriting import (
    Fuel,
    RewriteStep,
    Trace,
    Verdict,
    check_step,
    is_terminating_bounded,
)
from .termtypes import TUPLE, App, Symbol, Term, Var, iter_positions, proper_subterms, size
from .terms import Substitution
from .trs import (
    OverlapWitness,
    Rule,
    Trs,
    collapsing_rules,
    find_inner_overlaps,
    non_right_linear_rules,
)

TERMINATION = "t"
INNERMOST = "i"


def tuple_symbols(R: Trs) -> dict:
    """Defined symbol -> its tuple symbol ``f#`` (primes appended on clashes)."""
    taken = {s.name for s in R.signature}
    out = {}
    for f in sorted(R.defined, key=lambda s: (s.name, s.arity)):
        name = f.name + "#"
        while name in taken:
            name += "'"
        taken.add(name)
        out[f] = Symbol(name, f.arity, TUPLE)
    return out


def mark(t: Term, R: Trs, marks: Optional[dict] = None) -> App:
    """Replace the (defined) root symbol of ``t`` by its tuple symbol."""
    if type(t) is Var:
        raise NotDefinedRootError(f"cannot mark variable {t}")
    if t.sym not in R.defined:
        raise NotDefinedRootError(f"root {t.sym} of {t} is not a defined symbol")
    marks = marks if marks is not None else tuple_symbols(R)
    return App(marks[t.sym], t.args)


def compute_dps(R: Trs) -> Trs:
    """``l# -> t#`` for every rule ``l -> r`` and subterm ``t`` of ``r`` with defined root."""
    marks = tuple_symbols(R)
    pairs = []
    for rule in R:
        lhs = mark(rule.lhs, R, marks)
        for _, u in iter_positions(rule.rhs):
            if type(u) is App and u.sym in R.defined:
                pairs.append(Rule(lhs, App(marks[u.sym], u.args)))
    return Trs(pairs)


@dataclass(frozen=True)
class DpProblem:
    pairs: Trs
    rules: Trs
    flag: str = TERMINATION

    def __post_init__(self):
        if self.flag not in (TERMINATION, INNERMOST):
            raise ValueError(f"flag must be 't' or 'i', not {self.flag!r}")
        # raises SignatureError when P and R disagree on a shared symbol
        self.rules.union(self.pairs)


# --- chains -----------------------------------------------------------------

@dataclass(frozen=True)
class ChainSegment:
    r_steps: Tuple[RewriteStep, ...]
    p_step: RewriteStep


@dataclass(frozen=True)
class ChainModel:
    head: Term
    segments: Tuple[ChainSegment, ...] = ()
    tail: Tuple[RewriteStep, ...] = ()

    @property
    def length(self) -> int:
        return len(self.segments)

    def __len__(self):
        return len(self.segments)

    def steps(self) -> List[RewriteStep]:
        out = []
        for seg in self.segments:
            out.extend(seg.r_steps)
            out.append(seg.p_step)
        out.extend(self.tail)
        return out

    @property
    def last(self) -> Term:
        steps = self.steps()
        return steps[-1].target if steps else self.head

    def root_targets(self) -> List[Term]:
        """``t0, t1, ..., tn``: the head and the target of every root P-step."""
        return [self.head] + [seg.p_step.target for seg in self.segments]

    def to_trace(self) -> Trace:
        return Trace(self.head, tuple(self.steps()))

    @classmethod
    def from_trace(cls, tr: Trace) -> "ChainModel":
        segments = []
        pending = []
        for s in tr.steps:
            if s.rule_set == "P":
                segments.append(ChainSegment(tuple(pending), s))
                pending = []
            else:
                pending.append(s)
        return cls(tr.initial, tuple(segments), tuple(pending))

    def extend(self, r_steps, p_step) -> "ChainModel":
        if self.tail:
            raise ValueError("cannot extend a chain that has trailing R-steps")
        return ChainModel(self.head, self.segments + (ChainSegment(tuple(r_steps), p_step),))

    def prefix(self, n: int) -> "ChainModel":
        return ChainModel(self.head, self.segments[:n])

    def __str__(self):
        return str(self.to_trace())


class Minimality(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass
class ChainReport:
    length: int
    shape: Optional[bool] = None
    innermost: Optional[bool] = None
    minimal: Optional[Minimality] = None
    problems: List[str] = field(default_factory=list)
    minimality_witness: Optional[Trace] = None

    @property
    def ok(self) -> bool:
        return (self.shape is not False and self.innermost is not False
                and self.minimal is not Minimality.FAILS)

    def __str__(self):
        parts = [f"length {self.length}"]
        if self.shape is not None:
            parts.append("shape " + ("valid" if self.shape else "invalid"))
        if self.innermost is not None:
            parts.append("innermost " + ("yes" if self.innermost else "no"))
        if self.minimal is not None:
            parts.append("minimal " + self.minimal.value)
        text = ", ".join(parts)
        if self.problems:
            text += "\n" + "\n".join("  " + p for p in self.problems)
        return text


def _check_classification(c: ChainModel):
    for k, seg in enumerate(c.segments):
        for s in seg.r_steps:
            if not s.position:
                raise MalformedChainError(f"segment {k}: R-step at the root")
            if s.rule_set != "R":
                raise MalformedChainError(f"segment {k}: R-segment step tagged {s.rule_set}")
        if seg.p_step.position:
            raise MalformedChainError(f"segment {k}: P-step below the root")
        if seg.p_step.rule_set != "P":
            raise MalformedChainError(f"segment {k}: root step tagged {seg.p_step.rule_set}")
    for s in c.tail:
        if not s.position or s.rule_set != "R":
            raise MalformedChainError("trailing steps must be below-root R-steps")


def chain_minimality(c: ChainModel, R: Trs, fuel: Fuel = Fuel()):
    """Bounded check that all proper subterms of ``t0, t1, ...`` terminate."""
    verdict = Minimality.HOLDS
    checked = set()
    for t in c.root_targets():
        for u in proper_subterms(t):
            if u in checked:
                continue
            checked.add(u)
            res = is_terminating_bounded(u, R, fuel)
            if res.verdict is Verdict.NONTERMINATING:
                return Minimality.FAILS, res.loop
            if res.verdict is Verdict.INCONCLUSIVE:
                verdict = Minimality.INCONCLUSIVE
    return verdict, None


def validate_chain(c: ChainModel, P: Trs, R: Trs, checks: Iterable[str] = ("shape",),
                   fuel: Fuel = Fuel()) -> ChainReport:
    """Check a chain's shape, innermost-ness and/or (bounded) minimality.

    ``checks`` is any subset of ``{"shape", "innermost", "minimal"}``.
    Raises ``MalformedChainError`` when a step sits on the wrong side of the
    root/below-root divide.
    """
    checks = set(checks)
    unknown = checks - {"shape", "innermost", "minimal"}
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    _check_classification(c)
    report = ChainReport(c.length)
    steps = c.steps()
    if "shape" in checks:
        report.shape = True
        cur = c.head
        for k, s in enumerate(steps):
            if s.source != cur:
                report.shape = False
                report.problems.append(f"step {k}: source {s.source} differs from previous term {cur}")
                break
            reason = check_step(s, P if s.rule_set == "P" else R)
            if reason:
                report.shape = False
                report.problems.append(f"step {k}: {reason}")
                break
            cur = s.target
    if "innermost" in checks:
        report.innermost = True
        for k, s in enumerate(steps):
            redex = s.source
            for i in s.position:
                redex = redex.args[i - 1]
            for a in getattr(redex, "args", ()):
                if kernels.has_redex(a, R.lhs_index):
                    report.innermost = False
                    report.problems.append(
                        f"step {k}: redex {redex} has proper subterm {a} not in R-normal form")
                    break
            if not report.innermost:
                break
    if "minimal" in checks:
        report.minimal, report.minimality_witness = chain_minimality(c, R, fuel)
        if report.minimal is Minimality.FAILS:
            report.problems.append(f"not minimal: {report.minimality_witness.initial} loops")
    return report


def _root_p_steps(s: Term, P: Trs) -> List[RewriteStep]:
    out = []
    if type(s) is Var:
        return out
    for idx, lhs in P.lhs_index.get(s.sym, ()):
        binds = {}
        if kernels.match_into(lhs, s, binds):
            target = kernels.substitute(P.rhss[idx], binds)
            out.append(RewriteStep((), idx, s, target, "P", Substitution._trusted(binds)))
    out.sort(key=lambda st: st.rule_index)
    return out


def _below_root_reach(t: Term, R: Trs, fuel: Fuel):
    """Terms reachable by below-root R-steps, each with a shortest path, BFS order."""
    index, rhss = R.lhs_index, R.rhss
    paths = {t: ()}
    order = [t]
    queue = deque([t])
    expanded = 0
    complete = True
    while queue:
        u = queue.popleft()
        if expanded >= fuel.max_steps or size(u) > fuel.max_size:
            complete = False
            continue
        expanded += 1
        for p, i, b, v in kernels.successors(u, index, rhss):
            if not p or v in paths:
                continue
            paths[v] = paths[u] + (RewriteStep(p, i, u, v, "R", Substitution._trusted(b)),)
            order.append(v)
            queue.append(v)
    return [(v, paths[v]) for v in order], complete


def enumerate_chains_ex(P: Trs, R: Trs, start: Term, max_length: int, fuel: Fuel = Fuel(),
                        limit: Optional[int] = None):
    """Like ``enumerate_chains`` but also says whether the enumeration was exhaustive."""
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    head = ChainModel(start)
    results = [head]
    frontier = [head]
    complete = True
    for _ in range(max_length):
        nxt = []
        for chain in frontier:
            reach, done = _below_root_reach(chain.last, R, fuel)
            complete = complete and done
            for s, path in reach:
                for p_step in _root_p_steps(s, P):
                    if size(p_step.target) > fuel.max_size:
                        complete = False
                        continue
                    nxt.append(chain.extend(path, p_step))
                    if limit is not None and len(results) + len(nxt) >= limit:
                        return results + nxt, False
        results.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return results, complete


def enumerate_chains(P: Trs, R: Trs, start: Term, max_length: int, fuel: Fuel = Fuel(),
                     limit: Optional[int] = None) -> List[ChainModel]:
    """Chains from ``start`` of length at most ``max_length``, shortest first.

    Every chain ends with a root P-step (or is the empty chain).  Below-root
    R-segments are explored by BFS and each intermediate term is reached by
    one shortest path only, so chains differing only in how they reach the
    same term are reported once.
    """
    return enumerate_chains_ex(P, R, start, max_length, fuel, limit)[0]


# --- the switch processor -----------------------------------------------------

_FAILED = {
    "flag is t": "flag is not t",
    "R∪P right-linear": "R∪P not right-linear",
    "R∪P overlay": "R∪P has an inner overlap",
    "P non-collapsing": "P is collapsing",
}


@dataclass
class SwitchReport:
    fired: bool
    conditions: List[Tuple[str, bool, str]] = field(default_factory=list)
    overlap: Optional[OverlapWitness] = None

    @property
    def reason(self) -> str:
        for name, ok, detail in self.conditions:
            if not ok:
                text = _FAILED.get(name, "not " + name)
                return f"{text}: {detail}" if detail else text
        return "all conditions satisfied"

    def __str__(self):
        lines = [("switched (P,R,t) to (P,R,i)" if self.fired else "unchanged") + f": {self.reason}"]
        for name, ok, detail in self.conditions:
            mark_ = "yes" if ok else "no"
            lines.append(f"  {name}: {mark_}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)


def switch_processor(dp: DpProblem) -> Tuple[DpProblem, SwitchReport]:
    """Turn ``(P, R, t)`` into ``(P, R, i)`` when ``R u P`` is a right-linear overlay system.

    ``P`` must also be non-collapsing.  The problem is returned unchanged
    otherwise, with the first failing condition named in the report.
    """
    report = SwitchReport(False)
    if dp.flag != TERMINATION:
        report.conditions.append(("flag is t", False, f"flag is already {dp.flag}"))
        return dp, report
    report.conditions.append(("flag is t", True, ""))

    U = dp.rules.union(dp.pairs)
    bad = non_right_linear_rules(U)
    if bad:
        report.conditions.append(("R∪P right-linear", False, f"rule {U[bad[0]]}"))
        return dp, report
    report.conditions.append(("R∪P right-linear", True, ""))

    overlaps = find_inner_overlaps(U)
    if overlaps:
        report.overlap = overlaps[0]
        report.conditions.append(("R∪P overlay", False, str(overlaps[0])))
        return dp, report
    report.conditions.append(("R∪P overlay", True, ""))

    coll = collapsing_rules(dp.pairs)
    if coll:
        report.conditions.append(("P non-collapsing", False, f"rule {dp.pairs[coll[0]]}"))
        return dp, report
    report.conditions.append(("P non-collapsing", True, ""))

    report.fired = True
    return DpProblem(dp.pairs, dp.rules, INNERMOST), report
