"""Reading and writing TRS files, DP-problem files and traces.

File grammar (a TPDB-style subset, whitespace-insensitive)::

    file    := section+
    section := "(VAR" ident* ")" | "(RULES" rule* ")"
             | "(PAIRS" rule* ")" | "(FLAG" ("t" | "i") ")"
    rule    := term "->" term
    term    := ident | ident "(" term ("," term)* ")"

Declared identifiers are variables; every other identifier is a function
symbol whose arity is fixed by its first use.  Identifiers containing ``#``
are tuple symbols.

Trace format: one term per line, each step line prefixed with
``-> [p=<position>, rule=<index>, set=<R|P>]``; positions are dot-separated
1-based indices with ``e`` for the root.  An optional ``(VAR ...)`` first
line declares the variables occurring in the trace.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .dp import INNERMOST, TERMINATION, DpProblem
from .errors import ParseError, RuleError
from .rewriting import RewriteStep, Trace
from .termtypes import PLAIN, TUPLE, App, Symbol, Term, Var, symbols, variables
from .terms import EMPTY
from .trs import Rule, Trs

_TOKEN = re.compile(r"\s+|(\()|(\))|(,)|(->)|((?:[^\s(),-]|-(?!>))+)")
_KINDS = ("lparen", "rparen", "comma", "arrow", "ident")
SECTIONS = ("VAR", "RULES", "PAIRS", "FLAG")


def _line_col(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    """``(kind, value, offset)`` triples; whitespace is dropped."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        if m.lastindex is not None:
            out.append((_KINDS[m.lastindex - 1], m.group(m.lastindex), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, variables: Iterable[str] = (), symbols_: Optional[Dict[str, Symbol]] = None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.vars = set(variables)
        self.syms: Dict[str, Symbol] = dict(symbols_ or {})

    # -- token helpers
    def _error(self, msg, offset=None):
        if offset is None:
            offset = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        line, col = _line_col(self.text, offset)
        return ParseError(msg, line, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, kind=None, what=None):
        tok = self.peek()
        if tok is None:
            raise self._error(f"unexpected end of input, expected {what or kind}")
        if kind is not None and tok[0] != kind:
            raise self._error(f"expected {what or kind}, found {tok[1]!r}")
        self.i += 1
        return tok

    def at_end(self):
        return self.i >= len(self.tokens)

    # -- terms
    def symbol(self, name: str, arity: int, offset: int) -> Symbol:
        old = self.syms.get(name)
        if old is None:
            old = Symbol(name, arity, TUPLE if "#" in name else PLAIN)
            self.syms[name] = old
        elif old.arity != arity:
            raise self._error(f"symbol {name!r} used with arity {arity}, first used with arity {old.arity}",
                              offset)
        return old

    def term(self) -> Term:
        kind, name, off = self.next("ident", "a term")
        tok = self.peek()
        if tok is not None and tok[0] == "lparen":
            if name in self.vars:
                raise self._error(f"variable {name!r} applied to arguments", off)
            self.next()
            args = [self.term()]
            while self.peek() is not None and self.peek()[0] == "comma":
                self.next()
                args.append(self.term())
            self.next("rparen", "',' or ')'")
            return App(self.symbol(name, len(args), off), tuple(args))
        if name in self.vars:
            return Var(name)
        return App(self.symbol(name, 0, off), ())

    def rule(self) -> Rule:
        off = self.peek()[2]
        lhs = self.term()
        self.next("arrow", "'->'")
        rhs = self.term()
        try:
            return Rule(lhs, rhs)
        except RuleError as e:
            line, col = _line_col(self.text, off)
            raise ParseError(str(e), line, col) from None


@dataclass
class ProblemFile:
    var_decls: List[str] = field(default_factory=list)
    rules: Trs = field(default_factory=Trs)
    pairs: Optional[Trs] = None
    flag: Optional[str] = None
    warnings: List[str] = field(default_factory=list)

    def dp_problem(self) -> DpProblem:
        if self.pairs is None:
            raise ValueError("file has no PAIRS section")
        return DpProblem(self.pairs, self.rules, self.flag or TERMINATION)


def _dedup(rules: List[Rule], what: str, warn: List[str]) -> Trs:
    seen = set()
    for r in rules:
        if r in seen:
            msg = f"duplicate {what} {r} ignored"
            warn.append(msg)
            warnings.warn(msg, stacklevel=4)
        seen.add(r)
    return Trs(rules)


def parse_problem(text: str) -> ProblemFile:
    """Parse a file with VAR / RULES / PAIRS / FLAG sections."""
    p = _Parser(text)
    out = ProblemFile()
    rules: List[Rule] = []
    pairs: Optional[List[Rule]] = None
    seen_sections = set()
    if p.at_end():
        raise p._error("empty input, expected a section")
    while not p.at_end():
        p.next("lparen", "'('")
        _, name, off = p.next("ident", "a section name")
        if name not in SECTIONS:
            raise p._error(f"unknown section {name!r}", off)
        if name in seen_sections and name in ("PAIRS", "FLAG"):
            raise p._error(f"repeated section {name}", off)
        seen_sections.add(name)
        if name == "VAR":
            while p.peek() is not None and p.peek()[0] == "ident":
                _, v, voff = p.next()
                if v in p.syms:
                    raise p._error(f"{v!r} declared as a variable after use as a function symbol", voff)
                if v not in p.vars:
                    p.vars.add(v)
                    out.var_decls.append(v)
        elif name == "FLAG":
            _, flag, foff = p.next("ident", "'t' or 'i'")
            if flag not in (TERMINATION, INNERMOST):
                raise p._error(f"flag must be 't' or 'i', not {flag!r}", foff)
            out.flag = flag
        else:
            target = rules if name == "RULES" else (pairs := pairs if pairs is not None else [])
            while p.peek() is not None and p.peek()[0] != "rparen":
                target.append(p.rule())
        p.next("rparen", "')'")
    out.rules = _dedup(rules, "rule", out.warnings)
    if pairs is not None:
        out.pairs = _dedup(pairs, "pair", out.warnings)
    return out


def parse_trs(text: str) -> Trs:
    return parse_problem(text).rules


def parse_term(text: str, variables: Iterable[str] = (), signature: Optional[Iterable[Symbol]] = None) -> Term:
    """Parse one term; ``signature`` fixes arities of already known symbols."""
    syms = {s.name: s for s in signature} if signature is not None else None
    p = _Parser(text, variables, syms)
    t = p.term()
    if not p.at_end():
        raise p._error(f"trailing input {p.peek()[1]!r}")
    return t


# --- printing -----------------------------------------------------------------

def format_term(t: Term) -> str:
    return str(t)


def _rule_vars(rules: Iterable[Rule]) -> List[str]:
    out = {}
    for r in rules:
        for x in variables(r.lhs):
            out.setdefault(x, None)
    return list(out)


def _check_printable(rule_sets: Iterable[Iterable[Rule]], names: List[str]):
    vs = set(names)
    for rules in rule_sets:
        for r in rules:
            for side in (r.lhs, r.rhs):
                for s in symbols(side):
                    if s.name in vs:
                        raise ValueError(f"{s.name!r} is both a variable and a function symbol")
                    if ("#" in s.name) != (s.kind == TUPLE):
                        raise ValueError(f"symbol {s!r} cannot be written unambiguously")


def format_problem(rules: Trs, pairs: Optional[Trs] = None, flag: Optional[str] = None) -> str:
    names = _rule_vars(list(rules) + list(pairs or ()))
    _check_printable([rules, pairs or ()], names)
    lines = []
    if names:
        lines.append("(VAR " + " ".join(names) + ")")
    lines.append("(RULES")
    lines.extend(f"  {r}" for r in rules)
    lines.append(")")
    if pairs is not None:
        lines.append("(PAIRS")
        lines.extend(f"  {r}" for r in pairs)
        lines.append(")")
    if flag is not None:
        lines.append(f"(FLAG {flag})")
    return "\n".join(lines) + "\n"


def format_trs(R: Trs) -> str:
    return format_problem(R)


def format_dp_problem(dp: DpProblem) -> str:
    return format_problem(dp.rules, dp.pairs, dp.flag)


def format_position(p) -> str:
    return ".".join(map(str, p)) or "e"


def parse_position(text: str):
    if text == "e":
        return ()
    try:
        p = tuple(int(x) for x in text.split("."))
    except ValueError:
        raise ValueError(f"bad position {text!r}") from None
    if any(i < 1 for i in p):
        raise ValueError(f"bad position {text!r}: indices start at 1")
    return p


def format_trace(tr: Trace, declare_vars: bool = True) -> str:
    """Canonical text of a trace (ends with a newline)."""
    lines = []
    if declare_vars:
        names = {}
        for t in tr.terms():
            for x in variables(t):
                names.setdefault(x, None)
        if names:
            lines.append("(VAR " + " ".join(names) + ")")
    lines.append(str(tr.initial))
    for s in tr.steps:
        lines.append(f"-> [p={format_position(s.position)}, rule={s.rule_index}, set={s.rule_set}] {s.target}")
    return "\n".join(lines) + "\n"


_STEP = re.compile(r"->\s*\[p=([^,\]]*),\s*rule=(\d+),\s*set=([RP])\]\s*(.*)$")


def parse_trace(text: str, variables_: Iterable[str] = (), signature: Optional[Iterable[Symbol]] = None) -> Trace:
    """Parse the trace format; step sources are the preceding terms."""
    vars_ = set(variables_)
    syms = {s.name: s for s in signature} if signature is not None else {}
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if lines and lines[0][1].startswith("(VAR"):
        lineno, ln = lines.pop(0)
        if not ln.endswith(")"):
            raise ParseError("unterminated VAR declaration", lineno, len(ln))
        vars_.update(ln[4:-1].split())
    if not lines:
        raise ParseError("empty trace", 1, 1)

    def term(lineno, src, col):
        p = _Parser(src, vars_, syms)
        try:
            t = p.term()
            if not p.at_end():
                raise p._error(f"trailing input {p.peek()[1]!r}")
        except ParseError as e:
            raise ParseError(e.message, lineno, e.column + col - 1) from None
        syms.update(p.syms)
        return t

    lineno, ln = lines[0]
    if ln.startswith("->"):
        raise ParseError("trace must start with a term", lineno, 1)
    cur = term(lineno, ln, 1)
    initial = cur
    steps = []
    for lineno, ln in lines[1:]:
        m = _STEP.match(ln)
        if m is None:
            raise ParseError("expected a step line '-> [p=..., rule=..., set=...] term'", lineno, 1)
        try:
            pos = parse_position(m.group(1))
        except ValueError as e:
            raise ParseError(str(e), lineno, m.start(1) + 1) from None
        target = term(lineno, m.group(4), m.start(4) + 1)
        steps.append(RewriteStep(pos, int(m.group(2)), cur, target, m.group(3), EMPTY))
        cur = target
    return Trace(initial, tuple(steps))


def read_problem(path: str) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


__all__ = [
    "ProblemFile", "format_dp_problem", "format_position", "format_problem", "format_term",
    "format_trace", "format_trs", "parse_position", "parse_problem", "parse_term", "parse_trace",
    "parse_trs", "read_problem", "tokenize",
]
