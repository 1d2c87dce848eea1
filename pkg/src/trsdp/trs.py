"""Rules, term rewrite systems and the syntactic classifiers.

The classifiers decide the hypotheses under which full and innermost
termination coincide: right-linearity, non-collapsing right-hand sides and
absence of inner overlaps (the overlay property).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional

from .errors import RuleError, SignatureError
from .termtypes import App, Position, Symbol, Term, Var, iter_positions, symbols, var_set
from .terms import Substitution, is_linear, rename_apart, unify


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if type(self.lhs) is Var:
            raise RuleError(f"variable left-hand side in {self}")
        extra = var_set(self.rhs) - var_set(self.lhs)
        if extra:
            raise RuleError(
                f"right-hand side variables {sorted(extra)} not in left-hand side of {self}")

    def __str__(self):
        return f"{self.lhs} -> {self.rhs}"

    @property
    def variables(self) -> frozenset:
        return var_set(self.lhs)

    @property
    def is_right_linear(self) -> bool:
        return is_linear(self.rhs)

    @property
    def is_collapsing(self) -> bool:
        return type(self.rhs) is Var

    @property
    def erased_variables(self) -> frozenset:
        """Variables of the left-hand side that do not survive on the right."""
        return var_set(self.lhs) - var_set(self.rhs)


def _register(sig: dict, sym: Symbol):
    old = sig.get(sym.name)
    if old is None:
        sig[sym.name] = sym
    elif old != sym:
        raise SignatureError(f"symbol {sym.name!r} used as {old!r} and as {sym!r}")


class Trs:
    """An ordered, duplicate-free collection of rules with its signature.

    Rule order is kept only for deterministic enumeration.  Within one TRS a
    symbol name determines arity and kind.
    """

    __slots__ = ("rules", "_sig", "_index", "_rhss", "_defined")

    def __init__(self, rules: Iterable[Rule] = (), extra_symbols: Iterable[Symbol] = ()):
        seen = {}
        for r in rules:
            if not isinstance(r, Rule):
                r = Rule(*r)
            seen.setdefault(r, None)
        self.rules = tuple(seen)
        sig = {}
        for r in self.rules:
            for side in (r.lhs, r.rhs):
                for s in symbols(side):
                    _register(sig, s)
        for s in extra_symbols:
            _register(sig, s)
        self._sig = sig
        self._index = None
        self._rhss = None
        self._defined = None

    def __len__(self):
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __getitem__(self, i) -> Rule:
        return self.rules[i]

    def __eq__(self, other):
        if not isinstance(other, Trs):
            return NotImplemented
        return self.rules == other.rules and self._sig == other._sig

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        return "Trs([" + ", ".join(str(r) for r in self.rules) + "])"

    @property
    def signature(self) -> frozenset:
        return frozenset(self._sig.values())

    def symbol(self, name: str) -> Optional[Symbol]:
        return self._sig.get(name)

    def index_of(self, rule: Rule) -> int:
        return self.rules.index(rule)

    def union(self, other: "Trs") -> "Trs":
        """Set union of the rules; raises ``SignatureError`` on a clash."""
        return Trs(self.rules + other.rules, extra_symbols=self.signature | other.signature)

    @property
    def lhs_index(self) -> dict:
        """Root symbol -> ``[(rule_index, lhs), ...]`` in rule order."""
        if self._index is None:
            idx = {}
            for i, r in enumerate(self.rules):
                idx.setdefault(r.lhs.sym, []).append((i, r.lhs))
            self._index = idx
        return self._index

    @property
    def rhss(self) -> tuple:
        if self._rhss is None:
            self._rhss = tuple(r.rhs for r in self.rules)
        return self._rhss

    @property
    def defined(self) -> frozenset:
        if self._defined is None:
            self._defined = frozenset(r.lhs.sym for r in self.rules)
        return self._defined


def defined_symbols(R: Trs) -> frozenset:
    return R.defined


def constructors(R: Trs) -> frozenset:
    return R.signature - R.defined


def is_right_linear(R: Trs) -> bool:
    return all(is_linear(r.rhs) for r in R)


def non_right_linear_rules(R: Trs) -> List[int]:
    return [i for i, r in enumerate(R) if not is_linear(r.rhs)]


def is_non_collapsing(R: Trs) -> bool:
    return not any(type(r.rhs) is Var for r in R)


def collapsing_rules(R: Trs) -> List[int]:
    return [i for i, r in enumerate(R) if type(r.rhs) is Var]


@dataclass(frozen=True)
class OverlapWitness:
    """A proper non-variable subterm of ``outer_rule.lhs`` unifying with a renamed inner lhs."""

    outer_rule: Rule
    inner_rule: Rule
    position: Position
    mgu: Substitution
    outer_index: int = -1
    inner_index: int = -1
    renamed_inner: Optional[Rule] = None

    def __str__(self):
        pos = ".".join(map(str, self.position))
        return (f"rule {self.inner_index} ({self.inner_rule}) overlaps rule "
                f"{self.outer_index} ({self.outer_rule}) at position {pos}, mgu {self.mgu}")


def _iter_inner_overlaps(R: Trs) -> Iterator[OverlapWitness]:
    rules = R.rules
    for oi, outer in enumerate(rules):
        outer_vars = outer.variables
        proper = [(p, u) for p, u in iter_positions(outer.lhs) if p and type(u) is App]
        if not proper:
            continue
        proper.sort(key=lambda pu: pu[0])
        renamed = []
        for inner in rules:
            lhs, ren = rename_apart(inner.lhs, outer_vars)
            renamed.append((lhs, ren))
        for p, sub in proper:
            for ii, inner in enumerate(rules):
                lhs, ren = renamed[ii]
                if lhs.sym != sub.sym:
                    continue
                mgu = unify(sub, lhs)
                if mgu is not None:
                    yield OverlapWitness(outer, inner, p, mgu, oi, ii,
                                         Rule(lhs, ren(inner.rhs)))


def find_inner_overlaps(R: Trs) -> List[OverlapWitness]:
    """All inner overlaps, ordered by outer rule, position, inner rule.

    A rule is compared against a renamed copy of itself as well; only root
    positions are excluded.
    """
    return list(_iter_inner_overlaps(R))


def is_overlay(R: Trs) -> bool:
    return next(_iter_inner_overlaps(R), None) is None


def union_is_right_linear_overlay(R: Trs, P: Trs) -> bool:
    U = R.union(P)
    return is_right_linear(U) and is_overlay(U)


def is_right_linear_overlay(R: Trs) -> bool:
    return is_right_linear(R) and is_overlay(R)
