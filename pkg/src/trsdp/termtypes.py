"""Symbols, variables and applications.

Terms are treated as immutable values: nothing in the package mutates a node
after construction, and every node caches its hash.  Structural equality is
syntactic identity.  Positions are tuples of 1-based argument indices, the
root being the empty tuple.
"""

from __future__ import annotations

from typing import Iterator, Tuple, Union

from .errors import ArityError

Position = Tuple[int, ...]
ROOT: Position = ()

PLAIN = "plain"
TUPLE = "tuple"


class Symbol:
    __slots__ = ("name", "arity", "kind", "_hash")

    def __init__(self, name: str, arity: int, kind: str = PLAIN):
        if not name:
            raise ValueError("symbol name must be non-empty")
        if arity < 0:
            raise ArityError(f"negative arity for {name!r}")
        if kind not in (PLAIN, TUPLE):
            raise ValueError(f"unknown symbol kind {kind!r}")
        self.name = name
        self.arity = arity
        self.kind = kind
        self._hash = hash((name, arity, kind))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Symbol):
            return NotImplemented
        return (self._hash == other._hash and self.name == other.name
                and self.arity == other.arity and self.kind == other.kind)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind == TUPLE:
            return f"Symbol({self.name!r}, {self.arity}, {self.kind!r})"
        return f"Symbol({self.name!r}, {self.arity})"

    def __str__(self):
        return self.name

    def __call__(self, *args) -> "App":
        return App(self, args)

    @property
    def is_tuple(self) -> bool:
        return self.kind == TUPLE


class Var:
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        if not name:
            raise ValueError("variable name must be non-empty")
        self.name = name
        self._hash = hash(("$var", name))

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not Var:
            return False
        return self.name == other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class App:
    __slots__ = ("sym", "args", "_hash")

    def __init__(self, sym: Symbol, args=()):
        args = tuple(args)
        if len(args) != sym.arity:
            raise ArityError(
                f"{sym.name} expects {sym.arity} argument(s), got {len(args)}")
        self.sym = sym
        self.args = args
        self._hash = hash((sym._hash,) + tuple([a._hash for a in args]))

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not App:
            return False
        return (self._hash == other._hash and self.sym == other.sym
                and self.args == other.args)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"App({self.sym!r}, {self.args!r})"

    def __str__(self):
        if not self.args:
            return self.sym.name
        return f"{self.sym.name}({','.join(str(a) for a in self.args)})"


Term = Union[Var, App]


def make_app(sym: Symbol, args: tuple) -> App:
    """Build an application without the arity check; ``args`` must be a tuple."""
    t = App.__new__(App)
    t.sym = sym
    t.args = args
    t._hash = hash((sym._hash,) + tuple([a._hash for a in args]))
    return t


def is_var(t: Term) -> bool:
    return type(t) is Var


def root_symbol(t: Term):
    """Root symbol of ``t``, or ``None`` for a variable."""
    return None if type(t) is Var else t.sym


def iter_positions(t: Term, prefix: Position = ROOT) -> Iterator[Tuple[Position, Term]]:
    """All ``(position, subterm)`` pairs in pre-order (leftmost-outermost)."""
    stack = [(prefix, t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        if type(u) is App:
            for i in range(len(u.args), 0, -1):
                stack.append((pos + (i,), u.args[i - 1]))


def positions(t: Term) -> list:
    return [p for p, _ in iter_positions(t)]


def variable_positions(t: Term) -> list:
    return [(p, u.name) for p, u in iter_positions(t) if type(u) is Var]


def variables(t: Term) -> list:
    """Variable names in order of first occurrence."""
    seen = {}
    for _, u in iter_positions(t):
        if type(u) is Var and u.name not in seen:
            seen[u.name] = None
    return list(seen)


def var_set(t: Term) -> frozenset:
    return frozenset(variables(t))


def symbols(t: Term) -> set:
    return {u.sym for _, u in iter_positions(t) if type(u) is App}


def size(t: Term) -> int:
    n = 0
    for _ in iter_positions(t):
        n += 1
    return n


def depth(t: Term) -> int:
    if type(t) is Var or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def is_ground(t: Term) -> bool:
    return not any(type(u) is Var for _, u in iter_positions(t))


def proper_subterms(t: Term) -> list:
    return [u for p, u in iter_positions(t) if p]
