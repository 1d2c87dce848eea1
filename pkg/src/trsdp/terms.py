"""Substitutions, matching, unification and positional access on terms."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable, Optional, Tuple

from . import kernels
from .errors import PositionError
from .termtypes import (
    App,
    Position,
    Symbol,
    Term,
    Var,
    iter_positions,
    make_app,
    var_set,
    variables,
)


class Substitution(Mapping):
    """Finite map from variable names to terms.

    Identity bindings ``x -> x`` are dropped on construction, so two
    substitutions that act identically compare equal.  Application is
    simultaneous.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings=(), **kw):
        raw = dict(bindings)
        raw.update(kw)
        m = {}
        for name, value in raw.items():
            if isinstance(name, Var):
                name = name.name
            if type(value) is Var and value.name == name:
                continue
            m[name] = value
        self._map = m
        self._hash = None

    @classmethod
    def _trusted(cls, m: dict) -> "Substitution":
        s = cls.__new__(cls)
        s._map = {k: v for k, v in m.items() if not (type(v) is Var and v.name == k)}
        s._hash = None
        return s

    def __getitem__(self, name):
        if isinstance(name, Var):
            name = name.name
        return self._map[name]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        if isinstance(other, Mapping):
            return self == Substitution(other)
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k}->{v}" for k, v in self._map.items())
        return "{" + inner + "}"

    __str__ = __repr__

    def __call__(self, t: Term) -> Term:
        return kernels.substitute(t, self._map)

    @property
    def domain(self) -> frozenset:
        return frozenset(self._map)

    def as_dict(self) -> dict:
        return dict(self._map)

    def restrict(self, names: Iterable[str]) -> "Substitution":
        return restrict(self, names)

    def compose(self, other: "Substitution") -> "Substitution":
        """Substitution acting as ``self`` followed by ``other``."""
        m = {k: kernels.substitute(v, other._map) for k, v in self._map.items()}
        for k, v in other._map.items():
            if k not in m:
                m[k] = v
        return Substitution._trusted(m)

    def union(self, other: "Substitution") -> "Substitution":
        """Union of two substitutions that agree on their common domain."""
        m = dict(self._map)
        for k, v in other._map.items():
            if k in m and m[k] != v:
                raise ValueError(f"substitutions disagree on {k}")
            m[k] = v
        return Substitution._trusted(m)


EMPTY = Substitution()


def apply(s: Substitution, t: Term) -> Term:
    return kernels.substitute(t, s._map if isinstance(s, Substitution) else dict(s))


def restrict(s: Substitution, names: Iterable[str]) -> Substitution:
    keep = {n.name if isinstance(n, Var) else n for n in names}
    m = s._map if isinstance(s, Substitution) else dict(s)
    return Substitution._trusted({k: v for k, v in m.items() if k in keep})


def match(pattern: Term, subject: Term) -> Optional[Substitution]:
    binds = {}
    if kernels.match_into(pattern, subject, binds):
        return Substitution._trusted(binds)
    return None


def _walk(t, binds):
    while type(t) is Var and t.name in binds:
        t = binds[t.name]
    return t


def _occurs(name, t, binds):
    stack = [t]
    while stack:
        u = _walk(stack.pop(), binds)
        if type(u) is Var:
            if u.name == name:
                return True
        else:
            stack.extend(u.args)
    return False


def unify(s: Term, t: Term) -> Optional[Substitution]:
    """Most general unifier of ``s`` and ``t`` (idempotent), or ``None``."""
    binds = {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, binds)
        b = _walk(b, binds)
        if a == b:
            continue
        if type(a) is Var:
            if _occurs(a.name, b, binds):
                return None
            binds[a.name] = b
        elif type(b) is Var:
            if _occurs(b.name, a, binds):
                return None
            binds[b.name] = a
        elif a.sym != b.sym:
            return None
        else:
            stack.extend(zip(a.args, b.args))

    resolved = {}

    def resolve(u):
        if type(u) is Var:
            if u.name not in binds:
                return u
            if u.name not in resolved:
                resolved[u.name] = resolve(binds[u.name])
            return resolved[u.name]
        if not u.args:
            return u
        return make_app(u.sym, tuple(resolve(a) for a in u.args))

    return Substitution._trusted({name: resolve(Var(name)) for name in binds})


def _check_position(t: Term, p: Position):
    u = t
    for depth, i in enumerate(p):
        if type(u) is Var or not 1 <= i <= len(u.args):
            raise PositionError(
                f"{'.'.join(map(str, p))} is not a position of {t}"
                f" (fails at depth {depth})")
        u = u.args[i - 1]
    return u


def subterm_at(t: Term, p: Position) -> Term:
    return _check_position(t, tuple(p))


def replace_at(t: Term, p: Position, u: Term) -> Term:
    p = tuple(p)
    _check_position(t, p)
    return kernels.replace_at(t, p, u)


def is_linear(t: Term) -> bool:
    seen = set()
    for _, u in iter_positions(t):
        if type(u) is Var:
            if u.name in seen:
                return False
            seen.add(u.name)
    return True


def fresh_names(prefix: str, avoid, count: int) -> list:
    """``count`` names ``prefix1, prefix2, ...`` skipping anything in ``avoid``."""
    out = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return out


def linearize(t: Term, prefix: str = "y") -> Tuple[Term, Substitution]:
    """Replace every variable occurrence by a distinct fresh variable.

    Returns ``(t_lin, back)`` where ``back`` maps each fresh variable to the
    original one, so ``back(t_lin) == t``.
    """
    occ = [(p, u.name) for p, u in iter_positions(t) if type(u) is Var]
    names = fresh_names(prefix, var_set(t), len(occ))
    lin = t
    back = {}
    for (p, orig), fresh in zip(occ, names):
        lin = kernels.replace_at(lin, p, Var(fresh))
        back[fresh] = Var(orig)
    return lin, Substitution._trusted(back)


def rename_apart(t: Term, avoid: Iterable[str]) -> Tuple[Term, Substitution]:
    """Rename the variables of ``t`` that occur in ``avoid`` by priming them."""
    avoid = {a.name if isinstance(a, Var) else a for a in avoid}
    taken = set(avoid) | var_set(t)
    ren = {}
    for name in variables(t):
        if name not in avoid:
            continue
        new = name + "'"
        while new in taken:
            new += "'"
        taken.add(new)
        ren[name] = Var(new)
    if not ren:
        return t, EMPTY
    return kernels.substitute(t, ren), Substitution._trusted(ren)


def is_variant(s: Term, t: Term) -> bool:
    """True iff ``s`` and ``t`` are equal up to a bijective variable renaming."""
    fwd, bwd = {}, {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        if type(a) is Var or type(b) is Var:
            if type(a) is not Var or type(b) is not Var:
                return False
            if fwd.setdefault(a.name, b.name) != b.name:
                return False
            if bwd.setdefault(b.name, a.name) != a.name:
                return False
        elif a.sym != b.sym:
            return False
        else:
            stack.extend(zip(a.args, b.args))
    return True


__all__ = [
    "App", "EMPTY", "Substitution", "Symbol", "Term", "Var",
    "apply", "fresh_names", "is_linear", "is_variant", "linearize",
    "match", "rename_apart", "replace_at", "restrict", "subterm_at", "unify",
]
