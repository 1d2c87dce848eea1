"""Seeded random generators for signatures, terms, TRSs and traces.

Used by the property tests, the acceptance suite and the benchmark.  Every
generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from .rewriting import RewriteStep, Trace, rewrite_steps
from .termtypes import PLAIN, TUPLE, App, Symbol, Term, Var
from .trs import Rule, Trs, is_overlay, is_right_linear

VAR_NAMES = ("x", "y", "z", "w")
_NAMES = ("f", "g", "h", "k", "m", "p", "q")
_CONSTANTS = ("a", "b", "c", "d", "e")


def random_signature(rng: random.Random, n_symbols: int = 5, max_arity: int = 2,
                     tuple_prob: float = 0.0) -> List[Symbol]:
    """``n_symbols`` symbols, at least one of them a constant."""
    out = []
    fn = iter(_NAMES)
    const = iter(_CONSTANTS)
    for i in range(n_symbols):
        arity = 0 if i == 0 else rng.randint(0, max_arity)
        name = next(const) if arity == 0 else next(fn)
        kind = PLAIN
        if arity and rng.random() < tuple_prob:
            name, kind = name.upper() + "#", TUPLE
        out.append(Symbol(name, arity, kind))
    return out


def random_term(rng: random.Random, sig: Sequence[Symbol], var_names: Sequence[str] = (),
                max_depth: int = 3, var_prob: float = 0.25) -> Term:
    consts = [s for s in sig if s.arity == 0]
    if not consts and not var_names:
        raise ValueError("cannot build a finite term without constants or variables")
    if max_depth <= 0 or rng.random() < 0.3:
        if var_names and (not consts or rng.random() < var_prob):
            return Var(rng.choice(var_names))
        return App(rng.choice(consts), ())
    f = rng.choice(list(sig))
    return App(f, tuple(random_term(rng, sig, var_names, max_depth - 1, var_prob) for _ in range(f.arity)))


def random_linear_term(rng: random.Random, sig: Sequence[Symbol], pool: List[str], max_depth: int = 3,
                       var_prob: float = 0.4) -> Term:
    """A term using each name of ``pool`` at most once (names are consumed)."""
    consts = [s for s in sig if s.arity == 0]
    if max_depth <= 0 or rng.random() < 0.3:
        if pool and (not consts or rng.random() < var_prob):
            return Var(pool.pop(rng.randrange(len(pool))))
        if consts:
            return App(rng.choice(consts), ())
        if max_depth <= 0:
            raise ValueError("cannot build a finite term without constants or variables")
    f = rng.choice(list(sig))
    return App(f, tuple(random_linear_term(rng, sig, pool, max_depth - 1, var_prob) for _ in range(f.arity)))


def random_trs(rng: random.Random, max_rules: int = 6, n_symbols: int = 5, max_arity: int = 2,
               max_depth: int = 3, var_names: Sequence[str] = VAR_NAMES[:3],
               tuple_prob: float = 0.0) -> Trs:
    """Unconstrained well-formed TRS over a random signature."""
    sig = random_signature(rng, n_symbols, max_arity, tuple_prob)
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        for _attempt in range(20):
            lhs = random_term(rng, sig, var_names, max_depth)
            if type(lhs) is Var:
                continue
            lvars = sorted({u.name for u in _vars(lhs)})
            rhs = random_term(rng, sig, lvars, max_depth)
            rules.append(Rule(lhs, rhs))
            break
    return Trs(rules)


def _vars(t):
    if type(t) is Var:
        yield t
    else:
        for a in t.args:
            yield from _vars(a)


def split_signature(rng: random.Random, n_symbols: int = 5, max_arity: int = 2):
    """``(defined, constructors)``; both non-empty, constructors contain a constant."""
    n_def = rng.randint(1, max(1, min(3, n_symbols - 1)))
    defined = [Symbol(_NAMES[i], rng.randint(0 if i else 1, max_arity)) for i in range(n_def)]
    cons = [Symbol(_CONSTANTS[0], 0)]
    for i in range(1, max(1, n_symbols - n_def)):
        arity = rng.randint(0, max_arity)
        name = _CONSTANTS[i] if arity == 0 else ("s", "cons", "node")[i % 3] + ("" if i < 3 else str(i))
        cons.append(Symbol(name, arity))
    return defined, cons


def random_rlo_trs(rng: random.Random, max_rules: int = 5, n_symbols: int = 5, max_arity: int = 2,
                   max_depth: int = 3, var_names: Sequence[str] = VAR_NAMES[:3],
                   collapse_prob: float = 0.1, min_rules: int = 1) -> Trs:
    """A right-linear overlay TRS.

    Left-hand sides are constructor-based (a defined root over constructor
    terms), which rules out inner overlaps; right-hand sides draw each
    variable at most once and favour defined symbols so systems often loop.
    """
    defined, cons = split_signature(rng, n_symbols, max_arity)
    sig = defined + cons
    rules = []
    for _ in range(rng.randint(min_rules, max_rules)):
        f = rng.choice(defined)
        args = tuple(random_term(rng, cons, var_names, max_depth - 1, 0.5) for _ in range(f.arity))
        lhs = App(f, args)
        lvars = sorted({u.name for u in _vars(lhs)})
        if lvars and rng.random() < collapse_prob:
            rhs = Var(rng.choice(lvars))
        else:
            pool = list(lvars)
            g = rng.choice(defined) if rng.random() < 0.6 else rng.choice(sig)
            rhs = App(g, tuple(random_linear_term(rng, sig, pool, max_depth - 1) for _ in range(g.arity)))
        rules.append(Rule(lhs, rhs))
    R = Trs(rules, extra_symbols=sig)
    assert is_right_linear(R) and is_overlay(R)
    return R


def random_ground_term(rng: random.Random, R: Trs, max_depth: int = 3,
                       root: Optional[Symbol] = None) -> Term:
    sig = sorted(R.signature, key=lambda s: (s.name, s.arity))
    if not any(s.arity == 0 for s in sig):
        taken = {s.name for s in sig}
        sig.append(Symbol(next(n for n in _CONSTANTS + ("a0",) if n not in taken), 0))
    if root is None:
        return random_term(rng, sig, (), max_depth)
    return App(root, tuple(random_term(rng, sig, (), max_depth - 1) for _ in range(root.arity)))


def random_start_term(rng: random.Random, R: Trs, max_depth: int = 3,
                      var_names: Sequence[str] = ()) -> Term:
    """A term rooted by a defined symbol of ``R`` (any symbol when none is defined)."""
    sig = sorted(R.signature, key=lambda s: (s.name, s.arity))
    if not any(s.arity == 0 for s in sig):
        taken = {s.name for s in sig}
        sig.append(Symbol(next(n for n in _CONSTANTS + ("a0",) if n not in taken), 0))
    roots = sorted(R.defined, key=lambda s: (s.name, s.arity)) or sig
    f = rng.choice(roots)
    return App(f, tuple(random_term(rng, sig, var_names, max_depth - 1) for _ in range(f.arity)))


def random_trace(rng: random.Random, R: Trs, start: Term, max_steps: int = 6,
                 innermost: bool = False) -> Trace:
    """A random walk of ``R``-steps from ``start``."""
    cur = start
    steps: List[RewriteStep] = []
    for _ in range(rng.randint(0, max_steps)):
        options = rewrite_steps(cur, R, innermost)
        if not options:
            break
        st = rng.choice(options)
        steps.append(st)
        cur = st.target
    return Trace(start, tuple(steps))


__all__ = [
    "VAR_NAMES", "random_ground_term", "random_linear_term", "random_rlo_trs", "random_signature",
    "random_start_term", "random_term", "random_trace", "random_trs", "split_signature",
]
