"""Shorthands and independent reference implementations used by the tests.

The oracles below deliberately avoid the package's kernels: they recompute
matching, unification, redexes and reachability by the textbook
definitions so the tests compare two independent implementations.
"""

from collections import deque
from itertools import count

from trsdp import App, Rule, Symbol, Trs, Var
from trsdp.textio import parse_term, parse_trs

PLUS_TIMES_TEXT = (
    "(VAR x y) (RULES plus(0,y) -> y  plus(s(x),y) -> s(plus(x,y)) "
    "times(0,y) -> 0 times(s(x),y) -> plus(times(x,y),y))"
)
AB_TEXT = "(RULES a -> b a -> c)"


def plus_times():
    return parse_trs(PLUS_TIMES_TEXT)


def ab():
    return parse_trs(AB_TEXT)


def T(text, vars_="xyzuvw", sig=None):
    """Parse a term; single letters in ``vars_`` and names in a list are variables."""
    names = list(vars_) if isinstance(vars_, str) else list(vars_)
    return parse_term(text, names, sig)


def rules(*pairs, vars_="xyzuvw"):
    """``rules("a -> b", "f(x) -> x")`` as a Trs with a shared signature."""
    text = "(VAR " + " ".join(vars_) + ") (RULES " + " ".join(pairs) + ")"
    return parse_trs(text)


# --- naive term algebra -------------------------------------------------------

def naive_positions(t, prefix=()):
    yield prefix, t
    if isinstance(t, App):
        for i, a in enumerate(t.args, 1):
            yield from naive_positions(a, prefix + (i,))


def naive_subst(t, s):
    if isinstance(t, Var):
        return s.get(t.name, t)
    return App(t.sym, tuple(naive_subst(a, s) for a in t.args))


def naive_replace(t, p, u):
    if not p:
        return u
    args = list(t.args)
    args[p[0] - 1] = naive_replace(args[p[0] - 1], p[1:], u)
    return App(t.sym, tuple(args))


def naive_match(pat, sub, s=None):
    s = {} if s is None else s
    if isinstance(pat, Var):
        if pat.name in s:
            return s if s[pat.name] == sub else None
        s[pat.name] = sub
        return s
    if not isinstance(sub, App) or sub.sym != pat.sym:
        return None
    for a, b in zip(pat.args, sub.args):
        if naive_match(a, b, s) is None:
            return None
    return s


def naive_vars(t):
    return {u.name for _, u in naive_positions(t) if isinstance(u, Var)}


def naive_unify(s, t):
    """Robinson unification by repeated substitution; returns a dict or None."""
    eqs = [(s, t)]
    sol = {}
    while eqs:
        a, b = eqs.pop()
        a, b = naive_subst(a, sol), naive_subst(b, sol)
        if a == b:
            continue
        if isinstance(b, Var) and not isinstance(a, Var):
            a, b = b, a
        if isinstance(a, Var):
            if a.name in naive_vars(b):
                return None
            sol = {k: naive_subst(v, {a.name: b}) for k, v in sol.items()}
            sol[a.name] = b
        elif a.sym != b.sym:
            return None
        else:
            eqs.extend(zip(a.args, b.args))
    return sol


def canonical(t):
    """Rename variables to v0, v1, ... in order of first occurrence."""
    names = {}

    def go(u):
        if isinstance(u, Var):
            if u.name not in names:
                names[u.name] = f"v{len(names)}"
            return Var(names[u.name])
        return App(u.sym, tuple(go(a) for a in u.args))

    return go(t)


def brute_force_overlaps(R):
    """``{(outer, inner, position, canonical unified subterm)}`` by exhaustive search."""
    out = set()
    for oi, outer in enumerate(R):
        for ii, inner in enumerate(R):
            ren = {x: Var(x + "_inner") for x in naive_vars(inner.lhs)}
            lhs2 = naive_subst(inner.lhs, ren)
            for p, u in naive_positions(outer.lhs):
                if not p or isinstance(u, Var):
                    continue
                mgu = naive_unify(u, lhs2)
                if mgu is not None:
                    out.add((oi, ii, p, canonical(naive_subst(u, mgu))))
    return out


def witness_set(ws):
    return {(w.outer_index, w.inner_index, w.position,
             canonical(w.mgu(naive_subterm(w.outer_rule.lhs, w.position)))) for w in ws}


def naive_subterm(t, p):
    for i in p:
        t = t.args[i - 1]
    return t


def naive_is_nf(t, R):
    return not any(naive_match(r.lhs, u) is not None
                   for _, u in naive_positions(t) for r in R if isinstance(u, App))


def naive_redexes(t, R, innermost=False):
    out = []
    for p, u in naive_positions(t):
        if isinstance(u, Var):
            continue
        if innermost and not all(naive_is_nf(a, R) for a in u.args):
            continue
        for i, r in enumerate(R):
            m = naive_match(r.lhs, u)
            if m is not None:
                out.append((p, i, m))
    return sorted(out, key=lambda x: (x[0], x[1]))


def naive_successors(t, R, innermost=False):
    return [naive_replace(t, p, naive_subst(R[i].rhs, m)) for p, i, m in naive_redexes(t, R, innermost)]


def naive_reachable(t, R, innermost=False, limit=10_000):
    seen = {t}
    queue = deque([t])
    while queue and len(seen) < limit:
        u = queue.popleft()
        for v in naive_successors(u, R, innermost):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen
