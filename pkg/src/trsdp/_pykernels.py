"""Pure-Python hot kernels.

``_ckernels.pyx`` is a typed transliteration of this module; both must keep
identical semantics and output order.  Substitutions are plain dicts from
variable names to terms here; the ``Substitution`` wrapper lives in
``terms``.

``index`` arguments map a root symbol to a list of ``(rule_index, lhs)``
pairs in rule order (see ``Trs.lhs_index``).
"""

from .termtypes import App, Var, make_app

BACKEND = "python"


def substitute(t, mapping):
    if type(t) is Var:
        return mapping.get(t.name, t)
    args = t.args
    if not args:
        return t
    new = []
    changed = False
    for a in args:
        b = substitute(a, mapping)
        if b is not a:
            changed = True
        new.append(b)
    if not changed:
        return t
    return make_app(t.sym, tuple(new))


def match_into(pattern, subject, binds):
    """Extend ``binds`` so that ``pattern`` instantiates to ``subject``.

    On failure ``binds`` may hold partial bindings; callers pass a fresh dict.
    """
    if type(pattern) is Var:
        bound = binds.get(pattern.name)
        if bound is None:
            binds[pattern.name] = subject
            return True
        return bound == subject
    if type(subject) is not App or subject.sym != pattern.sym:
        return False
    for p, s in zip(pattern.args, subject.args):
        if not match_into(p, s, binds):
            return False
    return True


def replace_at(t, pos, u, depth=0):
    if depth == len(pos):
        return u
    i = pos[depth]
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], pos, u, depth + 1)
    return make_app(t.sym, tuple(args))


def _scan(t, pos, index, innermost, out):
    if type(t) is Var:
        return True
    args_nf = True
    i = 1
    for a in t.args:
        if not _scan(a, pos + (i,), index, innermost, out):
            args_nf = False
        i += 1
    if innermost and not args_nf:
        return False
    cands = index.get(t.sym)
    if not cands:
        return args_nf
    found = False
    for idx, lhs in cands:
        binds = {}
        if match_into(lhs, t, binds):
            found = True
            out.append((pos, idx, binds))
    return args_nf and not found


def find_redexes(t, index, innermost=False):
    """``(position, rule_index, binds)`` triples, leftmost-outermost then rule order."""
    out = []
    _scan(t, (), index, innermost, out)
    out.sort(key=_redex_key)
    return out


def _redex_key(r):
    return r[0], r[1]


def has_redex(t, index):
    if type(t) is Var:
        return False
    cands = index.get(t.sym)
    if cands:
        for _, lhs in cands:
            if match_into(lhs, t, {}):
                return True
    for a in t.args:
        if has_redex(a, index):
            return True
    return False


def successors(t, index, rhss, innermost=False):
    """One-step reducts as ``(position, rule_index, binds, target)`` tuples."""
    out = []
    for pos, idx, binds in find_redexes(t, index, innermost):
        out.append((pos, idx, binds, replace_at(t, pos, substitute(rhss[idx], binds))))
    return out
