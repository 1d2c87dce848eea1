# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; semantics mirror ``_pykernels`` exactly."""

from .termtypes import App, Var

BACKEND = "cython"

cdef object _Var = Var
cdef object _App = App
cdef object _new = App.__new__


cdef object _mk(object sym, tuple args):
    # same construction and hash as termtypes.make_app
    cdef object t = _new(_App)
    cdef list hs = [sym._hash]
    cdef object a
    for a in args:
        hs.append(a._hash)
    t.sym = sym
    t.args = args
    t._hash = hash(tuple(hs))
    return t


cdef object _substitute(object t, dict mapping):
    cdef tuple args
    cdef list new
    cdef bint changed = False
    cdef object a, b
    if type(t) is _Var:
        b = mapping.get(t.name)
        return t if b is None else b
    args = t.args
    if not args:
        return t
    new = []
    for a in args:
        b = _substitute(a, mapping)
        if b is not a:
            changed = True
        new.append(b)
    if not changed:
        return t
    return _mk(t.sym, tuple(new))


def substitute(t, dict mapping):
    return _substitute(t, mapping)


cdef bint _match(object pattern, object subject, dict binds) except -1:
    cdef object bound
    cdef tuple pargs, sargs
    cdef Py_ssize_t i, n
    if type(pattern) is _Var:
        bound = binds.get(pattern.name)
        if bound is None:
            binds[pattern.name] = subject
            return True
        return bound == subject
    if type(subject) is not _App:
        return False
    if not (subject.sym == pattern.sym):
        return False
    pargs = pattern.args
    sargs = subject.args
    n = len(pargs)
    for i in range(n):
        if not _match(pargs[i], sargs[i], binds):
            return False
    return True


def match_into(pattern, subject, dict binds):
    return _match(pattern, subject, binds)


cdef object _replace_at(object t, tuple pos, object u, Py_ssize_t depth):
    cdef list args
    cdef Py_ssize_t i
    if depth == len(pos):
        return u
    i = pos[depth]
    args = list(t.args)
    args[i - 1] = _replace_at(args[i - 1], pos, u, depth + 1)
    return _mk(t.sym, tuple(args))


def replace_at(t, tuple pos, u, Py_ssize_t depth=0):
    return _replace_at(t, pos, u, depth)


cdef bint _scan(object t, tuple pos, dict index, bint innermost, list out) except -1:
    cdef bint args_nf = True
    cdef bint found = False
    cdef Py_ssize_t i = 1
    cdef object a, cands, entry
    cdef dict binds
    if type(t) is _Var:
        return True
    for a in t.args:
        if not _scan(a, pos + (i,), index, innermost, out):
            args_nf = False
        i += 1
    if innermost and not args_nf:
        return False
    cands = index.get(t.sym)
    if not cands:
        return args_nf
    for entry in cands:
        binds = {}
        if _match(entry[1], t, binds):
            found = True
            out.append((pos, entry[0], binds))
    return args_nf and not found


def _redex_key(r):
    return r[0], r[1]


def find_redexes(t, dict index, bint innermost=False):
    cdef list out = []
    _scan(t, (), index, innermost, out)
    out.sort(key=_redex_key)
    return out


cdef bint _has_redex(object t, dict index) except -1:
    cdef object cands, entry, a
    if type(t) is _Var:
        return False
    cands = index.get(t.sym)
    if cands:
        for entry in cands:
            if _match(entry[1], t, {}):
                return True
    for a in t.args:
        if _has_redex(a, index):
            return True
    return False


def has_redex(t, dict index):
    return _has_redex(t, index)


def successors(t, dict index, rhss, bint innermost=False):
    cdef list out = []
    cdef list found = find_redexes(t, index, innermost)
    cdef object r
    for r in found:
        out.append((r[0], r[1], r[2],
                    _replace_at(t, r[0], _substitute(rhss[r[1]], r[2]), 0)))
    return out
