"""Hypothesis properties of terms, unification, rewriting and overlaps."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from helpers import (brute_force_overlaps, naive_is_nf, naive_positions, naive_redexes, naive_subst,
                     naive_unify, witness_set)
from trsdp import Fuel, Rule, Trs
from trsdp.rewriting import (FULL, FULL_LEFTMOST, INNERMOST, INNERMOST_LEFTMOST, innermost_redexes,
                             is_normal_form, is_terminating_bounded, normalize, redexes, validate_trace)
from trsdp.terms import Substitution, apply, is_linear, linearize, match, rename_apart, replace_at, subterm_at, unify
from trsdp.termtypes import App, Symbol, Var, positions, size, var_set
from trsdp.trs import find_inner_overlaps, is_overlay

A, B = Symbol("a", 0), Symbol("b", 0)
F, G, H = Symbol("f", 1), Symbol("g", 2), Symbol("h", 2)
SIG = (A, B, F, G, H)
CONSTS = (A, B)
FUNS = (F, G, H)
VARS = ("x", "y", "z")


def terms(var_names=VARS, max_leaves=12):
    leaves = st.sampled_from([App(c, ()) for c in CONSTS] + [Var(v) for v in var_names])

    def extend(children):
        return st.sampled_from(FUNS).flatmap(
            lambda f: st.tuples(*[children] * f.arity).map(lambda args, f=f: App(f, args)))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


ground_terms = terms(var_names=(), max_leaves=10)


@st.composite
def rules_(draw):
    lhs = draw(terms(max_leaves=6).filter(lambda t: type(t) is App))
    lv = sorted(var_set(lhs))
    rhs = draw(terms(var_names=tuple(lv), max_leaves=6) if lv else terms(var_names=(), max_leaves=6))
    return Rule(lhs, rhs)


trss = st.lists(rules_(), min_size=0, max_size=4).map(Trs)


@st.composite
def term_and_position(draw):
    t = draw(terms())
    return t, draw(st.sampled_from(positions(t)))


# ---------------------------------------------------------------- term-core

@given(term_and_position())
def test_replace_own_subterm_is_identity(tp):
    t, p = tp
    assert replace_at(t, p, subterm_at(t, p)) == t


@given(term_and_position(), terms())
def test_replace_then_read_back(tp, u):
    t, p = tp
    assert subterm_at(replace_at(t, p, u), p) == u


@given(terms())
def test_positions_match_naive(t):
    assert sorted(positions(t)) == sorted(p for p, _ in naive_positions(t))
    assert len(positions(t)) == size(t)


@given(terms(), st.lists(st.integers(1, 3), max_size=4))
def test_valid_position_characterization(t, p):
    p = tuple(p)
    valid = p in set(positions(t))
    try:
        subterm_at(t, p)
        reachable = True
    except IndexError:
        reachable = False
    assert valid == reachable


@given(terms(), terms())
def test_unify_property(s, t):
    theta = unify(s, t)
    naive = naive_unify(s, t)
    assert (theta is None) == (naive is None)
    if theta is not None:
        assert apply(theta, s) == apply(theta, t)
        for v in theta:
            assert apply(theta, theta[v]) == theta[v]


@given(terms(), terms())
def test_match_implies_unify(p, t):
    m = match(p, t)
    if m is not None:
        assert apply(m, p) == t
        t2, _ = rename_apart(t, var_set(p))
        assert unify(p, t2) is not None


@given(terms())
def test_linearize(t):
    lin, back = linearize(t)
    assert is_linear(lin)
    assert apply(back, lin) == t
    assert size(lin) == size(t)
    assert not (var_set(lin) & var_set(t))


@given(terms(), st.dictionaries(st.sampled_from(VARS), terms(max_leaves=4)))
def test_apply_matches_naive(t, mapping):
    assert apply(Substitution(mapping), t) == naive_subst(t, mapping)


# ---------------------------------------------------------------- rewriting

@settings(suppress_health_check=[HealthCheck.too_slow])
@given(trss, terms())
def test_innermost_redexes_subset(R, t):
    full = [(p, i) for p, i, _ in redexes(t, R)]
    inner = [(p, i) for p, i, _ in innermost_redexes(t, R)]
    assert set(inner) <= set(full)
    assert sorted(full) == sorted((p, i) for p, i, _ in naive_redexes(t, R))
    assert sorted(inner) == sorted((p, i) for p, i, _ in naive_redexes(t, R, innermost=True))


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(trss, terms())
def test_normal_form_notions_coincide(R, t):
    nf = is_normal_form(t, R)
    assert nf == (not redexes(t, R)) == (not innermost_redexes(t, R)) == naive_is_nf(t, R)


@settings(suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(trss, ground_terms)
def test_normalize_traces_validate(R, t):
    fuel = Fuel(60, 80)
    for strategy, mode in ((FULL_LEFTMOST, FULL), (INNERMOST_LEFTMOST, INNERMOST)):
        res = normalize(t, R, strategy, fuel)
        assert validate_trace(res.trace, R, mode)
        assert res.trace.initial == t
        if res.complete:
            assert is_normal_form(res.final, R)


@settings(suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(trss, ground_terms)
def test_loops_are_sound(R, t):
    res = is_terminating_bounded(t, R, Fuel(80, 60))
    if res.nonterminating:
        assert res.loop.initial == t
        assert validate_trace(res.loop, R)
        assert res.loop.final in res.loop.terms()[:-1]
    if res.terminating:
        assert normalize(t, R, FULL_LEFTMOST, Fuel(10_000, 10_000)).complete


# ---------------------------------------------------------------- overlaps

@settings(suppress_health_check=[HealthCheck.too_slow], deadline=None)
@given(trss)
def test_overlaps_match_brute_force(R):
    ws = find_inner_overlaps(R)
    assert witness_set(ws) == brute_force_overlaps(R)
    assert is_overlay(R) == (not ws)


@settings(deadline=None)
@given(trss, trss)
def test_overlay_antitone_under_union(R1, R2):
    assume(R1.signature | R2.signature)
    if is_overlay(R1.union(R2)):
        assert is_overlay(R1) and is_overlay(R2)
