import pytest

from trsdp import (
    FULL,
    FULL_LEFTMOST,
    INNERMOST_LEFTMOST,
    Fuel,
    RewriteStep,
    Substitution,
    Trace,
    Verdict,
    find_rewrite_path,
    innermost_redexes,
    is_normal_form,
    is_terminating_bounded,
    normalize,
    redexes,
    rewrite_at,
    validate_trace,
)
from trsdp.rewriting import INNERMOST, embed_trace, lift_bindings, project_trace

from helpers import T, ab, naive_reachable, naive_redexes, plus_times, rules

FA = rules("a -> b", "f(x) -> x")


def frozen(triples):
    return [(p, i, Substitution(m)) for p, i, m in triples]


class TestRedexes:
    def test_outermost_first(self):
        expected = [((), 1, Substitution(x=T("a"))), ((1,), 0, Substitution())]
        assert frozen(naive_redexes(T("f(a)"), FA)) == expected
        assert redexes(T("f(a)"), FA) == expected

    def test_none(self):
        assert redexes(T("b"), rules("a -> b")) == []

    def test_constant(self):
        assert redexes(T("a"), rules("a -> b")) == [((), 0, Substitution())]


class TestInnermostRedexes:
    def test_argument_only(self):
        expected = [((1,), 0, Substitution())]
        assert frozen(naive_redexes(T("f(a)"), FA, innermost=True)) == expected
        assert innermost_redexes(T("f(a)"), FA) == expected

    def test_constant(self):
        assert innermost_redexes(T("a"), rules("a -> b")) == [((), 0, Substitution())]

    def test_normal_form(self):
        assert innermost_redexes(T("b"), rules("a -> b")) == []


class TestNormalForm:
    def test_constant(self):
        assert is_normal_form(T("b"), rules("a -> b"))

    def test_subterm_redex(self):
        assert not is_normal_form(T("f(a)"), rules("a -> b"))

    def test_variable(self):
        assert is_normal_form(T("x"), plus_times())


class TestNormalize:
    def test_innermost_leftmost(self):
        res = normalize(T("f(a)"), FA, INNERMOST_LEFTMOST, Fuel(10))
        assert res.complete
        assert res.trace.terms() == [T("f(a)"), T("f(b)"), T("b")]
        # the reached term is the only innermost normal form
        nfs = {u for u in naive_reachable(T("f(a)"), FA, innermost=True) if not redexes(u, FA)}
        assert nfs == {T("b")}

    def test_full_leftmost_takes_root_first(self):
        res = normalize(T("f(a)"), FA, FULL_LEFTMOST, Fuel(10))
        assert res.trace.terms() == [T("f(a)"), T("a"), T("b")]

    def test_already_normal(self):
        res = normalize(T("b"), rules("a -> b"), FULL_LEFTMOST, Fuel(1))
        assert res.complete and len(res.trace) == 0

    def test_fuel_exhausted(self):
        res = normalize(T("a"), rules("a -> a"), FULL_LEFTMOST, Fuel(5))
        assert not res.complete
        assert len(res.trace) == 5

    def test_size_bound(self):
        res = normalize(T("f(a)"), rules("f(x) -> f(g(x))"), FULL_LEFTMOST, Fuel(1000, 10))
        assert not res.complete

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            normalize(T("a"), ab(), "outermost")

    def test_plus_times_arithmetic(self):
        res = normalize(T("times(s(s(0)),s(s(0)))"), plus_times(), INNERMOST_LEFTMOST)
        assert res.final == T("s(s(s(s(0))))")
        assert validate_trace(res.trace, plus_times(), INNERMOST)


class TestBoundedTermination:
    def test_self_loop(self):
        res = is_terminating_bounded(T("a"), rules("a -> a"), Fuel(10))
        assert res.verdict is Verdict.NONTERMINATING
        assert res.loop.terms() == [T("a"), T("a")]

    def test_finite_graph(self):
        assert is_terminating_bounded(T("a"), ab(), Fuel(10)).verdict is Verdict.TERMINATING

    def test_normal_form_zero_steps(self):
        res = is_terminating_bounded(T("plus(x,y)"), plus_times(), Fuel(10))
        assert res.verdict is Verdict.TERMINATING
        assert res.explored == 1

    def test_growing_term_inconclusive(self):
        res = is_terminating_bounded(T("f(a)"), rules("f(x) -> f(g(x))"), Fuel(50, 20))
        assert res.verdict is Verdict.INCONCLUSIVE

    def test_loop_is_valid_and_closes(self):
        R = rules("f(x) -> g(x)", "g(a) -> f(a)", "g(b) -> c")
        res = is_terminating_bounded(T("f(a)"), R, Fuel(50))
        assert res.verdict is Verdict.NONTERMINATING
        assert validate_trace(res.loop, R)
        assert res.loop.final in res.loop.terms()[:-1]

    def test_innermost_mode(self):
        R = rules("f(x) -> b", "a -> a")
        assert is_terminating_bounded(T("f(a)"), R, Fuel(20), innermost=True).nonterminating


class TestValidateTrace:
    TR = Trace(T("f(a)"), (
        RewriteStep((), 1, T("f(a)"), T("a")),
        RewriteStep((), 0, T("a"), T("b")),
    ))

    def test_full(self):
        assert validate_trace(self.TR, FA, FULL)

    def test_innermost_fails_at_first_step(self):
        check = validate_trace(self.TR, FA, INNERMOST)
        assert not check
        assert check.failed_step == 0
        assert "f(a)" in check.reason

    def test_empty_trace(self):
        assert validate_trace(Trace(T("g(x)")), FA, INNERMOST)

    def test_wrong_target(self):
        bad = Trace(T("a"), (RewriteStep((), 0, T("a"), T("c")),))
        assert not validate_trace(bad, ab())

    def test_broken_link(self):
        bad = Trace(T("f(a)"), (RewriteStep((1,), 0, T("f(b)"), T("f(b)")),))
        assert validate_trace(bad, FA).failed_step == 0

    def test_bad_position(self):
        bad = Trace(T("a"), (RewriteStep((1,), 0, T("a"), T("b")),))
        assert not validate_trace(bad, FA)


class TestSearchAndTraceAlgebra:
    def test_find_rewrite_path_shortest(self):
        tr = find_rewrite_path(T("f(a)"), T("b"), FA)
        assert len(tr) == 2 and tr.final == T("b")
        assert validate_trace(tr, FA)

    def test_find_rewrite_path_unreachable(self):
        assert find_rewrite_path(T("b"), T("a"), FA) is None

    def test_below_root_only(self):
        assert find_rewrite_path(T("f(a)"), T("a"), FA, below_root=True) is None

    def test_embed_and_project_roundtrip(self):
        inner = normalize(T("f(a)"), FA).trace
        ctx = T("g(c,f(a))")
        emb = embed_trace(inner, ctx, (2,))
        assert emb.final == T("g(c,b)")
        assert validate_trace(emb, FA)
        assert project_trace(emb, 2) == inner
        assert project_trace(emb, 1) == Trace(T("c"))

    def test_project_rejects_root_steps(self):
        with pytest.raises(ValueError):
            project_trace(normalize(T("f(a)"), FA, FULL_LEFTMOST).trace, 1)

    def test_lift_bindings_rewrites_every_occurrence(self):
        tr = normalize(T("a"), FA).trace
        lifted = lift_bindings(T("g(x,x)"), {"x": T("a")}, {"x": tr})
        assert lifted.terms() == [T("g(a,a)"), T("g(b,a)"), T("g(b,b)")]

    def test_rewrite_at(self):
        st = rewrite_at(T("f(a)"), FA, (1,), 0)
        assert st.target == T("f(b)")
        with pytest.raises(ValueError):
            rewrite_at(T("f(a)"), FA, (), 0)

    def test_trace_text(self):
        tr = normalize(T("f(a)"), FA).trace
        assert str(tr) == "f(a)\n-> [p=1, rule=0, set=R] f(b)\n-> [p=e, rule=1, set=R] b"
