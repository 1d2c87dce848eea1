import pytest

from trsdp import App, PositionError, Substitution, Symbol, Var
from trsdp.errors import ArityError
from trsdp.termtypes import depth, positions, size, variables
from trsdp.terms import (
    EMPTY,
    apply,
    fresh_names,
    is_linear,
    is_variant,
    linearize,
    match,
    rename_apart,
    replace_at,
    restrict,
    subterm_at,
    unify,
)

from helpers import T, naive_unify

x, y = Var("x"), Var("y")
a, b = Symbol("a", 0)(), Symbol("b", 0)()


class TestTermValues:
    def test_arity_checked(self):
        f = Symbol("f", 2)
        with pytest.raises(ArityError):
            App(f, (a,))

    def test_structural_equality_and_hash(self):
        assert T("f(g(a),x)") == T("f(g(a),x)")
        assert hash(T("f(g(a),x)")) == hash(T("f(g(a),x)"))
        assert T("f(a)") != T("f(b)")

    def test_symbols_differ_by_kind(self):
        assert Symbol("f", 1) != Symbol("f", 1, "tuple")

    def test_printing(self):
        assert str(T("f(g(a),x)")) == "f(g(a),x)"
        assert str(a) == "a"

    def test_measures(self):
        t = T("f(g(a),x)")
        assert size(t) == 4
        assert depth(t) == 2
        assert positions(t) == [(), (1,), (1, 1), (2,)]
        assert variables(T("f(y,g(x,y))")) == ["y", "x"]


class TestApply:
    def test_duplicates(self):
        assert apply(Substitution(x=a), T("f(x,x)")) == T("f(a,a)")

    def test_identity(self):
        t = T("f(x,g(y))")
        assert apply(EMPTY, t) == t

    def test_variable_outside_domain(self):
        assert apply(Substitution(x=b), T("g(y)")) == T("g(y)")

    def test_simultaneous(self):
        s = Substitution(x=y, y=x)
        assert s(T("f(x,y)")) == T("f(y,x)")

    def test_identity_bindings_dropped(self):
        assert Substitution(x=x) == EMPTY
        assert len(Substitution({"x": a, "y": y})) == 1


class TestRestrict:
    def test_keeps_named(self):
        assert restrict(Substitution(x=a, y=b), {"x"}) == Substitution(x=a)

    def test_empty_set(self):
        assert restrict(Substitution(x=a), set()) == EMPTY

    def test_empty_substitution(self):
        assert restrict(EMPTY, {"x"}) == EMPTY


class TestUnify:
    def test_forced(self):
        assert unify(T("g(x)"), T("g(a)")) == Substitution(x=a)

    def test_occurs_check(self):
        assert unify(x, T("f(x)")) is None

    def test_decomposition(self):
        assert unify(T("f(x,b)"), T("f(a,y)")) == Substitution(x=a, y=b)

    def test_clash(self):
        assert unify(T("f(a)"), T("g(a)")) is None

    def test_chained_bindings_resolved(self):
        s, t = T("f(x,y,z)"), T("f(y,z,a)")
        mgu = unify(s, t)
        assert mgu(s) == mgu(t) == T("f(a,a,a)")
        assert mgu == Substitution(naive_unify(s, t))

    def test_idempotent(self):
        mgu = unify(T("f(x,g(y))"), T("f(g(z),x)"))
        u = T("h(x,y,z)")
        assert mgu(mgu(u)) == mgu(u)


class TestMatch:
    def test_definition(self):
        assert match(T("f(x)"), T("f(a)")) == Substitution(x=a)

    def test_nonlinear_conflict(self):
        assert match(T("f(x,x)"), T("f(a,b)")) is None

    def test_constant_vs_variable(self):
        assert match(T("f(a)"), T("f(x)")) is None

    def test_nonlinear_agreement(self):
        assert match(T("f(x,x)"), T("f(g(a),g(a))")) == Substitution(x=T("g(a)"))


class TestPositions:
    def test_subterm_at(self):
        assert subterm_at(T("f(g(a))"), (1, 1)) == a

    def test_replace_at(self):
        assert replace_at(T("f(g(a))"), (1,), b) == T("f(b)")

    def test_constant_has_no_argument(self):
        with pytest.raises(PositionError):
            subterm_at(a, (1,))

    def test_variable_has_no_argument(self):
        with pytest.raises(PositionError):
            replace_at(T("f(x)"), (1, 1), a)

    def test_root(self):
        assert replace_at(T("f(a)"), (), b) == b


class TestLinearity:
    def test_linear(self):
        assert is_linear(T("s(plus(x,y))"))

    def test_duplicate(self):
        assert not is_linear(T("f(x,x)"))

    def test_variable(self):
        assert is_linear(x)

    def test_linearize_duplicate(self):
        lin, back = linearize(T("f(x,x)"))
        assert lin == T("f(y1,y2)", ["y1", "y2"])
        assert back == Substitution(y1=x, y2=x)

    def test_linearize_ground(self):
        assert linearize(T("f(a)")) == (T("f(a)"), EMPTY)

    def test_linearize_variable(self):
        assert linearize(x) == (Var("y1"), Substitution(y1=x))

    def test_linearize_avoids_existing_names(self):
        lin, back = linearize(T("f(y1,y1)", ["y1"]))
        assert set(variables(lin)) == {"y2", "y3"}
        assert back(lin) == T("f(y1,y1)", ["y1"])

    def test_fresh_names(self):
        assert fresh_names("y", {"y2"}, 3) == ["y1", "y3", "y4"]


class TestRenameApart:
    def test_clash(self):
        t, ren = rename_apart(T("f(x)"), {"x"})
        assert ren == Substitution(x=Var("x'"))
        assert t == App(Symbol("f", 1), (Var("x'"),))

    def test_ground(self):
        assert rename_apart(T("f(a)"), {"x"}) == (T("f(a)"), EMPTY)

    def test_already_disjoint(self):
        assert rename_apart(T("g(y)"), {"x"}) == (T("g(y)"), EMPTY)

    def test_primes_skip_taken_names(self):
        t, ren = rename_apart(T("f(x,x')", ["x", "x'"]), {"x", "x'"})
        assert not set(variables(t)) & {"x", "x'"}
        assert is_variant(t, T("f(x,x')", ["x", "x'"]))


class TestSubstitutionAlgebra:
    def test_compose(self):
        s1, s2 = Substitution(x=T("f(y)")), Substitution(y=a)
        t = T("g(x,y)")
        assert s1.compose(s2)(t) == s2(s1(t))

    def test_union_disagreement(self):
        with pytest.raises(ValueError):
            Substitution(x=a).union(Substitution(x=b))

    def test_repr(self):
        assert str(Substitution(x=a)) == "{x->a}"


def test_is_variant():
    assert is_variant(T("f(x,y)"), T("f(y,x)"))
    assert not is_variant(T("f(x,x)"), T("f(x,y)"))
