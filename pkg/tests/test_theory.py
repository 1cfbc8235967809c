import random

import pytest
from hypothesis import given, strategies as st

from comodel_kit.builtins import (builtin, dyck_theory, readonly_theory,
                                  revinput_theory, stack_theory, state_theory,
                                  store_theory)
from comodel_kit.behaviour import final_comodel
from comodel_kit.comodel import run
from comodel_kit.errors import ArityMismatch, NotWellFormed, UnknownSymbol
from comodel_kit.theory import (Equation, Interpretation, Op, Signature, Theory,
                                Var, check_term, depth, generic, random_term,
                                seq, size, substitute, translate, variables,
                                well_formed)

SIG = Signature({"f": 2, "g": 1, "c": 0})


@st.composite
def terms(draw, ctx=("x", "y", "z"), max_depth=4):
    seed = draw(st.integers(0, 10**6))
    return random_term(SIG, ctx, max_depth, random.Random(seed))


def test_generic_and_measures():
    t = generic("f", 2)
    assert t == Op("f", [Var(0), Var(1)])
    assert variables(t) == {0, 1}
    assert depth(t) == 1 and size(t) == 3
    assert depth(Var("x")) == 0


def test_check_term_errors():
    check_term(SIG, Op("f", [Var("x"), Op("c")]), {"x"})
    with pytest.raises(ArityMismatch):
        check_term(SIG, Op("f", [Var("x")]))
    with pytest.raises(UnknownSymbol):
        check_term(SIG, Op("h", []))
    with pytest.raises(NotWellFormed):
        check_term(SIG, Var("w"), {"x"})
    assert not well_formed(SIG, Op("g", []))


def test_signature_rejects_negative_arity():
    with pytest.raises(ArityMismatch):
        Signature({"f": -1})


@given(terms())
def test_substitute_identity(t):
    assert substitute(t, {}) == t
    assert substitute(t, lambda a: Var(a)) == t


@given(terms(), terms(), terms())
def test_substitution_composes(t, u, w):
    s1 = {"x": u, "y": w}
    s2 = {"x": Op("c"), "z": Op("g", [Var("y")])}
    lhs = substitute(substitute(t, s1), s2)
    rhs = substitute(t, lambda a: substitute(s1.get(a, Var(a)), s2))
    assert lhs == rhs


@given(terms())
def test_seq_is_substitution_of_every_variable(t):
    u = Op("g", [Var("*")])
    r = seq(t, u)
    assert variables(r) <= {"*"}
    assert r == substitute(t, lambda a: u)


def test_identity_interpretation_translates_to_itself():
    th = Theory("t", SIG)
    f = Interpretation(th, th, {s: generic(s, SIG.arity(s)) for s in SIG.symbols})
    rng = random.Random(0)
    for _ in range(50):
        t = random_term(SIG, ["x"], 5, rng)
        assert translate(f, t) == t


def test_interpretation_must_cover_source():
    th = Theory("t", SIG)
    with pytest.raises(UnknownSymbol):
        Interpretation(th, th, {"f": generic("f", 2)})
    with pytest.raises(NotWellFormed):
        Interpretation(th, th, {"f": Var(5), "g": Var(0), "c": Op("c")})


def test_theory_checks_equations():
    with pytest.raises(NotWellFormed):
        Theory("bad", SIG, [Equation(("x",), Var("x"), Var("y"))])


NORMALIZED = [state_theory((0, 1)), readonly_theory((0, 1, 2)),
              store_theory({"a": (0, 1), "b": (0, 1)}), revinput_theory((0, 1)),
              stack_theory((0, 1)), dyck_theory(3)]


@pytest.mark.parametrize("th", NORMALIZED, ids=lambda th: th.name)
def test_equations_have_equal_normal_forms(th):
    for eq in th.equations:
        assert th.normalize(eq.lhs) == th.normalize(eq.rhs), eq.name


@pytest.mark.parametrize("th", NORMALIZED, ids=lambda th: th.name)
def test_normal_forms_are_idempotent_and_sound(th):
    rng = random.Random(1)
    final = final_comodel(th)
    states = list(final.sample_states())[:12]
    for _ in range(40):
        t = random_term(th.signature, ["x", "y"], 3, rng)
        n = th.normalize(t)
        assert th.normalize(n) == n
        for s in states:
            assert run(final, s, t) == run(final, s, n)


def test_builtin_lookup_and_aliases():
    assert builtin("read-only", values=(0, 1)).kind == "readonly"
    assert builtin("reversible-input", values=(0, 1)).kind == "revinput"
