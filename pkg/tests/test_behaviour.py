import random

import pytest
from hypothesis import given, settings, strategies as st

from comodel_kit.behaviour import (BehaviourCategory, DyckHeight, InputStream,
                                   Morphism, RevInputStream, StackWord,
                                   StateValue, behaviour_from_json, behaviour_of,
                                   beta_equivalent, check_classifier,
                                   classifying_comodel, derivative, final_comodel)
from comodel_kit.builtins import (dyck_theory, input_theory, op_name,
                                  readonly_theory, revinput_theory, stack_theory,
                                  state_theory, store_theory, tape_theory)
from comodel_kit.comodel import Comodel, minimize, run
from comodel_kit.dyck import INF
from comodel_kit.errors import InputError
from comodel_kit.theory import Op, Var, random_term

THEORIES = [input_theory((0, 1)), readonly_theory((0, 1)), state_theory((0, 1)),
            revinput_theory((0, 1)), stack_theory((0, 1)), dyck_theory(3),
            store_theory({"a": (0, 1), "b": (0, 1)}), tape_theory((0, 1))]


def random_comodel(th, rng, n):
    k = {s: th.signature.arity(s) for s in th.signature.symbols}
    return Comodel(th, list(range(n)),
                   {s: {q: (rng.randrange(k[s]) if k[s] else 0, rng.randrange(n))
                        for q in range(n)} for s in th.signature.symbols})


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_input_behaviour_matches_simulation(seed):
    rng = random.Random(seed)
    th = input_theory((0, 1, 2))
    c = random_comodel(th, rng, rng.randint(1, 6))
    for s in c.states:
        W = behaviour_of(c, s)
        q = s
        for k in range(20):
            i, q = c.step("read", q)
            assert W.at(k) == i


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_behaviour_is_invariant_under_minimisation(seed):
    rng = random.Random(seed)
    c = random_comodel(input_theory((0, 1)), rng, rng.randint(1, 7))
    q, part = minimize(c)
    for s in c.states:
        assert behaviour_of(c, s) == behaviour_of(q, part.order[part.block_of[s]])


def test_stack_behaviour_of_finite_stack():
    th = stack_theory((0, 1))
    c = Comodel(th, ["e", "a", "ab"], {
        "pop": {"e": (2, "e"), "a": (0, "e"), "ab": (1, "a")},
        op_name("push", 0): {"e": (0, "a"), "a": (0, "a"), "ab": (0, "ab")},
        op_name("push", 1): {"e": (0, "e"), "a": (0, "ab"), "ab": (0, "ab")}})
    assert behaviour_of(c, "ab") == StackWord([1, 0], ())
    assert behaviour_of(c, "e") == StackWord([], ())


@pytest.mark.parametrize("th", THEORIES, ids=lambda th: th.name)
def test_derivative_agrees_with_running(th):
    rng = random.Random(5)
    cat = BehaviourCategory.of(th)
    fin = final_comodel(th)
    for _ in range(30):
        b = cat.sample_object(rng)
        t = random_term(th.signature, ["x"], 4, rng)
        assert derivative(th, b, t) == run(fin, b, t)[1]


@pytest.mark.parametrize("th", THEORIES, ids=lambda th: th.name)
def test_classifiers_agree_with_the_final_comodel(th):
    rng = random.Random(11)
    cat = BehaviourCategory.of(th)
    for _ in range(4):
        assert check_classifier(th, cat.sample_object(rng), max_states=60) == []


@pytest.mark.parametrize("th", [input_theory((0, 1)), revinput_theory((0, 1)),
                                stack_theory((0, 1)), dyck_theory(3)],
                         ids=lambda th: th.name)
def test_classifier_states_are_the_hom_set(th):
    """Every morphism out of beta with a short witness is a classifier state
    and vice versa."""
    rng = random.Random(2)
    cat = BehaviourCategory.of(th)
    for _ in range(5):
        a = cat.sample_object(rng)
        c = classifying_comodel(th, a)
        for s in c.states(80):
            m = c.morphism(s)
            assert cat.is_morphism(m)
            assert c.state_of(m) == s
        for b in {c.behaviour(s) for s in c.states(20)}:
            for m in cat.hom(a, b, bound=2):
                assert c.morphism(c.state_of(m)) == m


def test_category_laws_on_words():
    cat = BehaviourCategory.of(dyck_theory(3))
    a = DyckHeight(1)
    f = Morphism(a, DyckHeight(2), "UUD")
    g = Morphism(DyckHeight(2), DyckHeight(0), "DD")
    assert cat.is_morphism(f) and cat.is_morphism(g)
    h = cat.compose(g, f)
    assert h.data == "UUDDD" and cat.is_morphism(h)
    assert cat.compose(f, cat.identity(a)) == f
    with pytest.raises(InputError):
        cat.compose(f, g)


def test_beta_equivalence():
    th = state_theory((0, 1))
    b = StateValue(0)
    put0 = Op(op_name("put", 0), [Var("x")])
    get = Op("get", [Var("x"), Var("x")])
    assert beta_equivalent(th, b, put0, Var("x"))
    assert beta_equivalent(th, b, get, Var("x"))
    assert not beta_equivalent(th, b, Op(op_name("put", 1), [Var("x")]), Var("x"))


OBJECTS = [InputStream([1], [0, 1]), RevInputStream([], [2]), StackWord([0, 1], ()),
           StackWord([], [1]), DyckHeight(3), DyckHeight(INF), StateValue(4)]


@pytest.mark.parametrize("b", OBJECTS, ids=repr)
def test_behaviour_json_round_trip(b):
    assert behaviour_from_json(b.to_json()) == b


def test_behaviour_json_errors():
    with pytest.raises(InputError):
        behaviour_from_json({"kind": "input"})
    with pytest.raises(InputError):
        behaviour_from_json({"kind": "zebra"})
