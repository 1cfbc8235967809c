import random

from hypothesis import given, settings, strategies as st

from comodel_kit.behaviour import RevInputStream, StackWord
from comodel_kit.builtins import readonly_theory, state_theory, store_theory
from comodel_kit.cofunctors import (cantor_pair, cantor_unpair, check_view_axioms,
                                    dyck_stack_induced, dyck_stack_view,
                                    induced_cofunctor, output_state_view,
                                    random_tape, readonly_state_view,
                                    revinput_morphism, sample_revinput_out,
                                    sample_triples, stack_update, tape_lift,
                                    tape_simulate, tape_to_stream, tape_view,
                                    view_update_view)
from comodel_kit.builtins import readonly_to_state, state_into_store
from comodel_kit.dyck import BoundedBracketMagma, FreeMagma


@given(st.integers(0, 10**4), st.integers(0, 10**4))
def test_cantor_round_trip(x, y):
    assert cantor_unpair(cantor_pair(x, y)) == (x, y)


@given(st.integers(0, 10**7))
def test_cantor_surjective(z):
    assert cantor_pair(*cantor_unpair(z)) == z


def test_stack_update_examples():
    m = FreeMagma()
    S = StackWord(["a"], ())
    assert stack_update(S, "UD", m) == (StackWord(["(aa)"], ()), 0)
    assert stack_update(StackWord([], ()), "D", m) == (StackWord([], ()), 0)
    assert stack_update(S, "D", m) == (StackWord([], ()), 1)


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_tape_lift_matches_direct_simulation(seed):
    rng = random.Random(seed)
    v = random_tape(rng)
    W = tape_to_stream(v)
    n = rng.randint(0, 4)
    pushed = tuple(rng.randrange(5) for _ in range(rng.randint(0, 3)))
    m = revinput_morphism(W, n, pushed)
    lifted = tape_lift(v, m)
    tape, head = tape_simulate(v, n, pushed)
    assert lifted.cod == tape and lifted.data == head
    assert tape_to_stream(lifted.cod) == m.cod


def test_tape_view_axioms():
    rng = random.Random(4)
    view = tape_view()
    samples = []
    for _ in range(80):
        v = random_tape(rng)
        f = sample_revinput_out(view.obj(v), rng)
        samples.append((v, f, sample_revinput_out(f.cod, rng)))
    rep = check_view_axioms(view, samples)
    assert rep.ok, rep.failures[:2]


def test_closed_form_views_match_induced():
    V, W = (0, 1), (0, 1, 2)
    h = lambda w: w % 2
    closed = readonly_state_view(V, W, h)
    induced = induced_cofunctor(readonly_to_state(readonly_theory(V), state_theory(W), h))
    for b in closed.source.all_objects():
        assert closed.obj(b) == induced.obj(b)
        for m in closed.target.hom(closed.obj(b), closed.obj(b)):
            assert closed.lift(b, m) == induced.lift(b, m)


def test_view_update_is_induced():
    store = store_theory({"a": (0, 1), "b": (0, 1, 2)})
    closed = view_update_view(store, "b")
    induced = induced_cofunctor(state_into_store(state_theory((0, 1, 2)), store, "b"))
    T = closed.target
    for b in closed.source.all_objects():
        for c in T.all_objects():
            for m in T.hom(closed.obj(b), c):
                assert closed.lift(b, m) == induced.lift(b, m)


def test_output_view_axioms():
    view = output_state_view((0, 1), (0, 1), lambda v: v)
    rng = random.Random(1)
    objs = view.source.all_objects()
    samples = sample_triples(view, rng, 40, objs,
                             lambda b: view.target.hom(b, b, bound=2))
    assert check_view_axioms(view, samples).ok


def test_dyck_stack_view_matches_induced():
    m = BoundedBracketMagma(3)
    closed = dyck_stack_view(m, n_max=3)
    induced = dyck_stack_induced(m, n_max=3)
    rng = random.Random(9)
    for _ in range(30):
        S = StackWord([rng.choice(m.values) for _ in range(rng.randint(0, 4))], ())
        for f in closed.target.hom(closed.obj(S), closed.obj(S), bound=3):
            assert closed.lift(S, f) == induced.lift(S, f)
    assert isinstance(tape_to_stream(random_tape(rng)), RevInputStream)
