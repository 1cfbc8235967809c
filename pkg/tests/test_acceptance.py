"""One test per acceptance criterion; the summary prints PASS/FAIL per line."""

import itertools
import random

import pytest

from comodel_kit.behaviour import (DyckHeight, InputStream, Morphism, OutputPoint,
                                   RevInputStream, StackWord,
                                   behaviour_category, check_classifier)
from comodel_kit.builtins import (dyck_theory, input_theory, op_name, output_theory,
                                  output_to_state, readonly_theory, readonly_to_state,
                                  revinput_theory, stack_theory, state_into_store,
                                  state_theory, store_theory)
from comodel_kit.cofree import (PolyFunctor, behaviour_graph, check_edge_composition,
                                dfa_derivative, random_coalgebra, random_dfa,
                                subtree, truncate, unfold, words)
from comodel_kit.cofunctors import (check_view_axioms, dyck_stack_induced,
                                    dyck_stack_view, induced_cofunctor,
                                    output_state_view, random_tape,
                                    readonly_state_view, sample_revinput_out,
                                    sample_triples, tape_simulate, tape_view,
                                    view_update_view)
from comodel_kit.behaviour import pushback_state
from comodel_kit.comodel import Comodel, check_comodel, largest_bisimulation, run
from comodel_kit.corpus import category_corpus
from comodel_kit.costructure import category_to_dc, check_theta, idempotency_check
from comodel_kit.dyck import (INF, BoundedBracketMagma, FreeMagma, affine_words,
                              census, dyck_run_stack, dyck_words, end_height)
from comodel_kit.presheaf import (bset_to_comodel, check_comonad_laws, check_monad_laws,
                                  dtu_embed, dtu_normal_form, dtu_theory, representable,
                                  t_elements)
from comodel_kit.theory import Op, Var, random_term

import oracles

CORPUS = category_corpus()


def crit(n, title):
    return pytest.mark.criterion(n, title)


# ---------------------------------------------------------------- helpers

def lens_comodel(values, states, get, put, name=""):
    th = state_theory(values)
    coops = {"get": {s: (values.index(get(s)), s) for s in states}}
    for v in values:
        coops[op_name("put", v)] = {s: (0, put(v, s)) for s in states}
    return Comodel(th, states, coops, name)


def random_lens(rng, max_states=6, max_values=4):
    """A lawful lens: states are ``V x C`` under a random relabelling."""
    k = rng.randint(1, max_values)
    c = rng.randint(1, max(1, max_states // k))
    values = list(range(k))
    pairs = list(itertools.product(values, range(c)))
    names = [f"s{i}" for i in range(len(pairs))]
    rng.shuffle(names)
    to_pair = dict(zip(names, pairs))
    of_pair = {p: n for n, p in to_pair.items()}

    def get(s):
        return to_pair[s][0]

    def put(v, s):
        return of_pair[(v, to_pair[s][1])]

    return values, names, get, put


# -------------------------------------------------------------- criteria

@crit(1, "worked example run on the three-state input comodel")
def test_criterion_01_worked_example():
    V = (7, 11, 13)
    c = Comodel(input_theory(V), ["s", "s'", "s''"],
                {"read": {"s": (0, "s'"), "s'": (1, "s''"), "s''": (2, "s''")}})
    t = Op("read", [Op("read", [Var(n + m) for m in V]) for n in V])
    assert [run(c, s, t) for s in c.states] == [(18, "s''"), (24, "s''"), (26, "s''")]


@crit(2, "lawful lenses are exactly the state comodels")
def test_criterion_02_lenses():
    rng = random.Random(2)
    for _ in range(100):
        values, states, get, put = random_lens(rng)
        assert not oracles.lens_laws(states, values, get, put)
        rep = check_comodel(lens_comodel(values, states, get, put))
        assert rep.ok, rep.violations[:1]
    broken = 0
    while broken < 100:
        values, states, get, put = random_lens(rng)
        table = {(v, s): put(v, s) for v in values for s in states}
        gets = {s: get(s) for s in states}
        if rng.random() < 0.5:
            v, s = rng.choice(values), rng.choice(states)
            table[(v, s)] = rng.choice(states)
        else:
            gets[rng.choice(states)] = rng.choice(values)
        bad = oracles.lens_laws(states, values, gets.__getitem__, lambda v, s: table[(v, s)])
        if not bad:
            continue
        broken += 1
        c = lens_comodel(values, states, gets.__getitem__, lambda v, s: table[(v, s)])
        rep = check_comodel(c)
        assert not rep.ok
        w = rep.violations[0]
        assert w.state in states and w.lhs != w.rhs


@crit(3, "presheaf monad and comonad laws over the category corpus")
def test_criterion_03_presheaf_laws():
    assert {B.name for B in CORPUS[-2:]} == {"Z/2", "arrow"}
    for B in CORPUS:
        assert not B.check_laws()
        for A in ([0], [0, 1]):
            m = check_monad_laws(B, A)
            assert m.ok, (B.name, m.failures[:1])
            c = check_comonad_laws(B, A)
            assert c.ok, (B.name, c.failures[:1])


@crit(4, "normal form and embedding of the update theory are inverse")
def test_criterion_04_dtu_iso():
    for B in CORPUS:
        for A in ([0], [0, 1], [0, 1, 2]):
            for e in t_elements(B, A):
                t = dtu_embed(B, e)
                assert dtu_normal_form(B, t) == e
                assert dtu_embed(B, dtu_normal_form(B, t)) == t
    rng = random.Random(4)
    for B in CORPUS[::7]:
        th = dtu_theory(B)
        models = [bset_to_comodel(representable(B, b), th) for b in B.objects]
        for _ in range(20):
            t = random_term(th.signature, [0, 1, 2], 4, rng)
            nf = dtu_normal_form(B, t)
            u = dtu_embed(B, nf)
            assert dtu_normal_form(B, u) == nf
            for c in models:
                assert all(run(c, s, t)[0] == run(c, s, u)[0] for s in c.states)


@crit(5, "behaviour category of the presheaf comonad is the category again")
def test_criterion_05_idempotency():
    for B in CORPUS:
        omap, amap = idempotency_check(B)
        assert len(set(omap.values())) == len(B.objects)
        assert len(set(amap.values())) == len(B.arrows)


@crit(6, "theta carries the dual monad onto the presheaf monad")
def test_criterion_06_theta():
    for B in CORPUS:
        dc = category_to_dc(B)
        for A in ([0], [0, 1]):
            rep = check_theta(dc, A)
            assert rep.ok, (B.name, rep.failures[:1])


def _split(rng, c):
    """A larger comodel mapping onto ``c``: every state gets copies and
    transitions go to some copy of the original target."""
    copies = {s: [(s, k) for k in range(rng.randint(1, 2))] for s in c.states}
    states = [x for s in c.states for x in copies[s]]
    coops = {}
    for sym, tab in c.coops.items():
        coops[sym] = {x: (tab[x[0]][0], rng.choice(copies[tab[x[0]][1]])) for x in states}
    return Comodel(c.theory, states, coops)


def _random_input_comodel(rng, n, V):
    states = list(range(n))
    return Comodel(input_theory(V), states,
                   {"read": {s: (rng.randrange(len(V)), rng.randrange(n)) for s in states}})


@crit(7, "partition refinement agrees with the brute-force behaviour oracle")
def test_criterion_07_bisimulation():
    rng = random.Random(7)
    for trial in range(200):
        if trial % 2 == 0:
            V = tuple(range(rng.randint(1, 3)))
            c1 = _random_input_comodel(rng, rng.randint(1, 6), V)
            c2 = _split(rng, c1) if rng.random() < 0.5 else \
                _random_input_comodel(rng, rng.randint(1, 6), V)
            if len(c2.states) > 6:
                c2 = _random_input_comodel(rng, rng.randint(1, 6), V)
        else:
            values, states, get, put = random_lens(rng, max_values=3)
            c1 = lens_comodel(values, states, get, put)
            values2, states2, get2, put2 = random_lens(rng, max_values=3)
            if len(values2) != len(values):
                values2, states2, get2, put2 = values, states, get, put
            c2 = lens_comodel(values2, states2, get2, put2)
        assert check_comodel(c1).ok and check_comodel(c2).ok
        part = largest_bisimulation(c1, c2)
        syms = c1.theory.signature.symbols
        horizon = len(c1.states) * len(c2.states)
        for s1 in c1.states:
            for s2 in c2.states:
                want = oracles.behaviour_equal(c1.step, s1, c2.step, s2, syms, horizon)
                assert part.same((0, s1), (1, s2)) == want


@crit(8, "behaviour categories of output, read-only state and state")
def test_criterion_08_behaviour_categories():
    for k in range(1, 5):
        V = tuple(range(k))
        out = behaviour_category(output_theory(V))
        pt = OutputPoint()
        hom = out.hom(pt, pt, bound=4)
        assert len(hom) == sum(k ** n for n in range(5))
        assert {m.data for m in hom} == {w for n in range(5) for w in itertools.product(V, repeat=n)}
        for f in hom:
            for g in hom:
                if len(f.data) + len(g.data) <= 4:
                    assert out.compose(g, f).data == f.data + g.data
        ro = behaviour_category(readonly_theory(V))
        st = behaviour_category(state_theory(V))
        objs = ro.all_objects()
        for a in objs:
            assert len(ro.out(a)) == 1
            for b in objs:
                assert len(ro.hom(a, b)) == (1 if a == b else 0)
        for a in st.all_objects():
            assert {m.cod for m in st.out(a)} == set(st.all_objects())
            for b in st.all_objects():
                assert len(st.hom(a, b)) == 1


def _streams(cls, V, max_prefix=3, max_cycle=3):
    seen = {}
    for p in range(max_prefix + 1):
        for c in range(1, max_cycle + 1):
            for pre in itertools.product(V, repeat=p):
                for cyc in itertools.product(V, repeat=c):
                    seen[cls(pre, cyc)] = None
    return list(seen)


@crit(9, "classifying comodels realise their behaviour")
def test_criterion_09_classifiers():
    V = (0, 1)
    cases = [(input_theory(V), b) for b in _streams(InputStream, V)]
    cases += [(revinput_theory(V), b) for b in _streams(RevInputStream, V, 2, 2)]
    cases += [(stack_theory(V), StackWord(w, ())) for n in range(4)
              for w in itertools.product(V, repeat=n)]
    cases += [(stack_theory(V), StackWord(p, c)) for p in ((), (1,), (0, 1))
              for c in ((0,), (1, 0))]
    dy = dyck_theory(4)
    cases += [(dy, DyckHeight(h)) for h in (0, 1, 2, 3, 4, 5, INF)]
    for th, beta in cases:
        problems = check_classifier(th, beta, max_states=300)
        assert not problems, (th.name, beta, problems[:2])


@crit(10, "Dyck words are counted by Catalan numbers and run as bracketings")
def test_criterion_10_dyck_catalan():
    for n in range(1, 7):
        assert census(n) == oracles.catalan_formula(n) == len(oracles.dyck_words_oracle(n))
    assert [oracles.catalan_formula(n) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    for n in range(0, 6):
        tops = [dyck_run_stack(w, FreeMagma()) for w in dyck_words(n)]
        assert len(set(tops)) == len(tops)
        assert sorted(tops) == sorted(oracles.bracketings_oracle(n + 1))


def _check(view, triples):
    rep = check_view_axioms(view, triples)
    assert rep.checked >= 500
    assert rep.ok, rep.failures[:2]


@crit(11, "induced cofunctors satisfy the cofunctor axioms")
def test_criterion_11_cofunctors():
    rng = random.Random(11)
    V, W = (0, 1, 2), ("a", "b")

    h = lambda v: W[v % 2]
    gen = induced_cofunctor(output_to_state(output_theory(V), state_theory(W), h))
    closed = output_state_view(V, W, h)
    tr = sample_triples(gen, rng, 500, gen.source.all_objects(), lambda b: gen.target.out(b, 40))
    _check(gen, tr)
    assert all(gen.lift(b, f) == closed.lift(b, f) for b, f, _ in tr)

    k = lambda w: V[W.index(w)]
    gen = induced_cofunctor(readonly_to_state(readonly_theory(V), state_theory(W), k))
    closed = readonly_state_view(V, W, k)
    tr = sample_triples(gen, rng, 500, gen.source.all_objects(), lambda b: gen.target.out(b, 40))
    _check(gen, tr)
    assert all(gen.lift(b, f) == closed.lift(b, f) for b, f, _ in tr)

    st = store_theory({"x": (0, 1), "y": (0, 1, 2), "z": (5, 6)})
    for loc in ("x", "y", "z"):
        gen = induced_cofunctor(state_into_store(state_theory(st.params["locations"][loc]), st, loc))
        closed = view_update_view(st, loc)
        tr = sample_triples(gen, rng, 500, gen.source.all_objects(), lambda b: gen.target.out(b, 40))
        _check(gen, tr)
        assert all(gen.lift(b, f) == closed.lift(b, f) for b, f, _ in tr)
        assert all(gen.obj(b) == closed.obj(b) for b in gen.source.all_objects())

    magma = BoundedBracketMagma(4)
    closed, gen = dyck_stack_view(magma, 4), dyck_stack_induced(magma, 4)
    objs = [closed.source.sample_object(rng) for _ in range(100)]

    def dyck_out(b):
        return [Morphism(b, DyckHeight(end_height(w, b.height)), w)
                for w in affine_words(b.height, 4)]

    tr = sample_triples(closed, rng, 500, objs, dyck_out)
    _check(closed, tr)
    _check(gen, tr)
    assert all(gen.lift(b, f) == closed.lift(b, f) for b, f, _ in tr)
    assert all(b.length() <= 4 or b.length() == INF for b in objs)

    view = tape_view()
    objs = [random_tape(rng) for _ in range(60)]
    tr = sample_triples(view, rng, 500, objs,
                        lambda Wd: [sample_revinput_out(Wd, rng) for _ in range(5)])
    _check(view, tr)
    for b, f, _ in tr:
        n, pushed = pushback_state(f.dom, f.cod, f.data)
        tape, head = tape_simulate(b, n, pushed)
        assert view.lift(b, f).cod == tape and head == f.data


@crit(12, "DFA derivatives accept exactly the letter-prefixed words")
def test_criterion_12_dfa_derivatives():
    rng = random.Random(12)
    for _ in range(50):
        alphabet = "abc"[:rng.randint(1, 3)]
        M = random_dfa(rng, rng.randint(1, 6), alphabet)
        for e in alphabet:
            D = dfa_derivative(M, e)
            for w in words(alphabet, 8):
                assert D.accepts(w) == oracles.dfa_accepts(M.trans, M.accept, M.start, (e,) + w)


@crit(13, "cofree trees are truncation coherent and edges compose as subtrees")
def test_criterion_13_cofree():
    rng = random.Random(13)
    F = PolyFunctor({"c": 0, "u": 1, "b": 2})
    for _ in range(50):
        coalg = random_coalgebra(F, rng.randint(1, 6), rng)
        for s in coalg:
            for d in range(5):
                assert truncate(unfold(coalg, s, d + 1), d) == unfold(coalg, s, d)
    for G in (behaviour_graph(F, 2), behaviour_graph(PolyFunctor({0: ["e"], 1: ["e"]}), 3)):
        assert not check_edge_composition(G)
        for i, T in enumerate(G.nodes):
            for e, j in G.out_edges(i):
                assert truncate(G.nodes[j], G.depth - 1) == subtree(G.functor, T, (e,))
