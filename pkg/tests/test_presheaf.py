import random

import pytest
from hypothesis import given, settings, strategies as st

from comodel_kit.comodel import check_comodel, run
from comodel_kit.errors import InputError
from comodel_kit.presheaf import (Cofunctor, LeftBSet, SmallCategory, arrow_category,
                                  bset_action_formula, bset_to_comodel,
                                  check_cofunctor, check_comonad_laws,
                                  check_comonad_morphism, check_monad_laws,
                                  check_monad_morphism, codiscrete,
                                  comodel_to_bset, compose_cofunctors,
                                  cyclic_group, discrete, dtu_embed,
                                  dtu_normal_form, dtu_theory,
                                  identity_cofunctor, representable, t_elements,
                                  t_map, t_mult, t_path_elements, t_size, t_unit)
from comodel_kit.theory import random_term

EXAMPLES = [discrete([0, 1]), codiscrete([0, 1, 2]), cyclic_group(3), arrow_category()]


def test_bad_categories_rejected():
    with pytest.raises(InputError):
        SmallCategory([0], {"f": (0, 0)}, {0: "g"}, {})
    with pytest.raises(InputError):
        SmallCategory([0], {"1": (0, 0), "f": (0, 1)}, {0: "1"}, {})


@pytest.mark.parametrize("B", EXAMPLES, ids=lambda B: B.name)
def test_example_categories_are_lawful(B):
    assert B.check_laws() == []
    assert check_monad_laws(B, [0, 1]).ok
    assert check_comonad_laws(B, [0, 1]).ok


def test_broken_associativity_detected():
    arrows = {"1": ("*", "*"), "a": ("*", "*"), "b": ("*", "*")}
    comp = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    B = SmallCategory(["*"], arrows, {"*": "1"}, comp)
    assert any(p[0] == "assoc" for p in B.check_laws())


def test_t_size_counts_elements():
    B = codiscrete([0, 1])
    assert t_size(B, 3) == len(list(t_elements(B, range(3)))) == 36


def z4_to_z2():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    return Cofunctor(Z4, Z2, {"*": "*"}, {("*", "r0"): "r0", ("*", "r1"): "r2"}, "halve")


def collapse(B):
    pt = discrete(["pt"])
    return Cofunctor(B, pt, {b: "pt" for b in B.objects},
                     {(b, "1_pt"): B.ids[b] for b in B.objects}, "collapse")


def test_cofunctor_checks():
    F = z4_to_z2()
    assert check_cofunctor(F) == []
    bad = Cofunctor(F.source, F.target, F.obj, {("*", "r0"): "r0", ("*", "r1"): "r1"})
    assert any(p[0] == "composition" for p in check_cofunctor(bad))
    for G in (F, collapse(arrow_category()), identity_cofunctor(cyclic_group(3))):
        assert check_comonad_morphism(G, [0, 1]).ok
        assert check_monad_morphism(G, [0, 1]).ok
    H = compose_cofunctors(collapse(cyclic_group(2)), F)
    assert check_cofunctor(H) == []
    assert H.lift[("*", "1_pt")] == "r0"


def test_chain_elements_cover_every_multiplication_read():
    """Each output component of the product of a full ``T^2`` element equals
    the same component computed from the chain element it restricts to."""
    B = codiscrete([0, 1])
    A = [0, 1]
    chains = set(t_path_elements(B, 2, A))
    rng = random.Random(0)
    level2 = list(t_elements(B, list(t_elements(B, A))))
    for ee in rng.sample(level2, 200):
        out = t_mult(B, ee)
        for n, x in enumerate(B.objects):
            f, inner = ee[n]
            restricted = [e for e in chains
                          if e[n][0] == f and e[n][1][B.index(B.cod(f))] == inner[B.index(B.cod(f))]]
            assert restricted
            assert all(t_mult(B, e)[n] == out[n] for e in restricted)


def test_t_map_identity():
    B = arrow_category()
    for e in t_elements(B, "ab"):
        assert t_map(lambda a: a, e) == e
        assert t_mult(B, t_unit(B, e)) == e


@pytest.mark.parametrize("B", EXAMPLES, ids=lambda B: B.name)
def test_representables_and_comodels(B):
    for b in B.objects:
        X = representable(B, b)
        assert X.check_laws() == []
        c = bset_to_comodel(X)
        assert check_comodel(c).ok
        Y = comodel_to_bset(c)
        assert (Y.proj, Y.act) == (X.proj, X.act)
        for e in t_elements(B, [0, 1]):
            for x in X.carrier:
                assert run(c, x, dtu_embed(B, e)) == bset_action_formula(X, e, x)


def test_bad_bset_action():
    B = cyclic_group(2)
    X = LeftBSet(B, ["p", "q"], {"p": "*", "q": "*"},
                 {("p", "r0"): "p", ("q", "r0"): "q", ("p", "r1"): "q", ("q", "r1"): "q"})
    assert any(p[0] == "action" for p in X.check_laws())


@pytest.mark.parametrize("B", EXAMPLES, ids=lambda B: B.name)
def test_dtu_equations_have_equal_normal_forms(B):
    th = dtu_theory(B)
    for eq in th.equations:
        assert dtu_normal_form(B, eq.lhs) == dtu_normal_form(B, eq.rhs), eq.name


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_normal_form_predicts_runs(seed):
    rng = random.Random(seed)
    B = rng.choice(EXAMPLES)
    th = dtu_theory(B)
    t = random_term(th.signature, ["x", "y"], 4, rng)
    nf = dtu_normal_form(B, t)
    for b in B.objects:
        X = representable(B, b)
        c = bset_to_comodel(X, th)
        for x in X.carrier:
            assert run(c, x, t) == bset_action_formula(X, nf, x)
