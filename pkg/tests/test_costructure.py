import pytest

from comodel_kit.corpus import category_corpus
from comodel_kit.costructure import (DirectedContainer, behaviour_category_of_comonad,
                                     category_to_dc, check_container_morphism,
                                     check_reflection_unit, check_square, check_theta,
                                     comonad_morphism_to_cofunctor,
                                     container_morphism_of, dc_to_category,
                                     dual_monad, dual_unit, find_isomorphism,
                                     idempotency_check, theta,
                                     theta_inverse_roundtrip)
from comodel_kit.errors import InputError, IsoNotFound, LawViolation
from comodel_kit.presheaf import (Cofunctor, arrow_category, check_cofunctor,
                                  codiscrete, cyclic_group, discrete, t_unit)


def z2_container():
    return DirectedContainer(["*"], {"*": ["1", "g"]}, {"*": "1"},
                             {("*", "1"): "*", ("*", "g"): "*"},
                             {("*", "1"): {"1": "1", "g": "g"},
                              ("*", "g"): {"1": "g", "g": "1"}})


def test_z2_container():
    dc = z2_container()
    assert dc.check_laws() == []
    B = dc_to_category(dc)
    find_isomorphism(B, cyclic_group(2))
    M = dual_monad(dc, [0, 1])
    assert M.size() == 4 == len(list(M.elements()))
    assert theta(dc, dual_unit(dc, 1)) == t_unit(B, 1)
    assert check_theta(dc, [0, 1]).ok
    assert theta_inverse_roundtrip(dc, [0, 1])


def test_counit_and_comult():
    dc = z2_container()
    q = ("*", ("a", "b"))
    assert dc.counit(q) == "a"
    assert dc.comult(q) == ("*", (("*", ("a", "b")), ("*", ("b", "a"))))


def test_broken_container():
    with pytest.raises(InputError):
        DirectedContainer(["*"], {"*": ["g"]}, {"*": "1"}, {("*", "g"): "*"},
                          {("*", "g"): {"g": "g"}})
    bad = DirectedContainer(["*"], {"*": ["1", "g"]}, {"*": "1"},
                            {("*", "1"): "*", ("*", "g"): "*"},
                            {("*", "1"): {"1": "1", "g": "g"},
                             ("*", "g"): {"1": "1", "g": "g"}})
    assert ("reindex-root", "*", "g") in bad.check_laws()
    with pytest.raises(LawViolation):
        dc_to_category(bad)


def test_iso_not_found():
    with pytest.raises(IsoNotFound):
        find_isomorphism(cyclic_group(2), discrete([0, 1]))
    with pytest.raises(IsoNotFound):
        find_isomorphism(cyclic_group(3), codiscrete([0, 1]))


EXAMPLES = [discrete([0, 1]), codiscrete([0, 1]), cyclic_group(3), arrow_category()]


@pytest.mark.parametrize("B", EXAMPLES, ids=lambda B: B.name)
def test_round_trips(B):
    dc = category_to_dc(B)
    assert dc.check_laws() == []
    find_isomorphism(dc_to_category(dc), B)
    idempotency_check(B)
    assert check_reflection_unit(dc, [0, 1]).ok
    find_isomorphism(behaviour_category_of_comonad(dc), B)


def test_repeated_position_names_become_pairs():
    dc = category_to_dc(codiscrete([0, 1]))
    renamed = DirectedContainer(
        dc.shapes, {x: ["id", "sw"] for x in dc.shapes}, {x: "id" for x in dc.shapes},
        {(x, e): (x if e == "id" else 1 - x) for x in dc.shapes for e in ("id", "sw")},
        {(x, e): {"id": e, "sw": "sw" if e == "id" else "id"}
         for x in dc.shapes for e in ("id", "sw")})
    B = dc_to_category(renamed)
    assert set(B.arrows) == {(x, e) for x in (0, 1) for e in ("id", "sw")}
    find_isomorphism(B, codiscrete([0, 1]))


def z4_to_z2():
    return Cofunctor(cyclic_group(4), cyclic_group(2), {"*": "*"},
                     {("*", "r0"): "r0", ("*", "r1"): "r2"})


def collapse(B):
    pt = discrete(["pt"])
    return Cofunctor(B, pt, {b: "pt" for b in B.objects},
                     {(b, "1_pt"): B.ids[b] for b in B.objects})


@pytest.mark.parametrize("F", [z4_to_z2(), collapse(cyclic_group(2)),
                               collapse(arrow_category())], ids=["halve", "z2", "arrow"])
def test_morphisms_and_cofunctors(F):
    m = container_morphism_of(F)
    assert check_container_morphism(m, [0, 1]).ok
    G = comonad_morphism_to_cofunctor(m)
    assert check_cofunctor(G) == []
    assert (G.obj, G.lift) == (F.obj, F.lift)
    assert check_square(m, [0, 1]).ok


def test_corpus_slice():
    for B in category_corpus(2, 4):
        dc = category_to_dc(B)
        assert check_theta(dc, [0, 1]).ok
        idempotency_check(B)
