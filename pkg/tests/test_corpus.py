import itertools
from collections import Counter

import pytest

from comodel_kit.corpus import category_corpus
from comodel_kit.costructure import find_isomorphism
from comodel_kit.errors import IsoNotFound

import oracles


def test_monoid_counts():
    cats = category_corpus(1, 5, extras=False)
    assert Counter(len(B.arrows) for B in cats) == {1: 1, 2: 2, 3: 7, 4: 35, 5: 228}


def test_every_member_is_lawful():
    for B in category_corpus():
        assert B.check_laws() == [], B.name


def test_small_members_are_pairwise_non_isomorphic():
    cats = [B for B in category_corpus(2, 4, extras=False) if len(B.arrows) <= 4]
    for B1, B2 in itertools.combinations(cats, 2):
        assert not oracles.category_iso_exists(B1, B2), (B1.name, B2.name)


def test_extras_duplicate_members():
    cats = category_corpus()
    for extra in cats[-2:]:
        twins = [B for B in cats[:-2] if oracles.category_iso_exists(B, extra)]
        assert len(twins) == 1
        find_isomorphism(extra, twins[0])


def test_iso_search_agrees_with_oracle():
    cats = category_corpus(2, 3, extras=False)
    for B1, B2 in itertools.product(cats, repeat=2):
        want = oracles.category_iso_exists(B1, B2)
        if want:
            find_isomorphism(B1, B2)
        else:
            with pytest.raises(IsoNotFound):
                find_isomorphism(B1, B2)
