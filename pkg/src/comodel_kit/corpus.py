"""Every small category with few objects and arrows, up to isomorphism.

Composition tables are found by backtracking over the composites of
non-identity arrows, pruning as soon as a fully determined triple fails
associativity.  Isomorphic copies are removed through a canonical code.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .presheaf import SmallCategory, arrow_category, cyclic_group


def _tables(n, typing):
    """All associative composition tables for non-identity arrows
    ``0 .. k-1`` with ``typing[i] = (dom, cod)``; identities are
    ``('id', b)``."""
    k = len(typing)
    ident = [("id", b) for b in range(n)]

    pairs = [(g, f) for f in range(k) for g in range(k) if typing[g][0] == typing[f][1]]
    choices = {}
    for g, f in pairs:
        d, c = typing[f][0], typing[g][1]
        opts = [h for h in range(k) if typing[h] == (d, c)]
        if d == c:
            opts.append(ident[d])
        choices[(g, f)] = opts
    table = {}

    def comp(g, f):
        if isinstance(f, tuple):
            return g
        if isinstance(g, tuple):
            return f
        return table.get((g, f))

    def consistent():
        for (g, f), gf in table.items():
            for h in range(k):
                if typing[h][0] != typing[g][1]:
                    continue
                hg = comp(h, g)
                if hg is None:
                    continue
                left = comp(h, gf)
                right = comp(hg, f)
                if left is not None and right is not None and left != right:
                    return False
        return True

    def go(i):
        if i == len(pairs):
            yield dict(table)
            return
        p = pairs[i]
        for h in choices[p]:
            table[p] = h
            if consistent():
                yield from go(i + 1)
        del table[p]

    if any(not choices[p] for p in pairs):
        return
    if not pairs:
        yield {}
        return
    yield from go(0)


def _canonical(n, typing, table):
    """Smallest encoding over all relabelings of objects and arrows."""
    k = len(typing)
    best = None
    for perm in itertools.permutations(range(n)):
        ty = [(perm[d], perm[c]) for d, c in typing]
        classes = sorted(set(ty))
        groups = [[i for i in range(k) if ty[i] == cl] for cl in classes]
        for orders in itertools.product(*(itertools.permutations(g) for g in groups)):
            new = {}
            for order in orders:
                for old in order:
                    new[old] = len(new)

            def lab(a):
                return (1, perm[a[1]]) if isinstance(a, tuple) else (0, new[a])

            code_ty = tuple(sorted((new[i], ty[i]) for i in range(k)))
            code_tab = tuple(sorted(((new[g], new[f]), lab(h)) for (g, f), h in table.items()))
            code = (code_ty, code_tab)
            if best is None or code < best:
                best = code
    return best


def _to_category(n, typing, table, name):
    objs = list(range(n))
    arrows = {f"1_{b}": (b, b) for b in objs}
    ids = {b: f"1_{b}" for b in objs}
    names = {i: f"f{i}" for i in range(len(typing))}
    for i, (d, c) in enumerate(typing):
        arrows[names[i]] = (d, c)

    def nm(a):
        return ids[a[1]] if isinstance(a, tuple) else names[a]

    comp = {(names[g], names[f]): nm(h) for (g, f), h in table.items()}
    return SmallCategory(objs, arrows, ids, comp, name)


@lru_cache(maxsize=None)
def _corpus(max_objects, max_arrows):
    seen = set()
    out = []
    for n in range(1, max_objects + 1):
        types = [(d, c) for d in range(n) for c in range(n)]
        for k in range(0, max_arrows - n + 1):
            for typing in itertools.combinations_with_replacement(types, k):
                for table in _tables(n, typing):
                    code = (n, _canonical(n, typing, table))
                    if code in seen:
                        continue
                    seen.add(code)
                    out.append((n, typing, table))
    return tuple(out)


def category_corpus(max_objects: int = 3, max_arrows: int = 5, extras: bool = True):
    """All categories with at most ``max_objects`` objects and at most
    ``max_arrows`` arrows in total (identities included), one per
    isomorphism class, plus ``Z/2`` and the arrow category."""
    cats = [_to_category(n, typing, table, f"c{i}")
            for i, (n, typing, table) in enumerate(_corpus(max_objects, max_arrows))]
    if extras:
        cats += [cyclic_group(2), arrow_category()]
    return cats
