"""Directed containers: comonads of the form ``Q(A) = sum_x A^{E_x}``.

A container has shapes ``x``, positions ``E_x``, a root position ``ids[x]``,
a codomain shape ``cod[(x, e)]`` for every position and, for every
position ``f`` of ``x``, a map ``rho[(x, f)]`` sending positions of
``cod(f)`` to positions of ``x``.  Seen as a category, positions are arrows
out of their shape and ``g . f = rho_f(g)``.

The behaviour category of such a comonad is computed here from the
comonad structure alone.  Each natural map ``Q_x -> id`` is identified by
evaluating it at the generic element (the tuple of positions themselves).
Codomains and composites are found the same way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError, IsoNotFound, LawViolation
from .presheaf import (Cofunctor, LawCheck, SmallCategory, q_comult, q_counit,
                       t_elements, t_mult, t_path_elements, t_size, t_unit)


class DirectedContainer:
    def __init__(self, shapes, positions: dict, ids: dict, cod: dict, rho: dict):
        self.shapes = tuple(shapes)
        self.positions = {x: tuple(positions[x]) for x in self.shapes}
        self.ids = dict(ids)
        self.cod = dict(cod)
        self.rho = {k: dict(v) for k, v in rho.items()}
        for x in self.shapes:
            if self.ids.get(x) not in self.positions[x]:
                raise InputError(f"root of {x!r} is not one of its positions")
            for e in self.positions[x]:
                if self.cod.get((x, e)) not in self.positions:
                    raise InputError(f"position {e!r} of {x!r} has no codomain shape")
                if (x, e) not in self.rho:
                    raise InputError(f"no reindexing along {e!r} at {x!r}")
        self._idx = {x: {e: n for n, e in enumerate(self.positions[x])} for x in self.shapes}

    def position_index(self, x, e):
        return self._idx[x][e]

    def act(self, x, f, g):
        """``rho_f(g)`` for ``f`` a position of ``x`` and ``g`` one of ``cod(f)``."""
        return self.rho[(x, f)][g]

    def check_laws(self):
        problems = []
        for x in self.shapes:
            r = self.ids[x]
            if self.cod[(x, r)] != x:
                problems.append(("root-codomain", x))
            for g in self.positions[x]:
                if self.rho[(x, r)].get(g) != g:
                    problems.append(("root-reindex", x, g))
            for f in self.positions[x]:
                c = self.cod[(x, f)]
                table = self.rho[(x, f)]
                if set(table) != set(self.positions[c]):
                    problems.append(("reindex-domain", x, f))
                    continue
                if any(v not in self._idx[x] for v in table.values()):
                    problems.append(("reindex-range", x, f))
                    continue
                if table[self.ids[c]] != f:
                    problems.append(("reindex-root", x, f))
                for g in self.positions[c]:
                    h = table[g]
                    if self.cod[(x, h)] != self.cod[(c, g)]:
                        problems.append(("reindex-codomain", x, f, g))
                        continue
                    for k in self.positions[self.cod[(c, g)]]:
                        if table[self.rho[(c, g)][k]] != self.rho[(x, h)][k]:
                            problems.append(("reindex-compose", x, f, g, k))
        return problems

    def counit(self, q):
        x, phi = q
        return phi[self._idx[x][self.ids[x]]]

    def comult(self, q):
        x, phi = q
        out = []
        for f in self.positions[x]:
            c = self.cod[(x, f)]
            out.append((c, tuple(phi[self._idx[x][self.rho[(x, f)][g]]]
                                 for g in self.positions[c])))
        return (x, tuple(out))

    def elements(self, A):
        for x in self.shapes:
            for phi in itertools.product(list(A), repeat=len(self.positions[x])):
                yield (x, phi)

    def generic(self, x):
        """The element of ``Q_x`` applied to its own positions."""
        return (x, self.positions[x])


def _arrow_names(dc):
    names = [e for x in dc.shapes for e in dc.positions[x]]
    if len(set(names)) == len(names):
        return {(x, e): e for x in dc.shapes for e in dc.positions[x]}
    return {(x, e): (x, e) for x in dc.shapes for e in dc.positions[x]}


def _require_laws(dc):
    problems = dc.check_laws()
    if problems:
        raise LawViolation(f"directed container law fails: {problems[0][0]}", problems[0])


def dc_to_category(dc: DirectedContainer, name: str = "") -> SmallCategory:
    _require_laws(dc)
    nm = _arrow_names(dc)
    arrows = {nm[(x, e)]: (x, dc.cod[(x, e)]) for x in dc.shapes for e in dc.positions[x]}
    ids = {x: nm[(x, dc.ids[x])] for x in dc.shapes}
    comp = {}
    for x in dc.shapes:
        for f in dc.positions[x]:
            c = dc.cod[(x, f)]
            for g in dc.positions[c]:
                comp[(nm[(c, g)], nm[(x, f)])] = nm[(x, dc.act(x, f, g))]
    return SmallCategory(dc.shapes, arrows, ids, comp, name)


def category_to_dc(B: SmallCategory) -> DirectedContainer:
    positions = {x: list(B.out(x)) for x in B.objects}
    cod = {(x, f): B.cod(f) for x in B.objects for f in B.out(x)}
    rho = {(x, f): {g: B.compose(g, f) for g in B.out(B.cod(f))}
           for x in B.objects for f in B.out(x)}
    return DirectedContainer(B.objects, positions, B.ids, cod, rho)


def behaviour_category_of_comonad(dc: DirectedContainer, name: str = "") -> SmallCategory:
    """Objects are shapes; arrows out of ``x`` are the natural maps
    ``Q_x -> id``, named by the position they pick at the generic element.
    A map's codomain is the shape of the part of the comultiplied generic
    element it selects, and ``v . t`` is ``v`` applied to that part.

    The result is checked against the category read directly off the
    container data."""
    _require_laws(dc)
    nm = _arrow_names(dc)

    def evaluate(x, e):
        """The natural map named ``e``, at any element of ``Q_x``."""
        k = dc.position_index(x, e)
        return lambda phi: phi[k]

    arrows, ids, comp = {}, {}, {}
    for x in dc.shapes:
        gx, gphi = dc.generic(x)
        ids[x] = nm[(x, dc.counit((gx, gphi)))]
        _, parts = dc.comult((gx, gphi))
        for e in dc.positions[x]:
            c, reindexed = evaluate(x, e)(parts)
            arrows[nm[(x, e)]] = (x, c)
            for g in dc.positions[c]:
                comp[(nm[(c, g)], nm[(x, e)])] = nm[(x, evaluate(c, g)(reindexed))]
    B = SmallCategory(dc.shapes, arrows, ids, comp, name)
    direct = dc_to_category(dc)
    if (B.arrows != direct.arrows or B.ids != direct.ids
            or any(B.compose(g, f) != direct.compose(g, f) for g, f in B.composable())):
        raise LawViolation("comonad structure disagrees with the container data")
    return B


def find_isomorphism(B1: SmallCategory, B2: SmallCategory):
    """An isomorphism ``(object map, arrow map)`` or ``IsoNotFound``."""
    if len(B1.objects) != len(B2.objects) or len(B1.arrows) != len(B2.arrows):
        raise IsoNotFound("sizes differ")
    objs = list(B1.objects)

    def arrow_maps(omap):
        groups = []
        for a in B1.objects:
            for b in B1.objects:
                h1 = [f for f in B1.hom(a, b) if f != B1.ids[a]]
                h2 = [f for f in B2.hom(omap[a], omap[b]) if f != B2.ids[omap[a]]]
                if len(h1) != len(h2):
                    return
                groups.append((h1, h2))
        base = {B1.ids[a]: B2.ids[omap[a]] for a in objs}
        for choice in itertools.product(*(itertools.permutations(h2) for _, h2 in groups)):
            amap = dict(base)
            for (h1, _), perm in zip(groups, choice):
                amap.update(zip(h1, perm))
            if all(amap[B1.compose(g, f)] == B2.compose(amap[g], amap[f])
                   for g, f in B1.composable()):
                yield amap

    ident = {a: a for a in objs}
    orders = [ident] if set(B1.objects) == set(B2.objects) else []
    orders += [dict(zip(objs, p)) for p in itertools.permutations(B2.objects)]
    for omap in orders:
        for amap in arrow_maps(omap):
            return omap, amap
    raise IsoNotFound(f"{B1.name} and {B2.name} are not isomorphic")


def idempotency_check(B: SmallCategory):
    """The behaviour category of ``Q_B`` is isomorphic to ``B``."""
    return find_isomorphism(behaviour_category_of_comonad(category_to_dc(B)), B)


# ------------------------------------------------------------- dual monad

@dataclass(frozen=True)
class DualElement:
    """A natural map ``Q -> A x id``; at shape ``x`` it returns the value
    ``table[x][0]`` and reads position ``table[x][1]``."""

    dc: DirectedContainer
    table: tuple

    def __call__(self, q):
        x, phi = q
        a, e = self.table[self.dc.shapes.index(x)]
        return a, phi[self.dc.position_index(x, e)]


def dual_elements(dc: DirectedContainer, A):
    per = [[(a, e) for a in A for e in dc.positions[x]] for x in dc.shapes]
    for choice in itertools.product(*per):
        yield DualElement(dc, tuple(choice))


def dual_from_table(dc, entries):
    """From ``T_B``-style entries ``(position, value)`` per shape."""
    return DualElement(dc, tuple((a, e) for e, a in entries))


def dual_unit(dc: DirectedContainer, a) -> DualElement:
    return DualElement(dc, tuple((a, dc.ids[x]) for x in dc.shapes))


def dual_mult(dc: DirectedContainer, sigma):
    """``sigma`` maps an element of ``Q`` to ``(dual element, value)``.
    The product comultiplies, applies ``sigma`` to the result and then the
    dual element it returned to the chosen part."""

    def tau(q):
        inner, part = sigma(dc.comult(q))
        return inner(part)

    return _tabulate(dc, tau)


def _tabulate(dc, tau):
    """Read a natural map off its values at generic elements."""
    table = []
    for x in dc.shapes:
        a, e = tau(dc.generic(x))
        table.append((a, e))
    return DualElement(dc, tuple(table))


def theta(dc: DirectedContainer, tau) -> tuple:
    """The ``T_B(A)`` element of a natural map: at each shape, the position
    it reads at the generic element and the value it returns."""
    out = []
    for x in dc.shapes:
        a, e = tau(dc.generic(x))
        out.append((e, a))
    return tuple(out)


class DualMonad:
    """The dual monad of a container on a fixed finite ``A``, with ``theta``
    into the presheaf monad of its category and back."""

    def __init__(self, dc: DirectedContainer, A):
        self.dc = dc
        self.A = list(A)
        self.category = dc_to_category(dc)

    def elements(self):
        return dual_elements(self.dc, self.A)

    def unit(self, a):
        return dual_unit(self.dc, a)

    def mult(self, sigma):
        return dual_mult(self.dc, sigma)

    def theta(self, tau):
        return theta(self.dc, tau)

    def theta_inverse(self, entries):
        return dual_from_table(self.dc, entries)

    def size(self):
        n = 1
        for x in self.dc.shapes:
            n *= len(self.A) * len(self.dc.positions[x])
        return n


def dual_monad(dc: DirectedContainer, A) -> DualMonad:
    return DualMonad(dc, A)


def check_theta(dc: DirectedContainer, A, cap: int = 20_000) -> LawCheck:
    """``theta`` turns the dual monad's unit and product into those of the
    presheaf monad of the container's category."""
    B = dc_to_category(dc)
    rep = LawCheck()
    for a in A:
        rep.checked += 1
        if theta(dc, dual_unit(dc, a)) != t_unit(B, a):
            rep.failures.append(("unit", a))
    nA = len(list(A))
    if t_size(B, t_size(B, nA)) <= cap:
        outer = t_elements(B, list(t_elements(B, A)))
    else:
        rep.method = "per-component"
        outer = t_path_elements(B, 2, A)
    for ee in outer:
        rep.checked += 1
        # the dual element of dual elements whose theta-image is ee
        inner = {x: dual_from_table(dc, e2) for x, (_, e2) in zip(dc.shapes, ee)}

        def sigma(q, ee=ee, inner=inner):
            x, phi = q
            e, _ = ee[dc.shapes.index(x)]
            return inner[x], phi[dc.position_index(x, e)]

        got = theta(dc, dual_mult(dc, sigma))
        want = t_mult(B, ee)
        if got != want:
            rep.failures.append(("mult", ee, got, want))
    return rep


def theta_inverse_roundtrip(dc: DirectedContainer, A) -> bool:
    return all(theta(dc, dual_from_table(dc, e)) == e
               for e in t_elements(dc_to_category(dc), A))


# ------------------------------------------------------- comonad morphisms

@dataclass
class ContainerMorphism:
    """``(x, phi) -> (shape_map[x], phi . pos_map[x])``, where
    ``pos_map[(x, e)]`` sends a position ``e`` of ``shape_map[x]`` in the
    target to a position of ``x`` in the source."""

    source: DirectedContainer
    target: DirectedContainer
    shape_map: dict
    pos_map: dict

    def __call__(self, q):
        x, phi = q
        y = self.shape_map[x]
        return (y, tuple(phi[self.source.position_index(x, self.pos_map[(x, e)])]
                         for e in self.target.positions[y]))


def container_morphism_of(F: Cofunctor) -> ContainerMorphism:
    """The comonad morphism ``Q_B -> Q_C`` of a cofunctor, in container form."""
    P, Q = category_to_dc(F.source), category_to_dc(F.target)
    pos = {(b, f): F.lift[(b, f)] for b in F.source.objects
           for f in F.target.out(F.obj[b])}
    return ContainerMorphism(P, Q, dict(F.obj), pos)


def check_container_morphism(m: ContainerMorphism, A) -> LawCheck:
    P, Q = m.source, m.target
    rep = LawCheck()
    for q in P.elements(A):
        rep.checked += 1
        if Q.counit(m(q)) != P.counit(q):
            rep.failures.append(("counit", q))
        x, parts = P.comult(q)
        mapped = m((x, tuple(m(p) for p in parts)))
        if Q.comult(m(q)) != mapped:
            rep.failures.append(("comult", q))
    return rep


def comonad_morphism_to_cofunctor(m: ContainerMorphism) -> Cofunctor:
    """Objects follow ``shape_map``; the target arrow ``e`` at ``m(x)`` lifts
    to the position its natural map reads after ``m``, at the generic
    element of ``x``."""
    P, Q = m.source, m.target
    Bp, Bq = dc_to_category(P), dc_to_category(Q)
    np_, nq = _arrow_names(P), _arrow_names(Q)
    lift = {}
    for x in P.shapes:
        y, pulled = m(P.generic(x))
        for e in Q.positions[y]:
            lift[(x, nq[(y, e)])] = np_[(x, pulled[Q.position_index(y, e)])]
    return Cofunctor(Bp, Bq, dict(m.shape_map), lift)


def check_square(m: ContainerMorphism, A) -> LawCheck:
    """Precomposing a natural map of the target with ``m`` and taking
    ``theta`` agrees with taking ``theta`` and then the monad morphism of
    the induced cofunctor."""
    from .presheaf import monad_morphism_of

    F = comonad_morphism_to_cofunctor(m)
    Q = m.target
    nq = _arrow_names(Q)
    np_ = _arrow_names(m.source)
    to_p = {k[1]: v for k, v in np_.items()}
    mm = monad_morphism_of(F)
    rep = LawCheck()
    for tau in dual_elements(Q, list(A)):
        rep.checked += 1
        pulled = _tabulate(m.source, lambda q: tau(m(q)))
        lhs = tuple((to_p.get(e, e), a) for e, a in theta(m.source, pulled))
        named = tuple((nq[(y, e)], a) for y, (e, a) in zip(Q.shapes, theta(Q, tau)))
        rhs = mm(named)
        if lhs != rhs:
            rep.failures.append((tau.table, lhs, rhs))
    return rep


def reflection_unit(dc: DirectedContainer):
    """``Q -> Q_{B_Q}``: evaluate every natural map ``Q_x -> id`` at the
    element."""
    B = behaviour_category_of_comonad(dc)
    nm = _arrow_names(dc)
    back = {nm[(x, e)]: (x, e) for x in dc.shapes for e in dc.positions[x]}

    def unit(q):
        x, phi = q
        return (x, tuple(phi[dc.position_index(*back[f])] for f in B.out(x)))

    return B, unit


def check_reflection_unit(dc: DirectedContainer, A) -> LawCheck:
    B, unit = reflection_unit(dc)
    rep = LawCheck()
    for q in dc.elements(A):
        rep.checked += 1
        if q_counit(B, unit(q)) != dc.counit(q):
            rep.failures.append(("counit", q))
        x, parts = dc.comult(q)
        if q_comult(B, unit(q)) != (x, tuple(unit(p) for p in parts)):
            rep.failures.append(("comult", q))
    return rep
