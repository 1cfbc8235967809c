"""Small categories, cofunctors, left B-sets, the presheaf monad and comonad,
and the theory of dependently typed update.

Arrow names are unique across the whole category.  ``compose(g, f)`` is
``g`` after ``f``.  An element of ``T_B(A)`` is a tuple indexed by the
objects, each entry ``(arrow out of that object, value)``.  An element of
``Q_B(A)`` is ``(b, phi)`` with ``phi`` a tuple indexed by ``out(b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .comodel import Comodel
from .errors import InputError
from .theory import Equation, Op, Signature, Term, Theory, Var


class SmallCategory:
    def __init__(self, objects, arrows: dict, ids: dict, comp: dict, name: str = ""):
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.ids = dict(ids)
        self.name = name
        self.comp = dict(comp)
        for b in self.objects:
            i = self.ids.get(b)
            if i is None or self.arrows.get(i) != (b, b):
                raise InputError(f"bad identity for {b!r}")
        for f, (d, c) in self.arrows.items():
            if d not in self.ids or c not in self.ids:
                raise InputError(f"arrow {f!r} has an unknown end")
            self.comp.setdefault((self.ids[c], f), f)
            self.comp.setdefault((f, self.ids[d]), f)
        self._out = {b: [f for f, (d, _) in self.arrows.items() if d == b]
                     for b in self.objects}
        self._pos = {b: {f: n for n, f in enumerate(fs)} for b, fs in self._out.items()}
        self._obj_index = {b: n for n, b in enumerate(self.objects)}

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def out(self, b):
        return self._out[b]

    def position(self, b, f):
        return self._pos[b][f]

    def index(self, b):
        return self._obj_index[b]

    def hom(self, b, c):
        return [f for f in self._out[b] if self.arrows[f][1] == c]

    def compose(self, g, f):
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise InputError(f"{g!r} . {f!r} is not defined") from None

    def composable(self):
        for f, (_, c) in self.arrows.items():
            for g in self._out[c]:
                yield g, f

    def check_laws(self):
        problems = []
        for g, f in self.composable():
            h = self.comp.get((g, f))
            if h is None:
                problems.append(("undefined", g, f))
            elif self.arrows.get(h) != (self.dom(f), self.cod(g)):
                problems.append(("ill-typed", g, f, h))
        if problems:
            return problems
        for f in self.arrows:
            if self.comp[(self.ids[self.cod(f)], f)] != f or self.comp[(f, self.ids[self.dom(f)])] != f:
                problems.append(("unit", f))
        for g, f in self.composable():
            for h in self._out[self.cod(g)]:
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    problems.append(("assoc", h, g, f))
        return problems

    def __repr__(self):
        return f"SmallCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.arrows)} arrows)"


def discrete(objects, name="discrete"):
    ids = {b: f"1_{b}" for b in objects}
    return SmallCategory(objects, {ids[b]: (b, b) for b in objects}, ids, {}, name)


def codiscrete(objects, name="codiscrete"):
    arrows = {f"{a}>{b}": (a, b) for a in objects for b in objects}
    ids = {b: f"{b}>{b}" for b in objects}
    comp = {(f"{b}>{c}", f"{a}>{b}"): f"{a}>{c}"
            for a in objects for b in objects for c in objects}
    return SmallCategory(objects, arrows, ids, comp, name)


def cyclic_group(n: int, name=None):
    arrows = {f"r{k}": ("*", "*") for k in range(n)}
    comp = {(f"r{j}", f"r{k}"): f"r{(j + k) % n}" for j in range(n) for k in range(n)}
    return SmallCategory(["*"], arrows, {"*": "r0"}, comp, name or f"Z/{n}")


def arrow_category():
    arrows = {"1_0": (0, 0), "1_1": (1, 1), "u": (0, 1)}
    return SmallCategory([0, 1], arrows, {0: "1_0", 1: "1_1"}, {}, "arrow")


# ----------------------------------------------------------------- cofunctors

@dataclass
class Cofunctor:
    """``obj`` maps objects of ``source`` to objects of ``target``;
    ``lift[(b, f)]`` for ``f`` out of ``obj[b]`` is an arrow out of ``b``."""

    source: SmallCategory
    target: SmallCategory
    obj: dict
    lift: dict
    name: str = ""

    def __call__(self, b, f=None):
        return self.obj[b] if f is None else self.lift[(b, f)]


def check_cofunctor(F: Cofunctor):
    B, C = F.source, F.target
    problems = []
    for b in B.objects:
        if F.obj.get(b) not in C.ids:
            problems.append(("object", b))
    if problems:
        return problems
    for b in B.objects:
        Fb = F.obj[b]
        for f in C.out(Fb):
            lf = F.lift.get((b, f))
            if lf is None or B.dom(lf) != b:
                problems.append(("lift", b, f))
    if problems:
        return problems
    for b in B.objects:
        Fb = F.obj[b]
        if F.lift[(b, C.ids[Fb])] != B.ids[b]:
            problems.append(("identity", b))
        for f in C.out(Fb):
            lf = F.lift[(b, f)]
            if F.obj[B.cod(lf)] != C.cod(f):
                problems.append(("codomain", b, f))
                continue
            for g in C.out(C.cod(f)):
                lhs = F.lift[(b, C.compose(g, f))]
                rhs = B.compose(F.lift[(B.cod(lf), g)], lf)
                if lhs != rhs:
                    problems.append(("composition", b, f, g))
    return problems


def compose_cofunctors(G: Cofunctor, F: Cofunctor) -> Cofunctor:
    """``G`` after ``F``: objects go ``b -> G(F(b))`` and arrows are lifted
    first by ``G`` and then by ``F``."""
    obj = {b: G.obj[F.obj[b]] for b in F.source.objects}
    lift = {}
    for b in F.source.objects:
        Fb = F.obj[b]
        for f in G.target.out(obj[b]):
            lift[(b, f)] = F.lift[(b, G.lift[(Fb, f)])]
    return Cofunctor(F.source, G.target, obj, lift, f"{G.name}.{F.name}")


def identity_cofunctor(B: SmallCategory) -> Cofunctor:
    return Cofunctor(B, B, {b: b for b in B.objects},
                     {(b, f): f for b in B.objects for f in B.out(b)}, "id")


# -------------------------------------------------------------- the monad

def t_unit(B: SmallCategory, a):
    return tuple((B.ids[b], a) for b in B.objects)


def t_mult(B: SmallCategory, e):
    out = []
    for b, (f, inner) in zip(B.objects, e):
        g, a = inner[B.index(B.cod(f))]
        out.append((B.compose(g, f), a))
    return tuple(out)


def t_map(h, e):
    return tuple((f, h(a)) for f, a in e)


def t_elements(B: SmallCategory, A):
    A = list(A)
    per = [[(f, a) for f in B.out(b) for a in A] for b in B.objects]
    return (tuple(e) for e in itertools.product(*per))


def t_size(B: SmallCategory, nA: int):
    n = 1
    for b in B.objects:
        n *= len(B.out(b)) * nA
    return n


def _default(B, depth, a):
    e = a
    for _ in range(depth):
        e = t_unit(B, e)
    return e


def t_path_elements(B: SmallCategory, depth: int, A):
    """Elements of ``T^depth(A)`` that vary only along one chain of arrows
    ``f1, f2, ...`` (each out of the previous codomain) from one object,
    with identities and a fixed value elsewhere.  Multiplication only ever
    reads entries on such a chain, so checking laws on these elements
    covers every combination the laws can observe."""
    A = list(A)
    a0 = A[0]

    def build(x, d, chain, a):
        if d == 0:
            return a
        f = chain[0]
        inner = build(B.cod(f), d - 1, chain[1:], a)
        return tuple((f, inner) if c == x else (B.ids[c], _default(B, d - 1, a0))
                     for c in B.objects)

    def chains(x, d):
        if d == 0:
            yield ()
            return
        for f in B.out(x):
            for rest in chains(B.cod(f), d - 1):
                yield (f,) + rest

    for x in B.objects:
        for chain in chains(x, depth):
            for a in A:
                yield build(x, depth, chain, a)


@dataclass
class LawCheck:
    """``method`` is ``"full"`` when every element was enumerated and
    ``"per-component"`` when only chain elements were; both cover every
    input the laws can observe, see ``t_path_elements``."""

    failures: list = field(default_factory=list)
    checked: int = 0
    method: str = "full"

    @property
    def ok(self):
        return not self.failures


def _elements_up_to(B, depth, A, cap):
    size = len(A)
    for _ in range(depth):
        size = t_size(B, size)
        if size > cap:
            return t_path_elements(B, depth, A), "per-component"
    level = list(A)
    for _ in range(depth):
        level = list(t_elements(B, level))
    return level, "full"


def check_monad_laws(B: SmallCategory, A, cap: int = 20_000) -> LawCheck:
    rep = LawCheck()
    for e in t_elements(B, A):
        rep.checked += 1
        if t_mult(B, t_unit(B, e)) != e:
            rep.failures.append(("left-unit", e))
        if t_mult(B, t_map(lambda a: t_unit(B, a), e)) != e:
            rep.failures.append(("right-unit", e))
    elems, rep.method = _elements_up_to(B, 3, A, cap)
    for e in elems:
        rep.checked += 1
        lhs = t_mult(B, t_mult(B, e))
        rhs = t_mult(B, t_map(lambda x: t_mult(B, x), e))
        if lhs != rhs:
            rep.failures.append(("assoc", e))
    return rep


# ------------------------------------------------------------ the comonad

def q_counit(B: SmallCategory, q):
    b, phi = q
    return phi[B.position(b, B.ids[b])]


def q_comult(B: SmallCategory, q):
    b, phi = q
    out = []
    for f in B.out(b):
        c = B.cod(f)
        out.append((c, tuple(phi[B.position(b, B.compose(g, f))] for g in B.out(c))))
    return (b, tuple(out))


def q_map(h, q):
    b, phi = q
    return (b, tuple(h(x) for x in phi))


def q_elements(B: SmallCategory, A):
    A = list(A)
    for b in B.objects:
        for phi in itertools.product(A, repeat=len(B.out(b))):
            yield (b, phi)


def check_comonad_laws(B: SmallCategory, A) -> LawCheck:
    rep = LawCheck()
    for q in q_elements(B, A):
        rep.checked += 1
        d = q_comult(B, q)
        if q_counit(B, d) != q:
            rep.failures.append(("left-counit", q))
        if q_map(lambda x: q_counit(B, x), d) != q:
            rep.failures.append(("right-counit", q))
        if q_comult(B, d) != q_map(lambda x: q_comult(B, x), d):
            rep.failures.append(("coassoc", q))
    return rep


def comonad_morphism_of(F: Cofunctor):
    """``Q_B -> Q_C``: restrict ``phi`` along the lifting at ``b``."""
    B, C = F.source, F.target

    def component(q):
        b, phi = q
        Fb = F.obj[b]
        return (Fb, tuple(phi[B.position(b, F.lift[(b, f)])] for f in C.out(Fb)))

    return component


def monad_morphism_of(F: Cofunctor):
    """``T_C -> T_B``: at ``b`` lift the arrow found at ``F(b)``."""
    B, C = F.source, F.target

    def component(e):
        out = []
        for b in B.objects:
            f, a = e[C.index(F.obj[b])]
            out.append((F.lift[(b, f)], a))
        return tuple(out)

    return component


def check_comonad_morphism(F: Cofunctor, A) -> LawCheck:
    B, C = F.source, F.target
    m = comonad_morphism_of(F)
    rep = LawCheck()
    for q in q_elements(B, A):
        rep.checked += 1
        if q_counit(C, m(q)) != q_counit(B, q):
            rep.failures.append(("counit", q))
        lhs = q_comult(C, m(q))
        rhs = m(q_map(m, q_comult(B, q)))
        if lhs != rhs:
            rep.failures.append(("comult", q))
    return rep


def check_monad_morphism(F: Cofunctor, A, cap: int = 20_000) -> LawCheck:
    B, C = F.source, F.target
    m = monad_morphism_of(F)
    rep = LawCheck()
    for a in A:
        rep.checked += 1
        if m(t_unit(C, a)) != t_unit(B, a):
            rep.failures.append(("unit", a))
    elems, rep.method = _elements_up_to(C, 2, A, cap)
    for e in elems:
        rep.checked += 1
        lhs = m(t_mult(C, e))
        rhs = t_mult(B, m(t_map(m, e)))
        if lhs != rhs:
            rep.failures.append(("mult", e))
    return rep


# ---------------------------------------------------------------- B-sets

class LeftBSet:
    """A set over the objects of ``B`` with arrows acting forwards:
    ``act[(x, f)]`` is defined when ``f`` leaves ``proj[x]``."""

    def __init__(self, B: SmallCategory, carrier, proj: dict, act: dict):
        self.category = B
        self.carrier = tuple(carrier)
        self.proj = dict(proj)
        self.act = dict(act)

    def __call__(self, f, x):
        return self.act[(x, f)]

    def check_laws(self):
        B = self.category
        problems = []
        for x in self.carrier:
            b = self.proj[x]
            if self.act.get((x, B.ids[b])) != x:
                problems.append(("identity", x))
            for f in B.out(b):
                y = self.act.get((x, f))
                if y is None or self.proj.get(y) != B.cod(f):
                    problems.append(("projection", x, f))
                    continue
                for g in B.out(B.cod(f)):
                    if self.act.get((y, g)) != self.act.get((x, B.compose(g, f))):
                        problems.append(("action", x, f, g))
        return problems


def representable(B: SmallCategory, b) -> LeftBSet:
    """Arrows out of ``b``, projected to their codomain, acted on by
    post-composition."""
    carrier = B.out(b)
    proj = {g: B.cod(g) for g in carrier}
    act = {(g, f): B.compose(f, g) for g in carrier for f in B.out(B.cod(g))}
    return LeftBSet(B, carrier, proj, act)


def bset_action_formula(X: LeftBSet, e, x):
    """Run the ``T_B(A)`` element ``e`` from ``x``: read the entry at
    ``x``'s object, act by its arrow and return its value."""
    f, a = e[X.category.index(X.proj[x])]
    return a, X(f, x)


# ------------------------------------------------- dependently typed update

def upd(f):
    return f"upd[{f}]"


def _slot(b):
    return f"@{b}"


def _in_slot(B, i, t):
    """``get`` with ``t`` in the branch of object ``i`` and fresh slot
    variables in the others."""
    return Op("get", [t if c == i else Var(_slot(c)) for c in B.objects])


def dtu_theory(B: SmallCategory) -> Theory:
    """``get`` has one branch per object; ``upd[f]`` updates along ``f``
    when the current object is ``dom f`` and does nothing otherwise."""
    ar = {"get": len(B.objects)}
    ar.update({upd(f): 1 for f in B.arrows})
    x = Var("x")
    k = len(B.objects)
    eqs = []
    eqs.append(Equation(("x",), Op("get", [x] * k), x, "get-const"))
    grid = [[Var(f"x{i}_{j}") for j in range(k)] for i in range(k)]
    eqs.append(Equation(tuple(v.name for row in grid for v in row),
                        Op("get", [Op("get", row) for row in grid]),
                        Op("get", [grid[i][i] for i in range(k)]), "get-diag"))

    def slot_ctx(i, extra):
        return tuple(_slot(c) for c in B.objects if c != i) + tuple(extra)

    for f, (b, b2) in B.arrows.items():
        for c in B.objects:
            if c != b:
                eqs.append(Equation(slot_ctx(c, ["x"]),
                                    _in_slot(B, c, Op(upd(f), [x])), _in_slot(B, c, x),
                                    f"upd-elsewhere[{f},{c}]"))
        xs = [Var(f"x@{a}") for a in B.objects]
        eqs.append(Equation(slot_ctx(b, [v.name for v in xs]),
                            _in_slot(B, b, Op(upd(f), [Op("get", xs)])),
                            _in_slot(B, b, Op(upd(f), [xs[B.index(b2)]])),
                            f"upd-get[{f}]"))
    for b in B.objects:
        eqs.append(Equation(("x",), Op(upd(B.ids[b]), [x]), x, f"upd-id[{b}]"))
    for f, (b, b2) in B.arrows.items():
        for g in B.out(b2):
            eqs.append(Equation(slot_ctx(b, ["x"]),
                                _in_slot(B, b, Op(upd(f), [Op(upd(g), [x])])),
                                _in_slot(B, b, Op(upd(B.compose(g, f)), [x])),
                                f"upd-upd[{f},{g}]"))
    return Theory(f"dtu[{B.name}]", Signature(ar), eqs,
                  labels={"get": tuple(B.objects)}, kind="dtu", params={"category": B})


def dtu_normal_form(B: SmallCategory, t: Term):
    """Evaluate ``t`` in the model on ``T_B(A)``."""
    upds = {upd(f): f for f in B.arrows}
    memo = {}

    def ev(u):
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            r = t_unit(B, u.name)
        elif u.sym == "get":
            kids = [ev(a) for a in u.args]
            r = tuple(kids[n][n] for n in range(len(B.objects)))
        else:
            f = upds[u.sym]
            b, b2 = B.arrows[f]
            e = ev(u.args[0])
            g, a = e[B.index(b2)]
            r = tuple((B.compose(g, f), a) if c == b else e[n]
                      for n, c in enumerate(B.objects))
        memo[key] = r
        return r

    return ev(t)


def dtu_embed(B: SmallCategory, e) -> Term:
    return Op("get", [Op(upd(g), [Var(a)]) for g, a in e])


def bset_to_comodel(X: LeftBSet, theory: Theory | None = None) -> Comodel:
    B = X.category
    th = theory or dtu_theory(B)
    coops = {"get": {x: (B.index(X.proj[x]), x) for x in X.carrier}}
    for f, (b, _) in B.arrows.items():
        coops[upd(f)] = {x: (0, X(f, x) if X.proj[x] == b else x) for x in X.carrier}
    return Comodel(th, X.carrier, coops)


def comodel_to_bset(c: Comodel) -> LeftBSet:
    B = c.theory.params["category"]
    proj = {x: B.objects[c.step("get", x)[0]] for x in c.states}
    act = {}
    for x in c.states:
        for f in B.out(proj[x]):
            act[(x, f)] = c.step(upd(f), x)[1]
    return LeftBSet(B, c.states, proj, act)
