"""Behaviours of the built-in theories.

For each built-in kind this module provides the behaviour objects, the
final comodel (whose states are the behaviours themselves), the comodel
classifying a given behaviour, and the behaviour category with its hom-sets
and composition.

A classifying comodel's states are canonical unary terms.  ``rep_term``
rebuilds the term, ``behaviour`` reads off the behaviour it leads to, and
``morphism``/``state_of`` convert between states and behaviour-category
morphisms out of the classified behaviour.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .builtins import ht, loc_get, loc_put, op_name
from .comodel import LazyComodel, run
from .dyck import INF, affine_dyck_check, affine_words, end_height
from .errors import InputError, NotBuiltin, TooLarge, Undetermined
from .streams import BiStream, Stream, eventually_equal_from
from .theory import Op, Term, Theory, Var

STAR = "*"


# --------------------------------------------------------------- objects

class InputStream(Stream):
    kind = "input"
    __slots__ = ()

    def __init__(self, prefix=(), cycle=()):
        if not tuple(cycle):
            raise InputError("an input stream needs a non-empty cycle")
        super().__init__(prefix, cycle)


class RevInputStream(InputStream):
    kind = "revinput"
    __slots__ = ()


class StackWord(Stream):
    """A finite stack (empty cycle) or an eventually periodic infinite one.
    Entry 0 is the top."""

    kind = "stack"
    __slots__ = ()


class TapeBiStream(BiStream):
    kind = "tape"
    __slots__ = ()


@dataclass(frozen=True)
class OutputPoint:
    kind = "output"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class ROValue:
    value: object
    kind = "readonly"

    def to_json(self):
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True)
class StateValue:
    value: object
    kind = "state"

    def to_json(self):
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True)
class DyckHeight:
    height: object
    kind = "dyck"

    def to_json(self):
        return {"kind": self.kind, "height": "inf" if self.height == INF else self.height}


@dataclass(frozen=True)
class StoreTuple:
    """Values listed in the store's location order."""

    values: tuple
    kind = "store"

    def to_json(self):
        return {"kind": self.kind, "values": list(self.values)}


def behaviour_from_json(obj):
    try:
        kind = obj["kind"]
        if kind == "input":
            return InputStream(obj.get("prefix", ()), obj["cycle"])
        if kind == "revinput":
            return RevInputStream(obj.get("prefix", ()), obj["cycle"])
        if kind == "stack":
            return StackWord(obj.get("prefix", ()), obj.get("cycle", ()))
        if kind == "output":
            return OutputPoint()
        if kind == "readonly":
            return ROValue(obj["value"])
        if kind == "state":
            return StateValue(obj["value"])
        if kind == "dyck":
            h = obj["height"]
            return DyckHeight(INF if h in ("inf", "∞") else int(h))
        if kind == "store":
            return StoreTuple(tuple(obj["values"]))
        if kind == "tape":
            return TapeBiStream(obj["left"], obj.get("core", ()), obj["right"],
                                obj.get("offset", 0))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad behaviour object: {e}") from None
    raise InputError(f"unknown behaviour kind {obj.get('kind')!r}")


@dataclass(frozen=True)
class Morphism:
    """A behaviour-category morphism; ``data`` is the kind-specific witness
    (a shift, a word, or ``None`` when morphisms are unique)."""

    dom: object
    cod: object
    data: object = None


# ---------------------------------------------------------- helpers

def _family(theory: Theory, base: str):
    """Map ``base_v`` symbol names back to ``v``."""
    out = {}
    for v in theory.params.get("values", ()):
        out[op_name(base, v)] = v
    return out


def _require_kind(theory, *kinds):
    if theory.kind not in kinds:
        raise NotBuiltin(f"expected a {'/'.join(kinds)} theory, got {theory.name!r}")


def _store_locs(theory):
    if theory.kind == "store":
        return list(theory.params["locations"])
    raise NotBuiltin(theory.name)


def _store_syms(theory):
    locs = theory.params["locations"]
    table = {}
    for n, loc in enumerate(locs):
        table[loc_get(loc)] = ("get", n, loc)
        for v in locs[loc]:
            table[loc_put(loc, v)] = ("put", n, v)
    return table


def _tape_syms(theory):
    V = theory.params["values"]
    K = theory.params["window"]
    table = {"right": ("right", None, None), "left": ("left", None, None)}
    for loc in range(-K, K + 1):
        table[loc_get(loc)] = ("get", loc, None)
        for v in V:
            table[loc_put(loc, v)] = ("put", loc, v)
    return table


def _dyck_ht(sym):
    return int(sym[3:]) if sym.startswith("ht_") else None


# ---------------------------------------------------------- final comodels

def final_comodel(theory: Theory, samples=()) -> LazyComodel:
    """The final comodel; its states are behaviour objects."""
    kind = theory.kind
    if kind in ("input", "revinput"):
        V = theory.params["values"]
        unread = _family(theory, "unread")

        def step(sym, W):
            if sym == "read":
                return V.index(W.at(0)), W.shift(1)
            return 0, W.cons(unread[sym])
    elif kind == "output":
        def step(sym, pt):
            return 0, pt
    elif kind in ("readonly", "state"):
        V = theory.params["values"]
        put = _family(theory, "put")
        wrap = ROValue if kind == "readonly" else StateValue

        def step(sym, b):
            if sym == "get":
                return V.index(b.value), b
            return 0, wrap(put[sym])
    elif kind == "stack":
        V = theory.params["values"]
        push = _family(theory, "push")

        def step(sym, S):
            if sym == "pop":
                top = S.at(0)
                if top is None:
                    return len(V), S
                return V.index(top), S.shift(1)
            return 0, S.cons(push[sym])
    elif kind == "dyck":
        def step(sym, b):
            h = b.height
            n = _dyck_ht(sym)
            if n is not None:
                return (0 if h > n else 1), b
            if sym == "U":
                return 0, DyckHeight(h if h == INF else h + 1)
            return 0, DyckHeight(h if h == INF else max(h - 1, 0))
    elif kind == "store":
        table = _store_syms(theory)
        locs = theory.params["locations"]

        def step(sym, b):
            what, n, arg = table[sym]
            if what == "get":
                return locs[arg].index(b.values[n]), b
            return 0, StoreTuple(b.values[:n] + (arg,) + b.values[n + 1:])
    elif kind == "tape":
        table = _tape_syms(theory)
        V = theory.params["values"]

        def step(sym, v):
            what, loc, arg = table[sym]
            if what == "get":
                return V.index(v.at(loc)), v
            if what == "put":
                return 0, v.override({loc: arg})
            return 0, v.shift(1 if what == "right" else -1)
    else:
        raise NotBuiltin(f"no final comodel for {theory.name!r}")
    return LazyComodel(theory, step, samples, name=f"final[{theory.name}]")


# ------------------------------------------------------ reading behaviours

def _orbit_values(c, s, sym, stop_index=None, max_steps=100_000):
    """Follow ``sym`` from ``s``; returns (values, loop_start) or
    (values, None) if it answered ``stop_index``."""
    seen = {}
    vals = []
    for _ in range(max_steps):
        if s in seen:
            return vals, seen[s]
        seen[s] = len(vals)
        i, s = c.step(sym, s)
        if i == stop_index:
            return vals, None
        vals.append(i)
    raise Undetermined("orbit did not close within the step budget")


def behaviour_of(c, s, max_steps: int = 100_000):
    """The behaviour of state ``s`` of a comodel of a built-in theory."""
    th = c.theory
    kind = th.kind
    if kind in ("input", "revinput"):
        V = th.params["values"]
        idx, j = _orbit_values(c, s, "read", max_steps=max_steps)
        vals = [V[i] for i in idx]
        cls = InputStream if kind == "input" else RevInputStream
        return cls(vals[:j], vals[j:])
    if kind == "output":
        return OutputPoint()
    if kind in ("readonly", "state"):
        v = th.params["values"][c.step("get", s)[0]]
        return ROValue(v) if kind == "readonly" else StateValue(v)
    if kind == "stack":
        V = th.params["values"]
        idx, j = _orbit_values(c, s, "pop", stop_index=len(V), max_steps=max_steps)
        vals = [V[i] for i in idx]
        if j is None:
            return StackWord(vals, ())
        return StackWord(vals[:j], vals[j:])
    if kind == "dyck":
        return DyckHeight(_dyck_height(c, s, th.params["n_max"], max_steps))
    if kind == "store":
        locs = th.params["locations"]
        return StoreTuple(tuple(locs[loc][c.step(loc_get(loc), s)[0]] for loc in locs))
    if kind == "tape":
        V = th.params["values"]
        rv, rj = _orbit_values(_Reader(c, "right"), s, "x", max_steps=max_steps)
        lv, lj = _orbit_values(_Reader(c, "left"), c.step("left", s)[1], "x",
                               max_steps=max_steps)
        core = list(reversed(lv[:lj])) + rv[:rj]
        return TapeBiStream([V[i] for i in lv[lj:]], [V[i] for i in core],
                            [V[i] for i in rv[rj:]], -lj)
    raise NotBuiltin(f"no behaviour reader for {th.name!r}")


class _Reader:
    """Reads ``get@0`` and then moves, so orbit values are tape cells."""

    def __init__(self, c, move):
        self.c, self.move = c, move

    def step(self, _sym, s):
        i = self.c.step(loc_get(0), s)[0]
        return i, self.c.step(self.move, s)[1]


def _dyck_height(c, s, n_max, max_steps):
    seen = set()
    k = 0
    for _ in range(max_steps):
        if c.step(ht(n_max), s)[0] == 1:
            for n in range(n_max + 1):
                if c.step(ht(n), s)[0] == 1:
                    return k + n
        if s in seen:
            return INF
        seen.add(s)
        s = c.step("D", s)[1]
        k += 1
    raise Undetermined("height did not settle within the step budget")


def behaviour_function(c, s):
    """The behaviour of ``s`` as a function on terms (any theory)."""
    return lambda t: run(c, s, t)[0]


def is_admissible_sample(beta, samples) -> bool:
    """Check ``beta(x) = x`` and ``beta(t(u)) = beta(t >> u_{beta(t)})`` on
    ``samples``, a list of ``(t, u)`` with ``u`` a dict of substitutions."""
    from .theory import substitute, variables

    for t, u in samples:
        for a in variables(t):
            if beta(Var(a)) != a:
                return False
        b = beta(t)
        lhs = beta(substitute(t, u))
        ub = u.get(b, Var(b))
        if lhs != beta(substitute(t, lambda _a: ub)):
            return False
    return True


def derivative(theory: Theory, beta, t: Term):
    """The behaviour after running ``t`` from ``beta`` in the final comodel."""
    return run(final_comodel(theory), beta, t)[1]


# ---------------------------------------------------- classifying comodels

def _nest(ops, leaf, arities):
    """Apply the operations in ``ops`` in order, every branch continuing
    with the rest."""
    t = leaf
    for sym in reversed(ops):
        t = Op(sym, [t] * arities[sym])
    return t


class Classifier(LazyComodel):
    """Comodel classifying a behaviour ``beta``; starts at ``universal``."""

    def __init__(self, theory, beta, universal, step):
        super().__init__(theory, step, (universal,), name=f"classify[{theory.name}]")
        self.beta = beta
        self.universal = universal

    def ops_of(self, s):
        raise NotImplementedError

    def rep_term(self, s, leaf=STAR):
        return _nest(self.ops_of(s), Var(leaf), self.theory.signature.arities)

    def behaviour(self, s):
        raise NotImplementedError

    def morphism(self, s):
        raise NotImplementedError

    def state_of(self, m):
        raise NotImplementedError

    def states(self, limit: int = 10_000):
        """States in breadth-first order from the universal state, at most
        ``limit`` of them."""
        seen = {self.universal: None}
        frontier = [self.universal]
        syms = self.theory.signature.symbols
        while frontier and len(seen) < limit:
            nxt = []
            for s in frontier:
                for sym in syms:
                    t = self.step(sym, s)[1]
                    if t not in seen:
                        seen[t] = None
                        nxt.append(t)
                        if len(seen) >= limit:
                            return list(seen)
            frontier = nxt
        return list(seen)


class InputClassifier(Classifier):
    def __init__(self, theory, W):
        V = theory.params["values"]

        def step(sym, n):
            return V.index(W.at(n)), n + 1

        super().__init__(theory, W, 0, step)

    def ops_of(self, n):
        return ["read"] * n

    def behaviour(self, n):
        return self.beta.shift(n)

    def morphism(self, n):
        return Morphism(self.beta, self.beta.shift(n), n)

    def state_of(self, m):
        return m.data


class OutputClassifier(Classifier):
    def __init__(self, theory, beta=OutputPoint()):
        write = _family(theory, "write")

        def step(sym, w):
            return 0, w + (write[sym],)

        super().__init__(theory, beta, (), step)

    def ops_of(self, w):
        return [op_name("write", v) for v in w]

    def behaviour(self, w):
        return OutputPoint()

    def morphism(self, w):
        return Morphism(self.beta, self.beta, tuple(w))

    def state_of(self, m):
        return tuple(m.data)


class ReadOnlyClassifier(Classifier):
    def __init__(self, theory, beta):
        V = theory.params["values"]

        def step(sym, s):
            return V.index(beta.value), s

        super().__init__(theory, beta, STAR, step)

    def ops_of(self, s):
        return []

    def behaviour(self, s):
        return self.beta

    def morphism(self, s):
        return Morphism(self.beta, self.beta, None)

    def state_of(self, m):
        return STAR


class StateClassifier(Classifier):
    """The final comodel itself, pointed at ``beta``."""

    def __init__(self, theory, beta):
        fin = final_comodel(theory)
        super().__init__(theory, beta, beta, fin.step)

    def ops_of(self, s):
        return [] if s == self.beta else [op_name("put", s.value)]

    def behaviour(self, s):
        return s

    def morphism(self, s):
        return Morphism(self.beta, s, None)

    def state_of(self, m):
        return m.cod


class StoreClassifier(Classifier):
    def __init__(self, theory, beta):
        fin = final_comodel(theory)
        self.locs = list(theory.params["locations"])
        super().__init__(theory, beta, beta, fin.step)

    def ops_of(self, s):
        return [loc_put(loc, v) for loc, v, w in zip(self.locs, s.values, self.beta.values)
                if v != w]

    def behaviour(self, s):
        return s

    def morphism(self, s):
        return Morphism(self.beta, s, None)

    def state_of(self, m):
        return m.cod


class _PushbackClassifier(Classifier):
    """States ``(n, pushed)``: ``n`` reads of the classified stream, then
    the values in ``pushed`` given back, oldest first.  The first value
    given back never undoes the last read."""

    read_sym = "read"
    push_base = "unread"
    stream_cls = RevInputStream

    def __init__(self, theory, W):
        V = theory.params["values"]
        back = _family(theory, self.push_base)
        empty_index = len(V)

        def step(sym, s):
            n, pushed = s
            if sym == self.read_sym:
                if pushed:
                    return V.index(pushed[-1]), (n, pushed[:-1])
                top = W.at(n)
                if top is None:
                    return empty_index, s
                return V.index(top), (n + 1, ())
            v = back[sym]
            if not pushed and n > 0 and W.at(n - 1) == v:
                return 0, (n - 1, ())
            return 0, (n, pushed + (v,))

        super().__init__(theory, W, (0, ()), step)

    def ops_of(self, s):
        n, pushed = s
        return [self.read_sym] * n + [op_name(self.push_base, v) for v in pushed]

    def behaviour(self, s):
        n, pushed = s
        rest = self.beta.shift(n)
        return self.stream_cls(tuple(reversed(pushed)) + rest.prefix, rest.cycle)

    def morphism(self, s):
        n, pushed = s
        return Morphism(self.beta, self.behaviour(s), n - len(pushed))

    def state_of(self, m):
        s = pushback_state(self.beta, m.cod, m.data)
        if s is None:
            raise InputError("not a morphism out of the classified behaviour")
        return s


def pushback_state(W, W2, i):
    """The canonical ``(n, pushed)`` with net shift ``i`` leading from ``W``
    to ``W2``, or ``None`` if there is none."""
    m = eventually_equal_from(W2, W, i)
    if m is None:
        return None
    n = m + i
    pushed = tuple(W2.at(k) for k in reversed(range(m)))
    if any(v is None for v in pushed):
        return None
    if n > 0 and W.at(n - 1) is None:
        return None
    return n, pushed


class RevInputClassifier(_PushbackClassifier):
    pass


class StackClassifier(_PushbackClassifier):
    read_sym = "pop"
    push_base = "push"
    stream_cls = StackWord


class DyckClassifier(Classifier):
    """States are the words that are paths out of the classified height;
    ``D`` at height zero is dropped."""

    def __init__(self, theory, beta):
        k = beta.height

        def step(sym, w):
            h = end_height(w, k)
            n = _dyck_ht(sym)
            if n is not None:
                return (0 if h > n else 1), w
            if sym == "U":
                return 0, w + "U"
            return 0, (w if h == 0 else w + "D")

        super().__init__(theory, beta, "", step)

    def ops_of(self, w):
        return list(w)

    def behaviour(self, w):
        return DyckHeight(end_height(w, self.beta.height))

    def morphism(self, w):
        return Morphism(self.beta, self.behaviour(w), w)

    def state_of(self, m):
        return m.data


class TapeClassifier(Classifier):
    """States ``(i, w)``: head offset ``i`` and a tape ``w`` differing from
    the classified one in finitely many cells."""

    def __init__(self, theory, v):
        table = _tape_syms(theory)
        V = theory.params["values"]

        def step(sym, s):
            i, w = s
            what, loc, arg = table[sym]
            if what == "get":
                return V.index(w.at(i + loc)), s
            if what == "put":
                return 0, (i, w.override({i + loc: arg}))
            return 0, (i + (1 if what == "right" else -1), w)

        super().__init__(theory, v, (0, v), step)

    def ops_of(self, s):
        i, w = s
        ops = []
        for d in self.beta.differences(w):
            mv, back = ("right", "left") if d >= 0 else ("left", "right")
            ops += [mv] * abs(d) + [loc_put(0, w.at(d))] + [back] * abs(d)
        ops += ["right" if i >= 0 else "left"] * abs(i)
        return ops

    def behaviour(self, s):
        i, w = s
        return w.shift(i)

    def morphism(self, s):
        i, w = s
        return Morphism(self.beta, w.shift(i), i)

    def state_of(self, m):
        return (m.data, m.cod.shift(-m.data))


def classifying_comodel(theory: Theory, beta) -> Classifier:
    kind = theory.kind
    classes = {
        "input": InputClassifier, "output": OutputClassifier,
        "readonly": ReadOnlyClassifier, "state": StateClassifier,
        "revinput": RevInputClassifier, "stack": StackClassifier,
        "dyck": DyckClassifier, "store": StoreClassifier, "tape": TapeClassifier,
    }
    if kind not in classes:
        raise NotBuiltin(f"no classifying comodel for {theory.name!r}")
    if kind == "output":
        return OutputClassifier(theory)
    return classes[kind](theory, beta)


def beta_equivalent(theory: Theory, beta, m: Term, n: Term) -> bool:
    """Do the unary terms ``m`` and ``n`` act alike on every state with
    behaviour ``beta``?  Decided by running both in the classifier."""
    c = classifying_comodel(theory, beta)
    return run(c, c.universal, m) == run(c, c.universal, n)


def check_classifier(theory: Theory, beta, max_states: int = 10_000):
    """Check the classifier of ``beta`` against the final comodel.

    At every reachable state ``s`` and for every operation ``sym`` the step
    must answer what ``beta`` answers after ``rep(s)``, and land on a state
    whose behaviour is the derivative of ``beta`` along ``rep(s)`` and
    whose own representative leads back to it.  Returns a list of problems.
    """
    c = classifying_comodel(theory, beta)
    fin = final_comodel(theory)
    problems = []
    if c.behaviour(c.universal) != beta:
        problems.append(("universal", c.universal, c.behaviour(c.universal), beta))
    for s in c.states(max_states):
        rep = c.rep_term(s)
        back = run(c, c.universal, rep)
        if back != (STAR, s):
            problems.append(("representative", s, back, None))
        _, here = run(fin, beta, rep)
        if c.behaviour(s) != here:
            problems.append(("behaviour", s, c.behaviour(s), here))
        for sym in theory.signature.symbols:
            i, s2 = c.step(sym, s)
            j, there = fin.step(sym, here)
            if i != j:
                problems.append(("answer", (s, sym), i, j))
            if c.behaviour(s2) != there:
                problems.append(("next", (s, sym), c.behaviour(s2), there))
            if run(c, c.universal, c.rep_term(s2)) != (STAR, s2):
                problems.append(("next-representative", (s, sym), s2, None))
    return problems


# ---------------------------------------------------- behaviour categories

class BehaviourCategory:
    """Behaviour category of a built-in kind.

    Composition ``compose(g, f)`` means ``f`` first.  ``theory`` is needed
    only for classifiers and generator edges; the hom-sets are computed
    from ``kind`` and ``values`` alone, so infinite value sets work too.
    """

    def __init__(self, kind: str, theory: Theory | None = None, values=None,
                 locations=None):
        self.kind = kind
        self.theory = theory
        if values is None and theory is not None:
            values = theory.params.get("values")
        if locations is None and theory is not None:
            locations = theory.params.get("locations")
        self.values = values
        self.locations = locations

    @classmethod
    def of(cls, theory: Theory):
        if theory.kind is None:
            raise NotBuiltin(theory.name)
        return cls(theory.kind, theory)

    # -- structure

    def identity(self, b):
        data = {"input": 0, "revinput": 0, "stack": 0, "tape": 0, "output": (),
                "dyck": ""}.get(self.kind)
        return Morphism(b, b, data)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        if f.cod != g.dom:
            raise InputError("morphisms do not compose")
        if self.kind in ("input", "revinput", "stack", "tape", "output", "dyck"):
            data = f.data + g.data
        else:
            data = None
        return Morphism(f.dom, g.cod, data)

    def is_morphism(self, m: Morphism) -> bool:
        k, a, b = self.kind, m.dom, m.cod
        if k == "input":
            return isinstance(m.data, int) and m.data >= 0 and a.shift(m.data) == b
        if k in ("revinput", "stack"):
            return isinstance(m.data, int) and pushback_state(a, b, m.data) is not None
        if k == "output":
            return all(v in self.values for v in m.data) if self.values else True
        if k == "readonly":
            return a == b
        if k in ("state", "store"):
            return m.data is None
        if k == "dyck":
            return affine_dyck_check(m.data, a.height, b.height)
        if k == "tape":
            return a.shift(m.data).differences(b) is not None
        raise NotBuiltin(k)

    def hom(self, a, b, bound: int = 4):
        """Morphisms ``a -> b``; infinite hom-sets are cut off at ``bound``
        (word length or absolute shift)."""
        k = self.kind
        if k == "input":
            return [Morphism(a, b, i) for i in range(bound + 1) if a.shift(i) == b]
        if k in ("revinput", "stack", "tape"):
            out = [Morphism(a, b, i) for i in range(-bound, bound + 1)]
            return [m for m in out if self.is_morphism(m)]
        if k == "output":
            return [Morphism(a, b, w) for n in range(bound + 1)
                    for w in itertools.product(self.values, repeat=n)]
        if k == "readonly":
            return [Morphism(a, b, None)] if a == b else []
        if k in ("state", "store"):
            return [Morphism(a, b, None)]
        if k == "dyck":
            return [Morphism(a, b, w) for w in affine_words(a.height, bound)
                    if end_height(w, a.height) == b.height]
        raise NotBuiltin(k)

    def classifier(self, b) -> Classifier:
        if self.theory is None:
            raise NotBuiltin("a theory is needed to build classifiers")
        return classifying_comodel(self.theory, b)

    def out(self, b, limit: int = 200):
        """Morphisms out of ``b``, read off the classifier's states."""
        c = self.classifier(b)
        return [c.morphism(s) for s in c.states(limit)]

    def generators(self, b):
        """One edge per operation: where that single operation leads."""
        c = self.classifier(b)
        out = []
        for sym in self.theory.signature.symbols:
            s = c.step(sym, c.universal)[1]
            out.append((sym, c.morphism(s)))
        return out

    # -- objects

    def all_objects(self):
        k = self.kind
        if k == "output":
            return [OutputPoint()]
        if k == "readonly":
            return [ROValue(v) for v in self.values]
        if k == "state":
            return [StateValue(v) for v in self.values]
        if k == "store":
            return [StoreTuple(vals) for vals in
                    itertools.product(*self.locations.values())]
        raise TooLarge(f"{k} has infinitely many behaviours")

    def enumerate_objects(self, max_prefix: int = 2, max_cycle: int = 2, max_height: int = 4):
        """A finite slice of the objects, for display and exhaustive tests."""
        k = self.kind
        if k in ("output", "readonly", "state", "store"):
            return self.all_objects()
        if k in ("input", "revinput", "stack", "tape"):
            seen = {}
            V = self.values
            for p in range(max_prefix + 1):
                for c in range(0 if k == "stack" else 1, max_cycle + 1):
                    for pre in itertools.product(V, repeat=p):
                        for cyc in itertools.product(V, repeat=c):
                            if k == "input":
                                obj = InputStream(pre, cyc)
                            elif k == "revinput":
                                obj = RevInputStream(pre, cyc)
                            elif k == "stack":
                                obj = StackWord(pre, cyc)
                            else:
                                if not cyc:
                                    continue
                                obj = TapeBiStream(cyc, pre, cyc, 0)
                            seen[obj] = None
            return list(seen)
        if k == "dyck":
            return [DyckHeight(h) for h in range(max_height + 1)] + [DyckHeight(INF)]
        raise NotBuiltin(k)

    def sample_object(self, rng: random.Random, max_prefix=3, max_cycle=3, max_height=4):
        k = self.kind
        V = self.values
        if k in ("output", "readonly", "state", "store"):
            return rng.choice(self.all_objects())
        if k == "dyck":
            return DyckHeight(INF if rng.random() < 0.15 else rng.randint(0, max_height))

        def word(n):
            return [rng.choice(V) for _ in range(n)]

        if k == "input":
            return InputStream(word(rng.randint(0, max_prefix)), word(rng.randint(1, max_cycle)))
        if k == "revinput":
            return RevInputStream(word(rng.randint(0, max_prefix)), word(rng.randint(1, max_cycle)))
        if k == "stack":
            if rng.random() < 0.5:
                return StackWord(word(rng.randint(0, max_height)), ())
            return StackWord(word(rng.randint(0, max_prefix)), word(rng.randint(1, max_cycle)))
        if k == "tape":
            return TapeBiStream(word(rng.randint(1, max_cycle)), word(rng.randint(0, max_prefix)),
                                word(rng.randint(1, max_cycle)), rng.randint(-2, 2))
        raise NotBuiltin(k)


def behaviour_category(theory: Theory) -> BehaviourCategory:
    return BehaviourCategory.of(theory)
