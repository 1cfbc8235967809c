"""The built-in theories, their normalizers and the standard interpretations
between them.

Every family of operations indexed by a value ``v`` is named ``base_v``
(``put_3``, ``unread_a``).  Store and tape operations carry the location
after an ``@`` (``get@0``, ``put@-1_b``).
"""

from __future__ import annotations

import itertools

from .comodel import run
from .errors import InputError
from .theory import (Equation, Interpretation, Op, Signature, Theory,
                     Var, generic)

BOT = "⊥"
TT, FF = "tt", "ff"


def op_name(base, v):
    return f"{base}_{v}"


def _xs(prefix, n):
    return [Var(f"{prefix}{i}") for i in range(n)]


def band_equations(sym, k, tag=""):
    """``sym(x, ..., x) = x`` and ``sym(sym(x_ij)_j)_i = sym(x_ii)_i``."""
    x = Var("x")
    grid = [[Var(f"x{i}_{j}") for j in range(k)] for i in range(k)]
    return [
        Equation(("x",), Op(sym, [x] * k), x, f"{tag}{sym}-const"),
        Equation(tuple(v.name for row in grid for v in row),
                 Op(sym, [Op(sym, row) for row in grid]),
                 Op(sym, [grid[i][i] for i in range(k)]), f"{tag}{sym}-diag"),
    ]


def _values(values):
    values = tuple(values)
    if not values:
        raise InputError("value set must be non-empty")
    if len(set(values)) != len(values):
        raise InputError("duplicate values")
    return values


# ---------------------------------------------------------------- theories

def input_theory(values) -> Theory:
    V = _values(values)
    return Theory("input", Signature({"read": len(V)}), [],
                  labels={"read": V}, kind="input", params={"values": V})


def output_theory(values) -> Theory:
    V = _values(values)
    sig = Signature({op_name("write", v): 1 for v in V})
    return Theory("output", sig, [], kind="output", params={"values": V},
                  normalizer=lambda t: t)


def readonly_theory(values) -> Theory:
    V = _values(values)
    th = Theory("readonly", Signature({"get": len(V)}),
                band_equations("get", len(V)), labels={"get": V},
                kind="readonly", params={"values": V})
    th.normalizer = lambda t: _readonly_normal(th, t)
    return th


def state_theory(values) -> Theory:
    V = _values(values)
    k = len(V)
    ar = {"get": k}
    ar.update({op_name("put", v): 1 for v in V})
    x = Var("x")
    xs = _xs("x", k)
    eqs = [Equation(("x",), Op("get", [Op(op_name("put", v), [x]) for v in V]), x,
                    "get-put")]
    for u in V:
        for v in V:
            eqs.append(Equation(("x",), Op(op_name("put", u), [Op(op_name("put", v), [x])]),
                                Op(op_name("put", v), [x]), f"put-put[{u},{v}]"))
    for i, u in enumerate(V):
        eqs.append(Equation(tuple(a.name for a in xs),
                            Op(op_name("put", u), [Op("get", xs)]),
                            Op(op_name("put", u), [xs[i]]), f"put-get[{u}]"))
    th = Theory("state", Signature(ar), eqs, labels={"get": V}, kind="state",
                params={"values": V})
    th.normalizer = lambda t: _state_normal(th, t)
    return th


def revinput_theory(values) -> Theory:
    V = _values(values)
    k = len(V)
    ar = {"read": k}
    ar.update({op_name("unread", v): 1 for v in V})
    x = Var("x")
    xs = _xs("x", k)
    eqs = []
    for i, v in enumerate(V):
        eqs.append(Equation(tuple(a.name for a in xs),
                            Op(op_name("unread", v), [Op("read", xs)]), xs[i],
                            f"unread-read[{v}]"))
    eqs.append(Equation(("x",), Op("read", [Op(op_name("unread", v), [x]) for v in V]),
                        x, "read-unread"))
    th = Theory("revinput", Signature(ar), eqs, labels={"read": V},
                kind="revinput", params={"values": V})
    th.normalizer = revinput_normalizer(th)
    return th


def stack_theory(values) -> Theory:
    """``pop`` has one branch per value, then a last branch for the empty
    stack."""
    V = _values(values)
    k = len(V)
    ar = {"pop": k + 1}
    ar.update({op_name("push", v): 1 for v in V})
    x, z = Var("x"), Var("z")
    xs, ys = _xs("x", k), _xs("y", k)
    eqs = []
    ctx = tuple(a.name for a in xs) + ("y",)
    for i, v in enumerate(V):
        eqs.append(Equation(ctx, Op(op_name("push", v), [Op("pop", xs + [Var("y")])]),
                            xs[i], f"push-pop[{v}]"))
    eqs.append(Equation(("x",), Op("pop", [Op(op_name("push", v), [x]) for v in V] + [x]),
                        x, "pop-push"))
    ctx = tuple(a.name for a in xs + ys) + ("z",)
    eqs.append(Equation(ctx, Op("pop", xs + [Op("pop", ys + [z])]), Op("pop", xs + [z]),
                        "pop-empty"))
    th = Theory("stack", Signature(ar), eqs, labels={"pop": V + (BOT,)},
                kind="stack", params={"values": V})
    th.normalizer = stack_normalizer(th)
    return th


def ht(n):
    return f"ht_{n}"


def dyck_theory(n_max: int = 4) -> Theory:
    """Heights are probed by ``ht_n`` (answer ``tt`` iff height > n) for
    ``n <= n_max``; axioms mentioning a larger index are dropped."""
    if n_max < 0:
        raise InputError("n_max must be >= 0")
    ar = {"U": 1, "D": 1}
    ar.update({ht(n): 2 for n in range(n_max + 1)})
    x, y, z = Var("x"), Var("y"), Var("z")
    eqs = []
    for n in range(n_max + 1):
        eqs += band_equations(ht(n), 2)
    for n in range(n_max + 1):
        for m in range(n + 1):
            eqs.append(Equation(("x", "y", "z"),
                                Op(ht(n), [x, Op(ht(m), [y, z])]),
                                Op(ht(m), [Op(ht(n), [x, y]), z]), f"ht-order[{n},{m}]"))
    eqs.append(Equation(("x",), Op(ht(0), [x, Op("D", [x])]), x, "D-at-zero"))
    eqs.append(Equation(("x", "y"), Op("U", [Op(ht(0), [x, y])]), Op("U", [x]), "U-ht0"))
    for n in range(n_max):
        eqs.append(Equation(("x", "y"), Op("U", [Op(ht(n + 1), [x, y])]),
                            Op(ht(n), [Op("U", [x]), Op("U", [y])]), f"U-ht[{n + 1}]"))
        eqs.append(Equation(("x", "y"), Op("D", [Op(ht(n), [x, y])]),
                            Op(ht(n + 1), [Op("D", [x]), Op("D", [y])]), f"D-ht[{n}]"))
    labels = {ht(n): (TT, FF) for n in range(n_max + 1)}
    th = Theory("dyck", Signature(ar), eqs, labels=labels, kind="dyck",
                params={"n_max": n_max})
    th.normalizer = lambda t: _dyck_normal(n_max, t)
    return th


def loc_get(loc):
    return f"get@{loc}"


def loc_put(loc, v):
    return f"put@{loc}_{v}"


def _store_parts(locations):
    ar, labels, eqs = {}, {}, []
    x = Var("x")
    for loc, vals in locations.items():
        vals = _values(vals)
        k = len(vals)
        ar[loc_get(loc)] = k
        labels[loc_get(loc)] = vals
        for v in vals:
            ar[loc_put(loc, v)] = 1
        xs = _xs("x", k)
        g = loc_get(loc)
        eqs.append(Equation(("x",), Op(g, [Op(loc_put(loc, v), [x]) for v in vals]), x,
                            f"get-put@{loc}"))
        for u in vals:
            for v in vals:
                eqs.append(Equation(("x",), Op(loc_put(loc, u), [Op(loc_put(loc, v), [x])]),
                                    Op(loc_put(loc, v), [x]), f"put-put@{loc}[{u},{v}]"))
        for i, u in enumerate(vals):
            eqs.append(Equation(tuple(a.name for a in xs), Op(loc_put(loc, u), [Op(g, xs)]),
                                Op(loc_put(loc, u), [xs[i]]), f"put-get@{loc}[{u}]"))
    locs = list(locations)
    for a, b in itertools.combinations(locs, 2):
        for u in locations[a]:
            for w in locations[b]:
                eqs.append(Equation(("x",),
                                    Op(loc_put(a, u), [Op(loc_put(b, w), [x])]),
                                    Op(loc_put(b, w), [Op(loc_put(a, u), [x])]),
                                    f"commute@{a},{b}[{u},{w}]"))
    return ar, labels, eqs


def store_theory(locations) -> Theory:
    """``locations`` maps each location to its value set."""
    locations = {loc: _values(vals) for loc, vals in dict(locations).items()}
    if not locations:
        raise InputError("store needs at least one location")
    ar, labels, eqs = _store_parts(locations)
    th = Theory("store", Signature(ar), eqs, labels=labels, kind="store",
                params={"locations": locations})
    th.normalizer = lambda t: _store_normal(th, t)
    return th


def tape_theory(values, window: int = 1) -> Theory:
    """Tape over locations ``-window .. window``.  The shift axiom is kept
    only where both locations fall inside the window."""
    V = _values(values)
    locs = list(range(-window, window + 1))
    ar, labels, eqs = _store_parts({loc: V for loc in locs})
    ar["right"] = 1
    ar["left"] = 1
    x = Var("x")
    eqs.append(Equation(("x",), Op("left", [Op("right", [x])]), x, "left-right"))
    eqs.append(Equation(("x",), Op("right", [Op("left", [x])]), x, "right-left"))
    for loc in locs[:-1]:
        for u in V:
            eqs.append(Equation(("x",), Op("right", [Op(loc_put(loc, u), [x])]),
                                Op(loc_put(loc + 1, u), [Op("right", [x])]),
                                f"right-put@{loc}[{u}]"))
    return Theory("tape", Signature(ar), eqs, labels=labels, kind="tape",
                  params={"values": V, "window": window})


BUILTINS = {
    "input": input_theory,
    "output": output_theory,
    "readonly": readonly_theory,
    "state": state_theory,
    "revinput": revinput_theory,
    "stack": stack_theory,
    "dyck": dyck_theory,
    "store": store_theory,
    "tape": tape_theory,
}

ALIASES = {"read-only": "readonly", "read_only": "readonly",
           "reversible-input": "revinput", "reversible_input": "revinput"}


def builtin(name: str, **params) -> Theory:
    name = ALIASES.get(name, name)
    try:
        make = BUILTINS[name]
    except KeyError:
        raise InputError(f"unknown built-in theory {name!r}") from None
    return make(**params)


# ------------------------------------------------------------- normalizers
#
# State, read-only state and store are decided semantically: a term is
# provably equal to the canonical term with the same behaviour at every
# state of the final comodel.  The remaining theories are normalised by
# oriented axioms applied bottom-up.

class _TupleStates:
    """Final comodel of a store on tuples of values, one per location."""

    def __init__(self, theory, locations):
        self.theory = theory
        self.locs = list(locations)
        self.vals = locations
        self.syms = {}
        for n, loc in enumerate(self.locs):
            self.syms[loc_get(loc)] = ("get", n, None)
            for v in locations[loc]:
                self.syms[loc_put(loc, v)] = ("put", n, v)

    def step(self, sym, s):
        kind, n, v = self.syms[sym]
        if kind == "get":
            return self.vals[self.locs[n]].index(s[n]), s
        return 0, s[:n] + (v,) + s[n + 1:]


class _StateFinal:
    def __init__(self, V, get="get", put="put"):
        self.V = V
        self.get = get
        self.put = {op_name(put, v): v for v in V}

    def step(self, sym, s):
        if sym == self.get:
            return self.V.index(s), s
        return 0, self.put[sym]


def _state_normal(th, t):
    V = th.params["values"]
    c = _StateFinal(V)
    kids = []
    for v in V:
        a, w = run(c, v, t)
        kids.append(Op(op_name("put", w), [Var(a)]))
    return Op("get", kids)


def _readonly_normal(th, t):
    V = th.params["values"]
    c = _StateFinal(V)
    outs = [run(c, v, t)[0] for v in V]
    if len(set(outs)) == 1:
        return Var(outs[0])
    return Op("get", [Var(a) for a in outs])


def _store_normal(th, t):
    locations = th.params["locations"]
    c = _TupleStates(th, locations)
    locs = list(locations)

    def build(prefix):
        n = len(prefix)
        if n == len(locs):
            a, w = run(c, tuple(prefix), t)
            out = Var(a)
            for loc, val in reversed(list(zip(locs, w))):
                out = Op(loc_put(loc, val), [out])
            return out
        return Op(loc_get(locs[n]), [build(prefix + [v]) for v in locations[locs[n]]])

    return build([])


def revinput_normalizer(th):
    V = th.params["values"]
    unread = [op_name("unread", v) for v in V]
    idx = {s: i for i, s in enumerate(unread)}

    def normal(t):
        memo = {}

        def nf(u):
            key = id(u)
            if key in memo:
                return memo[key]
            if isinstance(u, Var):
                r = u
            elif u.sym == "read":
                kids = [nf(a) for a in u.args]
                r = Op("read", kids)
                if all(isinstance(k, Op) and k.sym == unread[i] for i, k in enumerate(kids)):
                    inner = kids[0].args[0]
                    if all(k.args[0] == inner for k in kids):
                        r = inner
            else:
                a = nf(u.args[0])
                if isinstance(a, Op) and a.sym == "read":
                    r = a.args[idx[u.sym]]
                else:
                    r = Op(u.sym, [a])
            memo[key] = r
            return r

        return nf(t)

    return normal


def stack_normalizer(th):
    V = th.params["values"]
    push = [op_name("push", v) for v in V]
    idx = {s: i for i, s in enumerate(push)}

    def normal(t):
        memo = {}

        def nf(u):
            key = id(u)
            if key in memo:
                return memo[key]
            if isinstance(u, Var):
                r = u
            elif u.sym == "pop":
                kids = [nf(a) for a in u.args]
                empty = kids[-1]
                if isinstance(empty, Op) and empty.sym == "pop":
                    empty = empty.args[-1]
                kids[-1] = empty
                r = Op("pop", kids)
                if all(isinstance(k, Op) and k.sym == push[i] and k.args[0] == empty
                       for i, k in enumerate(kids[:-1])):
                    r = empty
            else:
                a = nf(u.args[0])
                if isinstance(a, Op) and a.sym == "pop":
                    r = a.args[idx[u.sym]]
                else:
                    r = Op(u.sym, [a])
            memo[key] = r
            return r

        return nf(t)

    return normal


def _ht_index(sym):
    if sym.startswith("ht_"):
        return int(sym[3:])
    return None


def _dyck_step(n_max, t):
    """One bottom-up pass of the oriented Dyck axioms."""
    memo = {}

    def nf(u):
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            r = u
        else:
            kids = [nf(a) for a in u.args]
            r = _dyck_root(n_max, u.sym, kids)
        memo[key] = r
        return r

    return nf(t)


def _dyck_root(n_max, sym, kids):
    n = _ht_index(sym)
    if n is not None:
        x, y = kids
        if x == y:
            return x
        if isinstance(x, Op) and x.sym == sym:
            return Op(sym, [x.args[0], y])
        if isinstance(y, Op) and y.sym == sym:
            return Op(sym, [x, y.args[1]])
        m = _ht_index(y.sym) if isinstance(y, Op) else None
        if m is not None and m < n:
            return Op(y.sym, [Op(sym, [x, y.args[0]]), y.args[1]])
        if n == 0 and y == Op("D", [x]):
            return x
        return Op(sym, [x, y])
    (a,) = kids
    m = _ht_index(a.sym) if isinstance(a, Op) else None
    if sym == "U" and m is not None:
        if m == 0:
            return Op("U", [a.args[0]])
        return Op(ht(m - 1), [Op("U", [a.args[0]]), Op("U", [a.args[1]])])
    if sym == "D" and m is not None and m + 1 <= n_max:
        return Op(ht(m + 1), [Op("D", [a.args[0]]), Op("D", [a.args[1]])])
    return Op(sym, [a])


def _dyck_normal(n_max, t, max_passes: int = 10_000):
    for _ in range(max_passes):
        u = _dyck_step(n_max, t)
        if u == t:
            return t
        t = u
    raise RuntimeError("Dyck normalisation did not converge")


# --------------------------------------------------------- interpretations

def output_to_state(out: Theory, st: Theory, h) -> Interpretation:
    """``write_v`` becomes ``put_{h(v)}``."""
    assign = {op_name("write", v): Op(op_name("put", h(v)), [Var(0)])
              for v in out.params["values"]}
    return Interpretation(out, st, assign)


def readonly_to_state(ro: Theory, st: Theory, h) -> Interpretation:
    """``get`` becomes the state ``get`` followed by ``h``."""
    V = ro.params["values"]
    W = st.params["values"]
    kids = [Var(V.index(h(w))) for w in W]
    return Interpretation(ro, st, {"get": Op("get", kids)})


def state_into_store(st: Theory, store: Theory, loc) -> Interpretation:
    vals = store.params["locations"][loc]
    if tuple(vals) != tuple(st.params["values"]):
        raise InputError("state values differ from the location's values")
    assign = {"get": generic(loc_get(loc), len(vals))}
    for v in vals:
        assign[op_name("put", v)] = Op(loc_put(loc, v), [Var(0)])
    return Interpretation(st, store, assign)


def dyck_to_stack(dy: Theory, sk: Theory, magma) -> Interpretation:
    """Height tests pop and push back; ``U`` pushes the unit.  ``D`` pops the
    top ``v`` and then ``w`` and pushes ``op(v, w)``; a lone value is just
    popped and an empty stack is left alone.

    ``magma`` needs ``unit`` and ``op``, closed on the stack's value set.
    """
    V = sk.params["values"]
    n_max = dy.params["n_max"]

    def push(v, t):
        return Op(op_name("push", v), [t])

    def height_test(n, x, y):
        if n == 0:
            return Op("pop", [push(v, x) for v in V] + [y])
        return Op("pop", [height_test(n - 1, push(v, x), push(v, y)) for v in V] + [y])

    x = Var(0)
    assign = {
        "U": push(magma.unit, x),
        "D": Op("pop", [Op("pop", [push(magma.op(v, w), x) for w in V] + [x]) for v in V]
                + [x]),
    }
    for n in range(n_max + 1):
        assign[ht(n)] = height_test(n, Var(0), Var(1))
    return Interpretation(dy, sk, assign)
