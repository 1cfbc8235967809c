"""Terms, signatures, equational theories and interpretations.

A term is either a variable ``Var(name)`` or an operation node
``Op(sym, args)`` whose ``args`` tuple has exactly ``arity(sym)`` entries.
Child ``i`` of a node is the continuation taken when the operation answers
``i``.  Variable names are any hashable value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .errors import ArityMismatch, NotWellFormed, UnknownSymbol


class Term:
    __slots__ = ()


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: Hashable):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


class Op(Term):
    __slots__ = ("sym", "args", "_hash")

    def __init__(self, sym: str, args: Iterable[Term] = ()):
        self.sym = sym
        self.args = tuple(args)
        self._hash = hash((sym, self.args))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Op)
            and self._hash == other._hash
            and self.sym == other.sym
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.args:
            return f"{self.sym}()"
        return f"{self.sym}({', '.join(map(repr, self.args))})"


def generic(sym: str, arity: int) -> Op:
    """The term ``sym(0, 1, ..., arity-1)`` over index variables."""
    return Op(sym, [Var(i) for i in range(arity)])


def variables(t: Term) -> set:
    out = set()
    stack = [t]
    seen = set()
    while stack:
        u = stack.pop()
        if id(u) in seen:
            continue
        seen.add(id(u))
        if isinstance(u, Var):
            out.add(u.name)
        else:
            stack.extend(u.args)
    return out


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((depth(a) for a in t.args), default=-1)


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(size(a) for a in t.args)


def substitute(t: Term, sub) -> Term:
    """Simultaneous substitution.

    ``sub`` is a mapping or a callable from variable names to terms.
    Variables missing from a mapping are left alone.
    """
    if callable(sub) and not isinstance(sub, Mapping):
        lookup = sub
    else:
        def lookup(name):
            return sub.get(name, Var(name))
    memo: dict[int, Term] = {}

    def go(u):
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            r = lookup(u.name)
        else:
            r = Op(u.sym, [go(a) for a in u.args])
        memo[key] = r
        return r

    return go(t)


def seq(t: Term, u: Term) -> Term:
    """``t >> u``: run ``t``, discard its result, continue as ``u``."""
    return substitute(t, lambda _name: u)


@dataclass(frozen=True)
class Signature:
    arities: Mapping[str, int]

    def __post_init__(self):
        for sym, k in self.arities.items():
            if not isinstance(k, int) or k < 0:
                raise ArityMismatch(f"bad arity {k!r} for {sym!r}")

    def __contains__(self, sym):
        return sym in self.arities

    def arity(self, sym: str) -> int:
        try:
            return self.arities[sym]
        except KeyError:
            raise UnknownSymbol(sym) from None

    @property
    def symbols(self):
        return list(self.arities)


def check_term(sig: Signature, t: Term, ctx=None) -> None:
    """Raise if ``t`` uses unknown symbols, wrong arities or stray variables."""
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            if ctx is not None and u.name not in ctx:
                raise NotWellFormed(f"variable {u.name!r} not in context")
        elif isinstance(u, Op):
            k = sig.arity(u.sym)
            if len(u.args) != k:
                raise ArityMismatch(
                    f"{u.sym} has arity {k} but got {len(u.args)} arguments")
            stack.extend(u.args)
        else:
            raise NotWellFormed(f"not a term: {u!r}")


def well_formed(sig: Signature, t: Term, ctx=None) -> bool:
    try:
        check_term(sig, t, ctx)
    except (UnknownSymbol, ArityMismatch, NotWellFormed):
        return False
    return True


@dataclass(frozen=True)
class Equation:
    context: tuple
    lhs: Term
    rhs: Term
    name: str = ""


@dataclass
class Theory:
    """A signature plus equations.

    ``labels`` optionally names the answers of an operation (index ``i`` of
    ``read`` means the value ``labels["read"][i]``).  ``kind`` and
    ``params`` identify built-in theories; ``normalizer`` is a callable
    computing canonical representatives for provable equality.
    """

    name: str
    signature: Signature
    equations: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    kind: str | None = None
    params: dict = field(default_factory=dict)
    normalizer: Callable | None = None

    def __post_init__(self):
        for eq in self.equations:
            check_term(self.signature, eq.lhs, set(eq.context))
            check_term(self.signature, eq.rhs, set(eq.context))
        for sym, lab in self.labels.items():
            if len(lab) != self.signature.arity(sym):
                raise ArityMismatch(f"labels of {sym} do not match its arity")

    def arity(self, sym):
        return self.signature.arity(sym)

    def label(self, sym, i):
        lab = self.labels.get(sym)
        return lab[i] if lab is not None else i

    def index(self, sym, value):
        lab = self.labels.get(sym)
        if lab is None:
            return value
        return lab.index(value)

    def normalize(self, t: Term) -> Term:
        if self.normalizer is None:
            return t
        return self.normalizer(t)


@dataclass
class Interpretation:
    """Each source operation ``sym`` of arity ``k`` is sent to a target term
    over the variables ``0 .. k-1``."""

    source: Theory
    target: Theory
    assign: dict

    def __post_init__(self):
        for sym in self.source.signature.symbols:
            if sym not in self.assign:
                raise UnknownSymbol(f"interpretation misses {sym!r}")
            k = self.source.arity(sym)
            check_term(self.target.signature, self.assign[sym], set(range(k)))
        for sym in self.assign:
            if sym not in self.source.signature:
                raise UnknownSymbol(sym)


def translate(f: Interpretation, t: Term) -> Term:
    memo: dict[int, Term] = {}

    def go(u):
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            r = u
        else:
            kids = [go(a) for a in u.args]
            r = substitute(f.assign[u.sym], lambda i: kids[i])
        memo[key] = r
        return r

    return go(t)


def random_term(sig: Signature, ctx, max_depth: int, rng: random.Random,
                leaf_prob: float = 0.3, symbols=None) -> Term:
    ctx = list(ctx)
    syms = list(symbols) if symbols is not None else sig.symbols

    def go(d):
        if d == 0 or not syms or rng.random() < leaf_prob:
            return Var(rng.choice(ctx))
        s = rng.choice(syms)
        return Op(s, [go(d - 1) for _ in range(sig.arity(s))])

    return go(max_depth)
