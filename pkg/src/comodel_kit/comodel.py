"""Comodels, their runner, law checking, bisimulation and minimisation.

A comodel answers every operation at every state with an index into the
operation's arity and a next state.  Finite comodels store that as a table;
``LazyComodel`` computes it on demand and is used for infinite carriers
such as final and classifying comodels.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError, TooLarge, UnknownSymbol
from .theory import Interpretation, Op, Term, Theory, Var, generic, translate


class Comodel:
    def __init__(self, theory: Theory, states, coops: dict, name: str = ""):
        self.theory = theory
        self.states = tuple(states)
        self.coops = {sym: dict(tab) for sym, tab in coops.items()}
        self.name = name
        self._validate()

    def _validate(self):
        known = set(self.states)
        if len(known) != len(self.states):
            raise InputError("duplicate states")
        for sym in self.theory.signature.symbols:
            if sym not in self.coops:
                raise UnknownSymbol(f"no co-operation for {sym!r}")
            k = self.theory.arity(sym)
            tab = self.coops[sym]
            for s in self.states:
                if s not in tab:
                    raise InputError(f"{sym!r} undefined at state {s!r}")
                i, nxt = tab[s]
                if not (0 <= i < k):
                    raise InputError(f"{sym!r} at {s!r} answers {i}, arity {k}")
                if nxt not in known:
                    raise InputError(f"{sym!r} at {s!r} moves to unknown {nxt!r}")
        for sym in self.coops:
            if sym not in self.theory.signature:
                raise UnknownSymbol(sym)

    def step(self, sym, s):
        return self.coops[sym][s]

    def sample_states(self):
        return self.states

    def __repr__(self):
        return f"Comodel({self.theory.name}, {len(self.states)} states)"


class LazyComodel:
    """A comodel given by a step function ``(sym, state) -> (index, next)``.

    ``samples`` lists the states law checks should start from.
    """

    def __init__(self, theory: Theory, step, samples=(), name: str = "",
                 cache: bool = True):
        self.theory = theory
        self._step = lru_cache(maxsize=None)(step) if cache else step
        self.samples = tuple(samples)
        self.name = name

    def step(self, sym, s):
        return self._step(sym, s)

    def sample_states(self):
        return self.samples


def run(c, s, t: Term):
    """Run ``t`` from state ``s``; returns ``(variable name, final state)``."""
    while isinstance(t, Op):
        i, s = c.step(t.sym, s)
        t = t.args[i]
    return t.name, s


@dataclass
class Violation:
    equation: str
    state: object
    lhs: object
    rhs: object


@dataclass
class LawReport:
    violations: list = field(default_factory=list)
    checked: int = 0
    exhaustive: bool = True

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def _eq_name(eq, idx):
    return eq.name or f"eq{idx}"


def check_comodel(c, states=None, stop_at_first: bool = False) -> LawReport:
    """Check every equation of the theory at every state (or given states)."""
    report = LawReport()
    states = c.sample_states() if states is None else states
    for idx, eq in enumerate(c.theory.equations):
        for s in states:
            report.checked += 1
            a = run(c, s, eq.lhs)
            b = run(c, s, eq.rhs)
            if a != b:
                report.violations.append(Violation(_eq_name(eq, idx), s, a, b))
                if stop_at_first:
                    return report
    return report


class FiniteAlgebra:
    """A model candidate: ``ops[sym]`` maps a tuple of carrier elements
    (one per argument) to an element."""

    def __init__(self, theory: Theory, carrier, ops: dict):
        self.theory = theory
        self.carrier = tuple(carrier)
        self.ops = ops

    def evaluate(self, t: Term, env):
        if isinstance(t, Var):
            return env[t.name]
        return self.ops[t.sym](tuple(self.evaluate(a, env) for a in t.args))


def check_model(m: FiniteAlgebra, max_envs: int = 200_000, seed: int = 0) -> LawReport:
    report = LawReport()
    rng = random.Random(seed)
    for idx, eq in enumerate(m.theory.equations):
        ctx = list(eq.context)
        total = len(m.carrier) ** len(ctx)
        if total <= max_envs:
            envs = itertools.product(m.carrier, repeat=len(ctx))
        else:
            report.exhaustive = False
            envs = (tuple(rng.choice(m.carrier) for _ in ctx) for _ in range(max_envs))
        for vals in envs:
            env = dict(zip(ctx, vals))
            report.checked += 1
            a = m.evaluate(eq.lhs, env)
            b = m.evaluate(eq.rhs, env)
            if a != b:
                report.violations.append(Violation(_eq_name(eq, idx), env, a, b))
    return report


def is_homomorphism(h, c1: Comodel, c2: Comodel) -> bool:
    for sym in c1.theory.signature.symbols:
        for s in c1.states:
            i, t = c1.step(sym, s)
            if c2.step(sym, h[s]) != (i, h[t]):
                return False
    return True


@dataclass
class StatePartition:
    """Blocks of mutually bisimilar states.

    ``block_of`` maps each state to its block id, the position of the
    block's first member in ``order``.
    """

    order: list
    block_of: dict

    @property
    def blocks(self):
        out: dict = {}
        for s in self.order:
            out.setdefault(self.block_of[s], []).append(s)
        return [out[k] for k in sorted(out)]

    def same(self, a, b):
        return self.block_of[a] == self.block_of[b]


def _refine(states, syms, step) -> StatePartition:
    index = {s: n for n, s in enumerate(states)}

    def canon(keyfn):
        first: dict = {}
        out = {}
        for s in states:
            k = keyfn(s)
            if k not in first:
                first[k] = index[s]
            out[s] = first[k]
        return out

    block = canon(lambda s: tuple(step(sym, s)[0] for sym in syms))
    while True:
        new = canon(lambda s: (block[s],) + tuple(block[step(sym, s)[1]] for sym in syms))
        if len(set(new.values())) == len(set(block.values())):
            return StatePartition(list(states), new)
        block = new


def largest_bisimulation(c1: Comodel, c2: Comodel) -> StatePartition:
    """Partition of the disjoint union; states are tagged ``(0, s)``/``(1, s)``."""
    syms = c1.theory.signature.symbols
    if set(syms) != set(c2.theory.signature.symbols):
        raise InputError("comodels of different signatures")
    states = [(0, s) for s in c1.states] + [(1, s) for s in c2.states]
    cs = (c1, c2)

    def step(sym, tagged):
        tag, s = tagged
        i, t = cs[tag].step(sym, s)
        return i, (tag, t)

    return _refine(states, syms, step)


def bisimilar(c1, s1, c2, s2) -> bool:
    return largest_bisimulation(c1, c2).same((0, s1), (1, s2))


def minimize(c: Comodel):
    """Quotient by the largest bisimulation.  Returns ``(quotient, partition)``;
    each block is represented by its first state."""
    part = _refine(list(c.states), c.theory.signature.symbols, c.step)
    rep = {}
    for blk in part.blocks:
        for s in blk:
            rep[s] = blk[0]
    reps = [blk[0] for blk in part.blocks]
    coops = {}
    for sym in c.theory.signature.symbols:
        coops[sym] = {}
        for r in reps:
            i, t = c.step(sym, r)
            coops[sym][r] = (i, rep[t])
    return Comodel(c.theory, reps, coops, name=c.name + "/~"), part


def restricted_step(f: Interpretation, c):
    """Step function of the comodel of ``f.source`` obtained along ``f``."""
    gens = {sym: translate(f, generic(sym, f.source.arity(sym)))
            for sym in f.source.signature.symbols}

    def step(sym, s):
        return run(c, s, gens[sym])

    return step


def restrict_along(f: Interpretation, c):
    """The comodel of the source theory whose co-operation at ``sym`` runs the
    image of ``sym`` in ``c``."""
    if c.theory is not f.target and c.theory.signature != f.target.signature:
        raise InputError("comodel is not over the interpretation's target")
    step = restricted_step(f, c)
    if isinstance(c, Comodel):
        coops = {sym: {s: step(sym, s) for s in c.states}
                 for sym in f.source.signature.symbols}
        return Comodel(f.source, c.states, coops, name=f"{c.name}|{f.source.name}")
    return LazyComodel(f.source, step, c.sample_states(), name=f"{c.name}|{f.source.name}")


def check_interpretation(f: Interpretation, witnesses, via_terms: bool = False) -> LawReport:
    """Check that each source equation holds after translation along ``f``
    in every witness comodel of the target.

    With ``via_terms`` both sides are translated and run in the witness.
    Otherwise they are run in the restricted comodel, which gives the same
    result without materialising large translated terms.
    """
    report = LawReport(exhaustive=False)
    for w in witnesses:
        cw = None if via_terms else LazyComodel(f.source, restricted_step(f, w))
        for idx, eq in enumerate(f.source.equations):
            if via_terms:
                lhs, rhs, target = translate(f, eq.lhs), translate(f, eq.rhs), w
            else:
                lhs, rhs, target = eq.lhs, eq.rhs, cw
            for s in w.sample_states():
                report.checked += 1
                a, b = run(target, s, lhs), run(target, s, rhs)
                if a != b:
                    report.violations.append(Violation(_eq_name(eq, idx), s, a, b))
    return report


def reachable(c, start, max_states: int = 10_000):
    """States reachable from ``start`` by breadth-first search."""
    seen = {start: None}
    frontier = [start]
    syms = c.theory.signature.symbols
    while frontier:
        nxt = []
        for s in frontier:
            for sym in syms:
                t = c.step(sym, s)[1]
                if t not in seen:
                    if len(seen) >= max_states:
                        raise TooLarge(f"more than {max_states} states reachable")
                    seen[t] = None
                    nxt.append(t)
        frontier = nxt
    return list(seen)
