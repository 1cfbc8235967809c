"""Cofunctors between behaviour categories induced by interpretations.

An interpretation ``f`` of ``T1`` into ``T2`` gives a cofunctor from the
behaviour category of ``T2`` to that of ``T1``: a behaviour ``b`` of ``T2``
is sent to the ``T1`` behaviour seen through ``f``, and a ``T1`` morphism out
of that image is lifted to a ``T2`` morphism out of ``b`` by translating its
representing term and running it in the classifier of ``b``.

Besides that generic route, the standard examples have closed forms, which
the tests compare against it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .behaviour import (BehaviourCategory, DyckHeight, Morphism, OutputPoint,
                        ROValue, RevInputStream, StackWord, StateValue,
                        StoreTuple, TapeBiStream, behaviour_of,
                        classifying_comodel, final_comodel)
from .builtins import (dyck_theory, dyck_to_stack, output_theory,
                       readonly_theory, stack_theory, state_theory)
from .comodel import restrict_along, run
from .streams import eventually_equal_from
from .theory import Interpretation, translate


class CofunctorView:
    """``obj`` maps source objects to target objects; ``lift(b, m)`` lifts a
    target morphism out of ``obj(b)`` to a source morphism out of ``b``."""

    def __init__(self, source: BehaviourCategory, target: BehaviourCategory,
                 obj, lift, name: str = ""):
        self.source = source
        self.target = target
        self.obj = obj
        self.lift = lift
        self.name = name


def induced_cofunctor(f: Interpretation, obj=None) -> CofunctorView:
    """The cofunctor induced by ``f``, computed through terms.

    Objects are read off the final comodel of the target restricted along
    ``f`` unless ``obj`` is given.
    """
    src = BehaviourCategory.of(f.target)
    tgt = BehaviourCategory.of(f.source)
    if obj is None:
        restricted = restrict_along(f, final_comodel(f.target))

        def obj(b):
            return behaviour_of(restricted, b)

    def lift(b, m):
        lower = classifying_comodel(f.source, obj(b))
        upper = classifying_comodel(f.target, b)
        term = translate(f, lower.rep_term(lower.state_of(m)))
        _, s = run(upper, upper.universal, term)
        return upper.morphism(s)

    return CofunctorView(src, tgt, obj, lift, name=f"{f.source.name}->{f.target.name}")


@dataclass
class AxiomReport:
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not self.failures


def check_view_axioms(view: CofunctorView, samples) -> AxiomReport:
    """``samples`` are triples ``(b, f, g)``: ``b`` a source object, ``f`` a
    target morphism out of ``obj(b)`` and ``g`` one out of ``f.cod``."""
    rep = AxiomReport()
    S, T = view.source, view.target
    for b, f, g in samples:
        rep.checked += 1
        Fb = view.obj(b)
        if f.dom != Fb:
            rep.failures.append(("sample", b, f))
            continue
        lf = view.lift(b, f)
        if lf.dom != b or not S.is_morphism(lf):
            rep.failures.append(("lift-typed", b, f, lf))
            continue
        if view.obj(lf.cod) != f.cod:
            rep.failures.append(("codomain", b, f, lf))
        if view.lift(b, T.identity(Fb)) != S.identity(b):
            rep.failures.append(("identity", b))
        if g is not None:
            lhs = view.lift(b, T.compose(g, f))
            rhs = S.compose(view.lift(lf.cod, g), lf)
            if lhs != rhs:
                rep.failures.append(("composition", b, f, g, lhs, rhs))
    return rep


def sample_triples(view: CofunctorView, rng: random.Random, n: int, objects,
                   out_of, second: bool = True):
    """Draw ``n`` triples from a list of source ``objects``, using
    ``out_of(target_object)`` for morphisms of the target."""
    out = []
    for _ in range(n):
        b = rng.choice(objects)
        fs = out_of(view.obj(b))
        f = rng.choice(fs)
        g = rng.choice(out_of(f.cod)) if second else None
        out.append((b, f, g))
    return out


# ------------------------------------------------------ closed-form examples

def output_state_view(V, W, h) -> CofunctorView:
    """Output along ``write_v -> put_h(v)``: a word lifts to the map to the
    image of its last letter."""
    src = BehaviourCategory.of(state_theory(W))
    tgt = BehaviourCategory.of(output_theory(V))

    def lift(b, m):
        if not m.data:
            return Morphism(b, b, None)
        return Morphism(b, StateValue(h(m.data[-1])), None)

    return CofunctorView(src, tgt, lambda b: OutputPoint(), lift, "output->state")


def readonly_state_view(V, W, h) -> CofunctorView:
    src = BehaviourCategory.of(state_theory(W))
    tgt = BehaviourCategory.of(readonly_theory(V))
    return CofunctorView(src, tgt, lambda b: ROValue(h(b.value)),
                         lambda b, m: Morphism(b, b, None), "readonly->state")


def view_update_view(store, loc) -> CofunctorView:
    locs = list(store.params["locations"])
    n = locs.index(loc)
    src = BehaviourCategory.of(store)
    tgt = BehaviourCategory.of(state_theory(store.params["locations"][loc]))

    def lift(b, m):
        vals = b.values[:n] + (m.cod.value,) + b.values[n + 1:]
        return Morphism(b, StoreTuple(vals), None)

    return CofunctorView(src, tgt, lambda b: StateValue(b.values[n]), lift, f"view@{loc}")


def stack_update(S: StackWord, word: str, magma):
    """Apply a Dyck word to a stack.  ``U`` pushes the unit; ``D`` pops ``v``
    then ``w`` and pushes ``op(v, w)``, or just pops a lone value.  Returns
    the new stack and the net shift (pops minus pushes)."""
    shift = 0
    for ch in word:
        if ch == "U":
            S = S.cons(magma.unit)
            shift -= 1
        elif S.at(0) is None:
            continue
        elif S.at(1) is None:
            S = S.shift(1)
            shift += 1
        else:
            v, w = S.at(0), S.at(1)
            S = S.shift(2).cons(magma.op(v, w))
            shift += 1
    return S, shift


def dyck_stack_view(magma, n_max: int = 4, values=None) -> CofunctorView:
    values = tuple(values if values is not None else magma.values)
    sk = stack_theory(values)
    src = BehaviourCategory.of(sk)
    tgt = BehaviourCategory.of(dyck_theory(n_max))

    def obj(S):
        return DyckHeight(S.length())

    def lift(S, m):
        S2, shift = stack_update(S, m.data, magma)
        return Morphism(S, S2, shift)

    return CofunctorView(src, tgt, obj, lift, "dyck->stack")


def dyck_stack_induced(magma, n_max: int = 4) -> CofunctorView:
    dy = dyck_theory(n_max)
    sk = stack_theory(magma.values)
    f = dyck_to_stack(dy, sk, magma)
    return induced_cofunctor(f, obj=lambda S: DyckHeight(S.length()))


# --------------------------------------------------------------- the tape

def cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def cantor_unpair(z: int):
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def tape_to_stream(v: TapeBiStream, q=lambda z: cantor_unpair(z)[1]) -> RevInputStream:
    """The non-negative half of the tape, seen through ``q``."""
    R = max(v.end(), 0)
    prefix = [q(v.at(k)) for k in range(R)]
    cycle = [q(v.at(R + j)) for j in range(len(v.right))]
    return RevInputStream(prefix, cycle)


def tape_lift(v: TapeBiStream, m: Morphism, pair=cantor_pair, unpair=cantor_unpair):
    """Lift a reversible-input morphism ``i: W -> W'`` (with ``W`` the image
    of ``v``) to the tape.

    Cells already passed over keep the first component of their pair,
    cells given back are re-paired with the value handed back, and
    everything else is shifted unchanged.
    """
    i = m.data
    W, W2 = m.dom, m.cod
    mm = eventually_equal_from(W2, W, i)
    if mm is None:
        raise ValueError("not a reversible-input morphism")
    lo = min(0, -i)
    changes = {}
    for k in range(lo, max(mm, 0)):
        j = k + i
        base = unpair(v.at(j))[0] if j >= 0 else v.at(j)
        changes[k] = pair(base, W2.at(k)) if k >= 0 else base
    w = v.shift(i).override(changes)
    return Morphism(v, w, i)


def tape_view(pair=cantor_pair, unpair=cantor_unpair) -> CofunctorView:
    src = BehaviourCategory("tape")
    tgt = BehaviourCategory("revinput")

    def obj(v):
        return tape_to_stream(v, lambda z: unpair(z)[1])

    def lift(v, m):
        return tape_lift(v, m, pair, unpair)

    return CofunctorView(src, tgt, obj, lift, "revinput->tape")


def tape_simulate(v: TapeBiStream, n: int, pushed, pair=cantor_pair, unpair=cantor_unpair):
    """Run ``n`` translated reads and then the translated ``unread``s of
    ``pushed`` directly on a tape; returns the tape seen from the final head
    position and the head offset."""
    cells = {}
    head = 0

    def at(k):
        return cells.get(k, v.at(k))

    for _ in range(n):
        w = at(head)
        cells[head] = unpair(w)[0]
        head += 1
    for u in pushed:
        head -= 1
        cells[head] = pair(at(head), u)
    return v.override(cells).shift(head), head


def revinput_morphism(W: RevInputStream, n: int, pushed) -> Morphism:
    rest = W.shift(n)
    W2 = RevInputStream(tuple(reversed(pushed)) + rest.prefix, rest.cycle)
    return Morphism(W, W2, n - len(pushed))


def sample_revinput_out(W, rng: random.Random, max_reads=3, max_back=3, values=range(6)):
    """A random morphism out of ``W``: some reads, then some values given
    back, in canonical form."""
    values = list(values)
    while True:
        n = rng.randint(0, max_reads)
        pushed = tuple(rng.choice(values) for _ in range(rng.randint(0, max_back)))
        if pushed and n > 0 and W.at(n - 1) == pushed[0]:
            continue
        return revinput_morphism(W, n, pushed)


def random_tape(rng: random.Random, cells: int = 30, max_cycle: int = 2, max_core: int = 3):
    """An eventually periodic tape of naturals below ``cells``."""

    def word(lo, hi):
        return [rng.randrange(cells) for _ in range(rng.randint(lo, hi))]

    return TapeBiStream(word(1, max_cycle), word(0, max_core), word(1, max_cycle),
                        rng.randint(-2, 2))
