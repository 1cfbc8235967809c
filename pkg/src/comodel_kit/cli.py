"""Command-line front end.

Every subcommand prints one JSON document (or DOT with ``--dot``) and
exits 0 on success, 1 when a law check fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import serialization as io
from .behaviour import (BehaviourCategory, behaviour_from_json, behaviour_of,
                        check_classifier, classifying_comodel)
from .cofree import (behaviour_graph, check_edge_composition, check_tree,
                     dfa_derivative, enumerate_ftrees, unfold, words)
from .cofunctors import (check_view_axioms, dyck_stack_view, induced_cofunctor,
                         output_state_view, readonly_state_view, random_tape,
                         sample_revinput_out, sample_triples, tape_view,
                         view_update_view)
from .comodel import (FiniteAlgebra, check_comodel, check_model,
                      largest_bisimulation, minimize, run)
from .corpus import category_corpus
from .costructure import (behaviour_category_of_comonad, category_to_dc,
                          check_reflection_unit, check_theta, dc_to_category,
                          dual_monad, idempotency_check)
from .dyck import (BoundedBracketMagma, FreeMagma, affine_dyck_check, catalan,
                   census, dyck_run_stack, end_height, INF)
from .errors import ComodelKitError, InputError, LawViolation
from .presheaf import (check_cofunctor, check_comonad_laws, check_monad_laws,
                       dtu_embed, dtu_normal_form, dtu_theory, t_elements)

MAX_STATES = 10_000
MAX_OBJECTS = 200
MAX_DEPTH = 6


class Failed(Exception):
    """A check ran and found violations; carries the JSON report."""

    def __init__(self, report):
        super().__init__("law violation")
        self.report = report


def _json_arg(text):
    """Inline JSON when it starts like JSON, otherwise a file path."""
    if text is None:
        return None, "."
    s = text.lstrip()
    if s[:1] in "{[":
        try:
            return json.loads(s), "."
        except json.JSONDecodeError as e:
            raise InputError(f"invalid inline JSON: {e.msg}") from None
    return io.load_json(text), io.relative_base(text)


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise InputError(f"--{name.replace('_', '-')} is required")
    return val


def _theory(args):
    if args.theory:
        obj, base = _json_arg(args.theory)
        return io.theory_from_json(obj, base)
    if args.builtin:
        ref = {"builtin": args.builtin}
        if args.values:
            ref["values"] = [io._name(v) for v in args.values.split(",")]
        if args.n_max is not None:
            ref["n_max"] = args.n_max
        if args.locations:
            ref["locations"] = json.loads(args.locations)
        return io.theory_from_json(ref)
    raise InputError("give --theory or --builtin")


def _comodel(text):
    obj, base = _json_arg(text)
    return io.comodel_from_json(obj, base)


def _state(c, name):
    if name in c.states:
        return name
    alt = io._name(name)
    if alt in c.states:
        return alt
    raise InputError(f"unknown state {name!r}")


def _law_report(rep):
    return {"ok": rep.ok, "checked": rep.checked, "exhaustive": rep.exhaustive,
            "violations": [{"equation": v.equation, "state": v.state,
                            "lhs": list(v.lhs), "rhs": list(v.rhs)} for v in rep.violations[:20]]}


# ------------------------------------------------------------ subcommands

def cmd_run(args):
    c = _comodel(_need(args, "comodel"))
    obj, _ = _json_arg(_need(args, "term"))
    t = io.term_from_json(obj)
    value, state = run(c, _state(c, _need(args, "state")), t)
    return {"value": value, "state": state}


def cmd_check_laws(args):
    if args.comodel:
        c = _comodel(args.comodel)
        out = _law_report(check_comodel(c))
    elif args.model:
        obj, base = _json_arg(args.model)
        th = io.theory_from_json(obj["theory"], base)
        # each op is a table of rows [arg_1, ..., arg_k, result]
        tables = {sym: {tuple(r[:-1]): r[-1] for r in rows} for sym, rows in obj["ops"].items()}
        m = FiniteAlgebra(th, obj["carrier"],
                          {sym: (lambda tab: lambda xs: tab[tuple(xs)])(tab)
                           for sym, tab in tables.items()})
        out = _law_report(check_model(m, seed=args.seed))
    elif args.cofunctor:
        obj, _ = _json_arg(args.cofunctor)
        problems = check_cofunctor(io.cofunctor_from_json(obj))
        out = {"ok": not problems, "violations": [list(p) for p in problems[:20]]}
    elif args.container:
        obj, _ = _json_arg(args.container)
        problems = io.container_from_json(obj).check_laws()
        out = {"ok": not problems, "violations": [list(p) for p in problems[:20]]}
    elif args.category:
        obj, _ = _json_arg(args.category)
        problems = io.category_from_json(obj).check_laws()
        out = {"ok": not problems, "violations": [list(p) for p in problems[:20]]}
    else:
        raise InputError("give one of --comodel, --model, --cofunctor, --container, --category")
    if not out["ok"]:
        raise Failed(out)
    return out


def cmd_bisim(args):
    c1 = _comodel(_need(args, "comodel"))
    c2 = _comodel(args.comodel2) if args.comodel2 else c1
    part = largest_bisimulation(c1, c2)
    if args.state is not None and args.state2 is not None:
        s1, s2 = _state(c1, args.state), _state(c2, args.state2)
        return {"bisimilar": part.same((0, s1), (1, s2))}
    blocks = {}
    for tagged in part.order:
        blocks.setdefault(part.block_of[tagged], []).append(
            {"side": tagged[0], "state": tagged[1]})
    return {"blocks": [blocks[k] for k in sorted(blocks)]}


def cmd_minimize(args):
    c = _comodel(_need(args, "comodel"))
    q, part = minimize(c)
    return {"blocks": {str(s): part.block_of[s] for s in c.states},
            "quotient": io.comodel_to_json(q)}


def cmd_behave(args):
    c = _comodel(_need(args, "comodel"))
    return behaviour_of(c, _state(c, _need(args, "state"))).to_json()


def _behaviour(args):
    obj, _ = _json_arg(_need(args, "behaviour"))
    return behaviour_from_json(obj)


def cmd_classify(args):
    th = _theory(args)
    beta = _behaviour(args)
    c = classifying_comodel(th, beta)
    states = c.states(args.max_states)
    problems = check_classifier(th, beta, args.max_states)
    out = {"states": [{"state": io._jsonable(s), "behaviour": c.behaviour(s).to_json()}
                      for s in states[:args.max_objects]],
           "count": len(states), "problems": [str(p) for p in problems[:20]],
           "ok": not problems}
    if problems:
        raise Failed(out)
    return out


def cmd_behaviour_cat(args):
    th = _theory(args)
    cat = BehaviourCategory.of(th)
    objs = cat.enumerate_objects()[:args.max_objects]
    index = {b: i for i, b in enumerate(objs)}
    edges = []
    for i, b in enumerate(objs):
        for sym, m in cat.generators(b):
            j = index.get(m.cod)
            if j is not None:
                edges.append((i, sym, j))
    if args.dot:
        return io.graph_to_dot([io.show(b) for b in objs], edges, th.name)
    return {"objects": [b.to_json() for b in objs],
            "edges": [{"from": i, "op": s, "to": j} for i, s, j in edges]}


EXAMPLES = ("output-state", "readonly-state", "view-update", "dyck-stack", "tape")


def _example_view(name, args):
    V = [0, 1, 2]
    if name == "output-state":
        return output_state_view(V, V, lambda v: v)
    if name == "readonly-state":
        return readonly_state_view(V, V, lambda v: v)
    if name == "view-update":
        from .builtins import store_theory
        st = store_theory({"a": (0, 1), "b": (0, 1, 2), "c": (0, 1)})
        return view_update_view(st, "b")
    if name == "dyck-stack":
        return dyck_stack_view(BoundedBracketMagma(4), 4)
    if name == "tape":
        return tape_view()
    raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def cmd_cofunctor(args):
    rng = random.Random(args.seed)
    if args.interpretation:
        obj, base = _json_arg(args.interpretation)
        f = io.interpretation_from_json(obj, base)
        view = induced_cofunctor(f)
    else:
        view = _example_view(args.example or "output-state", args)
    S, T = view.source, view.target
    if S.kind == "tape":
        objects = [random_tape(rng) for _ in range(50)]

        def out_of(W):
            return [sample_revinput_out(W, rng, values=range(4)) for _ in range(4)]
    else:
        objects = S.enumerate_objects()[:args.max_objects]

        def out_of(b):
            return T.out(b, limit=30)
    samples = sample_triples(view, rng, args.samples, objects, out_of)
    rep = check_view_axioms(view, samples)
    out = {"cofunctor": view.name, "checked": rep.checked, "ok": rep.ok,
           "failures": [str(x) for x in rep.failures[:20]]}
    if not rep.ok:
        raise Failed(out)
    return out


def _categories(args):
    if args.category:
        obj, _ = _json_arg(args.category)
        return [io.category_from_json(obj)]
    return category_corpus()


def cmd_presheaf(args):
    A = list(range(args.size))
    out, ok = [], True
    for B in _categories(args):
        m = check_monad_laws(B, A)
        c = check_comonad_laws(B, A)
        ok = ok and m.ok and c.ok
        out.append({"category": B.name, "monad": m.ok, "comonad": c.ok,
                    "monad_checked": m.checked, "comonad_checked": c.checked})
    res = {"ok": ok, "categories": len(out), "results": out}
    if not ok:
        raise Failed(res)
    return res


def cmd_dtu(args):
    cats = _categories(args)
    if args.term:
        B = cats[0]
        obj, _ = _json_arg(args.term)
        t = io.term_from_json(obj)
        nf = dtu_normal_form(B, t)
        return {"normal_form": [[f, a] for f, a in nf], "term": io.term_to_json(dtu_embed(B, nf))}
    if args.show_theory:
        return io.theory_to_json(dtu_theory(cats[0]))
    A = list(range(args.size))
    bad = []
    for B in cats:
        for e in t_elements(B, A):
            if dtu_normal_form(B, dtu_embed(B, e)) != e:
                bad.append({"category": B.name, "element": e})
                break
    res = {"ok": not bad, "categories": len(cats), "failures": bad[:20]}
    if bad:
        raise Failed(res)
    return res


def cmd_costructure(args):
    if args.container:
        obj, _ = _json_arg(args.container)
        dcs = [(obj.get("name", "container"), io.container_from_json(obj))]
    else:
        dcs = [(B.name, category_to_dc(B)) for B in _categories(args)]
    if args.idempotency:
        res = []
        for name, dc in dcs:
            B = dc_to_category(dc, name)
            omap, _ = idempotency_check(B)
            res.append({"category": name, "iso": True, "objects": len(omap)})
        return {"ok": True, "results": res}
    if args.dual:
        A = list(range(args.size))
        res, ok = [], True
        for name, dc in dcs:
            th = check_theta(dc, A)
            refl = check_reflection_unit(dc, A)
            ok = ok and th.ok and refl.ok
            res.append({"category": name, "dual_size": dual_monad(dc, A).size(),
                        "theta": th.ok, "reflection_unit": refl.ok})
        out = {"ok": ok, "results": res}
        if not ok:
            raise Failed(out)
        return out
    name, dc = dcs[0]
    B = behaviour_category_of_comonad(dc, name)
    if args.dot:
        return io.category_to_dot(B, name)
    return io.category_to_json(B)


def cmd_cofree(args):
    obj, _ = _json_arg(_need(args, "functor"))
    F = io.functor_from_json(obj)
    d = args.depth
    if d > args.max_depth:
        raise InputError(f"depth {d} exceeds --max-depth {args.max_depth}")
    if args.coalgebra:
        cobj, _ = _json_arg(args.coalgebra)
        coalg = {s: (v[0], tuple(v[1])) for s, v in cobj.items()}
        T = unfold(coalg, _need(args, "state"), d)
        problems = check_tree(F, T, d)
        if problems:
            raise InputError(f"coalgebra does not match the functor: {problems[0]}")
        return io.ftree_to_dot(F, T) if args.dot else io.ftree_to_json(T)
    if args.graph:
        G = behaviour_graph(F, d, cap=args.max_states)
        if args.dot:
            return io.graph_to_dot([io.dumps(io.ftree_to_json(T)) for T in G.nodes], G.edges)
        problems = check_edge_composition(G)
        return {"nodes": len(G.nodes), "edges": len(G.edges), "composition_ok": not problems}
    trees = enumerate_ftrees(F, d, cap=args.max_states)
    return {"count": len(trees), "trees": [io.ftree_to_json(T) for T in trees[:args.max_objects]]}


def cmd_dyck(args):
    if args.census is not None:
        return {"n": args.census, "count": census(args.census), "catalan": catalan(args.census)}
    if args.word is not None and args.stack:
        magma = FreeMagma() if args.magma == "free" else BoundedBracketMagma(4)
        return {"stack": list(dyck_run_stack(args.word, magma))}
    if args.word is not None:
        n = args.start
        ok = affine_dyck_check(args.word, n, args.end) if args.end is not None else \
            affine_dyck_check(args.word, n, end_height(args.word, n))
        h = end_height(args.word, n)
        return {"word": args.word, "from": n, "ok": ok, "to": "inf" if h == INF else h}
    raise InputError("give --census N or --word W")


def cmd_dfa_derive(args):
    obj, _ = _json_arg(_need(args, "dfa"))
    M = io.dfa_from_json(obj)
    letters = list(_need(args, "word"))
    D = M
    for e in letters:
        D = dfa_derivative(D, e)
    if args.check is not None:
        w0 = tuple(letters)
        bad = [list(w) for w in words(M.alphabet, args.check)
               if D.accepts(w) != M.accepts(w0 + w)]
        if bad:
            raise Failed({"ok": False, "counterexamples": bad[:20]})
    return io.dfa_to_json(D)


COMMANDS = {
    "run": cmd_run, "check-laws": cmd_check_laws, "bisim": cmd_bisim,
    "minimize": cmd_minimize, "behave": cmd_behave, "classify": cmd_classify,
    "behaviour-cat": cmd_behaviour_cat, "cofunctor": cmd_cofunctor,
    "presheaf": cmd_presheaf, "dtu": cmd_dtu, "costructure": cmd_costructure,
    "cofree": cmd_cofree, "dyck": cmd_dyck, "dfa-derive": cmd_dfa_derive,
}


def build_parser():
    env_seed = os.environ.get("COMODEL_KIT_SEED")
    p = argparse.ArgumentParser(prog="comodel-kit",
                                description="Comodels, behaviours and costructure of algebraic theories.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=int(env_seed) if env_seed else 0)
    common.add_argument("--max-states", type=int, default=MAX_STATES)
    common.add_argument("--max-objects", type=int, default=MAX_OBJECTS)
    common.add_argument("--max-depth", type=int, default=MAX_DEPTH)
    common.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def theory_flags(sp):
        sp.add_argument("--theory", help="theory JSON (path or inline)")
        sp.add_argument("--builtin", help="built-in theory name")
        sp.add_argument("--values", help="comma-separated value set")
        sp.add_argument("--n-max", type=int, help="largest height probe (dyck)")
        sp.add_argument("--locations", help='store locations as JSON, e.g. {"a":[0,1]}')

    sp = sub.add_parser("run", parents=[common], help="run a term from a state")
    sp.add_argument("--comodel")
    sp.add_argument("--state")
    sp.add_argument("--term")

    sp = sub.add_parser("check-laws", parents=[common], help="law check a structure")
    for flag in ("--comodel", "--model", "--cofunctor", "--container", "--category"):
        sp.add_argument(flag)

    sp = sub.add_parser("bisim", parents=[common], help="largest bisimulation")
    sp.add_argument("--comodel")
    sp.add_argument("--comodel2")
    sp.add_argument("--state")
    sp.add_argument("--state2")

    sp = sub.add_parser("minimize", parents=[common], help="quotient by bisimilarity")
    sp.add_argument("--comodel")

    sp = sub.add_parser("behave", parents=[common], help="behaviour of a state")
    sp.add_argument("--comodel")
    sp.add_argument("--state")

    sp = sub.add_parser("classify", parents=[common], help="classifying comodel of a behaviour")
    theory_flags(sp)
    sp.add_argument("--behaviour")

    sp = sub.add_parser("behaviour-cat", parents=[common], help="behaviour category slice")
    theory_flags(sp)

    sp = sub.add_parser("cofunctor", parents=[common], help="cofunctor axiom suite")
    sp.add_argument("--interpretation")
    sp.add_argument("--example", choices=EXAMPLES)
    sp.add_argument("--samples", type=int, default=500)

    for name, hlp in (("presheaf", "presheaf monad and comonad laws"),
                      ("dtu", "dependently typed update theory")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("--category", help="category JSON; default is the built-in corpus")
        sp.add_argument("--size", type=int, default=2, help="size of the value set A")
        if name == "dtu":
            sp.add_argument("--term")
            sp.add_argument("--show-theory", action="store_true")

    sp = sub.add_parser("costructure", parents=[common], help="directed containers")
    sp.add_argument("--container")
    sp.add_argument("--category")
    sp.add_argument("--idempotency", action="store_true")
    sp.add_argument("--dual", action="store_true")
    sp.add_argument("--size", type=int, default=2)

    sp = sub.add_parser("cofree", parents=[common], help="trees of a polynomial functor")
    sp.add_argument("--functor")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--graph", action="store_true")
    sp.add_argument("--coalgebra")
    sp.add_argument("--state")

    sp = sub.add_parser("dyck", parents=[common], help="Dyck words and stacks")
    sp.add_argument("--census", type=int)
    sp.add_argument("--word")
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--end", type=int)
    sp.add_argument("--stack", action="store_true")
    sp.add_argument("--magma", choices=("free", "bounded"), default="free")

    sp = sub.add_parser("dfa-derive", parents=[common], help="language derivative of a DFA")
    sp.add_argument("--dfa")
    sp.add_argument("--word", help="letters to derive by, in order")
    sp.add_argument("--check", type=int, help="verify membership up to this word length")
    return p


def _write(args, result):
    text = result if isinstance(result, str) else io.dumps(result) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diag(kind, message, **extra):
    sys.stderr.write(io.dumps({"error": kind, "message": message, **extra}) + "\n")


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except Failed as f:
        _write(args, f.report)
        return 1
    except LawViolation as e:
        _diag(type(e).__name__, str(e), witness=str(e.witness))
        return 1
    except (ComodelKitError, KeyError, ValueError, TypeError, json.JSONDecodeError) as e:
        _diag(type(e).__name__, str(e))
        return 2
    _write(args, result)
    return 0


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
