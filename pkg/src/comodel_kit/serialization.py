"""JSON and DOT for the package's data.

Variable names that are decimal strings are read as integers, so
interpretations can write ``{"var": "0"}`` for the first argument and
programs can return numbers.  Theories may be given inline, as a path to a
JSON file, or as a built-in reference ``{"builtin": name, ...params}``.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path

from .builtins import builtin
from .comodel import Comodel
from .costructure import DirectedContainer
from .cofree import DFA, FTree, PolyFunctor
from .dyck import INF
from .errors import InputError
from .presheaf import Cofunctor, SmallCategory
from .theory import Equation, Interpretation, Op, Signature, Term, Theory, Var


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, default=_default)


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o, key=str)
    if isinstance(o, tuple):
        return list(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _name(v):
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    return v


# ------------------------------------------------------------------ terms

def term_to_json(t: Term):
    if isinstance(t, Var):
        return {"var": t.name if isinstance(t.name, (str, int)) else str(t.name)}
    return {"op": t.sym, "args": [term_to_json(a) for a in t.args]}


def term_from_json(obj) -> Term:
    if not isinstance(obj, dict):
        raise InputError(f"a term must be an object, got {obj!r}")
    if "var" in obj:
        return Var(_name(obj["var"]))
    if "op" in obj:
        return Op(obj["op"], [term_from_json(a) for a in obj.get("args", [])])
    raise InputError("a term needs 'var' or 'op'")


# --------------------------------------------------------------- theories

def theory_to_json(th: Theory):
    if th.kind is not None and th.kind != "dtu":
        ref = {"builtin": th.kind}
        for k, v in th.params.items():
            ref[k] = {loc: list(vals) for loc, vals in v.items()} if isinstance(v, dict) else _jsonable(v)
        return ref
    return {
        "name": th.name,
        "ops": [{"name": s, "arity": th.arity(s)} for s in th.signature.symbols],
        "equations": [{"vars": [x if isinstance(x, (str, int)) else str(x) for x in eq.context],
                       "lhs": term_to_json(eq.lhs), "rhs": term_to_json(eq.rhs),
                       **({"name": eq.name} if eq.name else {})}
                      for eq in th.equations],
    }


def theory_from_json(obj, base_dir=".") -> Theory:
    if isinstance(obj, str):
        path = Path(base_dir) / obj
        return theory_from_json(load_json(path), path.parent)
    if not isinstance(obj, dict):
        raise InputError("a theory must be an object, a path or a built-in reference")
    if "builtin" in obj:
        params = {k: v for k, v in obj.items() if k != "builtin"}
        if "values" in params:
            params["values"] = tuple(params["values"])
        if "locations" in params:
            params["locations"] = {loc: tuple(v) for loc, v in params["locations"].items()}
        try:
            return builtin(obj["builtin"], **params)
        except TypeError as e:
            raise InputError(f"bad parameters for {obj['builtin']!r}: {e}") from None
    try:
        ar = {op["name"]: int(op["arity"]) for op in obj["ops"]}
        eqs = [Equation(tuple(_name(v) for v in e.get("vars", [])),
                        term_from_json(e["lhs"]), term_from_json(e["rhs"]), e.get("name", ""))
               for e in obj.get("equations", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad theory: {e}") from None
    return Theory(obj.get("name", "theory"), Signature(ar), eqs)


def interpretation_from_json(obj, base_dir=".") -> Interpretation:
    if isinstance(obj, str):
        path = Path(base_dir) / obj
        return interpretation_from_json(load_json(path), path.parent)
    src = theory_from_json(obj["source"], base_dir)
    tgt = theory_from_json(obj["target"], base_dir)
    assign = {sym: term_from_json(t) for sym, t in obj["assign"].items()}
    return Interpretation(src, tgt, assign)


def interpretation_to_json(f: Interpretation):
    return {"source": theory_to_json(f.source), "target": theory_to_json(f.target),
            "assign": {sym: term_to_json(t) for sym, t in sorted(f.assign.items())}}


# --------------------------------------------------------------- comodels

def comodel_from_json(obj, base_dir=".") -> Comodel:
    if isinstance(obj, str):
        path = Path(base_dir) / obj
        return comodel_from_json(load_json(path), path.parent)
    try:
        th = theory_from_json(obj["theory"], base_dir)
        coops = {sym: {s: (int(v[0]), v[1]) for s, v in tab.items()}
                 for sym, tab in obj["coops"].items()}
        return Comodel(th, obj["states"], coops, obj.get("name", ""))
    except (KeyError, TypeError, IndexError, ValueError) as e:
        raise InputError(f"bad comodel: {e}") from None


def comodel_to_json(c: Comodel):
    return {"theory": theory_to_json(c.theory), "states": list(c.states),
            "coops": {sym: {s: [i, n] for s, (i, n) in tab.items()}
                      for sym, tab in c.coops.items()}}


# ------------------------------------------------------------- categories

def _comp_key(g, f):
    return f"{g}∘{f}"


def category_to_json(B: SmallCategory):
    return {
        "objects": [str(b) for b in B.objects],
        "arrows": [{"name": str(f), "dom": str(d), "cod": str(c)}
                   for f, (d, c) in B.arrows.items()],
        "ids": {str(b): str(B.ids[b]) for b in B.objects},
        "comp": {_comp_key(g, f): str(B.compose(g, f)) for g, f in B.composable()},
    }


def category_from_json(obj, name="") -> SmallCategory:
    try:
        arrows = {a["name"]: (a["dom"], a["cod"]) for a in obj["arrows"]}
        objects = list(obj["objects"])
        ids = dict(obj["ids"])
        keys = {_comp_key(g, f): (g, f) for g in arrows for f in arrows
                if arrows[f][1] == arrows[g][0]}
        comp = {}
        for k, h in obj.get("comp", {}).items():
            if k not in keys:
                raise InputError(f"composite {k!r} is not of two composable arrows")
            comp[keys[k]] = h
    except (KeyError, TypeError) as e:
        raise InputError(f"bad category: {e}") from None
    return SmallCategory(objects, arrows, ids, comp, name or obj.get("name", ""))


def cofunctor_to_json(F: Cofunctor):
    return {"source": category_to_json(F.source), "target": category_to_json(F.target),
            "obj": {str(b): str(c) for b, c in F.obj.items()},
            "lift": {str(b): {str(f): str(F.lift[(b, f)]) for f in F.target.out(F.obj[b])}
                     for b in F.source.objects}}


def cofunctor_from_json(obj) -> Cofunctor:
    B = category_from_json(obj["source"])
    C = category_from_json(obj["target"])
    lift = {(b, f): g for b, tab in obj["lift"].items() for f, g in tab.items()}
    return Cofunctor(B, C, dict(obj["obj"]), lift)


def container_to_json(dc: DirectedContainer):
    return {
        "shapes": [str(x) for x in dc.shapes],
        "positions": {str(x): [str(e) for e in dc.positions[x]] for x in dc.shapes},
        "ids": {str(x): str(dc.ids[x]) for x in dc.shapes},
        "cod": {str(x): {str(e): str(dc.cod[(x, e)]) for e in dc.positions[x]} for x in dc.shapes},
        "rho": {str(x): {str(f): {str(g): str(h) for g, h in dc.rho[(x, f)].items()}
                         for f in dc.positions[x]} for x in dc.shapes},
    }


def container_from_json(obj) -> DirectedContainer:
    try:
        shapes = list(obj["shapes"])
        cod = {(x, e): c for x, tab in obj["cod"].items() for e, c in tab.items()}
        rho = {(x, f): dict(tab) for x, per in obj["rho"].items() for f, tab in per.items()}
        return DirectedContainer(shapes, obj["positions"], obj["ids"], cod, rho)
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"bad directed container: {e}") from None


def dfa_to_json(M: DFA):
    return {"alphabet": list(M.alphabet), "states": list(M.states),
            "trans": {s: {e: M.trans[s][e] for e in M.alphabet} for s in M.states},
            "accept": [s for s in M.states if s in M.accept], "start": M.start}


def dfa_from_json(obj) -> DFA:
    try:
        return DFA(obj["alphabet"], obj["states"], obj["trans"], obj["accept"], obj["start"])
    except (KeyError, TypeError) as e:
        raise InputError(f"bad DFA: {e}") from None


def functor_from_json(obj) -> PolyFunctor:
    """``{"symbol": arity or [edge labels]}``."""
    if not isinstance(obj, dict) or not obj:
        raise InputError("a functor is a non-empty object of symbols")
    return PolyFunctor(obj)


def ftree_to_json(T: FTree):
    out = {"sym": _jsonable(T.sym)}
    if T.label is not None:
        out["label"] = _jsonable(T.label)
    if T.kids is not None:
        out["kids"] = [ftree_to_json(k) for k in T.kids]
    return out


def behaviour_to_json(b):
    return b.to_json()


def height_json(h):
    return "inf" if h == INF else h


# -------------------------------------------------------------------- DOT

def _q(s) -> str:
    s = str(s).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{s}"'


def category_to_dot(B: SmallCategory, name="B") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for b in B.objects:
        lines.append(f"  {_q(b)};")
    for f, (d, c) in B.arrows.items():
        if f != B.ids[d]:
            lines.append(f"  {_q(d)} -> {_q(c)} [label={_q(f)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(nodes, edges, name="G") -> str:
    """``nodes`` are labels; ``edges`` are ``(i, label, j)`` index triples."""
    lines = [f"digraph {_q(name)} {{"]
    for i, n in enumerate(nodes):
        lines.append(f"  n{i} [label={_q(n)}];")
    for i, e, j in edges:
        lines.append(f"  n{i} -> n{j} [label={_q(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ftree_to_dot(F: PolyFunctor, T: FTree, name="tree") -> str:
    lines = [f"digraph {_q(name)} {{"]
    counter = [0]

    def go(node):
        me = f"n{counter[0]}"
        counter[0] += 1
        text = str(node.sym) if node.label is None else f"{node.sym} | {node.label}"
        if node.kids is None:
            text += " …"
        lines.append(f"  {me} [label={_q(text)}];")
        for e, k in zip(F.edges[node.sym], node.kids or ()):
            child = go(k)
            lines.append(f"  {me} -> {child} [label={_q(e)}];")
        return me

    go(T)
    lines.append("}")
    return "\n".join(lines) + "\n"


def show(x) -> str:
    """Compact text for a behaviour object or tree, used in DOT labels."""
    if hasattr(x, "to_json"):
        return json.dumps(x.to_json(), sort_keys=True, ensure_ascii=False, default=_default)
    return str(x)


def relative_base(path) -> str:
    return os.path.dirname(os.path.abspath(path))
