"""JSON file formats and the named workspace used by the CLI.

Algebra files: {"name", "size", "signature": [{"symbol","arity"}...],
"operations": {symbol: nested-array}} with an arity-k table a k-deep nested
array (arity 0 is a bare integer).  Congruence files: {"algebra", "blocks"}.
Equation files: a JSON array of two-element arrays of term strings.
"""

import json
import os

from .algebras import AlgebraError, FiniteAlgebra, Signature, _unflatten
from .congruences import Congruence
from .terms import parse_term, term_to_str


class InputError(ValueError):
    """Malformed file or reference; maps to CLI exit code 2."""


def algebra_to_json(alg):
    ops = {}
    for sym, ar in alg.signature.symbols:
        ops[sym] = _unflatten(alg.tables[sym], ar, alg.size)
    return {"name": alg.name or "algebra", "size": alg.size,
            "signature": [{"symbol": s, "arity": a}
                          for s, a in alg.signature.symbols],
            "operations": ops}


def algebra_from_json(data):
    try:
        sig = Signature([(entry["symbol"], entry["arity"])
                         for entry in data["signature"]])
        return FiniteAlgebra(data["size"], sig, data["operations"],
                             name=data.get("name"))
    except (KeyError, TypeError, AlgebraError) as exc:
        raise InputError("bad algebra file: %s" % exc)


def congruence_to_json(cong, algebra_name):
    return {"algebra": algebra_name, "blocks": cong.blocks()}


def congruence_from_json(data, alg):
    try:
        if data.get("algebra") not in (None, alg.name):
            raise InputError("congruence file names algebra %r, expected %r"
                             % (data.get("algebra"), alg.name))
        return Congruence.from_blocks(alg.size, data["blocks"])
    except (KeyError, TypeError, AlgebraError) as exc:
        raise InputError("bad congruence file: %s" % exc)


def equations_to_json(equations):
    return [[term_to_str(l), term_to_str(r)] for l, r in equations]


def equations_from_json(data):
    try:
        return [(parse_term(l), parse_term(r)) for l, r in data]
    except (TypeError, ValueError) as exc:
        raise InputError("bad equations file: %s" % exc)


GROUP_EQUATIONS = [
    ("(mul (mul x0 x1) x2)", "(mul x0 (mul x1 x2))"),
    ("(mul e x0)", "x0"),
    ("(mul x0 e)", "x0"),
    ("(mul (inv x0) x0)", "e"),
    ("(mul x0 (inv x0))", "e"),
]

ABELIAN_GROUP_EQUATIONS = GROUP_EQUATIONS + [("(mul x0 x1)", "(mul x1 x0)")]

BUILTIN_EQUATIONS = {
    "groups": GROUP_EQUATIONS,
    "abelian-groups": ABELIAN_GROUP_EQUATIONS,
}


def builtin_equations(name):
    if name not in BUILTIN_EQUATIONS:
        raise InputError("unknown builtin equation set %r (have: %s)"
                         % (name, ", ".join(sorted(BUILTIN_EQUATIONS))))
    return [(parse_term(l), parse_term(r)) for l, r in BUILTIN_EQUATIONS[name]]


def datum_to_json(d):
    """Serialize a datum; class indices refer to the least-representative
    ordering, action tables are keyed "symbol:position"."""
    fdelta = {}
    for sym, ar in d.signature.symbols:
        tab = d.fdelta[sym]
        if ar == 0:
            fdelta[sym] = tab[()]
            continue
        nq = d.qsize()

        # nested dims: [class][q2]...[qn]
        def nest(key, dims, tab=tab):
            if not dims:
                return tab[tuple(key)]
            return [nest(key + [i], dims[1:]) for i in range(dims[0])]

        fdelta[sym] = nest([], [d.dc.size] + [nq] * (ar - 1))
    actions = {}
    for (sym, spos), tab in sorted(d.actions.items()):
        if len(spos) != 1:
            continue  # files carry the unary action shape only
        i = spos[0]
        ar = d.signature.arity(sym)
        nq = d.qsize()

        def nest(key, dims, i=i, tab=tab):
            if not dims:
                qrest = tuple(key[:-1])
                return tab[(qrest, (key[-1],))]
            return [nest(key + [v], dims[1:]) for v in range(dims[0])]

        actions["%s:%d" % (sym, i)] = nest([], [nq] * (ar - 1) + [d.dc.size])
    rho = [d.dc.rho_class[d.dc.class_of[p]] for p in range(len(d.dc.pairs))]
    from .algebras import _unflatten as unflat
    return {
        "name": d.name or "datum",
        "q_algebra": algebra_to_json(d.q_alg),
        "mq": unflat(d.mq_flat, 3, d.qsize()),
        "carrier_size": d.asize,
        "m": unflat(d.m_flat, 3, d.asize),
        "alpha_blocks": d.alpha.blocks(),
        "rho": rho,
        "lifting": list(d.lifting),
        "fdelta": fdelta,
        "actions": actions,
    }


def datum_from_json(data):
    from .datum import datum_from_tables
    try:
        qdata = data["q_algebra"]
        sig = Signature([(e["symbol"], e["arity"]) for e in qdata["signature"]])
        nq = qdata["size"]
        m_table = data["m"]
        if isinstance(m_table, str):
            # a term needs the bundled source algebra to evaluate over
            if "source_algebra" not in data:
                raise InputError("datum gives m as a term but bundles no "
                                 "source_algebra to interpret it in")
            src = algebra_from_json(data["source_algebra"])
            term = parse_term(m_table)
            from .terms import eval_term
            n = data["carrier_size"]
            if src.size != n:
                raise InputError("source_algebra size differs from carrier_size")
            m_table = [[[eval_term(src, term, {"x0": a, "x1": b, "x2": c})
                         for c in range(n)] for b in range(n)] for a in range(n)]
        fdelta = {}
        for sym, ar in sig.symbols:
            raw = data["fdelta"][sym]
            tab = {}
            if ar == 0:
                tab[()] = raw
            else:
                def walk(node, key, depth):
                    if depth == ar:
                        tab[tuple(key)] = node
                        return
                    for i, child in enumerate(node):
                        walk(child, key + [i], depth + 1)
                walk(raw, [], 0)
            fdelta[sym] = tab
        actions = {}
        for key, raw in data["actions"].items():
            sym, pos = key.split(":")
            pos = int(pos)
            ar = sig.arity(sym)
            tab = {}

            def walk(node, key2, depth):
                if depth == ar:
                    tab[(tuple(key2[:-1]), (key2[-1],))] = node
                    return
                for i, child in enumerate(node):
                    walk(child, key2 + [i], depth + 1)

            walk(raw, [], 0)
            actions[(sym, (pos,))] = tab
        return datum_from_tables(
            qdata["operations"], nq, data["mq"], data["carrier_size"],
            m_table, data["alpha_blocks"], data["rho"], data["lifting"],
            fdelta, actions, sig, name=data.get("name"))
    except (KeyError, TypeError, ValueError, AlgebraError) as exc:
        raise InputError("bad datum file: %s" % exc)


def cocycle_to_json(d, T, datum_name=None):
    tables = {}
    for sym, ar in d.signature.symbols:
        if ar == 0:
            tables[sym] = T.tables[sym][()]
            continue
        nq = d.qsize()

        def nest(key, depth, sym=sym):
            if depth == ar:
                return T.tables[sym][tuple(key)]
            return [nest(key + [i], depth + 1) for i in range(nq)]

        tables[sym] = nest([], 0)
    return {"datum": datum_name or d.name or "datum", "tables": tables}


def cocycle_from_json(d, data):
    from .cocycles import TwoCocycle
    try:
        tables = {}
        for sym, ar in d.signature.symbols:
            raw = data["tables"][sym]
            tab = {}
            if ar == 0:
                tab[()] = raw
            else:
                def walk(node, key, depth):
                    if depth == ar:
                        tab[tuple(key)] = node
                        return
                    for i, child in enumerate(node):
                        walk(child, key + [i], depth + 1)
                walk(raw, [], 0)
            tables[sym] = tab
        return TwoCocycle(tables)
    except (KeyError, TypeError) as exc:
        raise InputError("bad cocycle file: %s" % exc)


def dump_json(data, path=None):
    """Canonical JSON emission: sorted keys, no whitespace drift."""
    text = json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


class Workspace:
    """Named store of loaded inputs; file references resolved eagerly."""

    def __init__(self):
        self.algebras = {}
        self.congruences = {}
        self.data = {}

    def load_algebra(self, path):
        alg = algebra_from_json(self._read(path))
        if alg.name in self.algebras:
            raise InputError("duplicate algebra name %r" % alg.name)
        self.algebras[alg.name] = alg
        return alg

    def load_congruence(self, path, alg):
        return congruence_from_json(self._read(path), alg)

    def load_equations(self, ref):
        if ref.startswith("builtin:"):
            return builtin_equations(ref.split(":", 1)[1])
        return equations_from_json(self._read(ref))

    def _read(self, path):
        if not os.path.exists(path):
            raise InputError("no such file: %s" % path)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError("%s: invalid JSON at line %d column %d"
                             % (path, exc.lineno, exc.colno))
