"""Compare our serialized trees with CPython's `ast` for the same sources.

Usage: canon.py DIR. DIR holds pairs NAME.py / NAME.json (our tree for
NAME.py). Prints one line per mismatch and exits 1 if there were any.
"""
import ast
import json
import os
import sys

CONV = {None: -1, "s": 115, "r": 114, "a": 97}


def theirs(n):
    if n is None:
        return None
    if isinstance(n, list):
        return [theirs(x) for x in n]
    t = type(n).__name__
    if isinstance(n, ast.Module):
        return theirs(n.body)
    if isinstance(n, ast.FunctionDef):
        return (t, n.name, targs(n.args), theirs(n.returns), theirs(n.decorator_list), theirs(n.body))
    if isinstance(n, ast.ClassDef):
        return (t, n.name, theirs(n.bases), theirs(n.keywords), theirs(n.decorator_list), theirs(n.body))
    if isinstance(n, (ast.If, ast.While)):
        return (t, theirs(n.test), theirs(n.body), theirs(n.orelse))
    if isinstance(n, ast.For):
        return (t, theirs(n.target), theirs(n.iter), theirs(n.body), theirs(n.orelse))
    if isinstance(n, ast.With):
        return (t, [(theirs(i.context_expr), theirs(i.optional_vars)) for i in n.items], theirs(n.body))
    if isinstance(n, ast.Try):
        hs = [(theirs(h.type), h.name, theirs(h.body)) for h in n.handlers]
        return (t, theirs(n.body), hs, theirs(n.orelse), theirs(n.finalbody))
    if isinstance(n, ast.Import):
        return (t, [(a.name, a.asname) for a in n.names])
    if isinstance(n, ast.ImportFrom):
        return (t, n.module, [(a.name, a.asname) for a in n.names], n.level)
    if isinstance(n, ast.Return):
        return (t, theirs(n.value))
    if isinstance(n, (ast.Pass, ast.Break, ast.Continue)):
        return (t,)
    if isinstance(n, ast.Raise):
        return (t, theirs(n.exc), theirs(n.cause))
    if isinstance(n, ast.Assert):
        return (t, theirs(n.test), theirs(n.msg))
    if isinstance(n, ast.Assign):
        return (t, theirs(n.targets), theirs(n.value))
    if isinstance(n, ast.AugAssign):
        return (t, theirs(n.target), type(n.op).__name__, theirs(n.value))
    if isinstance(n, ast.AnnAssign):
        return (t, theirs(n.target), theirs(n.annotation), theirs(n.value))
    if isinstance(n, ast.Expr):
        return (t, theirs(n.value))
    if isinstance(n, (ast.Global, ast.Nonlocal)):
        return (t, list(n.names))
    if isinstance(n, ast.Delete):
        return (t, theirs(n.targets))
    if isinstance(n, ast.Name):
        return ("Name", n.id)
    if isinstance(n, ast.Constant):
        return ("Constant", type(n.value).__name__, repr(n.value))
    if isinstance(n, ast.JoinedStr):
        return ("JoinedStr", [theirs(v) for v in n.values if isinstance(v, ast.FormattedValue)])
    if isinstance(n, ast.FormattedValue):
        return ("FormattedValue", theirs(n.value), n.conversion, theirs(n.format_spec))
    if isinstance(n, (ast.Tuple, ast.List, ast.Set)):
        return (t, theirs(n.elts))
    if isinstance(n, ast.Dict):
        return (t, theirs(n.keys), theirs(n.values))
    if isinstance(n, (ast.ListComp, ast.SetComp, ast.GeneratorExp)):
        return (t, theirs(n.elt), theirs(n.generators))
    if isinstance(n, ast.DictComp):
        return (t, theirs(n.key), theirs(n.value), theirs(n.generators))
    if isinstance(n, ast.comprehension):
        return ("comprehension", theirs(n.target), theirs(n.iter), theirs(n.ifs))
    if isinstance(n, ast.BinOp):
        return (t, theirs(n.left), type(n.op).__name__, theirs(n.right))
    if isinstance(n, ast.UnaryOp):
        return (t, type(n.op).__name__, theirs(n.operand))
    if isinstance(n, ast.BoolOp):
        return (t, type(n.op).__name__, theirs(n.values))
    if isinstance(n, ast.Compare):
        return (t, theirs(n.left), [type(o).__name__ for o in n.ops], theirs(n.comparators))
    if isinstance(n, ast.Call):
        return (t, theirs(n.func), theirs(n.args), theirs(n.keywords))
    if isinstance(n, ast.keyword):
        return ("keyword", n.arg, theirs(n.value))
    if isinstance(n, ast.Attribute):
        return (t, theirs(n.value), n.attr)
    if isinstance(n, ast.Subscript):
        return (t, theirs(n.value), theirs(n.slice))
    if isinstance(n, ast.Slice):
        return (t, theirs(n.lower), theirs(n.upper), theirs(n.step))
    if isinstance(n, ast.Lambda):
        return (t, targs(n.args), theirs(n.body))
    if isinstance(n, ast.IfExp):
        return (t, theirs(n.test), theirs(n.body), theirs(n.orelse))
    if isinstance(n, ast.Starred):
        return (t, theirs(n.value))
    raise ValueError("unsupported node " + t)


def targs(a):
    p = lambda x: None if x is None else (x.arg, theirs(x.annotation))
    return (
        [p(x) for x in a.posonlyargs],
        [p(x) for x in a.args],
        p(a.vararg),
        [p(x) + (theirs(d),) for x, d in zip(a.kwonlyargs, a.kw_defaults)],
        p(a.kwarg),
        theirs(a.defaults),
    )


def tag(v):
    """Externally tagged serde value -> (variant, payload)."""
    if isinstance(v, str):
        return v, None
    (k, payload), = v.items()
    return k, payload


def ours_body(stmts):
    return [ours_stmt(s) for s in stmts if tag(s["kind"])[0] != "Comment"]


def ours_opt_body(b):
    return [] if b is None else ours_body(b)


def ours_stmt(s):
    k, p = tag(s["kind"])
    e, b = ours, ours_body
    if k == "FunctionDef":
        return (k, p["name"], oargs(p["params"]), e(p["returns"]), e(p["decorators"]), b(p["body"]))
    if k == "ClassDef":
        return (k, p["name"], e(p["bases"]), okw(p["keywords"]), e(p["decorators"]), b(p["body"]))
    if k == "If":
        orelse = ours_opt_body(p["orelse"])
        for clause in reversed(p["elifs"]):
            orelse = [("If", e(clause["test"]), b(clause["body"]), orelse)]
        return (k, e(p["test"]), b(p["body"]), orelse)
    if k == "While":
        return (k, e(p["test"]), b(p["body"]), ours_opt_body(p["orelse"]))
    if k == "For":
        return (k, e(p["target"]), e(p["iter"]), b(p["body"]), ours_opt_body(p["orelse"]))
    if k == "With":
        return (k, [(e(i["context"]), e(i["target"])) for i in p["items"]], b(p["body"]))
    if k == "Try":
        hs = [(e(h["kind"]), h["name"], b(h["body"])) for h in p["handlers"]]
        return (k, b(p["body"]), hs, ours_opt_body(p["orelse"]), ours_opt_body(p["finalbody"]))
    if k == "Import":
        return (k, [(a["name"], a["asname"]) for a in p])
    if k == "ImportFrom":
        return (k, p["module"], [(a["name"], a["asname"]) for a in p["names"]], p["level"])
    if k == "Return":
        return (k, e(p))
    if k in ("Pass", "Break", "Continue"):
        return (k,)
    if k == "Raise":
        return (k, e(p["exc"]), e(p["cause"]))
    if k == "Assert":
        return (k, e(p["test"]), e(p["msg"]))
    if k == "Assign":
        return (k, e(p["targets"]), e(p["value"]))
    if k == "AugAssign":
        return (k, e(p["target"]), p["op"], e(p["value"]))
    if k == "AnnAssign":
        return (k, e(p["target"]), e(p["annotation"]), e(p["value"]))
    if k == "Expr":
        return (k, e(p))
    if k in ("Global", "Nonlocal"):
        return (k, list(p))
    if k == "Delete":
        return (k, e(p))
    raise ValueError("unsupported statement " + k)


def okw(kws):
    return [("keyword", kw["arg"], ours(kw["value"])) for kw in kws]


def oargs(a):
    p = lambda x: None if x is None else (x["name"], ours(x["annotation"]))
    positional = a["posonly"] + a["args"]
    return (
        [p(x) for x in a["posonly"]],
        [p(x) for x in a["args"]],
        p(a["vararg"]),
        [p(x) + (ours(x["default"]),) for x in a["kwonly"]],
        p(a["kwarg"]),
        [ours(x["default"]) for x in positional if x["default"] is not None],
    )


def const(value):
    return ("Constant", type(value).__name__, repr(value))


def opieces(pieces):
    out = []
    for piece in pieces:
        k, p = tag(piece)
        if k == "Interpolation":
            spec = p["format_spec"]
            out.append((
                "FormattedValue",
                ours(p["expr"]),
                CONV[p["conversion"]],
                None if spec is None else ("JoinedStr", opieces(spec)),
            ))
    return out


def ogens(gens):
    return [("comprehension", ours(g["target"]), ours(g["iter"]), ours(g["ifs"])) for g in gens]


def ours(x):
    if x is None:
        return None
    if isinstance(x, list):
        return [ours(i) for i in x]
    k, p = tag(x["kind"])
    if k == "Name":
        return ("Name", p)
    if k in ("Int", "Float"):
        return const(ast.literal_eval(p))
    if k == "Str":
        if all(tag(part)[0] == "Plain" for part in p):
            return const(ast.literal_eval(" ".join(tag(part)[1] for part in p)))
        values = []
        for part in p:
            pk, pp = tag(part)
            if pk == "Formatted":
                values += opieces(pp["pieces"])
        return ("JoinedStr", values)
    if k == "Bool":
        return const(p)
    if k == "NoneLit":
        return const(None)
    if k in ("Tuple", "List", "Set"):
        return (k, ours(p))
    if k == "Dict":
        keys, values = [], []
        for item in p:
            ik, ip = tag(item)
            if ik == "Pair":
                keys.append(ours(ip[0]))
                values.append(ours(ip[1]))
            else:
                keys.append(None)
                values.append(ours(ip))
        return (k, keys, values)
    if k in ("ListComp", "SetComp"):
        return (k, ours(p["elt"]), ogens(p["generators"]))
    if k == "GenExp":
        return ("GeneratorExp", ours(p["elt"]), ogens(p["generators"]))
    if k == "DictComp":
        return (k, ours(p["key"]), ours(p["value"]), ogens(p["generators"]))
    if k == "BinOp":
        return (k, ours(p["left"]), p["op"], ours(p["right"]))
    if k == "UnaryOp":
        return (k, p["op"], ours(p["operand"]))
    if k == "BoolOp":
        return (k, p["op"], ours(p["values"]))
    if k == "Compare":
        return (k, ours(p["left"]), [o for o, _ in p["ops"]], [ours(c) for _, c in p["ops"]])
    if k == "Call":
        return (k, ours(p["func"]), ours(p["args"]), okw(p["keywords"]))
    if k == "Attribute":
        return (k, ours(p["value"]), p["attr"])
    if k == "Subscript":
        return (k, ours(p["value"]), ours(p["index"]))
    if k == "Slice":
        return (k, ours(p["lower"]), ours(p["upper"]), ours(p["step"]))
    if k == "Lambda":
        return (k, oargs(p["params"]), ours(p["body"]))
    if k == "IfExp":
        return (k, ours(p["test"]), ours(p["body"]), ours(p["orelse"]))
    if k == "Starred":
        return (k, ours(p))
    raise ValueError("unsupported expression " + k)


def main(directory):
    bad = 0
    names = sorted(f[:-3] for f in os.listdir(directory) if f.endswith(".py"))
    for name in names:
        base = os.path.join(directory, name)
        with open(base + ".py", encoding="utf-8") as f:
            source = f.read()
        with open(base + ".json", encoding="utf-8") as f:
            tree = json.load(f)["module"]
        try:
            expected = theirs(ast.parse(source))
        except SyntaxError as err:
            print(f"{name}: CPython rejects source: {err}")
            bad += 1
            continue
        got = ours_body(tree["body"])
        if got != expected:
            bad += 1
            print(f"{name}: tree differs")
            for g, w in zip(got, expected):
                if g != w:
                    print(f"  ours:    {g}\n  cpython: {w}")
                    break
    print(f"checked {len(names)} sources, {bad} mismatches")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main(sys.argv[1])
