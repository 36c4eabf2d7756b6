"""Extract the bundled stdlib corpus from a CPython 3.10 installation.

Each output file holds one stdlib module's top-level imports followed by a
few of its top-level functions and classes, copied verbatim. Only code in
the supported subset is taken.

    python3 tools/build_corpus.py /usr/lib/python3.10 corpus/stdlib
"""
import ast
import os
import random
import sys

ALLOWED = {
    "Module", "FunctionDef", "ClassDef", "If", "While", "For", "With", "Try",
    "Import", "ImportFrom", "Return", "Pass", "Break", "Continue", "Raise",
    "Assert", "Assign", "AugAssign", "AnnAssign", "Expr", "Global", "Nonlocal",
    "Delete", "Name", "Constant", "Tuple", "List", "Dict", "Set", "ListComp",
    "SetComp", "DictComp", "GeneratorExp", "BinOp", "UnaryOp", "BoolOp",
    "Compare", "Call", "Attribute", "Subscript", "Slice", "Lambda", "IfExp",
    "Starred", "JoinedStr", "FormattedValue", "arguments", "arg", "keyword",
    "alias", "withitem", "ExceptHandler", "comprehension", "Load", "Store",
    "Del", "And", "Or", "Add", "Sub", "Mult", "MatMult", "Div", "Mod", "Pow",
    "LShift", "RShift", "BitOr", "BitXor", "BitAnd", "FloorDiv", "Invert",
    "Not", "UAdd", "USub", "Eq", "NotEq", "Lt", "LtE", "Gt", "GtE", "Is",
    "IsNot", "In", "NotIn",
}
SKIP_DIRS = ("test", "tests", "idlelib", "lib2to3", "site-packages", "dist-packages", "turtledemo")
TARGET_FILES = 220
MAX_DEFS = 3
MAX_LINES = 160


def decorator_ok(d):
    if isinstance(d, ast.Call):
        d = d.func
    while isinstance(d, ast.Attribute):
        d = d.value
    return isinstance(d, ast.Name)


def in_subset(node):
    for n in ast.walk(node):
        if type(n).__name__ not in ALLOWED:
            return False
        if isinstance(n, ast.Constant) and n.value is Ellipsis:
            return False
        if isinstance(n, ast.comprehension) and n.is_async:
            return False
        if isinstance(n, (ast.FunctionDef, ast.ClassDef)):
            if not all(decorator_ok(d) for d in n.decorator_list):
                return False
        if isinstance(n, ast.FormattedValue):
            if any(isinstance(m, ast.JoinedStr) for m in ast.walk(n.value)):
                return False
    return True


def segment(lines, node):
    first = min([node.lineno] + [d.lineno for d in getattr(node, "decorator_list", [])])
    return "".join(lines[first - 1:node.end_lineno])


def modules(root):
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(d for d in dirnames if d not in SKIP_DIRS and not d.startswith("."))
        for f in sorted(filenames):
            if f.endswith(".py"):
                yield os.path.join(dirpath, f)


def extract(path):
    try:
        with open(path, encoding="utf-8") as f:
            src = f.read()
        tree = ast.parse(src)
    except (SyntaxError, UnicodeDecodeError, ValueError):
        return None
    if "\t" in src or "\f" in src:
        return None
    lines = src.splitlines(keepends=True)
    imports = [segment(lines, n) for n in tree.body
               if isinstance(n, (ast.Import, ast.ImportFrom)) and in_subset(n)]
    defs = [segment(lines, n) for n in tree.body
            if isinstance(n, (ast.FunctionDef, ast.ClassDef)) and in_subset(n)]
    defs = [d for d in defs if d.count("\n") <= MAX_LINES]
    return imports, defs


def main(root, out):
    rng = random.Random(42)
    candidates = []
    for path in modules(root):
        got = extract(path)
        if got and got[1]:
            candidates.append((path, got))
    rng.shuffle(candidates)
    os.makedirs(out, exist_ok=True)
    written = 0
    for path, (imports, defs) in sorted(candidates[:TARGET_FILES]):
        chosen = rng.sample(defs, min(len(defs), rng.randint(1, MAX_DEFS)))
        rel = os.path.relpath(path, root)[:-3].replace(os.sep, "_").lstrip("_")
        body = "".join(imports)
        if body:
            body += "\n\n"
        body += "\n\n".join(chosen)
        with open(os.path.join(out, rel + ".py"), "w", encoding="utf-8") as f:
            f.write(body)
        written += 1
    print(f"{len(candidates)} candidate modules, wrote {written} files to {out}")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
