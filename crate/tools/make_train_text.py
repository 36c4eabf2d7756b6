"""Assemble the two BPE training texts under data/train/.

    python3 tools/make_train_text.py OUT_DIR

web.txt:  the interpreter's bundled reference topics plus system license
          texts, reflowed into plain paragraphs with whitespace runs
          collapsed, as text extracted from HTML would be.
code.txt: Python sources of a few third-party packages (click, jinja2,
          requests), none of which appear in the evaluation corpus.
"""
import importlib
import os
import pathlib
import re
import sys

WEB_LIMIT = 900_000
CODE_LIMIT = 900_000
LICENSES = ["Apache-2.0", "GPL-3", "LGPL-2.1", "MPL-2.0", "GFDL-1.3", "Artistic"]
PACKAGES = ["click", "jinja2", "requests"]


def reflow(text):
    paras = re.split(r"\n\s*\n", text)
    out = []
    for p in paras:
        words = " ".join(p.split())
        if words:
            out.append(words)
    return "\n\n".join(out)


def web_text():
    from pydoc_data.topics import topics

    parts = [reflow(topics[k]) for k in sorted(topics)]
    lic = pathlib.Path("/usr/share/common-licenses")
    for name in LICENSES:
        p = lic / name
        if p.exists():
            parts.append(reflow(p.read_text(encoding="utf-8", errors="replace")))
    return "\n\n".join(parts)[:WEB_LIMIT]


def code_text():
    parts = []
    for pkg in PACKAGES:
        root = pathlib.Path(importlib.import_module(pkg).__file__).parent
        for p in sorted(root.rglob("*.py")):
            src = p.read_text(encoding="utf-8", errors="replace")
            if "\t" not in src:
                parts.append(src)
    text = "\n".join(parts)
    cut = text.rfind("\n", 0, CODE_LIMIT)
    return text[:cut + 1]


def main(out):
    os.makedirs(out, exist_ok=True)
    for name, text in [("web.txt", web_text()), ("code.txt", code_text())]:
        with open(os.path.join(out, name), "w", encoding="utf-8") as f:
            f.write(text)
        print(name, len(text))


if __name__ == "__main__":
    main(sys.argv[1])
