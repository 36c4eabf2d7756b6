import contextlib


def copy(src, dst):
    with open(src) as fin, open(dst, 'w') as fout:
        fout.write(fin.read())
    with contextlib.suppress(OSError):
        pass
