import os
import stat
from itertools import filterfalse
from types import GenericAlias


def _do_cmp(f1, f2):
    bufsize = BUFSIZE
    with open(f1, 'rb') as fp1, open(f2, 'rb') as fp2:
        while True:
            b1 = fp1.read(bufsize)
            b2 = fp2.read(bufsize)
            if b1 != b2:
                return False
            if not b1:
                return True


def clear_cache():
    """Clear the filecmp cache."""
    _cache.clear()
