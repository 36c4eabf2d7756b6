import ctypes
import weakref
from . import heap
from . import get_context
from .context import reduction, assert_spawning


class Synchronized(SynchronizedBase):
    value = make_property('value')


def make_property(name):
    try:
        return prop_cache[name]
    except KeyError:
        d = {}
        exec(template % ((name,)*7), d)
        prop_cache[name] = d[name]
        return d[name]
