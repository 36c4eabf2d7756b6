def _reconstructor(cls, base, state):
    if base is object:
        obj = object.__new__(cls)
    else:
        obj = base.__new__(cls, state)
        if base.__init__ != object.__init__:
            base.__init__(obj, state)
    return obj


def pickle_union(obj):
    import functools, operator
    return functools.reduce, (operator.or_, obj.__args__)
