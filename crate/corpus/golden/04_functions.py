def f(a, b=2, *args, c, d=4, **kwargs) -> int:
    return a + b + c + d + len(args) + len(kwargs)


def g(x, /, y, *, z=None):
    pass


def h():
    return f(1, *[5, 6], c=3, **{'e': 7})
