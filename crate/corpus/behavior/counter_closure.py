_calls = 0


def make_counter(start=0, step=1):
    count = start

    def increment():
        nonlocal count
        count += step
        return count
    return increment


def tracked(fn):
    def wrapper(*args, **kwargs):
        global _calls
        _calls += 1
        return fn(*args, **kwargs)
    wrapper.__name__ = fn.__name__
    return wrapper


@tracked
def add(a, b=2, /, c=3):
    return a + b + c


def calls():
    return _calls
