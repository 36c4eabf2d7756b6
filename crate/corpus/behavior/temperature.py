import contextlib


class Recorder:
    def __init__(self):
        self.events = []

    def __enter__(self):
        self.events.append('enter')
        return self

    def __exit__(self, exc_type, exc, tb):
        self.events.append('exit:' + (exc_type.__name__ if exc_type else 'ok'))
        return exc_type is KeyError


def convert(value, unit):
    conversions = {
        'C': lambda v: v,
        'F': lambda v: (v - 32) * 5 / 9,
        'K': lambda v: v - 273.15,
    }
    return round(conversions[unit](value), 2)


def convert_all(readings):
    with Recorder() as rec, contextlib.suppress(ZeroDivisionError):
        out = [convert(v, u) for v, u in readings]
        return out, rec.events
