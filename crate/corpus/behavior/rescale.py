def rescale_to_unit(numbers):
    lo, hi = min(numbers), max(numbers)
    return [(x - lo) / (hi - lo) for x in numbers]


def filter_integers(values):
    return [x for x in values if isinstance(x, int) and not isinstance(x, bool)]


def strlen(string: str) -> int:
    return len(string)
