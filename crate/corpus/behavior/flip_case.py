def flip_case(string: str) -> str:
    return ''.join(ch.lower() if ch.isupper() else ch.upper() for ch in string)


def concatenate(strings) -> str:
    return ''.join(strings)


def filter_by_prefix(strings, prefix):
    return [x for x in strings if x.startswith(prefix)]


def get_positive(l: list):
    return [e for e in l if e > 0]
