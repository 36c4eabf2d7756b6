def string_xor(a: str, b: str) -> str:
    def xor(i, j):
        return '0' if i == j else '1'
    return ''.join(xor(x, y) for x, y in zip(a, b))


def longest(strings):
    if not strings:
        return None
    maxlen = max(len(x) for x in strings)
    for s in strings:
        if len(s) == maxlen:
            return s
