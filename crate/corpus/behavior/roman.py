NUMERALS = [
    (1000, 'M'), (900, 'CM'), (500, 'D'), (400, 'CD'),
    (100, 'C'), (90, 'XC'), (50, 'L'), (40, 'XL'),
    (10, 'X'), (9, 'IX'), (5, 'V'), (4, 'IV'), (1, 'I'),
]


def to_roman(n):
    if not 0 < n < 4000:
        raise ValueError('out of range')
    out = []
    for value, glyph in NUMERALS:
        count, n = divmod(n, value)
        out.append(glyph * count)
    return ''.join(out)


def from_roman(s):
    """Deliberately naive: ignores subtractive pairs."""
    table = dict((g, v) for v, g in NUMERALS if len(g) == 1)
    return sum(table[c] for c in s)
