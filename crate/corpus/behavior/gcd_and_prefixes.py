def greatest_common_divisor(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def all_prefixes(string):
    return [string[:i + 1] for i in range(len(string))]


def string_sequence(n: int) -> str:
    return ' '.join([str(x) for x in range(n + 1)])
