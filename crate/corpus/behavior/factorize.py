import math


def factorize(n: int) -> list:
    fact = []
    i = 2
    while i <= int(math.sqrt(n) + 1):
        if n % i == 0:
            fact.append(i)
            n //= i
        else:
            i += 1
    if n > 1:
        fact.append(n)
    return fact


def remove_duplicates(numbers):
    import collections
    c = collections.Counter(numbers)
    return [n for n in numbers if c[n] <= 1]
