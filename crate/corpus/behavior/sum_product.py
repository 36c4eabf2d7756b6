from functools import reduce
import operator


def sum_product(numbers):
    total = sum(numbers)
    product = reduce(operator.mul, numbers, 1)
    return total, product


def rolling_max(numbers):
    running = None
    result = []
    for n in numbers:
        running = n if running is None else max(running, n)
        result.append(running)
    return result
