def intersperse(numbers, delimeter):
    if not numbers:
        return []
    result = []
    for n in numbers[:-1]:
        result.extend([n, delimeter])
    result.append(numbers[-1])
    return result
