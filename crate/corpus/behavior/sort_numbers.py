VALUE_MAP = {
    'zero': 0,
    'one': 1,
    'two': 2,
    'three': 3,
    'four': 4,
    'five': 5,
    'six': 6,
    'seven': 7,
    'eight': 8,
    'nine': 9,
}


def sort_numbers(numbers: str) -> str:
    return ' '.join(sorted([x for x in numbers.split(' ') if x], key=lambda x: VALUE_MAP[x]))


def find_closest_elements(numbers):
    closest_pair = None
    distance = None
    for idx, elem in enumerate(numbers):
        for idx2, elem2 in enumerate(numbers):
            if idx != idx2:
                new_distance = abs(elem - elem2)
                if distance is None or new_distance < distance:
                    distance = new_distance
                    closest_pair = tuple(sorted([elem, elem2]))
    return closest_pair
