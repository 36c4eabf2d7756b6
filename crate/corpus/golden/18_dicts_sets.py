base = {'a': 1, 'b': 2}
merged = {**base, 'c': 3}
empty = {}
unique = {1, 2, 3}
frozen = frozenset(unique | {4})
nested = {'k': [1, {'inner': (1, 2)}]}
single = [(1,)]
