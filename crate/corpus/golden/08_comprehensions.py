squares = [x * x for x in range(10) if x % 2 == 0]
pairs = {(i, j) for i in range(3) for j in range(i)}
lookup = {k: v for k, v in zip('abc', range(3))}
total = sum(n for n in squares if n > 4)
nested = [[c for c in row] for row in ['ab', 'cd']]
